//! Facet-complexity C, IC and their strict variants.
//!
//! Any cover of L by facet-colourable subcomplexes can be replaced by the closures of the facets
//! of L each member contains: such a facet stays a facet of the member, the closure is a
//! subcomplex of it and restricting the member's map keeps every required property. So the value
//! is the least number of feasible facet groups covering the required facets, and feasibility is
//! hereditary: a subgroup of a feasible group is feasible.
//!
//! The minimum is found by a DP over the mask of still uncovered facets. The lowest uncovered
//! facet must lie in some group, and that group may be taken maximal among feasible groups inside
//! the uncovered mask.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::coloring::chromatic_number;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::homsearch::{find_map, FeasibilitySession, MapKind, SearchLimits, SearchProblem};
use crate::maps::VertexMap;
use crate::vset::VertexSet;

pub const DEFAULT_FACET_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Complexity {
    Finite(usize),
    Infinite,
}

impl Complexity {
    pub fn finite(self) -> Option<usize> {
        match self {
            Complexity::Finite(k) => Some(k),
            Complexity::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Complexity::Finite(_))
    }

    /// Product with ∞ absorbing.
    pub fn times(self, other: Complexity) -> Complexity {
        match (self, other) {
            (Complexity::Finite(a), Complexity::Finite(b)) => Complexity::Finite(a * b),
            _ => Complexity::Infinite,
        }
    }

    pub fn plus(self, other: Complexity) -> Complexity {
        match (self, other) {
            (Complexity::Finite(a), Complexity::Finite(b)) => Complexity::Finite(a + b),
            _ => Complexity::Infinite,
        }
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Complexity::Finite(k) => write!(f, "{k}"),
            Complexity::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Complexity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Complexity::Finite(k) => s.serialize_u64(*k as u64),
            Complexity::Infinite => s.serialize_str("infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ComplexityQuery<'a> {
    pub source: &'a Complex,
    pub target: &'a Complex,
    pub kind: MapKind,
    pub injective: bool,
}

impl<'a> ComplexityQuery<'a> {
    pub fn new(source: &'a Complex, target: &'a Complex, kind: MapKind, injective: bool) -> Self {
        ComplexityQuery { source, target, kind, injective }
    }

    /// C(L;K).
    pub fn facet(source: &'a Complex, target: &'a Complex) -> Self {
        Self::new(source, target, MapKind::Facet, false)
    }

    /// IC(L;K).
    pub fn injective(source: &'a Complex, target: &'a Complex) -> Self {
        Self::new(source, target, MapKind::Facet, true)
    }

    /// The conventional symbol of the quantity: C, IC, C_s or IC_s.
    pub fn symbol(&self) -> &'static str {
        match (self.kind, self.injective) {
            (MapKind::Facet, false) => "C",
            (MapKind::Facet, true) => "IC",
            (MapKind::Strict, false) => "C_s",
            (MapKind::Strict, true) => "IC_s",
        }
    }

    /// Facets that a cover has to account for. Isolated vertices never obstruct a
    /// non-injective facet map, so only non-unitary facets count there.
    pub fn required_facets(&self) -> Vec<VertexSet> {
        let all = self.source.facets().iter().copied();
        if self.kind == MapKind::Facet && !self.injective {
            all.filter(|f| f.len() >= 2).collect()
        } else {
            all.collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverGroup {
    /// Facets of the source, as source vertex masks.
    pub facets: Vec<VertexSet>,
    /// A map from the closure of `facets` into the target.
    pub map: VertexMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub groups: Vec<CoverGroup>,
}

impl Cover {
    pub fn value(&self) -> usize {
        self.groups.len()
    }

    /// Check the certificate: every group's map has the query's properties on the closure of the
    /// group, and together the groups contain every required facet.
    pub fn verify(&self, q: &ComplexityQuery) -> Result<()> {
        for g in &self.groups {
            let closure = q.source.closure(&g.facets)?;
            if g.map.source() != &closure || g.map.target() != q.target {
                return Err(Error::Inconsistent("cover map has the wrong endpoints".into()));
            }
            let class = g.map.classify();
            let kind_ok = match q.kind {
                MapKind::Facet => class.facet,
                MapKind::Strict => class.strict,
            };
            if !kind_ok || (q.injective && !class.injective) {
                return Err(Error::Inconsistent(format!("cover map on {} lacks the required properties", closure)));
            }
        }
        for f in q.required_facets() {
            if !self.groups.iter().any(|g| g.facets.contains(&f)) {
                return Err(Error::UncoveredFacet { facet: q.source.names(f) });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComputeOptions {
    pub facet_cap: usize,
    pub limits: SearchLimits,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions { facet_cap: DEFAULT_FACET_CAP, limits: SearchLimits::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityResult {
    pub value: Complexity,
    pub cover: Option<Cover>,
    /// Distinct facet groups handed to the map search.
    pub probes: u64,
}

pub fn compute(q: &ComplexityQuery) -> Result<ComplexityResult> {
    compute_with(q, &ComputeOptions::default())
}

pub fn compute_with(q: &ComplexityQuery, opts: &ComputeOptions) -> Result<ComplexityResult> {
    let required = q.required_facets();
    if required.is_empty() {
        let p = SearchProblem { limits: opts.limits, ..SearchProblem::new(q.source, q.target, q.kind, q.injective) };
        let outcome = find_map(&p);
        let probes = 1;
        return Ok(match outcome.into_result()? {
            Some(map) => ComplexityResult {
                value: Complexity::Finite(1),
                cover: Some(Cover { groups: vec![CoverGroup { facets: q.source.facets().to_vec(), map }] }),
                probes,
            },
            None => ComplexityResult { value: Complexity::Infinite, cover: None, probes },
        });
    }
    if required.len() > opts.facet_cap {
        return Err(Error::FacetCapExceeded { facets: required.len(), cap: opts.facet_cap });
    }

    let n = required.len();
    let mut session = FeasibilitySession::over_facets(q.source, required, q.target, q.kind, q.injective, opts.limits);
    for i in 0..n {
        if !session.feasible(1 << i)? {
            return Ok(ComplexityResult { value: Complexity::Infinite, cover: None, probes: session.probes() });
        }
    }

    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut dp = CoverDp { session: &mut session, memo: HashMap::new() };
    let best = dp.solve(full)?;
    let mut masks = Vec::with_capacity(best);
    let mut rest = full;
    while rest != 0 {
        let (_, group) = dp.memo[&rest];
        masks.push(group);
        rest &= !group;
    }

    let mut groups = Vec::with_capacity(masks.len());
    for (i, &m) in masks.iter().enumerate() {
        let mut facets = session.group_facets(m);
        if i == 0 && q.kind == MapKind::Facet && !q.injective {
            // unrequired facets are isolated vertices; group 0 takes them
            facets.extend(q.source.facets().iter().copied().filter(|f| f.len() == 1));
        }
        facets.sort();
        let closure = q.source.closure(&facets)?;
        let p = SearchProblem { limits: opts.limits, ..SearchProblem::new(&closure, q.target, q.kind, q.injective) };
        let map =
            find_map(&p).into_result()?.ok_or_else(|| Error::Inconsistent(format!("group {closure} lost its map")))?;
        groups.push(CoverGroup { facets, map });
    }
    Ok(ComplexityResult { value: Complexity::Finite(best), cover: Some(Cover { groups }), probes: session.probes() })
}

struct CoverDp<'s, 'a> {
    session: &'s mut FeasibilitySession<'a>,
    /// uncovered mask -> (groups needed, group chosen for its lowest facet)
    memo: HashMap<u64, (usize, u64)>,
}

impl CoverDp<'_, '_> {
    fn solve(&mut self, uncovered: u64) -> Result<usize> {
        if uncovered == 0 {
            return Ok(0);
        }
        if let Some(&(v, _)) = self.memo.get(&uncovered) {
            return Ok(v);
        }
        let pivot = uncovered & uncovered.wrapping_neg();
        let mut candidates = Vec::new();
        self.maximal_groups(uncovered, pivot, pivot, &mut candidates)?;
        candidates.sort_unstable();
        candidates.dedup();
        let mut best = (usize::MAX, 0);
        for g in candidates {
            let v = 1 + self.solve(uncovered & !g)?;
            if v < best.0 {
                best = (v, g);
            }
        }
        self.memo.insert(uncovered, best);
        Ok(best.0)
    }

    /// Collect the feasible groups inside `within` that contain `group` and cannot grow further.
    fn maximal_groups(&mut self, within: u64, group: u64, floor: u64, out: &mut Vec<u64>) -> Result<()> {
        let mut grown = false;
        let mut rest = within & !group;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= !bit;
            if !self.session.feasible(group | bit)? {
                continue;
            }
            grown = true;
            // extend in increasing order only, so each group is generated once
            if bit > floor {
                self.maximal_groups(within, group | bit, bit, out)?;
            }
        }
        if !grown {
            out.push(group);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub symbol: &'static str,
    /// Least m with χ(K)^m ≥ χ(L), when χ(K) ≥ 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chromatic_lower: Option<usize>,
    /// C(G_L;G_K), when K has no isolated vertices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_lower: Option<Complexity>,
    /// η(L) or infinity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_upper: Option<Complexity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finite: Option<bool>,
    /// η(L), the exact IC into a complete target of the same dimension as a pure L.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete_target_ic: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Complexity>,
}

impl BoundReport {
    /// Lower and upper bound implied by the report, ignoring `exact`.
    pub fn range(&self) -> (Complexity, Complexity) {
        let mut lo = Complexity::Finite(1);
        let mut hi = Complexity::Infinite;
        if let Some(m) = self.chromatic_lower {
            lo = lo.max(Complexity::Finite(m));
        }
        if let Some(g) = self.graph_lower {
            lo = lo.max(g);
        }
        if let Some(e) = self.eta_upper {
            hi = hi.min(e);
        }
        if let Some(k) = self.complete_target_ic {
            lo = lo.max(Complexity::Finite(k));
            hi = hi.min(Complexity::Finite(k));
        }
        if self.finite == Some(false) {
            lo = Complexity::Infinite;
        }
        (lo, hi)
    }
}

/// Is every non-unitary facet of `source` at least as large as the smallest non-unitary facet
/// of `target`? This decides whether C(source;target) is finite.
pub fn eta_dichotomy(source: &Complex, target: &Complex) -> bool {
    if target.is_empty() {
        return source.is_empty();
    }
    match target.nonunitary_facets().map(|g| g.len()).min() {
        Some(g0) => source.nonunitary_facets().all(|f| f.len() >= g0),
        None => !source.has_nonunitary_facet(),
    }
}

/// Is `c` a single full simplex on at least two vertices?
pub fn is_complete(c: &Complex) -> bool {
    c.eta() == 1 && c.vertex_count() >= 2
}

/// Least m ≥ 1 with base^m ≥ value, for base ≥ 2.
pub fn log_ceil(base: usize, value: usize) -> usize {
    assert!(base >= 2);
    let (mut m, mut p) = (1, base);
    while p < value {
        p = p.saturating_mul(base);
        m += 1;
    }
    m
}

/// Bounds from chromatic numbers, the facet graphs and facet counts. Fields whose hypotheses
/// fail are left empty; strict queries get none of the facet-map bounds.
pub fn bounds(q: &ComplexityQuery) -> Result<BoundReport> {
    bounds_with(q, &ComputeOptions::default())
}

pub fn bounds_with(q: &ComplexityQuery, opts: &ComputeOptions) -> Result<BoundReport> {
    let mut r = BoundReport {
        symbol: q.symbol(),
        chromatic_lower: None,
        graph_lower: None,
        eta_upper: None,
        finite: None,
        complete_target_ic: None,
        exact: None,
    };
    if q.kind == MapKind::Strict {
        return Ok(r);
    }
    let chi_k = chromatic_number(q.target).value;
    if chi_k >= 2 {
        r.chromatic_lower = Some(log_ceil(chi_k, chromatic_number(q.source).value));
    }
    if q.target.isolated().is_empty() {
        let gl = q.source.facet_graph().to_complex();
        let gk = q.target.facet_graph().to_complex();
        r.graph_lower = Some(compute_with(&ComplexityQuery::facet(&gl, &gk), opts)?.value);
    }
    let finite = eta_dichotomy(q.source, q.target);
    if q.injective {
        if !finite {
            r.finite = Some(false);
        }
        let pure = q.source.metrics().pure;
        if is_complete(q.target) && pure && q.source.dim() == q.target.dim() {
            r.complete_target_ic = Some(q.source.eta());
        }
    } else {
        r.finite = Some(finite);
        r.eta_upper = Some(if finite { Complexity::Finite(q.source.eta().max(1)) } else { Complexity::Infinite });
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Each vertex-disjoint component with its own complexity.
    pub parts: Vec<(Complex, Complexity)>,
    pub value: Complexity,
}

/// C of a disjoint union as the maximum over its components, cross-checked against the
/// value of the whole complex.
pub fn disjoint_decompose(q: &ComplexityQuery, opts: &ComputeOptions) -> Result<Decomposition> {
    if q.kind != MapKind::Facet || q.injective {
        return Err(Error::NotApplicable(format!("disjoint decomposition applies to C only, not {}", q.symbol())));
    }
    let mut parts = Vec::new();
    for facets in q.source.components() {
        let part = q.source.closure(&facets)?;
        let value = compute_with(&ComplexityQuery::facet(&part, q.target), opts)?.value;
        parts.push((part, value));
    }
    let value = parts.iter().map(|p| p.1).max().unwrap_or(Complexity::Finite(1));
    let whole = compute_with(q, opts)?.value;
    if whole != value {
        return Err(Error::Inconsistent(format!("components give {value} but the whole complex gives {whole}")));
    }
    Ok(Decomposition { parts, value })
}
