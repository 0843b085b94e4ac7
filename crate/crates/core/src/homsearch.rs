//! Backtracking search for facet and strict simplicial maps.
//!
//! Facet constraint: every non-unitary source facet F must land exactly on a non-unitary
//! target facet G with |G| <= |F| (equality when injective). Checking this on facets alone is
//! enough: every simplex lies in a facet, and subsets of a target facet are simplices, so the
//! map is simplicial and sends non-unitary facets onto non-unitary facets.
//!
//! Strict constraint: every source facet F must be mapped injectively into a target simplex.
//!
//! During the search a partially assigned facet keeps a candidate G alive only while its partial
//! image is a subset of G and the unassigned vertices of F can still cover `G \ image`.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::maps::VertexMap;
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Facet,
    Strict,
}

impl std::str::FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "facet" => Ok(MapKind::Facet),
            "strict" => Ok(MapKind::Strict),
            other => Err(Error::InvalidParameter(format!("unknown map kind {other:?}"))),
        }
    }
}

impl std::fmt::Display for MapKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MapKind::Facet => "facet",
            MapKind::Strict => "strict",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { node_budget: u64::MAX, time_budget: None }
    }
}

#[derive(Clone, Debug)]
pub struct SearchProblem<'a> {
    pub source: &'a Complex,
    pub target: &'a Complex,
    pub kind: MapKind,
    pub injective: bool,
    pub limits: SearchLimits,
}

impl<'a> SearchProblem<'a> {
    pub fn new(source: &'a Complex, target: &'a Complex, kind: MapKind, injective: bool) -> Self {
        SearchProblem { source, target, kind, injective, limits: SearchLimits::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found(VertexMap),
    /// The search tree was exhausted: no such map exists.
    NotFound,
    /// A budget ran out first.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub nodes: u64,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        matches!(self.status, SearchStatus::Found(_))
    }

    pub fn map(&self) -> Option<&VertexMap> {
        match &self.status {
            SearchStatus::Found(m) => Some(m),
            _ => None,
        }
    }

    /// `Ok(Some(map))`, `Ok(None)` for proven non-existence, `Err(Undecided)` otherwise.
    pub fn into_result(self) -> Result<Option<VertexMap>> {
        match self.status {
            SearchStatus::Found(m) => Ok(Some(m)),
            SearchStatus::NotFound => Ok(None),
            SearchStatus::Undecided => Err(Error::Undecided { nodes: self.nodes }),
        }
    }
}

struct Engine<'a> {
    source: &'a Complex,
    injective: bool,
    kind: MapKind,
    /// constrained source facets and their candidate target facets
    constrained: Vec<(VertexSet, Vec<VertexSet>)>,
    /// indices into `constrained` touching each source vertex
    touching: Vec<Vec<usize>>,
    order: Vec<usize>,
    domains: Vec<VertexSet>,
    assignment: Vec<usize>,
    used: VertexSet,
    nodes: u64,
    limits: SearchLimits,
    started: Instant,
    out_of_budget: bool,
}

const UNASSIGNED: usize = usize::MAX;

pub fn find_map(p: &SearchProblem) -> SearchOutcome {
    let source = p.source;
    let target = p.target;
    let ns = source.vertex_count();
    let nt = target.vertex_count();
    let done = |status| SearchOutcome { status, nodes: 0 };
    if ns == 0 {
        let m = VertexMap::new(source.clone(), target.clone(), Vec::new()).expect("empty map");
        return done(SearchStatus::Found(m));
    }
    if nt == 0 || (p.injective && ns > nt) {
        return done(SearchStatus::NotFound);
    }

    let mut constrained = Vec::new();
    for &f in source.facets() {
        let candidates: Vec<VertexSet> = match p.kind {
            MapKind::Facet if f.len() >= 2 => target
                .nonunitary_facets()
                .filter(|g| if p.injective { g.len() == f.len() } else { g.len() <= f.len() })
                .collect(),
            MapKind::Facet => continue,
            MapKind::Strict => target.facets().iter().copied().filter(|g| g.len() >= f.len()).collect(),
        };
        if candidates.is_empty() {
            return done(SearchStatus::NotFound);
        }
        constrained.push((f, candidates));
    }

    let mut touching = vec![Vec::new(); ns];
    for (i, (f, _)) in constrained.iter().enumerate() {
        for v in f.iter() {
            touching[v].push(i);
        }
    }

    // domains: union of candidate facets per constraint, degree filter when injective
    let mut domains = vec![VertexSet::full(nt); ns];
    for (f, cands) in &constrained {
        let reach = cands.iter().fold(VertexSet::EMPTY, |a, g| a.union(*g));
        for v in f.iter() {
            domains[v] = domains[v].intersection(reach);
        }
    }
    if p.injective {
        let top = source.dim().max(target.dim()).max(1) as usize;
        let tables_s: Vec<Vec<usize>> = (1..=top).map(|d| source.d_degrees(d)).collect();
        let tables_t: Vec<Vec<usize>> = (1..=top).map(|d| target.d_degrees(d)).collect();
        for (v, dom) in domains.iter_mut().enumerate() {
            let ok = VertexSet::from_indices(
                (0..nt).filter(|&t| tables_s.iter().zip(&tables_t).all(|(s, tt)| tt[t] >= s[v])),
            );
            *dom = dom.intersection(ok);
        }
    }
    if domains.iter().any(|d| d.is_empty()) {
        return done(SearchStatus::NotFound);
    }

    // order: facets with fewest candidates first, their vertices by descending degree
    let degrees = source.degrees();
    let mut facet_order: Vec<usize> = (0..constrained.len()).collect();
    facet_order.sort_by_key(|&i| (constrained[i].1.len(), constrained[i].0));
    let mut order = Vec::with_capacity(ns);
    let mut placed = VertexSet::EMPTY;
    for i in facet_order {
        let mut vs: Vec<usize> = constrained[i].0.iter().filter(|v| !placed.contains(*v)).collect();
        vs.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
        for v in vs {
            placed.insert(v);
            order.push(v);
        }
    }
    order.extend((0..ns).filter(|v| !placed.contains(*v)));

    let mut engine = Engine {
        source,
        injective: p.injective,
        kind: p.kind,
        constrained,
        touching,
        order,
        domains,
        assignment: vec![UNASSIGNED; ns],
        used: VertexSet::EMPTY,
        nodes: 0,
        limits: p.limits,
        started: Instant::now(),
        out_of_budget: false,
    };
    let found = engine.descend(0);
    let nodes = engine.nodes;
    let status = if found {
        let m = VertexMap::new(source.clone(), target.clone(), engine.assignment).expect("in range");
        SearchStatus::Found(m)
    } else if engine.out_of_budget {
        SearchStatus::Undecided
    } else {
        SearchStatus::NotFound
    };
    SearchOutcome { status, nodes }
}

impl Engine<'_> {
    fn descend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let mut domain = self.domains[v];
        if self.injective {
            domain = domain.difference(self.used);
        }
        for t in domain.iter() {
            self.nodes += 1;
            if self.nodes > self.limits.node_budget {
                self.out_of_budget = true;
                return false;
            }
            if self.nodes & 0x3ff == 0 {
                if let Some(limit) = self.limits.time_budget {
                    if self.started.elapsed() > limit {
                        self.out_of_budget = true;
                        return false;
                    }
                }
            }
            self.assignment[v] = t;
            if self.consistent(v) {
                self.used.insert(t);
                if self.descend(depth + 1) {
                    return true;
                }
                self.used = self.used.difference(VertexSet::singleton(t));
            }
            self.assignment[v] = UNASSIGNED;
            if self.out_of_budget {
                return false;
            }
        }
        false
    }

    fn consistent(&self, v: usize) -> bool {
        self.touching[v].iter().all(|&i| {
            let (f, cands) = &self.constrained[i];
            let mut image = VertexSet::EMPTY;
            let mut assigned = 0;
            for u in f.iter() {
                let t = self.assignment[u];
                if t != UNASSIGNED {
                    image.insert(t);
                    assigned += 1;
                }
            }
            let free = f.len() - assigned;
            match self.kind {
                MapKind::Facet => cands.iter().any(|g| image.is_subset(*g) && g.difference(image).len() <= free),
                MapKind::Strict => image.len() == assigned && cands.iter().any(|g| image.is_subset(*g)),
            }
        })
    }
}

impl std::fmt::Debug for Engine<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("source", &self.source.to_string()).field("nodes", &self.nodes).finish()
    }
}

/// Does `closure(c, group)` admit a map of the requested kind into `target`?
pub fn group_feasible(
    c: &Complex,
    group: &[VertexSet],
    target: &Complex,
    kind: MapKind,
    injective: bool,
) -> Result<bool> {
    let closure = c.closure(group)?;
    let p = SearchProblem::new(&closure, target, kind, injective);
    Ok(find_map(&p).into_result()?.is_some())
}

/// Memoized feasibility of facet groups of one source against one target.
///
/// Groups are bitmasks over a list of source facets (all of them by default). The cache lives
/// as long as the session, typically one complexity computation.
pub struct FeasibilitySession<'a> {
    source: &'a Complex,
    universe: Vec<VertexSet>,
    target: &'a Complex,
    kind: MapKind,
    injective: bool,
    limits: SearchLimits,
    memo: HashMap<u64, Option<VertexMap>>,
    probes: u64,
}

impl<'a> FeasibilitySession<'a> {
    pub fn new(source: &'a Complex, target: &'a Complex, kind: MapKind, injective: bool) -> Self {
        Self::with_limits(source, target, kind, injective, SearchLimits::default())
    }

    pub fn with_limits(
        source: &'a Complex,
        target: &'a Complex,
        kind: MapKind,
        injective: bool,
        limits: SearchLimits,
    ) -> Self {
        Self::over_facets(source, source.facets().to_vec(), target, kind, injective, limits)
    }

    /// Session whose group bit `i` stands for `universe[i]`, a facet of `source`.
    pub fn over_facets(
        source: &'a Complex,
        universe: Vec<VertexSet>,
        target: &'a Complex,
        kind: MapKind,
        injective: bool,
        limits: SearchLimits,
    ) -> Self {
        assert!(universe.len() <= 64, "facet groups are 64-bit masks");
        debug_assert!(universe.iter().all(|f| source.is_facet(*f)));
        FeasibilitySession { source, universe, target, kind, injective, limits, memo: HashMap::new(), probes: 0 }
    }

    pub fn universe(&self) -> &[VertexSet] {
        &self.universe
    }

    pub fn group_facets(&self, group: u64) -> Vec<VertexSet> {
        VertexSet(group).iter().map(|i| self.universe[i]).collect()
    }

    /// The certificate map for `group`, or `None` when infeasible.
    pub fn certificate(&mut self, group: u64) -> Result<Option<&VertexMap>> {
        if !self.memo.contains_key(&group) {
            self.probes += 1;
            let closure = self.source.induced_by_facets(&self.group_facets(group));
            let p = SearchProblem {
                source: &closure,
                target: self.target,
                kind: self.kind,
                injective: self.injective,
                limits: self.limits,
            };
            let found = find_map(&p).into_result()?;
            self.memo.insert(group, found);
        }
        Ok(self.memo[&group].as_ref())
    }

    pub fn feasible(&mut self, group: u64) -> Result<bool> {
        if group == 0 {
            return Ok(true);
        }
        Ok(self.certificate(group)?.is_some())
    }

    /// Number of distinct groups actually searched.
    pub fn probes(&self) -> u64 {
        self.probes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn search(l: &Complex, k: &Complex, kind: MapKind, injective: bool) -> SearchOutcome {
        find_map(&SearchProblem::new(l, k, kind, injective))
    }

    #[test]
    fn paper_examples() {
        let (l, k) = (fixtures::ex_l(), fixtures::ex_k());
        assert_eq!(search(&l, &k, MapKind::Facet, false).status, SearchStatus::NotFound);

        let r = search(&fixtures::l1(), &k, MapKind::Facet, false);
        let m = r.map().expect("L1 maps onto EX_K");
        assert!(m.classify().facet);

        let strict = search(&l, &k, MapKind::Strict, false);
        assert!(strict.map().unwrap().classify().strict);
    }

    #[test]
    fn identity_found_injectively() {
        let l = fixtures::ex_l();
        let r = search(&l, &l, MapKind::Facet, true);
        let m = r.map().unwrap();
        assert!(m.classify().facet && m.classify().injective);
    }

    #[test]
    fn group_feasibility_examples() {
        let (l, k) = (fixtures::ex_l(), fixtures::ex_k());
        let g = |names: &[&[&str]]| names.iter().map(|n| l.face(n).unwrap()).collect::<Vec<_>>();
        assert!(group_feasible(&l, &g(&[&["a", "b", "c"], &["c", "d"]]), &k, MapKind::Facet, true).unwrap());
        assert!(!group_feasible(&l, &g(&[&["c", "d"], &["d", "e"]]), &k, MapKind::Facet, true).unwrap());
        assert!(group_feasible(&l, &[], &k, MapKind::Facet, true).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_undecided() {
        let l = Complex::boundary(5).unwrap().skeleton(1);
        let k = Complex::boundary(4).unwrap().skeleton(1);
        let mut p = SearchProblem::new(&l, &k, MapKind::Facet, false);
        p.limits.node_budget = 3;
        let r = find_map(&p);
        assert_eq!(r.status, SearchStatus::Undecided);
        assert!(matches!(r.into_result(), Err(Error::Undecided { .. })));
        p.limits.node_budget = u64::MAX;
        // K5 is not 4-colorable
        assert_eq!(find_map(&p).status, SearchStatus::NotFound);
    }

    #[test]
    fn isolated_vertices_need_distinct_targets_when_injective() {
        let src = fixtures::k3_star();
        let k3 = Complex::boundary(3).unwrap();
        assert!(!search(&src, &k3, MapKind::Facet, true).found());
        assert!(search(&src, &k3, MapKind::Facet, false).found());
    }

    #[test]
    fn session_memoizes() {
        let (l, k) = (fixtures::ex_l(), fixtures::ex_k());
        let mut s = FeasibilitySession::new(&l, &k, MapKind::Facet, false);
        assert!(!s.feasible(0b1111).unwrap());
        assert!(!s.feasible(0b1111).unwrap());
        assert_eq!(s.probes(), 1);
        assert!(s.feasible(0).unwrap());
    }
}
