//! Brute-force references for map search, cover complexity and chromatic numbers.
//!
//! Nothing here uses the search engine or the cover DP; maps are judged by
//! [`classify_assignment`] only.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::complex::Complex;
use crate::complexity::{Complexity, ComplexityQuery};
use crate::error::{Error, Result};
use crate::homsearch::MapKind;
use crate::maps::{classify_assignment, VertexMap};
use crate::vset::VertexSet;

/// Arbitrary-subcomplex covers are only enumerated up to this many simplices.
pub const MAX_ARBITRARY_SIMPLICES: usize = 12;
pub const MAX_CHROMATIC_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_source_vertices: usize,
    pub max_target_vertices: usize,
    pub max_facets: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_source_vertices: 5, max_target_vertices: 4, max_facets: 4 }
    }
}

impl OracleLimits {
    pub fn admits(&self, source: &Complex, target: &Complex) -> bool {
        self.check(source, target).is_ok()
    }

    fn check(&self, source: &Complex, target: &Complex) -> Result<()> {
        if self.max_source_vertices == 0 || self.max_target_vertices == 0 || self.max_facets == 0 {
            return Err(Error::InvalidParameter("oracle limits must be positive".into()));
        }
        if source.vertex_count() > self.max_source_vertices {
            return Err(Error::OracleLimit(format!(
                "source has {} vertices, limit {}",
                source.vertex_count(),
                self.max_source_vertices
            )));
        }
        if target.vertex_count() > self.max_target_vertices {
            return Err(Error::OracleLimit(format!(
                "target has {} vertices, limit {}",
                target.vertex_count(),
                self.max_target_vertices
            )));
        }
        if source.eta() > self.max_facets {
            return Err(Error::OracleLimit(format!("source has {} facets, limit {}", source.eta(), self.max_facets)));
        }
        Ok(())
    }
}

fn wanted(kind: MapKind, injective: bool, source: &Complex, target: &Complex, a: &[usize]) -> bool {
    let class = classify_assignment(source, target, a);
    let kind_ok = match kind {
        MapKind::Facet => class.facet,
        MapKind::Strict => class.strict,
    };
    kind_ok && (!injective || class.injective)
}

/// First assignment in lexicographic order (first vertex most significant) with the requested
/// properties.
fn first_assignment(source: &Complex, target: &Complex, kind: MapKind, injective: bool) -> Option<Vec<usize>> {
    let (ns, nt) = (source.vertex_count(), target.vertex_count());
    let mut a = vec![0usize; ns];
    if ns == 0 {
        return Some(a);
    }
    if nt == 0 {
        return None;
    }
    loop {
        if wanted(kind, injective, source, target, &a) {
            return Some(a);
        }
        let mut i = ns;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < nt {
                break;
            }
            a[i] = 0;
        }
    }
}

/// Exhaustive map search over all |V(target)|^|V(source)| assignments.
pub fn brute_force_map_search(
    source: &Complex,
    target: &Complex,
    kind: MapKind,
    injective: bool,
    limits: &OracleLimits,
) -> Result<Option<VertexMap>> {
    limits.check(source, target)?;
    Ok(first_assignment(source, target, kind, injective)
        .map(|a| VertexMap::new(source.clone(), target.clone(), a).expect("assignment in range")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCover {
    /// Least number of facet groups covering every facet.
    pub canonical: Complexity,
    /// Least number of arbitrary subcomplexes covering every simplex, for small sources.
    pub arbitrary: Option<Complexity>,
}

/// Cover complexity straight from the definition: facet groups, and arbitrary subcomplexes when
/// the source has at most [`MAX_ARBITRARY_SIMPLICES`] simplices.
pub fn brute_force_cover_complexity(q: &ComplexityQuery, limits: &OracleLimits) -> Result<OracleCover> {
    limits.check(q.source, q.target)?;
    let canonical = canonical_covers(q)?;
    let simplices = q.source.simplices();
    let arbitrary =
        if simplices.len() <= MAX_ARBITRARY_SIMPLICES { Some(arbitrary_covers(q, &simplices)?) } else { None };
    Ok(OracleCover { canonical, arbitrary })
}

fn member_feasible(q: &ComplexityQuery, member: &Complex) -> bool {
    first_assignment(member, q.target, q.kind, q.injective).is_some()
}

fn canonical_covers(q: &ComplexityQuery) -> Result<Complexity> {
    let facets = q.source.facets();
    let n = facets.len();
    if n == 0 {
        return Ok(if member_feasible(q, q.source) { Complexity::Finite(1) } else { Complexity::Infinite });
    }
    let mut feasible: HashMap<u64, bool> = HashMap::new();
    let mut group_ok = |mask: u64| -> Result<bool> {
        if let Some(&b) = feasible.get(&mask) {
            return Ok(b);
        }
        let chosen: Vec<VertexSet> = VertexSet(mask).iter().map(|i| facets[i]).collect();
        let b = member_feasible(q, &q.source.closure(&chosen)?);
        feasible.insert(mask, b);
        Ok(b)
    };
    for k in 1..=n {
        // every facet gets a group label in 0..k
        let mut labels = vec![0usize; n];
        loop {
            let mut masks = vec![0u64; k];
            for (i, &g) in labels.iter().enumerate() {
                masks[g] |= 1 << i;
            }
            let mut ok = true;
            for &m in masks.iter().filter(|&&m| m != 0) {
                if !group_ok(m)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Complexity::Finite(k));
            }
            let mut i = n;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                labels[i] += 1;
                if labels[i] < k {
                    break true;
                }
                labels[i] = 0;
            };
            if !advanced {
                break;
            }
        }
    }
    Ok(Complexity::Infinite)
}

fn arbitrary_covers(q: &ComplexityQuery, simplices: &[VertexSet]) -> Result<Complexity> {
    let s = simplices.len();
    if s == 0 {
        return Ok(if member_feasible(q, q.source) { Complexity::Finite(1) } else { Complexity::Infinite });
    }
    let index: HashMap<VertexSet, usize> = simplices.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    // bitmask of proper nonempty faces of each simplex, for the downward-closure test
    let below: Vec<u32> = simplices
        .iter()
        .map(|f| f.nonempty_subsets().filter(|g| g != f).fold(0u32, |m, g| m | 1 << index[&g]))
        .collect();
    let mut members = Vec::new();
    for mask in 1u32..(1 << s) {
        let closed = (0..s).filter(|&i| mask >> i & 1 == 1).all(|i| below[i] & !mask == 0);
        if !closed {
            continue;
        }
        let faces: Vec<Vec<String>> =
            (0..s).filter(|&i| mask >> i & 1 == 1).map(|i| q.source.names(simplices[i])).collect();
        let member = Complex::build(&faces, None)?;
        if member_feasible(q, &member) {
            members.push(mask);
        }
    }
    // drop members contained in another member
    let maximal: Vec<u32> =
        members.iter().copied().filter(|&m| !members.iter().any(|&o| o != m && m & o == m)).collect();
    let full: u32 = if s == 32 { u32::MAX } else { (1 << s) - 1 };
    let mut seen: HashSet<u32> = HashSet::from([0]);
    let mut queue = VecDeque::from([(0u32, 0usize)]);
    while let Some((covered, depth)) = queue.pop_front() {
        for &m in &maximal {
            let next = covered | m;
            if next == full {
                return Ok(Complexity::Finite(depth + 1));
            }
            if seen.insert(next) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    Ok(Complexity::Infinite)
}

/// Least k admitting a colouring with no monochromatic non-unitary facet, by trying every
/// assignment of k colours.
pub fn brute_force_chromatic(c: &Complex) -> Result<usize> {
    let n = c.vertex_count();
    if n > MAX_CHROMATIC_VERTICES {
        return Err(Error::OracleLimit(format!("{n} vertices, limit {MAX_CHROMATIC_VERTICES}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let facets: Vec<VertexSet> = c.nonunitary_facets().collect();
    for k in 1..=n {
        let total = k.pow(n as u32);
        for code in 0..total {
            let mut rest = code;
            let colors: Vec<usize> = (0..n)
                .map(|_| {
                    let x = rest % k;
                    rest /= k;
                    x
                })
                .collect();
            let valid = facets.iter().all(|f| {
                let first = colors[f.first().expect("nonempty facet")];
                f.iter().any(|v| colors[v] != first)
            });
            if valid {
                return Ok(k);
            }
        }
    }
    unreachable!("n colours always work")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn map_search_examples() {
        let lim = OracleLimits::default();
        let (l, k) = (fixtures::ex_l(), fixtures::ex_k());
        assert!(brute_force_map_search(&l, &k, MapKind::Facet, false, &lim).unwrap().is_none());
        let m = brute_force_map_search(&fixtures::l1(), &k, MapKind::Facet, false, &lim).unwrap().unwrap();
        assert!(m.classify().facet);
        for kind in [MapKind::Facet, MapKind::Strict] {
            let id = brute_force_map_search(&k, &k, kind, true, &lim).unwrap().unwrap();
            assert_eq!(id, VertexMap::identity(&k));
        }
    }

    #[test]
    fn cover_examples() {
        let lim = OracleLimits::default();
        let (l, k) = (fixtures::ex_l(), fixtures::ex_k());
        let c = brute_force_cover_complexity(&ComplexityQuery::facet(&l, &k), &lim).unwrap();
        assert_eq!(c, OracleCover { canonical: Complexity::Finite(2), arbitrary: Some(Complexity::Finite(2)) });
        let ic = brute_force_cover_complexity(&ComplexityQuery::injective(&l, &k), &lim).unwrap();
        assert_eq!(ic, OracleCover { canonical: Complexity::Finite(3), arbitrary: Some(Complexity::Finite(3)) });
        let id = brute_force_cover_complexity(&ComplexityQuery::facet(&k, &k), &lim).unwrap();
        assert_eq!(id.canonical, Complexity::Finite(1));
    }

    #[test]
    fn limits_are_enforced() {
        let lim = OracleLimits::default();
        let big = Complex::gamma(6).unwrap();
        assert!(matches!(brute_force_map_search(&big, &big, MapKind::Facet, false, &lim), Err(Error::OracleLimit(_))));
        assert!(brute_force_chromatic(&Complex::gamma(9).unwrap()).is_err());
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(brute_force_chromatic(&fixtures::ex_l()).unwrap(), 3);
        assert_eq!(brute_force_chromatic(&Complex::gamma(5).unwrap()).unwrap(), 2);
        assert_eq!(brute_force_chromatic(&Complex::boundary(4).unwrap()).unwrap(), 2);
        assert_eq!(brute_force_chromatic(&Complex::empty()).unwrap(), 0);
    }
}
