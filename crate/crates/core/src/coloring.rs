//! Colorings of complexes (no monochromatic non-unitary facet) and of graphs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{Complex, GraphView};
use crate::error::{Error, Result};
use crate::maps::VertexMap;
use crate::vset::VertexSet;

/// Colors `1..=k` assigned to labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub labels: Vec<String>,
    /// `colors[i]` is the color of `labels[i]`, in `1..=k`.
    pub colors: Vec<usize>,
    pub k: usize,
}

impl Coloring {
    pub fn new(labels: Vec<String>, colors: Vec<usize>, k: usize) -> Result<Self> {
        if labels.len() != colors.len() {
            return Err(Error::InvalidColoring("label and color counts differ".into()));
        }
        if let Some(bad) = colors.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::InvalidColoring(format!("color {bad} outside 1..={k}")));
        }
        Ok(Coloring { labels, colors, k })
    }

    pub fn color_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label).map(|i| self.colors[i])
    }

    pub fn is_surjective(&self) -> bool {
        let mut used = vec![false; self.k + 1];
        for &c in &self.colors {
            used[c] = true;
        }
        used[1..].iter().all(|&u| u)
    }

    /// Valid for `c`: same vertex labels and no monochromatic non-unitary facet.
    pub fn is_valid_for(&self, c: &Complex) -> bool {
        self.labels == c.labels() && c.nonunitary_facets().all(|f| !self.monochromatic(f))
    }

    pub fn is_valid_for_graph(&self, g: &GraphView) -> bool {
        self.labels == g.labels && g.edges.iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    fn monochromatic(&self, f: VertexSet) -> bool {
        let mut it = f.iter().map(|v| self.colors[v]);
        match it.next() {
            Some(first) => it.all(|c| c == first),
            None => true,
        }
    }

    pub fn as_map(&self) -> BTreeMap<String, usize> {
        self.labels.iter().cloned().zip(self.colors.iter().copied()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chromatic {
    pub value: usize,
    pub witness: Coloring,
}

/// Least k such that the vertices `0..n` can be colored with no `constraint` monochromatic.
///
/// Vertices are colored in index order with restricted growth (a new color only after all
/// smaller ones are open), so the first success is the lexicographically least optimal
/// coloring.
fn min_coloring(n: usize, constraints: &[VertexSet]) -> (usize, Vec<usize>) {
    if n == 0 {
        return (0, Vec::new());
    }
    // constraints checked when their last vertex gets its color
    let mut closing: Vec<Vec<VertexSet>> = vec![Vec::new(); n];
    for &f in constraints {
        if f.len() >= 2 {
            let last = f.iter().last().expect("non-empty");
            closing[last].push(f);
        }
    }
    let lower = if constraints.iter().any(|f| f.len() >= 2) { 2 } else { 1 };
    for k in lower..=n {
        let mut colors = vec![0usize; n];
        if extend(0, 0, k, &closing, &mut colors) {
            return (k, colors.into_iter().map(|c| c + 1).collect());
        }
    }
    unreachable!("n distinct colors always succeed")
}

fn extend(v: usize, open: usize, k: usize, closing: &[Vec<VertexSet>], colors: &mut [usize]) -> bool {
    if v == colors.len() {
        return true;
    }
    for c in 0..k.min(open + 1) {
        colors[v] = c;
        let ok = closing[v].iter().all(|f| f.iter().any(|u| colors[u] != c));
        if ok && extend(v + 1, open.max(c + 1), k, closing, colors) {
            return true;
        }
    }
    false
}

/// χ(c): the fewest colors leaving no non-unitary facet monochromatic.
///
/// The empty complex has χ = 0; a complex with no non-unitary facet has χ = 1.
pub fn chromatic_number(c: &Complex) -> Chromatic {
    let (value, colors) = min_coloring(c.vertex_count(), c.facets());
    Chromatic { value, witness: Coloring { labels: c.labels().to_vec(), colors, k: value } }
}

/// Proper-coloring chromatic number of a graph.
pub fn graph_chromatic_number(g: &GraphView) -> Chromatic {
    let edges: Vec<VertexSet> = g.edges.iter().map(|&(u, v)| VertexSet::from_indices([u, v])).collect();
    let (value, colors) = min_coloring(g.vertex_count(), &edges);
    Chromatic { value, witness: Coloring { labels: g.labels.clone(), colors, k: value } }
}

/// Group the graph colors of `c`'s underlying graph into blocks of `d` consecutive colors,
/// where `d` is the least facet dimension; vertex v gets the index of its color's block.
pub fn block_coloring(c: &Complex, graph_witness: &Coloring) -> Result<Coloring> {
    if let Some(single) = c.facets().iter().find(|f| f.len() == 1) {
        return Err(Error::SingletonFacet { facet: c.names(*single).join("") });
    }
    let d = match c.facets().iter().map(|f| f.len() - 1).min() {
        Some(d) => d,
        None => return Err(Error::NotApplicable("block coloring of the empty complex".into())),
    };
    if !graph_witness.is_valid_for_graph(&c.underlying_graph()) {
        return Err(Error::InvalidColoring("not a proper coloring of the underlying graph".into()));
    }
    let n = graph_witness.k;
    let m = n.div_ceil(d);
    let colors = graph_witness.colors.iter().map(|&g| (g - 1) / d + 1).collect();
    let out = Coloring::new(c.labels().to_vec(), colors, m)?;
    debug_assert!(out.is_valid_for(c));
    Ok(out)
}

/// Product coloring from colorings of subcomplexes covering `c`.
///
/// A vertex absent from a part takes color 1 in that coordinate. Colors are the ranks of the
/// occurring tuples.
pub fn product_coloring(c: &Complex, parts: &[(Complex, Coloring)]) -> Result<Coloring> {
    let mut embedded: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    for (part, col) in parts {
        if !col.is_valid_for(part) {
            return Err(Error::InvalidColoring(format!("coloring invalid for part {part}")));
        }
        let idx = part
            .labels()
            .iter()
            .map(|l| c.index_of(l).ok_or_else(|| Error::NotSubcomplex { simplex: vec![l.clone()] }))
            .collect::<Result<Vec<usize>>>()?;
        for f in part.facets() {
            if !c.is_simplex(VertexSet::from_indices(f.iter().map(|v| idx[v]))) {
                return Err(Error::NotSubcomplex { simplex: part.names(*f) });
            }
        }
        embedded.push(idx);
    }
    for f in c.facets() {
        let covered = parts.iter().zip(&embedded).any(|((part, _), idx)| {
            let local: Option<Vec<usize>> = f.iter().map(|v| idx.iter().position(|&x| x == v)).collect();
            local.is_some_and(|l| part.is_simplex(VertexSet::from_indices(l)))
        });
        if !covered {
            return Err(Error::UncoveredFacet { facet: c.names(*f) });
        }
    }
    let tuples: Vec<Vec<usize>> = (0..c.vertex_count())
        .map(|v| {
            parts
                .iter()
                .zip(&embedded)
                .map(|((_, col), idx)| idx.iter().position(|&x| x == v).map_or(1, |i| col.colors[i]))
                .collect()
        })
        .collect();
    let mut distinct = tuples.clone();
    distinct.sort();
    distinct.dedup();
    let colors = tuples.iter().map(|t| distinct.binary_search(t).expect("present") + 1).collect();
    Coloring::new(c.labels().to_vec(), colors, distinct.len())
}

/// v ↦ witness(f(v)) for a facet map f.
pub fn pullback_coloring(m: &VertexMap, target_witness: &Coloring) -> Result<Coloring> {
    if !m.classify().facet {
        return Err(Error::WrongMapClass { expected: "a facet simplicial map" });
    }
    if !target_witness.is_valid_for(m.target()) {
        return Err(Error::InvalidColoring("target coloring is not valid".into()));
    }
    let colors = m.assignment().iter().map(|&t| target_witness.colors[t]).collect();
    Coloring::new(m.source().labels().to_vec(), colors, target_witness.k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Exhaustive check over all k^n assignments.
    fn brute(c: &Complex) -> usize {
        let n = c.vertex_count();
        if n == 0 {
            return 0;
        }
        for k in 1..=n {
            let total = k.pow(n as u32);
            for code in 0..total {
                let mut x = code;
                let colors: Vec<usize> = (0..n)
                    .map(|_| {
                        let c = x % k + 1;
                        x /= k;
                        c
                    })
                    .collect();
                let col = Coloring { labels: c.labels().to_vec(), colors, k };
                if col.is_valid_for(c) {
                    return k;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn fixture_chromatic_numbers() {
        assert_eq!(chromatic_number(&fixtures::ex_l()).value, 3);
        assert_eq!(chromatic_number(&fixtures::ex_k()).value, 2);
        for n in 2..=6 {
            assert_eq!(chromatic_number(&Complex::gamma(n).unwrap()).value, 2);
        }
        assert_eq!(chromatic_number(&Complex::boundary(3).unwrap()).value, 3);
        assert_eq!(brute(&Complex::boundary(3).unwrap()), 3);
        assert_eq!(chromatic_number(&Complex::boundary(4).unwrap()).value, 2);
    }

    #[test]
    fn degenerate_conventions() {
        assert_eq!(chromatic_number(&Complex::empty()).value, 0);
        let points = Complex::build(&[vec!["x"], vec!["y"]], None).unwrap();
        assert_eq!(chromatic_number(&points).value, 1);
    }

    #[test]
    fn witness_is_valid_and_surjective() {
        let ch = chromatic_number(&fixtures::ex_l());
        assert!(ch.witness.is_valid_for(&fixtures::ex_l()));
        assert!(ch.witness.is_surjective());
    }

    #[test]
    fn graph_chromatic_examples() {
        assert_eq!(graph_chromatic_number(&fixtures::ex_l().underlying_graph()).value, 3);
        for n in 1..=6 {
            assert_eq!(graph_chromatic_number(&GraphView::complete(n)).value, n);
        }
        let edge = Complex::gamma(2).unwrap().underlying_graph();
        assert_eq!(graph_chromatic_number(&edge).value, 2);
        assert_eq!(graph_chromatic_number(&Complex::empty().underlying_graph()).value, 0);
    }

    #[test]
    fn block_coloring_examples() {
        let l = fixtures::ex_l();
        let g = graph_chromatic_number(&l.underlying_graph()).witness;
        let b = block_coloring(&l, &g).unwrap();
        assert_eq!(b.k, 3);
        assert!(b.is_valid_for(&l));

        let g3 = Complex::gamma(3).unwrap();
        let forced = graph_chromatic_number(&g3.underlying_graph()).witness;
        assert_eq!(forced.k, 3);
        let b = block_coloring(&g3, &forced).unwrap();
        assert_eq!(b.k, 2);
        assert!(b.is_valid_for(&g3));

        let with_point = Complex::build(&[vec!["a", "b"], vec!["z"]], None).unwrap();
        let w = graph_chromatic_number(&with_point.underlying_graph()).witness;
        assert!(matches!(block_coloring(&with_point, &w), Err(Error::SingletonFacet { .. })));
    }

    #[test]
    fn dimension_cannot_replace_min_facet_dimension() {
        let l = fixtures::ex_l();
        let graph_chi = graph_chromatic_number(&l.underlying_graph()).value;
        let claimed = graph_chi.div_ceil(l.dim() as usize);
        assert_eq!(claimed, 2);
        assert!(claimed < chromatic_number(&l).value);
    }

    #[test]
    fn product_coloring_examples() {
        let l = fixtures::ex_l();
        let opt = chromatic_number(&l).witness;
        assert_eq!(product_coloring(&l, &[(l.clone(), opt.clone())]).unwrap(), opt);

        let parts: Vec<(Complex, Coloring)> = [fixtures::l1(), fixtures::l2()]
            .into_iter()
            .map(|p| {
                let w = chromatic_number(&p).witness;
                (p, w)
            })
            .collect();
        assert_eq!(parts[0].1.k, 2);
        assert_eq!(parts[1].1.k, 2);
        let prod = product_coloring(&l, &parts).unwrap();
        assert!(prod.is_valid_for(&l));
        assert!(prod.k <= 4);

        let missing = vec![parts[0].clone()];
        assert!(matches!(product_coloring(&l, &missing), Err(Error::UncoveredFacet { .. })));
    }

    #[test]
    fn pullback_examples() {
        let k = fixtures::ex_k();
        // g(a') = g(d') = 1, g(b') = g(c') = 2
        let g = Coloring::new(k.labels().to_vec(), vec![1, 2, 2, 1], 2).unwrap();
        assert!(g.is_valid_for(&k));
        let pulled = pullback_coloring(&fixtures::f1_map(), &g).unwrap();
        assert!(pulled.is_valid_for(&fixtures::l1()));
        assert!(pulled.k <= 2);

        let id = VertexMap::identity(&k);
        assert_eq!(pullback_coloring(&id, &g).unwrap(), g);

        let l = fixtures::ex_l();
        let pairs = fixtures::graph_hom_pairs();
        let not_facet = VertexMap::from_pairs(l, k, &pairs).unwrap();
        assert!(matches!(pullback_coloring(&not_facet, &g), Err(Error::WrongMapClass { .. })));
    }
}
