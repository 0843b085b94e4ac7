//! Abstract simplicial complexes stored by their facets.
//!
//! A [`Complex`] keeps a lexicographically sorted list of vertex labels and the antichain of
//! maximal faces as [`VertexSet`] masks over label indices. A face is a simplex exactly when it
//! is a non-empty subset of some facet. Isolated vertices are singleton facets, so every vertex
//! lies in at least one facet.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vset::{VertexSet, MAX_VERTICES};

#[derive(Clone, Debug)]
pub struct Complex {
    name: Option<String>,
    labels: Vec<String>,
    facets: Vec<VertexSet>,
}

/// Equality is structural on the canonical form; the name is metadata.
impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for Complex {}

fn check_labels<'a, I: IntoIterator<Item = &'a str>>(labels: I) -> Result<()> {
    let mut trimmed: BTreeMap<&str, &str> = BTreeMap::new();
    for raw in labels {
        let t = raw.trim();
        if let Some(prev) = trimmed.insert(t, raw) {
            if prev != raw {
                return Err(Error::DuplicateLabel { label: raw.to_string() });
            }
        }
    }
    for raw in trimmed.values() {
        if raw.is_empty() || raw.chars().any(char::is_whitespace) {
            return Err(Error::InvalidLabel { label: raw.to_string() });
        }
    }
    Ok(())
}

/// Keep only the maximal sets, sorted canonically.
pub(crate) fn absorb(mut faces: Vec<VertexSet>) -> Vec<VertexSet> {
    faces.retain(|f| !f.is_empty());
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

impl Complex {
    /// The complex with no vertices. Its dimension is -1.
    pub fn empty() -> Self {
        Complex { name: None, labels: Vec::new(), facets: Vec::new() }
    }

    /// Build a complex from generating faces, absorbing non-maximal ones.
    ///
    /// `explicit_vertices`, when given, must contain every vertex named in `faces`; vertices
    /// it lists that lie in no face become isolated (singleton facets).
    pub fn build<S: AsRef<str>>(faces: &[Vec<S>], explicit_vertices: Option<&[S]>) -> Result<Self> {
        for (index, face) in faces.iter().enumerate() {
            if face.is_empty() {
                return Err(Error::EmptyFace { index });
            }
        }
        let face_labels = faces.iter().flatten().map(AsRef::as_ref);
        let explicit = explicit_vertices.unwrap_or(&[]).iter().map(AsRef::as_ref);
        check_labels(face_labels.clone().chain(explicit.clone()))?;

        let mut all: BTreeSet<&str> = face_labels.collect();
        if explicit_vertices.is_some() {
            let declared: BTreeSet<&str> = explicit.collect();
            if let Some(missing) = all.iter().find(|l| !declared.contains(*l)) {
                return Err(Error::UnknownVertex { label: missing.to_string() });
            }
            all = declared;
        }
        if all.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices { count: all.len(), max: MAX_VERTICES });
        }
        let labels: Vec<String> = all.iter().map(|s| s.to_string()).collect();
        let index: BTreeMap<&str, usize> = all.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let masks = faces.iter().map(|face| VertexSet::from_indices(face.iter().map(|l| index[l.as_ref()]))).collect();
        Ok(Self::from_masks(labels, masks))
    }

    /// Build from already-sorted, distinct labels and index masks. Uncovered labels become
    /// singleton facets.
    pub(crate) fn from_masks(labels: Vec<String>, masks: Vec<VertexSet>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let covered = masks.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
        let mut faces = masks;
        faces.extend((0..labels.len()).filter(|&v| !covered.contains(v)).map(VertexSet::singleton));
        Complex { name: None, labels, facets: absorb(faces) }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.labels.len())
    }

    /// Facets in canonical (lexicographic) order.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Number of facets, singletons included.
    pub fn eta(&self) -> usize {
        self.facets.len()
    }

    pub fn nonunitary_facets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.facets.iter().copied().filter(|f| f.len() >= 2)
    }

    pub fn has_nonunitary_facet(&self) -> bool {
        self.facets.iter().any(|f| f.len() >= 2)
    }

    /// `dim = max facet size - 1`; -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn is_simplex(&self, face: VertexSet) -> bool {
        !face.is_empty() && self.facets.iter().any(|f| face.is_subset(*f))
    }

    pub fn is_facet(&self, face: VertexSet) -> bool {
        self.facets.binary_search(&face).is_ok()
    }

    pub fn names(&self, face: VertexSet) -> Vec<String> {
        face.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// Mask of a face given by labels.
    pub fn face(&self, labels: &[&str]) -> Result<VertexSet> {
        labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| Error::UnknownVertex { label: l.to_string() }))
            .collect::<Result<Vec<_>>>()
            .map(VertexSet::from_indices)
    }

    /// Every non-empty simplex, sorted canonically.
    pub fn simplices(&self) -> Vec<VertexSet> {
        let mut all: BTreeSet<VertexSet> = BTreeSet::new();
        for f in &self.facets {
            all.extend(f.nonempty_subsets());
        }
        all.into_iter().collect()
    }

    /// Vertices lying in no edge.
    pub fn isolated(&self) -> VertexSet {
        VertexSet::from_indices(self.facets.iter().filter(|f| f.len() == 1).flat_map(|f| f.iter()))
    }

    /// deg(v): number of distinct neighbours of v.
    pub fn degrees(&self) -> Vec<usize> {
        self.d_degree_table(1)
    }

    /// deg_d(v): number of vertices sharing a d-dimensional simplex with v, for `d >= 1`.
    pub fn d_degrees(&self, d: usize) -> Vec<usize> {
        self.d_degree_table(d)
    }

    fn d_degree_table(&self, d: usize) -> Vec<usize> {
        let mut nbrs = vec![VertexSet::EMPTY; self.labels.len()];
        for f in self.facets.iter().filter(|f| f.len() > d) {
            for v in f.iter() {
                nbrs[v] = nbrs[v].union(*f);
            }
        }
        nbrs.iter().enumerate().map(|(v, n)| n.len() - usize::from(n.contains(v))).collect()
    }

    pub fn metrics(&self) -> Metrics {
        let dim = self.dim();
        let sizes: BTreeSet<usize> = self.facets.iter().map(|f| f.len()).collect();
        let degrees = self.degrees();
        let top = dim.max(0) as usize;
        let d_tables: Vec<Vec<usize>> = (1..=top).map(|d| self.d_degrees(d)).collect();
        Metrics {
            dim,
            eta: self.eta(),
            pure: !self.facets.is_empty() && sizes.len() == 1,
            degree: self.labels.iter().cloned().zip(degrees).collect(),
            d_degree: self
                .labels
                .iter()
                .enumerate()
                .map(|(v, l)| (l.clone(), d_tables.iter().map(|t| t[v]).collect()))
                .collect(),
            isolated: self.names(self.isolated()),
            min_facet_size: sizes.iter().next().copied(),
            min_nonunitary_facet_size: sizes.iter().copied().find(|&s| s >= 2),
        }
    }

    /// The q-skeleton: all simplices of dimension at most `q`.
    pub fn skeleton(&self, q: usize) -> Complex {
        let mut faces = Vec::new();
        for f in &self.facets {
            if f.len() <= q + 1 {
                faces.push(*f);
            } else {
                faces.extend(f.subsets_of_size(q + 1));
            }
        }
        Complex { name: None, labels: self.labels.clone(), facets: absorb(faces) }
    }

    /// The underlying graph: all vertices, every 2-subset of a facet as an edge.
    pub fn underlying_graph(&self) -> GraphView {
        let mut edges = BTreeSet::new();
        for f in &self.facets {
            for e in f.subsets_of_size(2) {
                let mut it = e.iter();
                edges.insert((it.next().unwrap(), it.next().unwrap()));
            }
        }
        GraphView { labels: self.labels.clone(), edges: edges.into_iter().collect() }
    }

    /// The graph whose edges are the 1-dimensional facets.
    pub fn facet_graph(&self) -> GraphView {
        let edge_facets: Vec<VertexSet> = self.facets.iter().copied().filter(|f| f.len() == 2).collect();
        let support = edge_facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
        let (labels, remap) = self.restrict_labels(support);
        let edges = edge_facets
            .iter()
            .map(|e| {
                let mut it = e.iter().map(|v| remap[v]);
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        GraphView { labels, edges }
    }

    fn restrict_labels(&self, support: VertexSet) -> (Vec<String>, Vec<usize>) {
        let mut remap = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::with_capacity(support.len());
        for v in support.iter() {
            remap[v] = labels.len();
            labels.push(self.labels[v].clone());
        }
        (labels, remap)
    }

    fn remap_set(s: VertexSet, remap: &[usize]) -> VertexSet {
        VertexSet::from_indices(s.iter().map(|v| remap[v]))
    }

    /// Downward closure of a set of facets of `self`, on the vertices those facets span.
    pub fn closure(&self, facet_subset: &[VertexSet]) -> Result<Complex> {
        for f in facet_subset {
            if !self.is_facet(*f) {
                return Err(Error::NotAFacet { facet: self.names(*f) });
            }
        }
        Ok(self.induced_by_facets(facet_subset))
    }

    /// Closure without the facet check; callers guarantee membership.
    pub(crate) fn induced_by_facets(&self, facets: &[VertexSet]) -> Complex {
        let support = facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
        let (labels, remap) = self.restrict_labels(support);
        let masks = facets.iter().map(|f| Self::remap_set(*f, &remap)).collect();
        Complex::from_masks(labels, masks)
    }

    /// Complex on the given vertex subset whose facets are the maximal given faces.
    pub(crate) fn induced_by_faces(&self, support: VertexSet, faces: &[VertexSet]) -> Complex {
        let (labels, remap) = self.restrict_labels(support);
        let masks = faces.iter().map(|f| Self::remap_set(*f, &remap)).collect();
        Complex::from_masks(labels, masks)
    }

    /// Union of complexes; with `disjoint`, vertex sets must be pairwise disjoint.
    pub fn union(parts: &[Complex], disjoint: bool) -> Result<Complex> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("union needs at least one part".into()));
        }
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for p in parts {
            for l in &p.labels {
                if !seen.insert(l) && disjoint {
                    return Err(Error::OverlappingUnion { vertex: l.clone() });
                }
            }
        }
        if seen.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices { count: seen.len(), max: MAX_VERTICES });
        }
        let labels: Vec<String> = seen.iter().map(|s| s.to_string()).collect();
        let mut faces = Vec::new();
        for p in parts {
            let remap: Vec<usize> = p.labels.iter().map(|l| labels.binary_search(l).expect("label present")).collect();
            faces.extend(p.facets.iter().map(|f| Self::remap_set(*f, &remap)));
        }
        Ok(Complex::from_masks(labels, faces))
    }

    /// Rename every vertex; the renaming must be injective.
    pub fn relabel<F: Fn(&str) -> String>(&self, rename: F) -> Result<Complex> {
        let faces: Vec<Vec<String>> =
            self.facets.iter().map(|f| f.iter().map(|v| rename(&self.labels[v])).collect()).collect();
        let c = Complex::build(&faces, None)?;
        if c.vertex_count() != self.vertex_count() {
            return Err(Error::InvalidParameter("relabeling is not injective".into()));
        }
        Ok(Complex { name: self.name.clone(), ..c })
    }

    /// Connected components under vertex sharing, each as a facet subset.
    pub fn components(&self) -> Vec<Vec<VertexSet>> {
        let mut groups: Vec<(VertexSet, Vec<VertexSet>)> = Vec::new();
        for f in &self.facets {
            let mut merged = (*f, vec![*f]);
            let mut rest = Vec::new();
            for g in groups.drain(..) {
                if g.0.intersection(merged.0).is_empty() {
                    rest.push(g);
                } else {
                    merged.0 = merged.0.union(g.0);
                    merged.1.extend(g.1);
                }
            }
            rest.push(merged);
            groups = rest;
        }
        let mut out: Vec<Vec<VertexSet>> = groups
            .into_iter()
            .map(|(_, mut fs)| {
                fs.sort();
                fs
            })
            .collect();
        out.sort();
        out
    }

    /// Γ_n: the full simplex on vertices `1..=n`.
    pub fn gamma(n: usize) -> Result<Complex> {
        generate(GeneratorKind::Gamma, n, &GenParams::default())
    }

    /// 𝖪_n: all proper subsets of an n-set.
    pub fn boundary(n: usize) -> Result<Complex> {
        generate(GeneratorKind::Kn, n, &GenParams::default())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.facets.iter().map(|s| self.names(*s).join("")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Summary numbers of a complex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metrics {
    pub dim: isize,
    pub eta: usize,
    pub pure: bool,
    pub degree: BTreeMap<String, usize>,
    /// `d_degree[v][d - 1]` is deg_d(v) for `d` in `1..=dim`.
    pub d_degree: BTreeMap<String, Vec<usize>>,
    pub isolated: Vec<String>,
    pub min_facet_size: Option<usize>,
    pub min_nonunitary_facet_size: Option<usize>,
}

/// A simple graph over labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphView {
    pub labels: Vec<String>,
    /// `(u, v)` with `u < v`, sorted, no duplicates.
    pub edges: Vec<(usize, usize)>,
}

impl GraphView {
    /// K_n on vertices `1..=n`.
    pub fn complete(n: usize) -> GraphView {
        let mut labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        labels.sort();
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        GraphView { labels, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// The graph as a complex of dimension at most one.
    pub fn to_complex(&self) -> Complex {
        let masks = self.edges.iter().map(|&(u, v)| VertexSet::from_indices([u, v])).collect();
        Complex::from_masks(self.labels.clone(), masks)
    }

    pub fn adjacency(&self) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::EMPTY; self.labels.len()];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Gamma,
    Kn,
    Random,
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(GeneratorKind::Gamma),
            "kn" => Ok(GeneratorKind::Kn),
            "random" => Ok(GeneratorKind::Random),
            other => Err(Error::InvalidParameter(format!("unknown generator {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub max_facet_size: usize,
    pub density: f64,
    pub seed: Option<u64>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { max_facet_size: 3, density: 0.5, seed: None }
    }
}

/// Largest `n` accepted by the random generator (candidate faces are enumerated).
pub const MAX_RANDOM_VERTICES: usize = 20;

/// Generate Γ_n, 𝖪_n or a seeded random complex on vertices `1..=n`.
///
/// The random family draws every candidate face of size at most `max_facet_size`
/// independently with probability `density`, in increasing mask order, then absorbs.
pub fn generate(kind: GeneratorKind, n: usize, params: &GenParams) -> Result<Complex> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { count: n, max: MAX_VERTICES });
    }
    let mut labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    labels.sort();
    // position of vertex i (1-based) in lexicographic label order
    let pos: Vec<usize> = (1..=n).map(|i| labels.binary_search(&i.to_string()).expect("label present")).collect();
    let all = VertexSet::full(n);
    let faces = match kind {
        GeneratorKind::Gamma => vec![all],
        GeneratorKind::Kn => {
            if n < 2 {
                return Err(Error::InvalidParameter("kn needs n >= 2".into()));
            }
            all.subsets_of_size(n - 1)
        }
        GeneratorKind::Random => {
            let seed = params.seed.ok_or_else(|| Error::InvalidParameter("random generator requires a seed".into()))?;
            if params.max_facet_size == 0 {
                return Err(Error::InvalidParameter("max_facet_size must be at least 1".into()));
            }
            if !(0.0..=1.0).contains(&params.density) {
                return Err(Error::InvalidParameter("density must lie in [0, 1]".into()));
            }
            if n > MAX_RANDOM_VERTICES {
                return Err(Error::TooManyVertices { count: n, max: MAX_RANDOM_VERTICES });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = Vec::new();
            for raw in 1u64..(1u64 << n) {
                if raw.count_ones() as usize > params.max_facet_size {
                    continue;
                }
                if rng.gen_bool(params.density) {
                    let natural = VertexSet(raw);
                    picked.push(VertexSet::from_indices(natural.iter().map(|i| pos[i])));
                }
            }
            picked
        }
    };
    let faces = match kind {
        GeneratorKind::Random => faces,
        _ => faces.into_iter().map(|f| VertexSet::from_indices(f.iter().map(|i| pos[i]))).collect(),
    };
    Ok(Complex::from_masks(labels, faces))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(faces: &[&str]) -> Complex {
        let f: Vec<Vec<String>> = faces.iter().map(|s| s.chars().map(|c| c.to_string()).collect()).collect();
        Complex::build(&f, None).unwrap()
    }

    fn ex_l() -> Complex {
        c(&["abc", "cd", "de", "ce"])
    }

    fn facet_strings(x: &Complex) -> Vec<String> {
        x.facets().iter().map(|f| x.names(*f).join("")).collect()
    }

    #[test]
    fn absorption_keeps_maximal_faces() {
        assert_eq!(facet_strings(&c(&["abc", "ab"])), vec!["abc"]);
    }

    #[test]
    fn ex_l_canonical_facets() {
        let l = ex_l();
        assert_eq!(facet_strings(&l), vec!["abc", "cd", "ce", "de"]);
        assert_eq!(l.dim(), 2);
    }

    #[test]
    fn empty_complex_conventions() {
        let e = Complex::build::<&str>(&[], None).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.dim(), -1);
        let m = e.metrics();
        assert_eq!((m.eta, m.pure, m.min_facet_size), (0, false, None));
    }

    #[test]
    fn empty_face_rejected_with_index() {
        let faces: Vec<Vec<&str>> = vec![vec!["a"], vec![]];
        assert!(matches!(Complex::build(&faces, None), Err(Error::EmptyFace { index: 1 })));
    }

    #[test]
    fn whitespace_duplicates_rejected() {
        let faces = vec![vec!["a", " a"]];
        assert!(matches!(Complex::build(&faces, None), Err(Error::DuplicateLabel { .. })));
        let faces = vec![vec!["a b"]];
        assert!(matches!(Complex::build(&faces, None), Err(Error::InvalidLabel { .. })));
    }

    #[test]
    fn explicit_vertices_add_isolated_singletons() {
        let faces = vec![vec!["a", "b"]];
        let verts = ["a", "b", "z"];
        let x = Complex::build(&faces, Some(&verts[..])).unwrap();
        assert_eq!(facet_strings(&x), vec!["ab", "z"]);
        let bad = ["a"];
        assert!(Complex::build(&faces, Some(&bad[..])).is_err());
    }

    #[test]
    fn generators() {
        let g3 = Complex::gamma(3).unwrap();
        assert_eq!(facet_strings(&g3), vec!["123"]);
        assert_eq!(g3.dim(), 2);
        let k3 = Complex::boundary(3).unwrap();
        assert_eq!(facet_strings(&k3), vec!["12", "13", "23"]);
        assert_eq!(k3.eta(), 3);
        assert!(Complex::boundary(1).is_err());
        let p = GenParams { max_facet_size: 3, density: 1.0, seed: Some(7) };
        let r = generate(GeneratorKind::Random, 4, &p).unwrap();
        assert_eq!(facet_strings(&r), vec!["123", "124", "134", "234"]);
        assert!(generate(GeneratorKind::Random, 4, &GenParams { seed: None, ..p.clone() }).is_err());
    }

    #[test]
    fn random_generator_is_reproducible() {
        let p = GenParams { max_facet_size: 3, density: 0.3, seed: Some(42) };
        let a = generate(GeneratorKind::Random, 7, &p).unwrap();
        let b = generate(GeneratorKind::Random, 7, &p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertex_count(), 7);
    }

    #[test]
    fn metrics_of_fixtures() {
        let m = ex_l().metrics();
        assert_eq!((m.dim, m.eta, m.pure), (2, 4, false));
        assert_eq!(m.degree["c"], 4);
        assert_eq!(m.d_degree["c"], vec![4, 2]);
        assert_eq!(m.min_nonunitary_facet_size, Some(2));
        let g4 = Complex::gamma(4).unwrap().metrics();
        assert_eq!((g4.dim, g4.eta, g4.pure), (3, 1, true));
        let k4 = Complex::boundary(4).unwrap().metrics();
        assert_eq!((k4.dim, k4.eta, k4.pure), (2, 4, true));
    }

    #[test]
    fn skeletons() {
        assert_eq!(Complex::gamma(3).unwrap().skeleton(1), Complex::boundary(3).unwrap());
        assert_eq!(facet_strings(&ex_l().skeleton(1)), vec!["ab", "ac", "bc", "cd", "ce", "de"]);
        assert_eq!(ex_l().skeleton(5), ex_l());
    }

    #[test]
    fn graphs() {
        let g = Complex::boundary(4).unwrap().underlying_graph();
        assert_eq!(g.edges.len(), 6);
        let u = ex_l().underlying_graph();
        assert_eq!(u.edges.len(), 6);
        let single = c(&["x"]).underlying_graph();
        assert_eq!((single.vertex_count(), single.edges.len()), (1, 0));

        let fg = ex_l().facet_graph();
        assert_eq!(fg.labels, vec!["c", "d", "e"]);
        assert_eq!(fg.edges.len(), 3);
        assert_eq!(Complex::gamma(3).unwrap().facet_graph().vertex_count(), 0);
        assert_eq!(Complex::boundary(3).unwrap().facet_graph().edges.len(), 3);
    }

    #[test]
    fn unions() {
        let one = |s: &[&str]| {
            let f: Vec<Vec<String>> = s.iter().map(|x| x.split(',').map(String::from).collect()).collect();
            Complex::build(&f, None).unwrap()
        };
        let a = one(&["1,2", "1,3"]);
        let b = one(&["2,3"]);
        assert_eq!(Complex::union(&[a.clone(), b], false).unwrap(), Complex::boundary(3).unwrap());
        let star = one(&["*"]);
        let u = Complex::union(&[Complex::boundary(3).unwrap(), star], true).unwrap();
        assert_eq!((u.vertex_count(), u.eta()), (4, 4));
        assert_eq!(Complex::union(&[a.clone(), a.clone()], false).unwrap(), a);
        assert!(matches!(
            Complex::union(&[a.clone(), Complex::boundary(3).unwrap()], true),
            Err(Error::OverlappingUnion { .. })
        ));
    }

    #[test]
    fn closures() {
        let l = ex_l();
        let abc = l.face(&["a", "b", "c"]).unwrap();
        let t = l.closure(&[abc]).unwrap();
        assert_eq!(facet_strings(&t), vec!["abc"]);
        let cd = l.face(&["c", "d"]).unwrap();
        let ce = l.face(&["c", "e"]).unwrap();
        let p = l.closure(&[cd, ce]).unwrap();
        assert_eq!(p.labels(), &["c", "d", "e"]);
        assert_eq!(facet_strings(&p), vec!["cd", "ce"]);
        assert_eq!(l.closure(l.facets()).unwrap(), l);
        let ab = l.face(&["a", "b"]).unwrap();
        assert!(matches!(l.closure(&[ab]), Err(Error::NotAFacet { .. })));
    }

    #[test]
    fn components_split_on_shared_vertices() {
        let x = c(&["ab", "bc", "de", "f"]);
        assert_eq!(x.components().len(), 3);
    }
}
