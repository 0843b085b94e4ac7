//! Vertex maps between complexes and their classification.
//!
//! All checks run on facets only: a face's image is a subset of its facet's image, so a map
//! sends every simplex to a simplex once it does so for every facet, and it is injective on
//! every simplex once it is injective on every facet.

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::vset::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    source: Complex,
    target: Complex,
    assignment: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapProperty {
    Simplicial,
    Facet,
    Strict,
    Injective,
}

/// The first place a map fails one of the properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: MapProperty,
    /// The violating source facet, or the two colliding vertices for injectivity.
    pub simplex: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapClass {
    pub simplicial: bool,
    pub strict: bool,
    pub facet: bool,
    pub injective: bool,
    /// First failure, checking simplicial, facet, strict, injective in that order.
    pub witness: Option<Violation>,
}

impl VertexMap {
    pub fn new(source: Complex, target: Complex, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "assignment has {} entries for {} source vertices",
                assignment.len(),
                source.vertex_count()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.vertex_count()) {
            return Err(Error::InvalidParameter(format!("target index {bad} out of range")));
        }
        Ok(VertexMap { source, target, assignment })
    }

    /// Build from `(source label, target label)` pairs covering every source vertex.
    pub fn from_pairs<S: AsRef<str>>(source: Complex, target: Complex, pairs: &[(S, S)]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; source.vertex_count()];
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let s = source.index_of(a).ok_or_else(|| Error::UnknownVertex { label: a.to_string() })?;
            let t = target.index_of(b).ok_or_else(|| Error::UnknownVertex { label: b.to_string() })?;
            assignment[s] = t;
        }
        if let Some(v) = assignment.iter().position(|&t| t == usize::MAX) {
            return Err(Error::UnmappedVertex { label: source.label(v).to_string() });
        }
        Ok(VertexMap { source, target, assignment })
    }

    pub fn identity(c: &Complex) -> Self {
        VertexMap { source: c.clone(), target: c.clone(), assignment: (0..c.vertex_count()).collect() }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn apply_label(&self, label: &str) -> Option<&str> {
        self.source.index_of(label).map(|v| self.target.label(self.assignment[v]))
    }

    pub fn image(&self, face: VertexSet) -> VertexSet {
        image_of(&self.assignment, face)
    }

    pub fn pairs(&self) -> Vec<(&str, &str)> {
        self.assignment.iter().enumerate().map(|(v, &t)| (self.source.label(v), self.target.label(t))).collect()
    }

    pub fn classify(&self) -> MapClass {
        classify_assignment(&self.source, &self.target, &self.assignment)
    }
}

pub(crate) fn image_of(assignment: &[usize], face: VertexSet) -> VertexSet {
    VertexSet::from_indices(face.iter().map(|v| assignment[v]))
}

/// Classify a raw assignment `source index -> target index`.
pub fn classify_assignment(source: &Complex, target: &Complex, assignment: &[usize]) -> MapClass {
    let mut simplicial_bad = None;
    let mut facet_bad = None;
    let mut strict_bad = None;
    for &f in source.facets() {
        let img = image_of(assignment, f);
        let simplex = target.is_simplex(img);
        if !simplex && simplicial_bad.is_none() {
            simplicial_bad = Some(f);
        }
        if f.len() >= 2 && facet_bad.is_none() && !(img.len() >= 2 && target.is_facet(img)) {
            facet_bad = Some(f);
        }
        if strict_bad.is_none() && !(simplex && img.len() == f.len()) {
            strict_bad = Some(f);
        }
    }
    let mut seen = vec![usize::MAX; target.vertex_count()];
    let mut collision = None;
    for (v, &t) in assignment.iter().enumerate() {
        if seen[t] != usize::MAX {
            collision = Some(VertexSet::from_indices([seen[t], v]));
            break;
        }
        seen[t] = v;
    }

    let simplicial = simplicial_bad.is_none();
    let facet = simplicial && facet_bad.is_none();
    let strict = strict_bad.is_none();
    let injective = collision.is_none();
    let witness = [
        (MapProperty::Simplicial, simplicial_bad),
        (MapProperty::Facet, if simplicial { facet_bad } else { None }),
        (MapProperty::Strict, strict_bad),
        (MapProperty::Injective, collision),
    ]
    .into_iter()
    .find_map(|(property, s)| s.map(|s| Violation { property, simplex: source.names(s) }));
    MapClass { simplicial, strict, facet, injective, witness }
}

/// f^{-1}(sub): vertices mapping into `sub`, with the source simplices whose image is a simplex
/// of `sub`.
pub fn image_inverse(m: &VertexMap, sub: &Complex) -> Result<Complex> {
    if !m.classify().simplicial {
        return Err(Error::WrongMapClass { expected: "simplicial" });
    }
    let to_target = sub_in_target(m.target(), sub)?;
    let sub_mask = |img: VertexSet| {
        // translate a target mask into `sub` indices, if every vertex lies in sub
        let mut out = VertexSet::EMPTY;
        for t in img.iter() {
            match to_target.iter().position(|&x| x == t) {
                Some(i) => out.insert(i),
                None => return None,
            }
        }
        Some(out)
    };
    let source = m.source();
    let support = VertexSet::from_indices((0..source.vertex_count()).filter(|&v| to_target.contains(&m.apply(v))));
    let mut faces = Vec::new();
    for f in source.facets() {
        let inside = f.intersection(support);
        for s in inside.nonempty_subsets() {
            if let Some(img) = sub_mask(m.image(s)) {
                if sub.is_simplex(img) {
                    faces.push(s);
                }
            }
        }
    }
    Ok(source.induced_by_faces(support, &faces))
}

/// Index of each `sub` vertex in `target`, checking that `sub` is a subcomplex.
fn sub_in_target(target: &Complex, sub: &Complex) -> Result<Vec<usize>> {
    let idx = sub
        .labels()
        .iter()
        .map(|l| target.index_of(l).ok_or_else(|| Error::NotSubcomplex { simplex: vec![l.clone()] }))
        .collect::<Result<Vec<usize>>>()?;
    for f in sub.facets() {
        let in_target = VertexSet::from_indices(f.iter().map(|v| idx[v]));
        if !target.is_simplex(in_target) {
            return Err(Error::NotSubcomplex { simplex: sub.names(*f) });
        }
    }
    Ok(idx)
}

/// The restriction f| : f^{-1}(sub) -> sub.
pub fn restrict_to_inverse(m: &VertexMap, sub: &Complex) -> Result<VertexMap> {
    let pre = image_inverse(m, sub)?;
    let assignment = pre
        .labels()
        .iter()
        .map(|l| {
            let t = m.apply_label(l).expect("preimage vertex in source");
            sub.index_of(t).expect("image lies in sub")
        })
        .collect();
    VertexMap::new(pre, sub.clone(), assignment)
}

/// `second ∘ first`.
pub fn compose(first: &VertexMap, second: &VertexMap) -> Result<VertexMap> {
    if first.target() != second.source() {
        return Err(Error::EndpointMismatch);
    }
    let assignment = first.assignment.iter().map(|&m| second.assignment[m]).collect();
    VertexMap::new(first.source.clone(), second.target.clone(), assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ex_graph_map_is_strict_but_not_facet() {
        let (l, k) = (fixtures::ex_l(), fixtures::ex_k());
        let g =
            VertexMap::from_pairs(l, k, &[("a", "a'"), ("e", "a'"), ("b", "b'"), ("d", "b'"), ("c", "c'")]).unwrap();
        let class = g.classify();
        assert!(class.simplicial && class.strict && !class.facet && !class.injective);
        let w = class.witness.unwrap();
        assert_eq!(w.property, MapProperty::Facet);
        assert_eq!(w.simplex, vec!["c", "d"]);
    }

    #[test]
    fn paper_cover_map_is_facet() {
        let f1 = fixtures::f1_map();
        let class = f1.classify();
        assert!(class.simplicial && class.facet);
        assert!(!class.injective);
    }

    #[test]
    fn identity_has_every_property() {
        let l = fixtures::ex_l();
        let class = VertexMap::identity(&l).classify();
        assert!(class.simplicial && class.strict && class.facet && class.injective);
        assert_eq!(class.witness, None);
    }

    #[test]
    fn non_simplicial_witness() {
        let l = Complex::gamma(3).unwrap();
        let k = Complex::boundary(3).unwrap();
        let class = VertexMap::identity(&l);
        let m = VertexMap::new(l, k, class.assignment().to_vec()).unwrap();
        let c = m.classify();
        assert!(!c.simplicial && !c.facet);
        assert_eq!(c.witness.unwrap().property, MapProperty::Simplicial);
    }

    #[test]
    fn image_inverse_examples() {
        let k = fixtures::ex_k();
        let sub = k.closure(&[k.face(&["c'", "d'"]).unwrap()]).unwrap();
        let inv = image_inverse(&fixtures::f1_map(), &sub).unwrap();
        assert_eq!(inv.labels(), &["c", "d", "e"]);
        let facets: Vec<Vec<String>> = inv.facets().iter().map(|f| inv.names(*f)).collect();
        assert_eq!(facets, vec![vec!["c", "d"], vec!["d", "e"]]);

        let l = fixtures::ex_l();
        assert_eq!(image_inverse(&VertexMap::identity(&l), &l).unwrap(), l);
        let cd = l.closure(&[l.face(&["c", "d"]).unwrap()]).unwrap();
        assert_eq!(image_inverse(&VertexMap::identity(&l), &cd).unwrap(), cd);

        let point = Complex::build(&[vec!["p"]], None).unwrap();
        let constant = VertexMap::new(l.clone(), point.clone(), vec![0; 5]).unwrap();
        assert_eq!(image_inverse(&constant, &point).unwrap(), l);

        let not_sub = Complex::build(&[vec!["a'", "d'"]], None).unwrap();
        assert!(matches!(image_inverse(&fixtures::f1_map(), &not_sub), Err(Error::NotSubcomplex { .. })));
    }

    #[test]
    fn compose_checks_endpoints() {
        let f1 = fixtures::f1_map();
        let id_k = VertexMap::identity(f1.target());
        assert_eq!(compose(&f1, &id_k).unwrap(), f1);
        let id_l1 = VertexMap::identity(f1.source());
        assert_eq!(compose(&id_l1, &f1).unwrap(), f1);
        assert!(matches!(compose(&f1, &f1), Err(Error::EndpointMismatch)));
    }
}
