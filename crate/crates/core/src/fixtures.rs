//! Worked-example complexes shipped with the crate.

use crate::complex::Complex;
use crate::maps::VertexMap;
use crate::scx::parse_scx;

pub const EX_L: &str = include_str!("../fixtures/ex_l.scx");
pub const EX_K: &str = include_str!("../fixtures/ex_k.scx");
pub const L1: &str = include_str!("../fixtures/l1.scx");
pub const L2: &str = include_str!("../fixtures/l2.scx");
pub const A: &str = include_str!("../fixtures/a.scx");
pub const B: &str = include_str!("../fixtures/b.scx");
pub const K3_STAR: &str = include_str!("../fixtures/k3_star.scx");

/// Every embedded fixture as `(file stem, contents)`.
pub const ALL: &[(&str, &str)] =
    &[("ex_l", EX_L), ("ex_k", EX_K), ("l1", L1), ("l2", L2), ("a", A), ("b", B), ("k3_star", K3_STAR)];

fn load(text: &str) -> Complex {
    parse_scx(text).expect("embedded fixture parses")
}

pub fn ex_l() -> Complex {
    load(EX_L)
}

pub fn ex_k() -> Complex {
    load(EX_K)
}

pub fn l1() -> Complex {
    load(L1)
}

pub fn l2() -> Complex {
    load(L2)
}

pub fn a() -> Complex {
    load(A)
}

pub fn b() -> Complex {
    load(B)
}

pub fn k3_star() -> Complex {
    load(K3_STAR)
}

/// Look a fixture up by stem.
pub fn by_name(name: &str) -> Option<Complex> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| load(t))
}

/// a→a', b→b', c,e→c', d→d' from L1 to EX_K.
pub fn f1_map() -> VertexMap {
    VertexMap::from_pairs(l1(), ex_k(), &[("a", "a'"), ("b", "b'"), ("c", "c'"), ("e", "c'"), ("d", "d'")])
        .expect("fixture map")
}

/// a,e→a', b,d→b', c→c' on the 1-skeletons of EX_L and EX_K.
pub fn graph_hom_pairs() -> [(&'static str, &'static str); 5] {
    [("a", "a'"), ("e", "a'"), ("b", "b'"), ("d", "b'"), ("c", "c'")]
}
