//! Seeded property harness.
//!
//! Every suite is a generator, drawing a [`Case`] from a per-trial RNG, and a checker that only
//! looks at the case. A failing case is written out as a self-contained bundle that
//! [`replay`] re-runs without the generator.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{block_coloring, chromatic_number, graph_chromatic_number, product_coloring, pullback_coloring};
use crate::complex::Complex;
use crate::complexity::{bounds, compute, disjoint_decompose, Complexity, ComplexityQuery, ComputeOptions};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::homsearch::{find_map, group_feasible, MapKind, SearchProblem};
use crate::maps::{classify_assignment, compose, image_inverse, restrict_to_inverse, VertexMap};
use crate::oracle::{brute_force_chromatic, brute_force_cover_complexity, brute_force_map_search, OracleLimits};
use crate::scx::{parse_scx, serialize_scx};
use crate::vset::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_vertices: usize,
    pub max_facet_size: usize,
    /// Suites to run; `None` runs all of them.
    pub properties: Option<Vec<String>>,
    pub fixtures: bool,
    pub observations: bool,
    /// Where counterexample bundles are written, if anywhere.
    pub bundle_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 1,
            trials: 200,
            max_vertices: 7,
            max_facet_size: 4,
            properties: None,
            fixtures: true,
            observations: true,
            bundle_dir: None,
        }
    }
}

impl VerifyConfig {
    pub fn suites(&self) -> Result<Vec<&'static Suite>> {
        match &self.properties {
            None => Ok(SUITES.iter().collect()),
            Some(names) => names
                .iter()
                .map(|n| suite(n).ok_or_else(|| Error::InvalidParameter(format!("unknown property suite {n:?}"))))
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let suites = self.suites()?;
        if self.trials == 0 && (!suites.is_empty() || self.observations) {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.max_facet_size < 2 {
            return Err(Error::InvalidParameter("max_facet_size must be at least 2".into()));
        }
        if !(2..=12).contains(&self.max_vertices) {
            return Err(Error::InvalidParameter("max_vertices must lie in 2..=12".into()));
        }
        Ok(())
    }
}

/// Named complexes plus a seed for any extra randomness the checker needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub complexes: Vec<(String, Complex)>,
    pub aux: u64,
}

impl Case {
    fn new(aux: u64) -> Self {
        Case { complexes: Vec::new(), aux }
    }

    fn with(mut self, role: &str, c: Complex) -> Self {
        self.complexes.push((role.to_string(), c));
        self
    }

    pub fn get(&self, role: &str) -> Result<&Complex> {
        self.complexes
            .iter()
            .find(|(r, _)| r == role)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::InvalidParameter(format!("case has no complex {role:?}")))
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.aux)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Skip,
    Fail(String),
}

type Generator = fn(&mut ChaCha8Rng, &VerifyConfig) -> Case;
type Checker = fn(&Case) -> Result<Check>;

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    generate: Generator,
    check: Checker,
}

pub static SUITES: &[Suite] = &[
    Suite {
        name: "core",
        about: "antichain, round trips, degrees, skeletons, graphs, unions",
        generate: gen_three,
        check: check_core,
    },
    Suite {
        name: "maps",
        about: "classification lattice, degree lemma, composition, isomorphisms",
        generate: gen_maps,
        check: check_maps,
    },
    Suite {
        name: "image-inverse",
        about: "facets of an image inverse are facets of the source",
        generate: gen_pair,
        check: check_image_inverse,
    },
    Suite {
        name: "coloring",
        about: "chromatic inequalities and colouring constructions",
        generate: gen_pair,
        check: check_coloring,
    },
    Suite {
        name: "homsearch",
        about: "map search against exhaustive search and necessary conditions",
        generate: gen_oracle_pair,
        check: check_homsearch,
    },
    Suite { name: "c-le-ic", about: "C <= IC and IC >= IC_s", generate: gen_pair, check: check_c_le_ic },
    Suite {
        name: "c-one",
        about: "C = 1 and IC = 1 exactly when a single map exists",
        generate: gen_pair,
        check: check_c_one,
    },
    Suite {
        name: "triangle",
        about: "C(L;K) <= C(L;H) C(H;K), and IC likewise",
        generate: gen_triple,
        check: check_triangle,
    },
    Suite {
        name: "monotone",
        about: "C(L';H) <= C(L;H) <= C(L;H') under facet maps",
        generate: gen_monotone,
        check: check_monotone,
    },
    Suite {
        name: "subadditive",
        about: "max <= C(A u B) <= sum over facet subcomplexes",
        generate: gen_split,
        check: check_subadditive,
    },
    Suite { name: "chromatic-lower", about: "chi(L) <= chi(K)^C", generate: gen_pair, check: check_chromatic_lower },
    Suite { name: "graph-lower", about: "C(G_L;G_K) <= C(L;K)", generate: gen_pair, check: check_graph_lower },
    Suite {
        name: "eta-upper",
        about: "C <= eta(L) and the infinity dichotomy",
        generate: gen_pair,
        check: check_eta_upper,
    },
    Suite {
        name: "complete-target",
        about: "eta(L) <= IC(L;Gamma_n), equality for pure L",
        generate: gen_complete,
        check: check_complete_target,
    },
    Suite {
        name: "isomorphism",
        about: "values are invariant under relabelling",
        generate: gen_pair,
        check: check_isomorphism,
    },
    Suite {
        name: "skeleton",
        about: "skeleton chains and their equalities for Gamma_n and K_n targets",
        generate: gen_skeleton,
        check: check_skeleton,
    },
    Suite {
        name: "isolated",
        about: "C and C_s ignore added isolated vertices",
        generate: gen_pair,
        check: check_isolated,
    },
    Suite {
        name: "disjoint",
        about: "C of a disjoint union is the maximum over components",
        generate: gen_disjoint,
        check: check_disjoint,
    },
    Suite { name: "oracle", about: "solvers agree with brute force", generate: gen_oracle_pair, check: check_oracle },
];

impl Suite {
    /// The case drawn for `trial` under `cfg`.
    pub fn case(&self, cfg: &VerifyConfig, trial: usize) -> Case {
        (self.generate)(&mut trial_rng(cfg.seed, self.name, trial), cfg)
    }

    pub fn check(&self, case: &Case) -> Result<Check> {
        (self.check)(case)
    }
}

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

// ---------------------------------------------------------------- generation

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random complex on `n` vertices with at most `max_facets` generating faces.
fn random_complex(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_size: usize,
    max_facets: usize,
    prefix: &str,
    keep_isolated: bool,
) -> Complex {
    let names = labels(prefix, n);
    let m = rng.gen_range(1..=max_facets);
    let mut faces = Vec::with_capacity(m);
    for _ in 0..m {
        let size = if n >= 2 && rng.gen_bool(0.9) { rng.gen_range(2..=max_size.min(n)) } else { 1 };
        let mut pick: Vec<String> = names.choose_multiple(rng, size).cloned().collect();
        pick.sort();
        faces.push(pick);
    }
    let explicit = keep_isolated && rng.gen_bool(0.3);
    Complex::build(&faces, if explicit { Some(&names[..]) } else { None }).expect("generated faces are valid")
}

fn random_source(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Complex {
    let n = rng.gen_range(1..=cfg.max_vertices);
    random_complex(rng, n, cfg.max_facet_size, 6, "", true)
}

fn random_target(rng: &mut ChaCha8Rng) -> Complex {
    let n = rng.gen_range(2..=4);
    let keep_isolated = rng.gen_bool(0.2);
    random_complex(rng, n, 4, 4, "t", keep_isolated)
}

fn gen_pair(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let l = random_source(rng, cfg);
    let k = random_target(rng);
    Case::new(rng.gen()).with("L", l).with("K", k)
}

fn gen_three(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let a = random_source(rng, cfg);
    let b = random_source(rng, cfg);
    let c = random_source(rng, cfg);
    Case::new(rng.gen()).with("L", a).with("M", b).with("N", c)
}

fn gen_maps(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let l = random_source(rng, cfg);
    let k = random_target(rng);
    let m = random_target(rng);
    Case::new(rng.gen()).with("L", l).with("K", k).with("M", m)
}

fn oracle_source(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Complex {
    let lim = OracleLimits::default();
    let n = rng.gen_range(1..=lim.max_source_vertices.min(cfg.max_vertices));
    random_complex(rng, n, cfg.max_facet_size, lim.max_facets, "", true)
}

fn gen_oracle_pair(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let l = oracle_source(rng, cfg);
    let k = random_target(rng);
    Case::new(rng.gen()).with("L", l).with("K", k)
}

fn gen_triple(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let l = random_source(rng, cfg);
    let n = rng.gen_range(2..=5);
    let h = random_complex(rng, n, cfg.max_facet_size, 4, "h", false);
    let k = random_target(rng);
    Case::new(rng.gen()).with("L", l).with("H", h).with("K", k)
}

fn random_facet_closure(rng: &mut ChaCha8Rng, c: &Complex) -> Complex {
    let mut picked: Vec<VertexSet> = c.facets().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if picked.is_empty() {
        picked.push(*c.facets().choose(rng).expect("non-empty complex"));
    }
    c.closure(&picked).expect("facets of c")
}

fn gen_monotone(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let l = random_source(rng, cfg);
    let h = random_target(rng);
    let l_small = if rng.gen_bool(0.7) { random_facet_closure(rng, &l) } else { random_source(rng, cfg) };
    let h_small = if rng.gen_bool(0.7) { random_facet_closure(rng, &h) } else { random_target(rng) };
    Case::new(rng.gen()).with("L'", l_small).with("L", l).with("H'", h_small).with("H", h)
}

fn gen_split(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let l = random_source(rng, cfg);
    let h = random_target(rng);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &f in l.facets() {
        match rng.gen_range(0..3) {
            0 => a.push(f),
            1 => b.push(f),
            _ => {
                a.push(f);
                b.push(f);
            }
        }
    }
    if a.is_empty() {
        a.push(l.facets()[0]);
    }
    if b.is_empty() {
        b.push(*l.facets().last().expect("non-empty"));
    }
    let a = l.closure(&a).expect("facets");
    let b = l.closure(&b).expect("facets");
    Case::new(rng.gen()).with("L", l).with("A", a).with("B", b).with("H", h)
}

fn gen_complete(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let n = rng.gen_range(2..=4);
    let k = Complex::gamma(n).expect("n >= 1");
    let l = if rng.gen_bool(0.5) { pure_complex(rng, cfg.max_vertices.max(n), n, 6) } else { random_source(rng, cfg) };
    Case::new(rng.gen()).with("L", l).with("K", k)
}

/// Pure complex on at most `max_vertices` vertices whose facets all have `size` vertices.
pub fn pure_complex(rng: &mut ChaCha8Rng, max_vertices: usize, size: usize, max_facets: usize) -> Complex {
    let n = rng.gen_range(size..=max_vertices.max(size));
    let names = labels("", n);
    let m = rng.gen_range(1..=max_facets);
    let faces: Vec<Vec<String>> = (0..m)
        .map(|_| {
            let mut f: Vec<String> = names.choose_multiple(rng, size).cloned().collect();
            f.sort();
            f
        })
        .collect();
    Complex::build(&faces, None).expect("valid faces")
}

fn gen_skeleton(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let l = random_source(rng, cfg);
    let k = match rng.gen_range(0..3) {
        0 => random_target(rng),
        1 => Complex::gamma(rng.gen_range(2..=4)).expect("n >= 1"),
        _ => Complex::boundary(rng.gen_range(3..=4)).expect("n >= 2"),
    };
    Case::new(rng.gen()).with("L", l).with("K", k)
}

fn gen_disjoint(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Case {
    let n = rng.gen_range(1..=cfg.max_vertices.min(5));
    let a = random_complex(rng, n, cfg.max_facet_size, 3, "a", true);
    let m = rng.gen_range(1..=cfg.max_vertices.min(5));
    let b = random_complex(rng, m, cfg.max_facet_size, 3, "b", true);
    let l = Complex::union(&[a, b], true).expect("disjoint labels");
    let k = random_target(rng);
    Case::new(rng.gen()).with("L", l).with("K", k)
}

// ---------------------------------------------------------------- checking helpers

fn value(l: &Complex, k: &Complex, kind: MapKind, injective: bool) -> Result<Complexity> {
    Ok(compute(&ComplexityQuery::new(l, k, kind, injective))?.value)
}

fn c_of(l: &Complex, k: &Complex) -> Result<Complexity> {
    value(l, k, MapKind::Facet, false)
}

fn ic_of(l: &Complex, k: &Complex) -> Result<Complexity> {
    value(l, k, MapKind::Facet, true)
}

fn exists(l: &Complex, k: &Complex, kind: MapKind, injective: bool) -> Result<Option<VertexMap>> {
    find_map(&SearchProblem::new(l, k, kind, injective)).into_result()
}

/// Collects failures; the first one becomes the case's message.
#[derive(Default)]
struct Verdict {
    failures: Vec<String>,
    checked: bool,
}

impl Verdict {
    fn expect(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.checked = true;
        if !ok {
            self.failures.push(message());
        }
    }

    fn finish(self) -> Check {
        match (self.failures.into_iter().next(), self.checked) {
            (Some(m), _) => Check::Fail(m),
            (None, true) => Check::Pass,
            (None, false) => Check::Skip,
        }
    }
}

fn relabel_randomly(c: &Complex, rng: &mut ChaCha8Rng, prefix: &str) -> Complex {
    let mut perm: Vec<usize> = (0..c.vertex_count()).collect();
    perm.shuffle(rng);
    let names: HashMap<String, String> =
        c.labels().iter().zip(&perm).map(|(l, p)| (l.clone(), format!("{prefix}{p}"))).collect();
    c.relabel(|s| names[s].clone()).expect("permutation keeps labels distinct")
}

fn graph_edges(c: &Complex) -> BTreeSet<(String, String)> {
    let g = c.underlying_graph();
    g.edges.iter().map(|&(a, b)| (g.labels[a].clone(), g.labels[b].clone())).collect()
}

fn facet_graph_edges(c: &Complex) -> BTreeSet<(String, String)> {
    let g = c.facet_graph();
    g.edges.iter().map(|&(a, b)| (g.labels[a].clone(), g.labels[b].clone())).collect()
}

fn with_isolated(c: &Complex, label: &str) -> Complex {
    let point = Complex::build(&[vec![label]], None).expect("one vertex");
    Complex::union(&[c.clone(), point], true).expect("fresh label")
}

/// Graph homomorphism existence between underlying graphs, by exhaustive search.
fn graph_hom_exists(l: &Complex, k: &Complex) -> bool {
    let (gl, gk) = (l.underlying_graph(), k.underlying_graph());
    let adj = gk.adjacency();
    let (ns, nt) = (gl.vertex_count(), gk.vertex_count());
    if ns == 0 {
        return true;
    }
    if nt == 0 {
        return false;
    }
    let mut a = vec![0usize; ns];
    loop {
        if gl.edges.iter().all(|&(x, y)| adj[a[x]].contains(a[y])) {
            return true;
        }
        let mut i = ns;
        loop {
            if i == 0 {
                return false;
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

fn is_boundary_complex(c: &Complex) -> bool {
    let n = c.vertex_count();
    n >= 3 && c.eta() == n && c.facets().iter().all(|f| f.len() == n - 1)
}

// ---------------------------------------------------------------- checkers

fn check_core(case: &Case) -> Result<Check> {
    let (l, m, n) = (case.get("L")?, case.get("M")?, case.get("N")?);
    let mut v = Verdict::default();
    for c in [l, m, n] {
        let fs = c.facets();
        let antichain =
            fs.iter().enumerate().all(|(i, f)| fs.iter().enumerate().all(|(j, g)| i == j || !f.is_subset(*g)));
        v.expect(antichain, || format!("facets of {c} are not an antichain"));
        let faces: Vec<Vec<String>> = fs.iter().map(|f| c.names(*f)).collect();
        v.expect(Complex::build(&faces, None)? == *c, || format!("rebuilding {c} from its facets changes it"));
        v.expect(parse_scx(&serialize_scx(c))? == *c, || format!("{c} does not survive a text round trip"));
        let deg = c.degrees();
        let top = c.dim().max(1) as usize;
        let tables: Vec<Vec<usize>> = (1..=top).map(|d| c.d_degrees(d)).collect();
        for vtx in 0..c.vertex_count() {
            let sum: usize = tables.iter().map(|t| t[vtx]).sum();
            v.expect(deg[vtx] <= sum, || format!("deg({}) exceeds the sum of its d-degrees in {c}", c.label(vtx)));
        }
        for q in 0..=3 {
            let s = c.skeleton(q);
            v.expect(s.skeleton(q) == s, || format!("skeleton {q} of {c} is not idempotent"));
            v.expect(s.dim() <= q as isize, || format!("skeleton {q} of {c} has dimension {}", s.dim()));
        }
        v.expect(facet_graph_edges(c).is_subset(&graph_edges(c)), || format!("facet graph of {c} is not a subgraph"));
    }
    let lm = Complex::union(&[l.clone(), m.clone()], false)?;
    let ml = Complex::union(&[m.clone(), l.clone()], false)?;
    v.expect(lm == ml, || "union is not commutative".into());
    let left = Complex::union(&[lm, n.clone()], false)?;
    let right = Complex::union(&[l.clone(), Complex::union(&[m.clone(), n.clone()], false)?], false)?;
    v.expect(left == right, || "union is not associative".into());
    Ok(v.finish())
}

fn random_assignment(rng: &mut ChaCha8Rng, ns: usize, nt: usize) -> Vec<usize> {
    (0..ns).map(|_| rng.gen_range(0..nt)).collect()
}

fn check_maps(case: &Case) -> Result<Check> {
    let (l, k, m) = (case.get("L")?, case.get("K")?, case.get("M")?);
    let mut rng = case.rng();
    let mut v = Verdict::default();

    for _ in 0..8 {
        let a = random_assignment(&mut rng, l.vertex_count(), k.vertex_count());
        let c = classify_assignment(l, k, &a);
        v.expect(!c.facet || c.simplicial, || format!("facet but not simplicial: {a:?}"));
        v.expect(!c.strict || c.simplicial, || format!("strict but not simplicial: {a:?}"));
        v.expect(!(c.injective && c.simplicial) || c.strict, || format!("injective simplicial but not strict: {a:?}"));
    }

    // degree lemma on injective simplicial maps, including an isomorphism onto a relabelled copy
    let copy = relabel_randomly(l, &mut rng, "p");
    for target in [k, &copy] {
        if let Some(f) = exists(l, target, MapKind::Strict, true)? {
            for d in 1..=l.dim().max(1) as usize {
                let (ds, dt) = (l.d_degrees(d), target.d_degrees(d));
                for vtx in 0..l.vertex_count() {
                    v.expect(dt[f.apply(vtx)] >= ds[vtx], || format!("deg_{d} drops under an injective map of {l}"));
                }
            }
            let (ds, dt) = (l.degrees(), target.degrees());
            for vtx in 0..l.vertex_count() {
                v.expect(dt[f.apply(vtx)] >= ds[vtx], || format!("degree drops under an injective map of {l}"));
            }
        }
    }

    // composites of facet maps are facet maps
    if let (Some(f), Some(g)) = (exists(l, k, MapKind::Facet, false)?, exists(k, m, MapKind::Facet, false)?) {
        let h = compose(&f, &g)?;
        v.expect(h.classify().facet, || format!("composite {l} -> {k} -> {m} is not a facet map"));
    }
    if let (Some(f), Some(g)) = (exists(l, k, MapKind::Facet, true)?, exists(k, m, MapKind::Facet, true)?) {
        let h = compose(&f, &g)?;
        v.expect(h.classify().injective, || format!("composite {l} -> {k} -> {m} is not injective"));
    }

    // bijections: both directions simplicial iff both directions facet
    let n = l.vertex_count();
    for target in [&copy, m] {
        if target.vertex_count() != n {
            continue;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let there = classify_assignment(l, target, &perm);
        let back = classify_assignment(target, l, &inv);
        v.expect((there.simplicial && back.simplicial) == (there.facet && back.facet), || {
            format!("bijection between {l} and {target} separates isomorphism from facet isomorphism")
        });
    }
    Ok(v.finish())
}

fn check_image_inverse(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let Some(f) = exists(l, k, MapKind::Facet, false)? else { return Ok(Check::Skip) };
    let mut rng = case.rng();
    let sub = random_facet_closure(&mut rng, k);
    let mut v = Verdict::default();
    let pre = image_inverse(&f, &sub)?;
    for g in pre.facets() {
        let names = pre.names(*g);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let in_l = l.face(&refs)?;
        v.expect(l.is_facet(in_l), || {
            format!("facet {{{}}} of the preimage of {sub} is not a facet of {l}", names.join(","))
        });
    }
    let r = restrict_to_inverse(&f, &sub)?;
    v.expect(r.classify().facet, || format!("restriction of {l} -> {k} over {sub} is not a facet map"));
    Ok(v.finish())
}

fn check_coloring(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let mut v = Verdict::default();
    let chi = chromatic_number(l);
    let star = graph_chromatic_number(&l.underlying_graph());
    let g_l = graph_chromatic_number(&l.facet_graph());
    v.expect(chi.witness.is_valid_for(l), || format!("invalid optimal colouring of {l}"));
    v.expect(g_l.value <= chi.value, || format!("chi(G_L) > chi(L) for {l}"));
    for f in l.facets() {
        v.expect(f.len() <= star.value, || format!("facet of {l} larger than chi(L*)"));
    }
    if !l.is_empty() && l.facets().iter().all(|f| f.len() >= 2) {
        let block = block_coloring(l, &star.witness)?;
        let d = l.facets().iter().map(|f| f.len() - 1).min().expect("non-empty");
        v.expect(block.is_valid_for(l), || format!("block colouring of {l} is invalid"));
        v.expect(block.k == star.value.div_ceil(d), || format!("block colouring of {l} has the wrong size"));
        v.expect(chi.value <= block.k, || format!("chi({l}) exceeds the block bound"));
    }
    if let Some(f) = exists(l, k, MapKind::Facet, false)? {
        let kc = chromatic_number(k);
        let back = pullback_coloring(&f, &kc.witness)?;
        v.expect(back.is_valid_for(l), || format!("pullback colouring along {l} -> {k} is invalid"));
        v.expect(chi.value <= kc.value, || format!("facet map {l} -> {k} but chi grows"));
    }
    if l.dim() == 1 && l.isolated().is_empty() {
        v.expect(chi.value == star.value && star.value == g_l.value, || {
            format!("1-dimensional {l} has unequal chromatic numbers")
        });
    }
    let plus = with_isolated(l, "zz");
    v.expect(chromatic_number(&plus).value == chi.value.max(1), || format!("isolated vertex changes chi({l})"));
    if l.vertex_count() <= 6 {
        v.expect(brute_force_chromatic(l)? == chi.value, || format!("chi({l}) disagrees with brute force"));
    }
    if l.eta() >= 2 {
        let mut rng = case.rng();
        let (a, b) = (random_facet_closure(&mut rng, l), random_facet_closure(&mut rng, l));
        let covered = l.facets().iter().all(|f| {
            let names = l.names(*f);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            [&a, &b].iter().any(|p| p.face(&refs).map(|x| p.is_simplex(x)).unwrap_or(false))
        });
        if covered {
            let (ca, cb) = (chromatic_number(&a), chromatic_number(&b));
            let p = product_coloring(l, &[(a, ca.witness.clone()), (b, cb.witness.clone())])?;
            v.expect(p.is_valid_for(l), || format!("product colouring of {l} is invalid"));
            v.expect(chi.value <= ca.value.max(1) * cb.value.max(1), || format!("chi({l}) exceeds the product bound"));
        }
    }
    Ok(v.finish())
}

fn check_homsearch(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let lim = OracleLimits { max_source_vertices: 8, max_target_vertices: 6, max_facets: 64 };
    let mut v = Verdict::default();
    for kind in [MapKind::Facet, MapKind::Strict] {
        for injective in [false, true] {
            let found = exists(l, k, kind, injective)?;
            if let Some(f) = &found {
                let c = f.classify();
                let ok = match kind {
                    MapKind::Facet => c.facet,
                    MapKind::Strict => c.strict,
                } && (!injective || c.injective);
                v.expect(ok, || format!("returned {kind} map {l} -> {k} fails classification"));
                if kind == MapKind::Facet {
                    let min = |c: &Complex| c.nonunitary_facets().map(|g| g.len()).min();
                    if let Some(ms) = min(l) {
                        v.expect(min(k).is_some_and(|mk| mk <= ms), || {
                            format!("facet map {l} -> {k} against facet sizes")
                        });
                    }
                } else {
                    v.expect(l.dim() <= k.dim(), || format!("strict map {l} -> {k} raises dimension"));
                }
            }
            let brute = brute_force_map_search(l, k, kind, injective, &lim)?;
            v.expect(found.is_some() == brute.is_some(), || {
                format!(
                    "{kind} injective={injective} {l} -> {k}: search {} brute force {}",
                    found.is_some(),
                    brute.is_some()
                )
            });
        }
    }
    // hereditary feasibility on a random group and a random subgroup
    let mut rng = case.rng();
    let group: Vec<VertexSet> = l.facets().iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
    let sub: Vec<VertexSet> = group.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    for injective in [false, true] {
        if group_feasible(l, &group, k, MapKind::Facet, injective)? {
            v.expect(group_feasible(l, &sub, k, MapKind::Facet, injective)?, || {
                format!("feasibility of {l} groups is not hereditary")
            });
        }
    }
    let one_dim = |c: &Complex| c.dim() == 1 && c.isolated().is_empty();
    if one_dim(l) && one_dim(k) {
        let facet = exists(l, k, MapKind::Facet, false)?.is_some();
        v.expect(facet == graph_hom_exists(l, k), || {
            format!("1-dimensional {l} -> {k}: facet map vs graph homomorphism")
        });
    }
    Ok(v.finish())
}

fn check_c_le_ic(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let mut v = Verdict::default();
    let (c, ic) = (c_of(l, k)?, ic_of(l, k)?);
    let ics = value(l, k, MapKind::Strict, true)?;
    v.expect(c <= ic, || format!("C({l};{k}) = {c} > IC = {ic}"));
    v.expect(ic >= ics, || format!("IC({l};{k}) = {ic} < IC_s = {ics}"));
    Ok(v.finish())
}

fn check_c_one(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let mut v = Verdict::default();
    for injective in [false, true] {
        let one = value(l, k, MapKind::Facet, injective)? == Complexity::Finite(1);
        let found = exists(l, k, MapKind::Facet, injective)?.is_some();
        v.expect(one == found, || format!("injective={injective} {l} -> {k}: value 1 is {one}, single map {found}"));
    }
    Ok(v.finish())
}

fn check_triangle(case: &Case) -> Result<Check> {
    let (l, h, k) = (case.get("L")?, case.get("H")?, case.get("K")?);
    let mut v = Verdict::default();
    for injective in [false, true] {
        let lk = value(l, k, MapKind::Facet, injective)?;
        let lh = value(l, h, MapKind::Facet, injective)?;
        let hk = value(h, k, MapKind::Facet, injective)?;
        let kk = value(k, k, MapKind::Facet, injective)?;
        let bound = lh.times(hk);
        if bound.is_finite() {
            v.expect(lk <= bound, || {
                format!("injective={injective}: value {lk} for {l} -> {k} above {lh} * {hk} via {h}")
            });
        }
        v.expect(lk == lk.times(kk), || format!("injective={injective}: H = K is not sharp for {l} -> {k}"));
    }
    Ok(v.finish())
}

fn check_monotone(case: &Case) -> Result<Check> {
    let (l2, l, h2, h) = (case.get("L'")?, case.get("L")?, case.get("H'")?, case.get("H")?);
    let mut v = Verdict::default();
    if exists(l2, l, MapKind::Facet, false)?.is_some() {
        let (a, b) = (c_of(l2, h)?, c_of(l, h)?);
        v.expect(a <= b, || format!("facet map {l2} -> {l} but C rises from {b} to {a} into {h}"));
    }
    if exists(h2, h, MapKind::Facet, false)?.is_some() {
        let (a, b) = (c_of(l, h)?, c_of(l, h2)?);
        v.expect(a <= b, || format!("facet map {h2} -> {h} but C({l};{h}) = {a} > C({l};{h2}) = {b}"));
    }
    Ok(v.finish())
}

fn facet_subcomplex_of(part: &Complex, whole: &Complex) -> bool {
    part.facets().iter().all(|f| {
        let names = part.names(*f);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        whole.face(&refs).map(|x| whole.is_facet(x)).unwrap_or(false)
    })
}

fn check_subadditive(case: &Case) -> Result<Check> {
    let (l, a, b, h) = (case.get("L")?, case.get("A")?, case.get("B")?, case.get("H")?);
    if !facet_subcomplex_of(a, l) || !facet_subcomplex_of(b, l) || Complex::union(&[a.clone(), b.clone()], false)? != *l
    {
        return Ok(Check::Skip);
    }
    let mut v = Verdict::default();
    for injective in [false, true] {
        let whole = value(l, h, MapKind::Facet, injective)?;
        let va = value(a, h, MapKind::Facet, injective)?;
        let vb = value(b, h, MapKind::Facet, injective)?;
        v.expect(va.max(vb) <= whole, || {
            format!("injective={injective}: max({va},{vb}) > {whole} for {l} = {a} u {b}")
        });
        v.expect(whole <= va.plus(vb), || format!("injective={injective}: {whole} > {va} + {vb} for {l} = {a} u {b}"));
    }
    Ok(v.finish())
}

fn check_chromatic_lower(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let Some(c) = c_of(l, k)?.finite() else { return Ok(Check::Skip) };
    let (cl, ck) = (chromatic_number(l).value, chromatic_number(k).value);
    let mut v = Verdict::default();
    let power = ck.checked_pow(c as u32).unwrap_or(usize::MAX);
    v.expect(cl <= power, || format!("chi({l}) = {cl} > chi({k})^{c} = {power}"));
    if let Some(m) = bounds(&ComplexityQuery::facet(l, k))?.chromatic_lower {
        v.expect(m <= c, || format!("chromatic lower bound {m} above C = {c} for {l} -> {k}"));
    }
    Ok(v.finish())
}

fn check_graph_lower(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    if !k.isolated().is_empty() {
        return Ok(Check::Skip);
    }
    let gl = l.facet_graph().to_complex();
    let gk = k.facet_graph().to_complex();
    let (g, c) = (c_of(&gl, &gk)?, c_of(l, k)?);
    let mut v = Verdict::default();
    v.expect(g <= c, || format!("C(G_L;G_K) = {g} > C({l};{k}) = {c}"));
    Ok(v.finish())
}

fn check_eta_upper(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let mut v = Verdict::default();
    for injective in [false, true] {
        let q = ComplexityQuery::new(l, k, MapKind::Facet, injective);
        let exact = compute(&q)?.value;
        let (lo, hi) = bounds(&q)?.range();
        v.expect(lo <= exact && exact <= hi, || {
            format!("injective={injective}: {exact} outside [{lo}, {hi}] for {l} -> {k}")
        });
    }
    let c = c_of(l, k)?;
    let g0 = k.nonunitary_facets().map(|g| g.len()).min();
    let finite = match g0 {
        Some(g0) => l.facets().iter().filter(|f| f.len() >= 2).all(|f| f.len() >= g0),
        None => !l.has_nonunitary_facet(),
    };
    v.expect(c.is_finite() == finite, || format!("C({l};{k}) = {c} against the facet-size dichotomy"));
    if finite {
        v.expect(c <= Complexity::Finite(l.eta().max(1)), || format!("C({l};{k}) = {c} > eta"));
    }
    Ok(v.finish())
}

fn check_complete_target(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    if k.eta() != 1 || k.vertex_count() < 2 || l.is_empty() {
        return Ok(Check::Skip);
    }
    let ic = ic_of(l, k)?;
    let eta = Complexity::Finite(l.eta());
    let mut v = Verdict::default();
    v.expect(eta <= ic, || format!("eta({l}) = {eta} > IC = {ic} into {k}"));
    if l.metrics().pure && l.dim() == k.dim() {
        v.expect(ic == eta, || format!("pure {l}: IC = {ic} but eta = {eta}"));
    }
    Ok(v.finish())
}

fn check_isomorphism(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let mut rng = case.rng();
    let (l2, k2) = (relabel_randomly(l, &mut rng, "x"), relabel_randomly(k, &mut rng, "y"));
    let mut v = Verdict::default();
    for (kind, injective) in [(MapKind::Facet, false), (MapKind::Facet, true), (MapKind::Strict, false)] {
        let a = value(l, k, kind, injective)?;
        let b = value(&l2, &k2, kind, injective)?;
        v.expect(a == b, || format!("{kind} injective={injective}: {a} for {l} -> {k} but {b} after relabelling"));
    }
    Ok(v.finish())
}

/// Values C_s(L^(q);K^(q)) for q = 1..=top, where top covers both dimensions.
fn skeleton_values(l: &Complex, k: &Complex, injective: bool) -> Result<Vec<Complexity>> {
    let top = l.dim().max(k.dim()).max(1) as usize;
    (1..=top).map(|q| value(&l.skeleton(q), &k.skeleton(q), MapKind::Strict, injective)).collect()
}

fn check_skeleton(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let mut v = Verdict::default();
    let n = k.vertex_count();
    let equality =
        (k.eta() == 1 && n >= 2 && l.dim() < n as isize) || (is_boundary_complex(k) && l.dim() <= n as isize - 2);
    for injective in [false, true] {
        let full = value(l, k, MapKind::Strict, injective)?;
        let vals = skeleton_values(l, k, injective)?;
        let top = *vals.last().expect("at least q = 1");
        v.expect(full == top, || format!("injective={injective}: C_s({l};{k}) = {full} but top skeleton gives {top}"));
        for q in 1..vals.len() {
            v.expect(vals[q] >= vals[q - 1], || {
                format!(
                    "injective={injective}: skeleton {} value {} < skeleton {} value {} for {l} -> {k}",
                    q + 1,
                    vals[q],
                    q,
                    vals[q - 1]
                )
            });
        }
        if equality {
            v.expect(vals.iter().all(|x| *x == vals[0]), || {
                let s: Vec<String> = vals.iter().map(|x| x.to_string()).collect();
                format!("injective={injective}: skeleton values [{}] of {l} -> {k} are not all equal", s.join(", "))
            });
        }
    }
    Ok(v.finish())
}

fn check_isolated(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let plus = with_isolated(l, "zz");
    let mut v = Verdict::default();
    for kind in [MapKind::Facet, MapKind::Strict] {
        let (a, b) = (value(l, k, kind, false)?, value(&plus, k, kind, false)?);
        v.expect(a == b, || format!("{kind}: adding an isolated vertex to {l} moves {a} to {b}"));
    }
    Ok(v.finish())
}

fn check_disjoint(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let d = disjoint_decompose(&ComplexityQuery::facet(l, k), &ComputeOptions::default());
    let mut v = Verdict::default();
    match d {
        Ok(d) => v.expect(d.value == c_of(l, k)?, || format!("decomposition of {l} disagrees")),
        Err(Error::Inconsistent(m)) => v.expect(false, || m),
        Err(e) => return Err(e),
    }
    Ok(v.finish())
}

fn check_oracle(case: &Case) -> Result<Check> {
    let (l, k) = (case.get("L")?, case.get("K")?);
    let lim = OracleLimits::default();
    if !lim.admits(l, k) {
        return Ok(Check::Skip);
    }
    let mut v = Verdict::default();
    for kind in [MapKind::Facet, MapKind::Strict] {
        for injective in [false, true] {
            let found = exists(l, k, kind, injective)?.is_some();
            let brute = brute_force_map_search(l, k, kind, injective, &lim)?.is_some();
            v.expect(found == brute, || {
                format!("{kind} injective={injective} {l} -> {k}: map search {found}, brute force {brute}")
            });
            let q = ComplexityQuery::new(l, k, kind, injective);
            let solved = compute(&q)?.value;
            let oracle = brute_force_cover_complexity(&q, &lim)?;
            v.expect(solved == oracle.canonical, || {
                format!("{} {l} -> {k}: solver {solved}, facet-group oracle {}", q.symbol(), oracle.canonical)
            });
            if let Some(arb) = oracle.arbitrary {
                v.expect(solved == arb, || {
                    format!("{} {l} -> {k}: solver {solved}, subcomplex oracle {arb}", q.symbol())
                });
            }
        }
    }
    for c in [l, k] {
        v.expect(chromatic_number(c).value == brute_force_chromatic(c)?, || {
            format!("chi({c}) disagrees with brute force")
        });
    }
    Ok(v.finish())
}

// ---------------------------------------------------------------- fixtures

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn fixture(out: &mut Vec<FixtureCheck>, name: &str, expected: impl ToString, actual: impl ToString) {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    let pass = expected == actual;
    out.push(FixtureCheck { name: name.into(), expected, actual, pass });
}

/// The worked examples, recomputed.
pub fn fixture_checks() -> Result<Vec<FixtureCheck>> {
    let mut out = Vec::new();
    let (l, k) = (fixtures::ex_l(), fixtures::ex_k());
    let k3 = Complex::boundary(3)?;
    let g2 = Complex::gamma(2)?;
    let chi_l = chromatic_number(&l).value;
    fixture(&mut out, "chi(EX_L)", 3, chi_l);
    fixture(&mut out, "chi(EX_K)", 2, chromatic_number(&k).value);
    fixture(&mut out, "facet map EX_L -> EX_K", false, exists(&l, &k, MapKind::Facet, false)?.is_some());
    fixture(&mut out, "facet map L1 -> EX_K", true, exists(&fixtures::l1(), &k, MapKind::Facet, false)?.is_some());
    fixture(&mut out, "f1 is a facet map", true, fixtures::f1_map().classify().facet);
    fixture(&mut out, "L1 u L2 = EX_L", true, Complex::union(&[fixtures::l1(), fixtures::l2()], false)? == l);
    fixture(&mut out, "C(EX_L;EX_K)", 2, c_of(&l, &k)?);
    fixture(&mut out, "IC(EX_L;EX_K)", 3, ic_of(&l, &k)?);
    fixture(&mut out, "C(EX_L*;EX_K*)", 1, c_of(&l.skeleton(1), &k.skeleton(1))?);
    let hom = VertexMap::from_pairs(l.skeleton(1), k.skeleton(1), &fixtures::graph_hom_pairs())?;
    fixture(&mut out, "graph map a,e->a' b,d->b' c->c' on 1-skeletons", true, hom.classify().facet);
    fixture(&mut out, "IC(K3 u {*};K3)", 2, ic_of(&fixtures::k3_star(), &k3)?);
    fixture(&mut out, "IC(K3;K3)", 1, ic_of(&k3, &k3)?);
    fixture(&mut out, "C(K3 u {*};K3)", 1, c_of(&fixtures::k3_star(), &k3)?);
    let ab = Complex::union(&[fixtures::a(), fixtures::b()], false)?;
    fixture(&mut out, "A u B = K3", true, ab == k3);
    fixture(&mut out, "C(A u B;Gamma_2)", 2, c_of(&ab, &g2)?);
    fixture(&mut out, "C(A;Gamma_2)", 1, c_of(&fixtures::a(), &g2)?);
    fixture(&mut out, "C(B;Gamma_2)", 1, c_of(&fixtures::b(), &g2)?);
    let star = graph_chromatic_number(&l.underlying_graph()).value;
    fixture(&mut out, "ceil(chi(EX_L*)/dim EX_L)", 2, star.div_ceil(l.dim() as usize));
    fixture(&mut out, "chi(EX_L) above that quotient", true, chi_l > star.div_ceil(l.dim() as usize));
    for n in 2..=8 {
        fixture(&mut out, &format!("dim Gamma_{n}"), n - 1, Complex::gamma(n)?.dim());
        fixture(&mut out, &format!("dim K_{n}"), n as isize - 2, Complex::boundary(n)?.dim());
        fixture(&mut out, &format!("eta K_{n}"), n, Complex::boundary(n)?.eta());
    }
    Ok(out)
}

// ---------------------------------------------------------------- observations

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub name: String,
    pub pairs: usize,
    pub strict_gaps: usize,
    /// First pair with a gap, as a bundle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_values: Option<String>,
}

/// Pairs where C_s(L;K) or IC_s(L;K) exceeds the value on the 1-skeletons.
fn observe_skeleton_equality(cfg: &VerifyConfig) -> Result<Observation> {
    let name = "skeleton-equality";
    let mut obs = Observation { name: name.into(), pairs: 0, strict_gaps: 0, first: None, first_values: None };
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, name, trial);
        let case = gen_pair(&mut rng, cfg);
        let (l, k) = (case.get("L")?, case.get("K")?);
        obs.pairs += 1;
        let mut gap = None;
        for injective in [false, true] {
            let vals = skeleton_values(l, k, injective)?;
            let full = value(l, k, MapKind::Strict, injective)?;
            if full != vals[0] {
                let s: Vec<String> = vals.iter().map(|x| x.to_string()).collect();
                gap.get_or_insert(format!("injective={injective}: full {full}, skeletons [{}]", s.join(", ")));
            }
        }
        if let Some(g) = gap {
            obs.strict_gaps += 1;
            if obs.first.is_none() {
                obs.first = Some(bundle_text(name, trial, &case, &g));
                obs.first_values = Some(g);
            }
        }
    }
    Ok(obs)
}

// ---------------------------------------------------------------- driving

fn fnv(name: &str) -> u64 {
    name.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

pub fn trial_rng(seed: u64, suite: &str, trial: usize) -> ChaCha8Rng {
    let mixed = seed.wrapping_mul(0x9e3779b97f4a7c15) ^ fnv(suite) ^ (trial as u64).wrapping_mul(0xd1b54a32d192ed03);
    ChaCha8Rng::seed_from_u64(mixed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub message: String,
    pub bundle: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub seed: u64,
    pub trials: usize,
    pub max_vertices: usize,
    pub max_facet_size: usize,
    pub suites: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixtures: Option<Vec<FixtureCheck>>,
    pub observations: Vec<Observation>,
}

impl VerifyReport {
    pub fn violations(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum::<usize>() + self.fixtures.iter().flatten().filter(|f| !f.pass).count()
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "verify seed={} trials={} max_vertices={} max_facet_size={}",
            self.seed, self.trials, self.max_vertices, self.max_facet_size
        );
        for r in &self.suites {
            let status = if r.failed == 0 { "ok" } else { "FAIL" };
            let _ = writeln!(
                s,
                "suite {:<16} {:<4} pass {:>4}  skip {:>4}  fail {:>4}",
                r.name, status, r.passed, r.skipped, r.failed
            );
            if let Some(cx) = &r.counterexample {
                let _ = writeln!(s, "  trial {}: {}", cx.trial, cx.message);
                if let Some(p) = &cx.path {
                    let _ = writeln!(s, "  bundle: {p}");
                }
            }
        }
        if let Some(fx) = &self.fixtures {
            let passed = fx.iter().filter(|f| f.pass).count();
            let _ = writeln!(s, "fixtures {passed}/{}", fx.len());
            for f in fx.iter().filter(|f| !f.pass) {
                let _ = writeln!(s, "  {}: expected {}, got {}", f.name, f.expected, f.actual);
            }
        }
        if !self.observations.is_empty() {
            let _ = writeln!(s, "observations");
            for o in &self.observations {
                let _ = writeln!(s, "  {}: {} pairs, {} with a strict gap", o.name, o.pairs, o.strict_gaps);
                if let Some(v) = &o.first_values {
                    let _ = writeln!(s, "    first: {v}");
                }
            }
        }
        let _ = writeln!(s, "violations {}", self.violations());
        s
    }
}

pub fn run_suite(suite: &Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport {
        name: suite.name.into(),
        trials: cfg.trials,
        passed: 0,
        skipped: 0,
        failed: 0,
        counterexample: None,
    };
    for trial in 0..cfg.trials {
        let case = suite.case(cfg, trial);
        let outcome = match suite.check(&case) {
            Ok(c) => c,
            Err(e) => Check::Fail(format!("error: {e}")),
        };
        match outcome {
            Check::Pass => r.passed += 1,
            Check::Skip => r.skipped += 1,
            Check::Fail(message) => {
                r.failed += 1;
                if r.counterexample.is_none() {
                    let bundle = bundle_text(suite.name, trial, &case, &message);
                    let path = match &cfg.bundle_dir {
                        Some(dir) => {
                            std::fs::create_dir_all(dir)?;
                            let p = dir.join(format!("{}-trial{}.bundle", suite.name, trial));
                            std::fs::write(&p, &bundle)?;
                            Some(p.display().to_string())
                        }
                        None => None,
                    };
                    r.counterexample = Some(Counterexample { trial, message, bundle, path });
                }
            }
        }
    }
    Ok(r)
}

pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let suites = cfg.suites()?.into_iter().map(|s| run_suite(s, cfg)).collect::<Result<Vec<_>>>()?;
    let fixtures = if cfg.fixtures { Some(fixture_checks()?) } else { None };
    let observations =
        if cfg.observations && cfg.trials > 0 { vec![observe_skeleton_equality(cfg)?] } else { Vec::new() };
    Ok(VerifyReport {
        schema: 1,
        seed: cfg.seed,
        trials: cfg.trials,
        max_vertices: cfg.max_vertices,
        max_facet_size: cfg.max_facet_size,
        suites,
        fixtures,
        observations,
    })
}

// ---------------------------------------------------------------- bundles

pub fn bundle_text(suite: &str, trial: usize, case: &Case, message: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# counterexample bundle, replay with `facetcx verify --replay <file>`");
    let _ = writeln!(s, "suite {suite}");
    let _ = writeln!(s, "trial {trial}");
    let _ = writeln!(s, "aux {}", case.aux);
    let _ = writeln!(s, "message {}", message.replace('\n', " "));
    for (role, c) in &case.complexes {
        let _ = writeln!(s, "complex {role}");
        s.push_str(&serialize_scx(c));
        let _ = writeln!(s, "end");
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub suite: String,
    pub message: Option<String>,
    pub case: Case,
}

pub fn parse_bundle(text: &str) -> Result<Bundle> {
    let mut suite_name = None;
    let mut message = None;
    let mut aux = 0;
    let mut complexes = Vec::new();
    let mut open: Option<(String, String, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if let Some((role, body, start)) = &mut open {
            if line == "end" {
                let c = parse_scx(body).map_err(|e| match e {
                    Error::Parse { line, message } => Error::Parse { line: line + *start, message },
                    other => other,
                })?;
                complexes.push((role.clone(), c));
                open = None;
            } else {
                body.push_str(raw);
                body.push('\n');
            }
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        match key {
            "suite" => suite_name = Some(rest.trim().to_string()),
            "trial" => {}
            "message" => message = Some(rest.trim().to_string()),
            "aux" => {
                aux = rest.trim().parse().map_err(|_| Error::Parse { line: line_no, message: "bad aux seed".into() })?
            }
            "complex" => open = Some((rest.trim().to_string(), String::new(), line_no)),
            other => return Err(Error::Parse { line: line_no, message: format!("unknown bundle keyword {other:?}") }),
        }
    }
    if open.is_some() {
        return Err(Error::Parse { line: text.lines().count(), message: "complex block without `end`".into() });
    }
    let suite = suite_name.ok_or_else(|| Error::Parse { line: 0, message: "bundle names no suite".into() })?;
    Ok(Bundle { suite, message, case: Case { complexes, aux } })
}

/// Re-run a bundle's checker on its complexes.
pub fn replay(text: &str) -> Result<(String, Check)> {
    let b = parse_bundle(text)?;
    let s = suite(&b.suite).ok_or_else(|| Error::InvalidParameter(format!("unknown property suite {:?}", b.suite)))?;
    Ok((b.suite, (s.check)(&b.case)?))
}

/// Summary counts per suite, for quick comparisons.
pub fn tally(report: &VerifyReport) -> BTreeMap<String, (usize, usize, usize)> {
    report.suites.iter().map(|s| (s.name.clone(), (s.passed, s.skipped, s.failed))).collect()
}
