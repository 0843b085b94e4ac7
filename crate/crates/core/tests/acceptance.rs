//! The ten acceptance criteria, one pass/fail line each.

use std::time::{Duration, Instant};

use facetcx::coloring::{block_coloring, chromatic_number, graph_chromatic_number};
use facetcx::complexity::{compute, Complexity, ComplexityQuery};
use facetcx::homsearch::{find_map, MapKind, SearchProblem, SearchStatus};
use facetcx::maps::VertexMap;
use facetcx::oracle::{brute_force_cover_complexity, OracleLimits};
use facetcx::verify::{pure_complex, run_suite, suite, trial_rng, Check, VerifyConfig};
use facetcx::{fixtures, Complex};

const SEED: u64 = 1;
const TRIALS: usize = 200;
const PURE_SAMPLES: usize = 20;
const MIN_ORACLE_PAIRS: usize = 100;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Result<(), String>,
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn value(q: ComplexityQuery) -> Result<Complexity, String> {
    let r = compute(&q).map_err(|e| e.to_string())?;
    if let Some(cover) = &r.cover {
        cover.verify(&q).map_err(|e| format!("certificate rejected: {e}"))?;
        ensure(Complexity::Finite(cover.value()) == r.value, || "cover size differs from value".into())?;
    }
    Ok(r.value)
}

fn chromatic_fixtures() -> Result<(), String> {
    let (l, k) = (chromatic_number(&fixtures::ex_l()).value, chromatic_number(&fixtures::ex_k()).value);
    ensure((l, k) == (3, 2), || format!("chi(EX_L), chi(EX_K) = {l}, {k}"))
}

fn facet_complexity_fixture() -> Result<(), String> {
    let (l, k) = (fixtures::ex_l(), fixtures::ex_k());
    let q = ComplexityQuery::facet(&l, &k);
    let r = compute(&q).map_err(|e| e.to_string())?;
    ensure(r.value == Complexity::Finite(2), || format!("C = {}", r.value))?;
    let cover = r.cover.ok_or("no certificate")?;
    ensure(cover.value() == 2, || "certificate is not a 2-group cover".into())?;
    cover.verify(&q).map_err(|e| e.to_string())?;
    let whole = find_map(&SearchProblem::new(&l, &k, MapKind::Facet, false));
    ensure(whole.status == SearchStatus::NotFound, || format!("whole-complex search gave {:?}", whole.status))
}

fn injective_fixture() -> Result<(), String> {
    let (l, k) = (fixtures::ex_l(), fixtures::ex_k());
    let q = ComplexityQuery::injective(&l, &k);
    let v = value(q)?;
    ensure(v == Complexity::Finite(3), || format!("IC = {v}"))?;
    let o = brute_force_cover_complexity(&q, &OracleLimits::default()).map_err(|e| e.to_string())?;
    ensure(o.canonical == v && o.arbitrary == Some(v), || format!("oracle gave {o:?}"))
}

fn isolated_vertex_fixture() -> Result<(), String> {
    let k3 = Complex::boundary(3).map_err(|e| e.to_string())?;
    let star = fixtures::k3_star();
    let ic_star = value(ComplexityQuery::injective(&star, &k3))?;
    let ic = value(ComplexityQuery::injective(&k3, &k3))?;
    ensure((ic_star, ic) == (Complexity::Finite(2), Complexity::Finite(1)), || format!("IC values {ic_star}, {ic}"))?;
    let (c_star, c) = (value(ComplexityQuery::facet(&star, &k3))?, value(ComplexityQuery::facet(&k3, &k3))?);
    ensure(c_star == c, || format!("C moves from {c} to {c_star}"))
}

fn skeleton_fixture() -> Result<(), String> {
    let (l, k) = (fixtures::ex_l().skeleton(1), fixtures::ex_k().skeleton(1));
    let v = value(ComplexityQuery::facet(&l, &k))?;
    ensure(v == Complexity::Finite(1), || format!("C(L*;K*) = {v}"))?;
    let m = VertexMap::from_pairs(l, k, &fixtures::graph_hom_pairs()).map_err(|e| e.to_string())?;
    ensure(m.classify().facet, || "the edge map is not a facet map".into())
}

fn block_coloring_regression() -> Result<(), String> {
    let l = fixtures::ex_l();
    let star = graph_chromatic_number(&l.underlying_graph());
    let quotient = star.value.div_ceil(l.dim() as usize);
    let chi = chromatic_number(&l).value;
    ensure(quotient == 2 && chi == 3, || format!("quotient {quotient}, chi {chi}"))?;
    let block = block_coloring(&l, &star.witness).map_err(|e| e.to_string())?;
    ensure(block.is_valid_for(&l) && block.k >= chi, || format!("block colouring with {} colours", block.k))
}

fn disjoint_union_fixture() -> Result<(), String> {
    let g2 = Complex::gamma(2).map_err(|e| e.to_string())?;
    let (a, b) = (fixtures::a(), fixtures::b());
    let ab = Complex::union(&[a.clone(), b.clone()], false).map_err(|e| e.to_string())?;
    let values = (
        value(ComplexityQuery::facet(&ab, &g2))?,
        value(ComplexityQuery::facet(&a, &g2))?,
        value(ComplexityQuery::facet(&b, &g2))?,
    );
    let expected = (Complexity::Finite(2), Complexity::Finite(1), Complexity::Finite(1));
    ensure(values == expected, || format!("values {values:?}"))
}

fn complete_target_formula() -> Result<(), String> {
    let g3 = Complex::gamma(3).map_err(|e| e.to_string())?;
    for i in 0..PURE_SAMPLES {
        let mut rng = trial_rng(SEED, "pure-2d", i);
        let l = pure_complex(&mut rng, 7, 3, 10);
        let v = value(ComplexityQuery::injective(&l, &g3))?;
        ensure(v == Complexity::Finite(l.eta()), || format!("IC({l};Gamma_3) = {v}, eta = {}", l.eta()))?;
    }
    Ok(())
}

fn property_suites() -> Result<(), String> {
    let cfg = VerifyConfig { seed: SEED, trials: TRIALS, max_vertices: 7, max_facet_size: 4, ..Default::default() };
    let names = [
        "c-le-ic",
        "c-one",
        "triangle",
        "monotone",
        "subadditive",
        "chromatic-lower",
        "graph-lower",
        "eta-upper",
        "isomorphism",
        "skeleton",
    ];
    let mut failures = Vec::new();
    for name in names {
        let r = run_suite(suite(name).ok_or(name)?, &cfg).map_err(|e| e.to_string())?;
        println!("    {name:<16} pass {:>3} skip {:>3} fail {:>3}", r.passed, r.skipped, r.failed);
        if let Some(cx) = &r.counterexample {
            println!("      trial {}: {}", cx.trial, cx.message);
            failures.push(format!("{name}: {} violations", r.failed));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn oracle_equivalence() -> Result<(), String> {
    let cfg = VerifyConfig { seed: SEED, trials: TRIALS, ..Default::default() };
    let s = suite("oracle").ok_or("no oracle suite")?;
    let lim = OracleLimits::default();
    let (mut checked, mut arbitrary) = (0, 0);
    for trial in 0..TRIALS {
        let case = s.case(&cfg, trial);
        match s.check(&case).map_err(|e| e.to_string())? {
            Check::Pass => checked += 1,
            Check::Skip => continue,
            Check::Fail(m) => return Err(format!("trial {trial}: {m}")),
        }
        let (l, k) = (case.get("L").unwrap(), case.get("K").unwrap());
        let o = brute_force_cover_complexity(&ComplexityQuery::facet(l, k), &lim).map_err(|e| e.to_string())?;
        if o.arbitrary.is_some() {
            arbitrary += 1;
        }
    }
    println!("    {checked} pairs checked, {arbitrary} with arbitrary-subcomplex covers");
    ensure(checked >= MIN_ORACLE_PAIRS, || format!("only {checked} pairs within limits"))?;
    ensure(arbitrary > 0, || "no instance small enough for subcomplex covers".into())
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion {
            id: 1,
            title: "chromatic numbers of the worked example",
            limit: Duration::from_secs(1),
            run: chromatic_fixtures,
        },
        Criterion {
            id: 2,
            title: "C(EX_L;EX_K) = 2 with certificate",
            limit: Duration::from_secs(1),
            run: facet_complexity_fixture,
        },
        Criterion {
            id: 3,
            title: "IC(EX_L;EX_K) = 3, oracle agrees",
            limit: Duration::from_secs(5),
            run: injective_fixture,
        },
        Criterion {
            id: 4,
            title: "isolated vertex moves IC but not C",
            limit: Duration::from_secs(1),
            run: isolated_vertex_fixture,
        },
        Criterion { id: 5, title: "C(L*;K*) = 1 on 1-skeletons", limit: Duration::from_secs(1), run: skeleton_fixture },
        Criterion {
            id: 6,
            title: "block colouring regression",
            limit: Duration::from_secs(1),
            run: block_coloring_regression,
        },
        Criterion {
            id: 7,
            title: "disjoint union into Gamma_2",
            limit: Duration::from_secs(1),
            run: disjoint_union_fixture,
        },
        Criterion {
            id: 8,
            title: "IC(L;Gamma_3) = eta(L) for pure 2-dimensional L",
            limit: Duration::from_secs(30),
            run: complete_target_formula,
        },
        Criterion {
            id: 9,
            title: "property suites, seed 1, 200 trials",
            limit: Duration::from_secs(90),
            run: property_suites,
        },
        Criterion {
            id: 10,
            title: "solvers match brute force",
            limit: Duration::from_secs(60),
            run: oracle_equivalence,
        },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= c.limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (took {:.2?}, limit {:?})", elapsed, c.limit),
            (Err(m), _) => format!("FAIL ({m})"),
        };
        println!("criterion {:>2}: {} [{:.2?}] {}", c.id, verdict, elapsed, c.title);
        if verdict != "PASS" {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
