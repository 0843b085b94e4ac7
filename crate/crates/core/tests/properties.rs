use proptest::prelude::*;

use facetcx::homsearch::{find_map, MapKind, SearchProblem};
use facetcx::oracle::{brute_force_chromatic, brute_force_cover_complexity, brute_force_map_search, OracleLimits};
use facetcx::{chromatic_number, compute, parse_scx, serialize_scx, Complex, ComplexityQuery, VertexSet};

fn complex(max_vertices: usize, max_faces: usize) -> impl Strategy<Value = Complex> {
    (1..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec(1u64..(1 << n), 1..=max_faces).prop_map(move |masks| {
            let faces: Vec<Vec<String>> =
                masks.iter().map(|&m| VertexSet(m).iter().map(|v| format!("v{v}")).collect()).collect();
            Complex::build(&faces, None).unwrap()
        })
    })
}

fn kind() -> impl Strategy<Value = MapKind> {
    prop_oneof![Just(MapKind::Facet), Just(MapKind::Strict)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn facets_form_an_antichain(c in complex(7, 6)) {
        let f = c.facets();
        for (i, a) in f.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                prop_assert!(i == j || !a.is_subset(*b));
            }
        }
    }

    #[test]
    fn scx_round_trip(c in complex(7, 6)) {
        let text = serialize_scx(&c);
        let back = parse_scx(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(serialize_scx(&back), text);
    }

    #[test]
    fn skeleton_is_idempotent(c in complex(7, 5), q in 0usize..4) {
        let s = c.skeleton(q);
        prop_assert_eq!(s.skeleton(q), s.clone());
        prop_assert!(s.dim() <= q as isize);
        prop_assert_eq!(s.vertex_count(), c.vertex_count());
    }

    #[test]
    fn union_is_commutative(a in complex(5, 4), b in complex(5, 4)) {
        let ab = Complex::union(&[a.clone(), b.clone()], false).unwrap();
        let ba = Complex::union(&[b, a], false).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn map_search_matches_brute_force(l in complex(5, 4), k in complex(4, 3), kind in kind(), injective: bool) {
        let lim = OracleLimits::default();
        prop_assume!(lim.admits(&l, &k));
        let found = find_map(&SearchProblem::new(&l, &k, kind, injective)).into_result().unwrap();
        let brute = brute_force_map_search(&l, &k, kind, injective, &lim).unwrap();
        prop_assert_eq!(found.is_some(), brute.is_some());
        if let Some(m) = found {
            let class = m.classify();
            let ok = if kind == MapKind::Facet { class.facet } else { class.strict };
            prop_assert!(ok);
            prop_assert!(!injective || class.injective);
        }
    }

    #[test]
    fn chromatic_matches_brute_force(c in complex(7, 6)) {
        let chi = chromatic_number(&c);
        prop_assert_eq!(chi.value, brute_force_chromatic(&c).unwrap());
        prop_assert!(chi.witness.is_valid_for(&c));
    }

    #[test]
    fn complexity_matches_oracle(l in complex(5, 4), k in complex(4, 3), kind in kind(), injective: bool) {
        let lim = OracleLimits::default();
        prop_assume!(lim.admits(&l, &k));
        let q = ComplexityQuery::new(&l, &k, kind, injective);
        let r = compute(&q).unwrap();
        let o = brute_force_cover_complexity(&q, &lim).unwrap();
        prop_assert_eq!(r.value, o.canonical);
        if let Some(arb) = o.arbitrary {
            prop_assert_eq!(r.value, arb);
        }
        if let Some(cover) = r.cover {
            prop_assert!(cover.verify(&q).is_ok());
        }
    }
}
