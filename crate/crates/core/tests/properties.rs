use std::sync::Arc;

use num_bigint::BigInt;
use patchwork::exact::{self, Q};
use patchwork::interface::PatchworkDocument;
use patchwork::invariants::harnack_bound;
use patchwork::lattice::{is_maximal, is_primitive, validate_subdivision};
use patchwork::patchwork::{OrthantComplex, PatchworkComplex};
use patchwork::regularity::{check_regularity, convex_triangulation, random_maximal_triangulation, verify_certificate, verify_witness, Regularity};
use patchwork::restrictions::check_all;
use patchwork::topology::analyze;
use proptest::prelude::*;

fn geometry(n: i64, d: i64) -> Arc<OrthantComplex> {
    OrthantComplex::new(&convex_triangulation(n, d).unwrap()).unwrap()
}

fn signs(n: usize) -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { 1i8 } else { -1 }), n)
}

fn curve_signs() -> impl Strategy<Value = (i64, Vec<i8>)> {
    (1i64..=8).prop_flat_map(|d| {
        let n = ((d + 1) * (d + 2) / 2) as usize;
        (Just(d), signs(n))
    })
}

#[test]
fn fixed_triangulations_are_valid_maximal_and_primitive() {
    for (n, top) in [(2, 8), (3, 4)] {
        for d in 1..=top {
            let t = convex_triangulation(n, d).unwrap();
            assert!(validate_subdivision(t.cells(), t.target()).unwrap().is_valid(), "n={n} d={d}");
            assert!(is_maximal(t.subdivision()) && is_primitive(&t), "n={n} d={d}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn negating_all_signs_keeps_the_curve((d, s) in curve_signs()) {
        let g = geometry(2, d);
        let neg: Vec<i8> = s.iter().map(|x| -x).collect();
        let a = PatchworkComplex::from_base_signs(g.clone(), s).unwrap();
        let b = PatchworkComplex::from_base_signs(g, neg).unwrap();
        prop_assert_eq!(a.pieces().map(|(i, p)| (i, p.clone())).collect::<Vec<_>>(), b.pieces().map(|(i, p)| (i, p.clone())).collect::<Vec<_>>());
        prop_assert_eq!(analyze(&a).unwrap(), analyze(&b).unwrap());
    }

    #[test]
    fn incremental_flips_match_rebuilds((d, s) in curve_signs(), flips in prop::collection::vec(0usize..1000, 1..40)) {
        let g = geometry(2, d);
        let n = s.len();
        let mut p = PatchworkComplex::from_base_signs(g.clone(), s).unwrap();
        for v in flips {
            p.flip(v % n);
            let full = PatchworkComplex::from_base_signs(g.clone(), p.signed().base_signs().to_vec()).unwrap();
            prop_assert!(p == full);
        }
    }

    #[test]
    fn curve_reports_are_consistent((d, s) in curve_signs()) {
        let p = PatchworkComplex::from_base_signs(geometry(2, d), s).unwrap();
        let r = analyze(&p).unwrap();
        prop_assert!(r.anomalies.is_empty(), "{:?}", r.anomalies);
        prop_assert_eq!(r.mod2_degree as i64, d % 2);
        prop_assert!(r.component_count() as u64 <= harnack_bound(d as u32));
        prop_assert!(r.b_total <= r.b_complex && (r.b_complex - r.b_total) % 2 == 0);
        // the complement of the curve in RP^2
        prop_assert_eq!(r.regions.iter().map(|g| g.chi).sum::<i64>(), 1);
        let o = r.ovals.as_ref().unwrap();
        prop_assert_eq!(o.one_sided as i64, d % 2);
        prop_assert_eq!(o.p + o.n + o.one_sided, r.component_count());
        prop_assert_eq!(o.depth_histogram.iter().sum::<usize>(), o.p + o.n);
        prop_assert!(r.regions.iter().filter(|g| g.principal).count() <= 1);
        let rr = check_all(&r).unwrap();
        prop_assert!(rr.all_passed(), "{:?}", rr.failures().collect::<Vec<_>>());
    }

    #[test]
    fn quartic_surfaces_obey_the_bounds(s in signs(35)) {
        let r = analyze(&PatchworkComplex::from_base_signs(geometry(3, 4), s).unwrap()).unwrap();
        prop_assert!(r.anomalies.is_empty(), "{:?}", r.anomalies);
        prop_assert_eq!(r.mod2_degree, 0);
        prop_assert!(r.components.iter().all(|c| c.chi % 2 == 0));
        prop_assert!(r.b_total <= 24 && r.b_total % 2 == 0);
        prop_assert!(check_all(&r).unwrap().all_passed());
    }

    #[test]
    fn random_triangulations_get_verifiable_verdicts(d in 2i64..=5, flips in 0usize..80, seed in any::<u64>()) {
        let t = random_maximal_triangulation(d, flips, seed).unwrap();
        prop_assert!(is_primitive(&t));
        let s = t.subdivision();
        match check_regularity(s).unwrap() {
            Regularity::Regular { witness } => prop_assert!(verify_witness(s, &witness)),
            Regularity::Nonregular { certificate } => prop_assert!(verify_certificate(s, &certificate)),
        }
    }

    #[test]
    fn rationals_round_trip(n in any::<i64>(), m in 1i64..i64::MAX) {
        let x = Q::new(BigInt::from(n), BigInt::from(m));
        prop_assert_eq!(exact::parse(&exact::to_string(&x)), Some(x));
    }

    #[test]
    fn documents_round_trip((d, s) in curve_signs()) {
        let p = PatchworkComplex::from_base_signs(geometry(2, d), s).unwrap();
        let t = convex_triangulation(2, d).unwrap();
        let doc = PatchworkDocument::from_parts(&t, p.signed().distribution());
        let back = PatchworkDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert!(back.complex().unwrap().1 == p);
    }
}
