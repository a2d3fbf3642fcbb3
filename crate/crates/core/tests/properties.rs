mod common;

use proptest::prelude::*;

use lojex::corpus::{format_corpus_line, parse_corpus_line, random_corpus};
use lojex::diagram::{build_diagram, face_part};
use lojex::PolyGerm;

fn corpus_germ() -> impl Strategy<Value = PolyGerm> {
    any::<u64>().prop_map(|seed| random_corpus(seed, 1).pop().unwrap())
}

fn normals(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(1i64..40, n), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn geometry_properties_hold(f in corpus_germ(), us in normals(3)) {
        let us: Vec<Vec<i64>> = us.into_iter().map(|u| u[..f.arity()].to_vec()).collect();
        let bad = common::geometry_checks(&f, &us);
        prop_assert!(bad.is_empty(), "{f}: {bad:?}");
    }

    #[test]
    fn engine_matches_brute_force(f in corpus_germ()) {
        let d = build_diagram(&f).unwrap();
        let bad = common::brute_force_agreement(&d);
        prop_assert!(bad.is_empty(), "{f}: {bad:?}");
    }

    #[test]
    fn bounds_are_ordered(f in corpus_germ()) {
        let d = build_diagram(&f).unwrap();
        let bad = common::bound_ordering(&f, &d);
        prop_assert!(bad.is_empty(), "{f}: {bad:?}");
    }

    #[test]
    fn face_parts_are_weighted_homogeneous(f in corpus_germ()) {
        let d = build_diagram(&f).unwrap();
        for s in d.faces() {
            let fs = face_part(&f, s).unwrap();
            prop_assert!(!fs.is_zero());
            for p in fs.support() {
                prop_assert_eq!(p.dot(&s.normal), s.level);
            }
        }
    }

    #[test]
    fn partials_shift_the_support(f in corpus_germ()) {
        for i in 0..f.arity() {
            for p in f.partial(i).support() {
                let mut q = p.clone();
                q.0[i] += 1;
                prop_assert!(f.terms().contains_key(&q));
            }
        }
    }

    #[test]
    fn corpus_lines_round_trip(f in corpus_germ()) {
        let back = parse_corpus_line(&format_corpus_line(&f)).unwrap().unwrap();
        prop_assert_eq!(back, f);
    }
}
