mod common;

use common::model;
use proptest::prelude::*;
use sparks::cech::hyper::HyperModel;
use sparks::complex::{cohomology, induced_map};
use sparks::linalg::matrix::{add_vec, is_zero_vec, sub_vec, to_rat_vec};
use sparks::spark::sample::{rng, sparse_int_vec, sparse_rat_vec};
use sparks::spark::Witness;

const NAMES: [&str; 4] = ["circle3", "circle6", "rp2", "torus"];

fn spark_equation_holds(sc: &sparks::spark::SparkComplex, s: &sparks::spark::Spark) -> bool {
    let k = s.degree;
    let lhs = sc.apply_iota(k + 1, &s.e);
    let rhs = add_vec(&sc.f().d(k).mul_vec(&s.a), &sc.apply_psi(k + 1, &s.r));
    lhs == rhs && is_zero_vec(&sc.i().d(k + 1).mul_vec(&to_rat_vec(&s.r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn equivalence_is_an_equivalence(fx in 0usize..4, k in -1i32..=2, seed in any::<u64>()) {
        let m = model(NAMES[fx]);
        let sc = &m.spark;
        let mut r = rng(seed);
        let s = sc.random_spark(k, &mut r);
        prop_assert!(spark_equation_holds(sc, &s));
        let w1 = Witness { b: sparse_rat_vec(&mut r, sc.f().rank(k - 1)), s: sparse_int_vec(&mut r, sc.i().rank(k)) };
        let w2 = Witness { b: sparse_rat_vec(&mut r, sc.f().rank(k - 1)), s: sparse_int_vec(&mut r, sc.i().rank(k)) };
        let t = sc.perturb(&s, &w1);
        let u = sc.perturb(&t, &w2);
        prop_assert!(sc.is_valid(&t) && sc.is_valid(&u));
        prop_assert!(sc.verify_witness(&s, &s, &Witness::zero(sc, k)));
        let found = sc.sparks_equivalent(&s, &t);
        prop_assert!(found.is_some());
        prop_assert!(sc.verify_witness(&s, &t, found.as_ref().unwrap()));
        prop_assert!(sc.verify_witness(&t, &s, &found.unwrap().neg()));
        let st = sc.sparks_equivalent(&s, &t).unwrap();
        let tu = sc.sparks_equivalent(&t, &u).unwrap();
        prop_assert!(sc.verify_witness(&s, &u, &st.add(&tu)));
        prop_assert!(sc.is_zero_class(&sc.sub(&s, &u)));
    }

    #[test]
    fn invariants_are_additive(fx in 0usize..4, k in -1i32..=2, seed in any::<u64>()) {
        let m = model(NAMES[fx]);
        let sc = &m.spark;
        let mut r = rng(seed);
        let (s, t) = (sc.random_spark(k, &mut r), sc.random_spark(k, &mut r));
        let sum = sc.add(&s, &t);
        prop_assert!(spark_equation_holds(sc, &sum));
        prop_assert_eq!(sc.delta1(&sum).to_vec(), add_vec(sc.delta1(&s), sc.delta1(&t)));
        let h = cohomology(sc.i(), k + 1).unwrap();
        let defect = sub_vec(&sc.delta2(&sum), &add_vec(&sc.delta2(&s), &sc.delta2(&t)));
        prop_assert!(h.is_zero_class(&defect));
        prop_assert_eq!(sc.scale(3, &s).e, add_vec(&add_vec(&s.e, &s.e), &s.e));
        let kernel = sc.random_kernel_spark(k, &mut r);
        prop_assert!(sc.delta2_vanishes(&kernel));
        prop_assert!(sc.is_zero_class(&sc.sub(&s, &s)));
    }

    #[test]
    fn equivalent_sparks_share_invariants(fx in 0usize..4, k in -1i32..=1, seed in any::<u64>()) {
        let m = model(NAMES[fx]);
        let sc = &m.spark;
        let mut r = rng(seed);
        let s = sc.random_spark(k, &mut r);
        let w = Witness { b: sparse_rat_vec(&mut r, sc.f().rank(k - 1)), s: sparse_int_vec(&mut r, sc.i().rank(k)) };
        let t = sc.perturb(&s, &w);
        prop_assert_eq!(sc.delta1(&s), sc.delta1(&t));
        let h = cohomology(sc.i(), k + 1).unwrap();
        prop_assert!(h.is_zero_class(&sub_vec(&sc.delta2(&s), &sc.delta2(&t))));
        let data = sc.spark_from_data(k, &s.e, &s.r).unwrap();
        prop_assert_eq!(sc.delta1(&data), sc.delta1(&s));
        prop_assert!(sc.is_zero_class(&sc.curvature_free_part(&s)) == sc.is_zero_class(&sc.sub(&s, &data)));
    }
}

#[test]
fn transport_preserves_invariants() {
    for name in NAMES {
        let h = HyperModel::over(model(name)).unwrap();
        let q = &h.quasi;
        let mut r = rng(11);
        for k in -1..=1 {
            let psi_star = induced_map(&q.psi, k + 1).unwrap();
            let target = cohomology(h.spark.i(), k + 1).unwrap();
            for _ in 0..6 {
                let s = h.edge.spark.random_spark(k, &mut r);
                let p = q.push(&s);
                assert_eq!(h.spark.delta1(&p), h.edge.spark.delta1(&s), "{name}");
                let image = psi_star.matrix.mul_vec(&h.edge.spark.delta2(&s));
                assert!(target.is_zero_class(&sub_vec(&image, &h.spark.delta2(&p))), "{name} k={k}");
                let l = q.lift(&p).unwrap();
                assert!(h.edge.spark.sparks_equivalent(&l.spark, &s).is_some(), "{name}");
            }
        }
    }
}
