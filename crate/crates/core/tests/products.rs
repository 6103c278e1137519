mod common;

use common::model;
use sparks::product::{ProductForm, ProductStructure};
use sparks::spark::sample::{rng, sparse_int_vec, sparse_rat_vec};
use sparks::spark::{Spark, Witness};

const NAMES: [&str; 3] = ["circle6", "rp2", "torus"];

/// Generator sparks, one flat spark and one random spark per degree.
fn samples(ps: &ProductStructure, k: i32, seed: u64) -> Vec<Spark> {
    let mut r = rng(seed);
    let mut out = ps.generator_sparks(k);
    out.push(ps.flat_spark(k, &mut r));
    out.push(ps.spark().random_spark(k, &mut r));
    out
}

fn mul(ps: &ProductStructure, s: &Spark, t: &Spark) -> Spark {
    ps.product(s, t, ProductForm::Curvature).unwrap()
}

fn equivalent(ps: &ProductStructure, s: &Spark, t: &Spark) -> bool {
    ps.spark().sparks_equivalent(s, t).is_some()
}

#[test]
fn well_defined_on_classes() {
    for name in NAMES {
        let ps = ProductStructure::new(model(name));
        let sc = ps.spark().clone();
        let mut r = rng(5);
        for k in -1..=1 {
            for l in -1..=(1 - k).min(1) {
                for s in samples(&ps, k, 1) {
                    for t in samples(&ps, l, 2) {
                        let w = Witness {
                            b: sparse_rat_vec(&mut r, sc.f().rank(k - 1)),
                            s: sparse_int_vec(&mut r, sc.i().rank(k)),
                        };
                        let s2 = sc.perturb(&s, &w);
                        assert!(equivalent(&ps, &mul(&ps, &s, &t), &mul(&ps, &s2, &t)), "{name} left ({k},{l})");
                        let w = Witness {
                            b: sparse_rat_vec(&mut r, sc.f().rank(l - 1)),
                            s: sparse_int_vec(&mut r, sc.i().rank(l)),
                        };
                        let t2 = sc.perturb(&t, &w);
                        assert!(equivalent(&ps, &mul(&ps, &s, &t), &mul(&ps, &s, &t2)), "{name} right ({k},{l})");
                    }
                }
            }
        }
    }
}

#[test]
fn bilinear() {
    for name in NAMES {
        let ps = ProductStructure::new(model(name));
        let sc = ps.spark().clone();
        for k in -1..=1 {
            for l in -1..=(1 - k).min(1) {
                let (xs, ys) = (samples(&ps, k, 3), samples(&ps, l, 4));
                for (i, s) in xs.iter().enumerate() {
                    let s2 = &xs[(i + 1) % xs.len()];
                    for t in &ys {
                        let lhs = mul(&ps, &sc.add(s, s2), t);
                        let rhs = sc.add(&mul(&ps, s, t), &mul(&ps, s2, t));
                        assert!(equivalent(&ps, &lhs, &rhs), "{name} left ({k},{l})");
                        let lhs = mul(&ps, t, &sc.add(s, s2));
                        let rhs = sc.add(&mul(&ps, t, s), &mul(&ps, t, s2));
                        assert!(equivalent(&ps, &lhs, &rhs), "{name} right ({l},{k})");
                    }
                }
            }
        }
    }
}

#[test]
fn associative_with_unit() {
    for name in NAMES {
        let ps = ProductStructure::new(model(name));
        let u = ps.unit().unwrap();
        for k in -1..=1 {
            for s in samples(&ps, k, 6) {
                assert!(equivalent(&ps, &mul(&ps, &u, &s), &s), "{name} unit left k={k}");
                assert!(equivalent(&ps, &mul(&ps, &s, &u), &s), "{name} unit right k={k}");
            }
        }
        for (k, l, m) in
            [(-1, -1, -1), (-1, -1, 0), (-1, 0, -1), (0, -1, -1), (-1, 0, 0), (0, -1, 0), (0, 0, -1), (-1, -1, 1)]
        {
            for s in samples(&ps, k, 7) {
                for t in samples(&ps, l, 8) {
                    for v in samples(&ps, m, 9) {
                        let lhs = mul(&ps, &mul(&ps, &s, &t), &v);
                        let rhs = mul(&ps, &s, &mul(&ps, &t, &v));
                        assert!(equivalent(&ps, &lhs, &rhs), "{name} ({k},{l},{m})");
                    }
                }
            }
        }
    }
}

#[test]
fn forms_and_invariants_agree() {
    for name in NAMES {
        let ps = ProductStructure::new(model(name));
        let sc = ps.spark().clone();
        for k in -1..=1 {
            for l in -1..=(1 - k).min(1) {
                for s in samples(&ps, k, 10) {
                    for t in samples(&ps, l, 11) {
                        let p = mul(&ps, &s, &t);
                        let q = ps.product(&s, &t, ProductForm::Integral).unwrap();
                        assert!(sc.verify_witness(&p, &q, &ps.form_witness(&s, &t)), "{name} ({k},{l})");
                        let d = ps.delta_ring_check(&s, &t).unwrap();
                        assert!(d.delta1 && d.delta2, "{name} ({k},{l})");
                    }
                }
            }
        }
    }
}
