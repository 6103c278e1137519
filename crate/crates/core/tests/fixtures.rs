mod common;

use common::{model, QZ_COHOMOLOGY, Z_COHOMOLOGY};
use rand::Rng;
use sparks::cech::fixtures::{fixture, FIXTURE_NAMES};
use sparks::complex::{cohomology, cone, cone_cohomology, is_acyclic, ChainMap, Coeff};
use sparks::linalg::{IntegerMatrix, RationalMatrix};
use sparks::spark::sample::rng;
use std::sync::Arc;

fn descriptors(c: &sparks::complex::CochainComplex) -> Vec<String> {
    c.degrees().filter(|&k| k >= 0).map(|k| cohomology(c, k).unwrap().descriptor.to_string()).collect()
}

#[test]
fn oracle_covers_every_fixture() {
    let names: Vec<&str> = Z_COHOMOLOGY.iter().map(|(n, _)| *n).collect();
    for name in FIXTURE_NAMES {
        assert!(names.contains(&name), "{name}");
    }
}

#[test]
fn integral_cohomology_matches_oracle() {
    for (name, expected) in Z_COHOMOLOGY {
        let fx = fixture(name).unwrap();
        assert_eq!(descriptors(&fx.complex.cochain_complex(Coeff::Z)), *expected, "{name}: K");
        assert_eq!(descriptors(&fx.model_base.cochain_complex(Coeff::Z)), *expected, "{name}: model base");
        let m = model(name);
        let mut nerve = descriptors(m.spark.i());
        nerve.truncate(expected.len());
        assert_eq!(nerve, *expected, "{name}: nerve");
        assert!(descriptors(m.spark.i())[expected.len()..].iter().all(|d| d == "0"), "{name}");
    }
}

#[test]
fn cone_cohomology_matches_universal_coefficients() {
    for (name, expected) in QZ_COHOMOLOGY {
        let m = model(name);
        let got: Vec<String> =
            (0..expected.len() as i32).map(|k| cone_cohomology(m.spark.psi(), k).unwrap().to_string()).collect();
        assert_eq!(got, *expected, "{name}");
        let top = expected.len() as i32;
        assert!(cone_cohomology(m.spark.psi(), -1).unwrap().is_trivial(), "{name}");
        assert!(cone_cohomology(m.spark.psi(), top).unwrap().is_trivial(), "{name}");
    }
}

/// `c·id + d h + h d` for a random integer homotopy `h`.
fn random_chain_map(name: &str, seed: u64) -> ChainMap {
    let c = Arc::new(fixture(name).unwrap().complex.cochain_complex(Coeff::Z));
    let mut r = rng(seed);
    let scale = r.gen_range(-2i64..=2);
    let h: Vec<IntegerMatrix> = c
        .degrees()
        .map(|k| {
            let (rows, cols) = (c.rank(k - 1), c.rank(k));
            let vals: Vec<i64> =
                (0..rows * cols).map(|_| if r.gen_bool(0.3) { r.gen_range(-2..=2) } else { 0 }).collect();
            IntegerMatrix::from_i64(rows, cols, &vals)
        })
        .collect();
    let lo = c.min_degree();
    let hk = |k: i32| -> RationalMatrix {
        if k < lo || k > c.max_degree() {
            RationalMatrix::zeros(c.rank(k - 1), c.rank(k))
        } else {
            h[(k - lo) as usize].to_rational()
        }
    };
    ChainMap::from_fn(c.clone(), c.clone(), |k| {
        let n = c.rank(k);
        let mut m = RationalMatrix::identity(n);
        for i in 0..n {
            m.set(i, i, scale.into());
        }
        if k > lo {
            m = m.add_mat(&c.d(k - 1).mul_mat(&hk(k)));
        }
        if k < c.max_degree() {
            m = m.add_mat(&hk(k + 1).mul_mat(c.d(k)));
        }
        m
    })
    .unwrap()
}

#[test]
fn cones_square_to_zero() {
    let names = ["point", "circle3", "circle6", "rp2", "torus"];
    for seed in 0..50u64 {
        let name = names[seed as usize % names.len()];
        let f = random_chain_map(name, seed);
        let g = cone(&f).unwrap();
        for k in g.degrees() {
            if k < g.max_degree() {
                assert!(g.d(k + 1).mul_mat(g.d(k)).is_zero(), "{name} seed {seed} degree {k}");
            }
        }
    }
    for name in FIXTURE_NAMES {
        let c = Arc::new(fixture(name).unwrap().complex.cochain_complex(Coeff::Z));
        assert!(is_acyclic(&cone(&ChainMap::identity(c)).unwrap()).unwrap(), "{name}");
    }
}

/// Cover independence, observed: a second good cover gives the same groups.
#[test]
fn descriptors_agree_across_covers() {
    use sparks::cech::{dual_block_cover, star_cover, CechModel};
    use sparks::spark::NodeValue;
    let finite = |m: &CechModel, k: i32| -> Vec<String> {
        let g = m.spark.grid(k, 4, 0);
        assert!(g.passed());
        g.nodes
            .iter()
            .flatten()
            .filter(|v| !matches!(v, NodeValue::Structure(_)))
            .map(|v| v.to_string())
            .collect()
    };
    let mut compared = 0;
    for name in FIXTURE_NAMES {
        let fx = fixture(name).unwrap();
        let first = model(name);
        // stars of a subdivided surface have a nerve far too large to build
        if !star_cover(&fx.complex).is_good() {
            continue;
        }
        let (base, _, cover) = dual_block_cover(&fx.complex);
        let second = CechModel::build(&base, &cover).unwrap();
        for k in -1..=2 {
            assert_eq!(
                cone_cohomology(first.spark.psi(), k).unwrap(),
                cone_cohomology(second.spark.psi(), k).unwrap(),
                "{name} k={k}"
            );
            assert_eq!(finite(&first, k), finite(&second, k), "{name} k={k}");
        }
        compared += 1;
    }
    assert!(compared >= 4, "only {compared} fixtures had a second good cover");
}
