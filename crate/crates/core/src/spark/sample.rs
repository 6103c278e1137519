//! Seeded random sparks.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha 0.3),
//! so samples are identical across platforms for equal seeds.

use super::complex::SparkComplex;
use super::spark::{Spark, Witness};
use crate::complex::cohomology;
use crate::linalg::matrix::{add_vec, rat_to_int_vec, sub_vec};
use crate::linalg::{Int, Rat};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational: numerator in `[−3, 3]`, denominator in `{1, 2, 3}`.
pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n: i64 = rng.gen_range(-3..=3);
    let d: i64 = rng.gen_range(1..=3);
    Rat::from_frac(n, d)
}

pub fn small_int(rng: &mut ChaCha8Rng) -> Int {
    Int::from(rng.gen_range(-2i64..=2))
}

/// Sparse random rational vector (each entry nonzero with probability ~1/3).
pub fn sparse_rat_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| if rng.gen_range(0..3) == 0 { small_rat(rng) } else { Rat::zero() }).collect()
}

pub fn sparse_int_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Int> {
    (0..n).map(|_| if rng.gen_range(0..3) == 0 { small_int(rng) } else { Int::zero() }).collect()
}

/// Random integer combination of lattice basis vectors.
pub fn lattice_combination(rng: &mut ChaCha8Rng, basis: &[Vec<Int>], n: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); n];
    for b in basis {
        let c = small_int(rng);
        if !c.is_zero() {
            out = add_vec(&out, &b.iter().map(|v| v * &c).collect::<Vec<_>>());
        }
    }
    out
}

impl SparkComplex {
    /// Random degree-`k` spark: random integral class, random smooth part,
    /// random closed part and a random equivalence perturbation.
    pub fn random_spark(&self, k: i32, rng: &mut ChaCha8Rng) -> Spark {
        let i = self.i();
        let f = self.f();
        let z = i.hermite(k + 1).kernel_basis();
        let r = lattice_combination(rng, &z, i.rank(k + 1));
        let pr = self.apply_psi(k + 1, &r);
        let e0 = self.edge_representative(k + 1, &pr).expect("Psi(r) is closed");
        let mut s = self.spark_from_data(k, &e0, &r).expect("classes agree by construction");
        // smooth part (ι x, 0)
        let x = sparse_rat_vec(rng, self.e().rank(k));
        let smooth = Spark {
            degree: k,
            a: self.apply_iota(k, &x),
            r: vec![Int::zero(); i.rank(k + 1)],
            e: self.e().d(k).mul_vec(&x),
        };
        s = self.add(&s, &smooth);
        // closed part from H^k(F)
        if let Ok(h) = cohomology(f, k) {
            for rep in &h.representatives {
                let c = small_rat(rng);
                if !c.is_zero() {
                    s.a = add_vec(&s.a, &rep.iter().map(|v| v * &c).collect::<Vec<_>>());
                }
            }
        }
        let w = Witness { b: sparse_rat_vec(rng, f.rank(k - 1)), s: sparse_int_vec(rng, i.rank(k)) };
        self.perturb(&s, &w)
    }

    /// Random spark with `δ₂ = 0` (its `r` is a coboundary).
    pub fn random_kernel_spark(&self, k: i32, rng: &mut ChaCha8Rng) -> Spark {
        let t = self.random_spark(k, rng);
        let h = cohomology(self.i(), k + 1).expect("integer complex");
        let c = self.delta2(&t);
        let rep = h.cocycle(&c);
        let r = rat_to_int_vec(&rep).expect("integral representative");
        let base = self.generator_spark(k, &r);
        self.sub(&t, &base)
    }

    /// A spark with the given integral cocycle `r` and `e` chosen from the edge.
    pub fn generator_spark(&self, k: i32, r: &[Int]) -> Spark {
        let pr = self.apply_psi(k + 1, r);
        let e = self.edge_representative(k + 1, &pr).expect("Psi(r) is closed");
        self.spark_from_data(k, &e, r).expect("classes agree by construction")
    }

    /// `t − spark_from_data(δ₁ t, r_t)`: a spark with `δ₁ = 0`, `r = 0`.
    pub fn curvature_free_part(&self, t: &Spark) -> Spark {
        let base = self.spark_from_data(t.degree, &t.e, &t.r).expect("valid spark data");
        Spark {
            degree: t.degree,
            a: sub_vec(&t.a, &base.a),
            r: vec![Int::zero(); t.r.len()],
            e: vec![Rat::zero(); t.e.len()],
        }
    }
}
