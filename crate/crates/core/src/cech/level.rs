//! Level-`p` truncations of the Čech–simplicial model.
//!
//! The truncated form complex `F_p` keeps the bidegrees `(r, ·)` with `r < p`.
//! Its edge is all of `F_p`, and `Ψ` is made to miss the edge by pairing it
//! with the acyclic complex `T = cone(id: I ⊗ ℚ → I ⊗ ℚ)`:
//! `M_p = (F_p ⊕ T, F_p, I, (Π_p Ψ, τ))` with `τ(r) = (r, 0)`. The untruncated
//! model `M_∞` is built the same way from the whole total complex, and
//! `Π_p = Π ⊕ id` maps one to the other.

use super::model::CechModel;
use crate::complex::{
    cone_cohomology, truncate, two_step_hypercohomology, ChainMap, CochainComplex, Coeff, Truncation,
};
use crate::error::{Error, Result};
use crate::linalg::matrix::{is_zero_vec, sub_vec};
use crate::linalg::{Int, MixedGroupDescriptor, MixedSolver, Rat, RationalMatrix};
use crate::spark::{Spark, SparkComplex, Witness};
use std::sync::Arc;

/// `F ⊕ T` together with the maps that make it a spark complex with edge `F`.
struct Augmented {
    iota: ChainMap,
    psi: ChainMap,
}

/// Builds `(F ⊕ T, F, I, (Ψ, τ))`.
fn augment(psi: &ChainMap) -> Result<Augmented> {
    let f = psi.target().clone();
    let i = psi.source().clone();
    let lo = f.min_degree().min(i.min_degree() - 1);
    let hi = f.max_degree().max(i.max_degree());
    let t_rank = |k: i32| i.rank(k) + i.rank(k + 1);
    let ranks: Vec<usize> = (lo..=hi).map(|k| f.rank(k) + t_rank(k)).collect();
    let mut diffs = Vec::new();
    for k in lo..hi {
        let (f0, f1) = (f.rank(k), f.rank(k + 1));
        let (i0, i1, i2) = (i.rank(k), i.rank(k + 1), i.rank(k + 2));
        let mut m = RationalMatrix::zeros(f1 + i1 + i2, f0 + i0 + i1);
        m.set_block(0, 0, f.d(k));
        m.set_block(f1, f0, i.d(k));
        m.set_block(f1, f0 + i0, &RationalMatrix::identity(i1));
        m.set_block(f1 + i1, f0 + i0, &i.d(k + 1).neg_mat());
        diffs.push(m);
    }
    let complex = Arc::new(CochainComplex::new(Coeff::Q, lo, ranks, diffs)?);
    let iota = ChainMap::from_fn(f.clone(), complex.clone(), |k| {
        RationalMatrix::identity(f.rank(k)).vstack(&RationalMatrix::zeros(t_rank(k), f.rank(k)))
    })?;
    let psi_aug = ChainMap::from_fn(i.clone(), complex.clone(), |k| {
        psi.f(k).vstack(&RationalMatrix::identity(i.rank(k))).vstack(&RationalMatrix::zeros(i.rank(k + 1), i.rank(k)))
    })?;
    Ok(Augmented { iota, psi: psi_aug })
}

pub struct LevelModel {
    pub level: usize,
    pub edge: Arc<CechModel>,
    /// `M_∞`.
    pub full: Arc<SparkComplex>,
    /// `M_p`.
    pub spark: Arc<SparkComplex>,
    pub truncation: Truncation,
    /// `Π_p = Π ⊕ id` from the form complex of `M_∞` to that of `M_p`.
    pub projection: ChainMap,
}

impl std::fmt::Debug for LevelModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LevelModel(p={}, {:?})", self.level, self.spark)
    }
}

impl LevelModel {
    pub fn build(edge: Arc<CechModel>, level: usize) -> Result<LevelModel> {
        let f = edge.f().clone();
        let full_aug = augment(edge.spark.psi())?;
        let full = Arc::new(SparkComplex::new(full_aug.iota, full_aug.psi)?);
        let truncation = truncate(&f, &edge.layout, level)?;
        let psi_p = edge.spark.psi().then(&truncation.projection)?;
        let aug = augment(&psi_p)?;
        let spark = Arc::new(SparkComplex::new(aug.iota, aug.psi)?);
        let i = edge.spark.i().clone();
        let projection = ChainMap::from_fn(full.f().clone(), spark.f().clone(), |k| {
            let t = i.rank(k) + i.rank(k + 1);
            truncation.projection.f(k).block_diag(&RationalMatrix::identity(t))
        })?;
        Ok(LevelModel { level, edge, full, spark, truncation, projection })
    }

    /// `j`: an edge-model spark `(a, r)` as `((a, (0, −r)), r)` in `M_∞`.
    pub fn embed(&self, s: &Spark) -> Spark {
        let k = s.degree;
        let i = self.edge.spark.i();
        let mut a = s.a.clone();
        a.extend(vec![Rat::zero(); i.rank(k)]);
        a.extend(s.r.iter().map(|v| -Rat::from(v)));
        Spark { degree: k, a, r: s.r.clone(), e: self.edge.spark.apply_iota(k + 1, &s.e) }
    }

    /// `Π_p` on sparks of `M_∞`.
    pub fn project(&self, s: &Spark) -> Spark {
        let k = s.degree;
        Spark { degree: k, a: self.projection.apply(k, &s.a), r: s.r.clone(), e: self.truncation.project(k + 1, &s.e) }
    }

    /// Zero extension of a level-`p` spark; a valid `M_∞` spark with `Π_p` of it equal to `s`.
    pub fn extend(&self, s: &Spark) -> Spark {
        let k = s.degree;
        let f = self.edge.f();
        let nfp = self.truncation.complex.rank(k);
        let mut a = self.truncation.extend(k, &s.a[..nfp], f.rank(k));
        a.extend_from_slice(&s.a[nfp..]);
        let e = self.truncation.extend(k + 1, &s.e, f.rank(k + 1));
        let mut out = Spark { degree: k, a, r: s.r.clone(), e };
        // the edge is all of F, so e is recomputed from the spark equation
        out.e = self.full.make_spark(k, out.a.clone(), out.r.clone()).expect("zero extension is a spark").e;
        out
    }

    pub fn project_witness(&self, k: i32, w: &Witness) -> Witness {
        Witness { b: self.projection.apply(k - 1, &w.b), s: w.s.clone() }
    }

    /// Decides whether `s ~ (a', 0)` with `Π_p a' = 0`; returns the witness
    /// of `s ~ (a', 0)` and `a'` when it exists.
    pub fn kernel_membership(&self, s: &Spark) -> Option<(Witness, Vec<Rat>)> {
        let k = s.degree;
        let full = &self.full;
        let i = full.i();
        // the witness (b, σ) of s ~ (a', 0): a − a' = Db + Ψσ, r = −dσ
        let neg_r: Vec<Int> = s.r.iter().map(|v| -v).collect();
        let sigma0 = if is_zero_vec(&neg_r) { vec![Int::zero(); i.rank(k)] } else { i.hermite(k).solve(&neg_r)? };
        let target = sub_vec(&s.a, &full.apply_psi(k, &sigma0));
        let high = self.high_indices(k);
        let n = full.f().rank(k);
        let mut cols = full.f().d(k - 1).clone();
        let mut inc = RationalMatrix::zeros(n, high.len());
        for (c, &j) in high.iter().enumerate() {
            inc.set(j, c, Rat::one());
        }
        cols = cols.hstack(&inc);
        let zk = i.hermite(k).kernel_basis();
        let zmat = crate::linalg::IntegerMatrix::from_columns(i.rank(k), &zk);
        let lattice = full.psi().f(k).mul_mat(&zmat.to_rational());
        let solver = MixedSolver::new(&cols, &lattice);
        let (x, y) = solver.solve(&target)?;
        let nb = full.f().rank(k - 1);
        let b = x[..nb].to_vec();
        let mut a_prime = vec![Rat::zero(); n];
        for (c, &j) in high.iter().enumerate() {
            a_prime[j] = x[nb + c].clone();
        }
        let sig = crate::linalg::matrix::add_vec(&sigma0, &zmat.mul_vec(&y));
        let w = Witness { b, s: sig };
        Some((w, a_prime))
    }

    /// Indices of `F^k ⊕ T^k` in bidegrees `(r, ·)` with `r ≥ p`.
    fn high_indices(&self, k: i32) -> Vec<usize> {
        let kept = if k >= 0 { self.truncation.kept.get(k as usize).cloned().unwrap_or_default() } else { Vec::new() };
        let n = self.edge.f().rank(k);
        let mut is_kept = vec![false; n];
        for j in kept {
            is_kept[j] = true;
        }
        (0..n).filter(|&j| !is_kept[j]).collect()
    }

    /// A degree-`k` spark `(Ψ(g)/n, 0)` for an integer cocycle `g` whose class
    /// survives rationally; it lies in the kernel of `Π_p` once `k ≥ p`.
    pub fn kernel_representative(&self, k: i32, denominator: i64) -> Option<Spark> {
        let i = self.full.i();
        let h = crate::complex::cohomology(i, k).ok()?;
        let m = crate::complex::induced_map(self.edge.spark.psi(), k).ok()?;
        let j = (0..h.rank()).find(|&j| h.orders[j].is_zero() && !is_zero_vec(&m.matrix.column(j)))?;
        let g = crate::linalg::matrix::rat_to_int_vec(&h.representatives[j])?;
        let scale = Rat::from_frac(1, denominator);
        let a: Vec<Rat> = self.full.apply_psi(k, &g).iter().map(|v| v * &scale).collect();
        self.full.make_spark(k, a, vec![Int::zero(); i.rank(k + 1)]).ok()
    }

    /// `H^k` of the cone of `(Π_p Ψ, τ)` and the two-step hypercohomology of
    /// `C(N; ℤ) → σ_{<p} C(N; ℚ)`, in that order.
    pub fn deligne_check(&self, k: i32) -> Result<(MixedGroupDescriptor, MixedGroupDescriptor)> {
        let lhs = cone_cohomology(self.spark.psi(), k)?;
        let row = truncated_row(&self.edge, self.level)?;
        let rhs = two_step_hypercohomology(&row, k + 1, 1)?;
        Ok((lhs, rhs))
    }
}

/// `C(N; ℤ) → σ_{<p} C(N; ℚ)`, the identity below degree `p`.
pub fn truncated_row(edge: &CechModel, level: usize) -> Result<ChainMap> {
    if level == 0 {
        return Err(Error::input("level must be at least 1"));
    }
    let nerve = &edge.cover.nerve;
    let top = (nerve.dim() + 1).max(0) as usize;
    let n = level.min(top);
    let ranks: Vec<usize> = (0..n).map(|q| nerve.count(q)).collect();
    let diffs: Vec<RationalMatrix> = (0..n.saturating_sub(1)).map(|q| nerve.coboundary(q)).collect();
    let row =
        Arc::new(if n == 0 { CochainComplex::zero(Coeff::Q) } else { CochainComplex::new(Coeff::Q, 0, ranks, diffs)? });
    let src = edge.spark.i().clone();
    ChainMap::from_fn(src.clone(), row.clone(), |k| {
        if k >= 0 && (k as usize) < n {
            RationalMatrix::identity(src.rank(k))
        } else {
            RationalMatrix::zeros(row.rank(k), src.rank(k))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::fixtures::fixture;
    use crate::spark::sample::rng;

    fn circle6() -> Arc<CechModel> {
        let fx = fixture("circle6").unwrap();
        Arc::new(CechModel::build(&fx.model_base, &fx.cover).unwrap())
    }

    #[test]
    fn circle6_level_one() {
        let edge = circle6();
        let lm = LevelModel::build(edge.clone(), 1).unwrap();
        for k in -1..=2 {
            let (a, b) = lm.deligne_check(k).unwrap();
            assert_eq!(a, b);
        }
        let rep = lm.kernel_representative(1, 3).unwrap();
        assert!(!lm.full.is_zero_class(&rep));
        assert!(lm.spark.is_zero_class(&lm.project(&rep)));
        let (w, ap) = lm.kernel_membership(&rep).unwrap();
        let target = Spark { degree: 1, a: ap, r: vec![Int::zero(); rep.r.len()], e: rep.e.clone() };
        assert!(lm.full.verify_witness(&rep, &target, &w));
        let mut r = rng(3);
        for k in -1..=1 {
            for _ in 0..8 {
                let s = edge.spark.random_spark(k, &mut r);
                let j = lm.embed(&s);
                assert!(lm.full.is_valid(&j));
                let p = lm.project(&j);
                assert!(lm.spark.is_valid(&p));
                let back = lm.extend(&p);
                assert!(lm.full.is_valid(&back));
                assert_eq!(lm.project(&back), p);
                assert_eq!(lm.kernel_membership(&j).is_some(), lm.spark.is_zero_class(&p));
            }
        }
    }

    #[test]
    fn beyond_extent_is_identity() {
        let edge = circle6();
        let lm = LevelModel::build(edge, 10).unwrap();
        for k in lm.full.f().degrees() {
            assert_eq!(*lm.projection.f(k), RationalMatrix::identity(lm.full.f().rank(k)));
        }
    }
}
