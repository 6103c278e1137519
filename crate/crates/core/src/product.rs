//! Cup products on cochains and the product of sparks.
//!
//! On simplicial cochains the cup is the front/back-face formula. On the
//! Čech–simplicial total complex, `x ∈ (p, q)` and `y ∈ (p', q')` multiply to
//! `(x⌣y)_γ = (−1)^{p q'} x_{γ₀…γ_p} ⌣ y_{γ_p…γ_{p+p'}}` on the intersection
//! `U_γ`. The spark product is
//! `(a, r) * (b, s) = (a ⌣ ι(ψ) + (−1)^{k+1} Ψ(r) ⌣ b, r ⌣ s)`.

use crate::cech::level::LevelModel;
use crate::cech::simplicial::SimplicialComplex;
use crate::cech::CechModel;
use crate::complex::cohomology;
use crate::error::{Error, Result};
use crate::linalg::matrix::{add_vec, neg_vec, rat_to_int_vec, scale_vec, sub_vec, to_rat_vec};
use crate::linalg::{Int, Rat};
use crate::spark::{Spark, SparkComplex, Witness};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// `(x⌣y)(v₀…v_{q+q'}) = x(v₀…v_q) · y(v_q…v_{q+q'})`.
pub fn cup_simplicial(k: &SimplicialComplex, q: usize, x: &[Rat], q2: usize, y: &[Rat]) -> Vec<Rat> {
    let n = q + q2;
    k.simplices(n)
        .iter()
        .map(|s| {
            let xv = &x[k.index_of(&s[..=q]).expect("face")];
            if xv.is_zero() {
                return Rat::zero();
            }
            let yv = &y[k.index_of(&s[q..]).expect("face")];
            xv * yv
        })
        .collect()
}

pub fn cup_integer(k: &SimplicialComplex, q: usize, x: &[Int], q2: usize, y: &[Int]) -> Vec<Int> {
    rat_to_int_vec(&cup_simplicial(k, q, &to_rat_vec(x), q2, &to_rat_vec(y))).expect("integral")
}

fn sign(e: usize) -> Rat {
    if e.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Which of the two equivalent expressions of the product to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductForm {
    /// `(a ⌣ ι(ψ) + (−1)^{k+1} Ψ(r) ⌣ b, r ⌣ s)`.
    Curvature,
    /// `(a ⌣ Ψ(s) + (−1)^{k+1} ι(φ) ⌣ b, r ⌣ s)`.
    Integral,
}

/// Products on a Čech model: total, edge and nerve cups and the spark product.
pub struct ProductStructure {
    pub model: Arc<CechModel>,
}

impl ProductStructure {
    pub fn new(model: Arc<CechModel>) -> ProductStructure {
        ProductStructure { model }
    }

    pub fn spark(&self) -> &Arc<SparkComplex> {
        &self.model.spark
    }

    /// Cup of total cochains of degrees `k` and `l`.
    pub fn cup_total(&self, k: i32, x: &[Rat], l: i32, y: &[Rat]) -> Vec<Rat> {
        let m = &self.model;
        let layout = &m.layout;
        let offs = m.offsets();
        let cover = &m.cover;
        let mut out = vec![Rat::zero(); m.f().rank(k + l)];
        if k < 0 || l < 0 {
            return out;
        }
        for bx in layout.blocks(k) {
            let xs = &x[bx.offset..bx.offset + bx.len];
            if xs.iter().all(|v| v.is_zero()) {
                continue;
            }
            for by in layout.blocks(l) {
                let ys = &y[by.offset..by.offset + by.len];
                if ys.iter().all(|v| v.is_zero()) {
                    continue;
                }
                let (p, q, p2, q2) = (bx.p, bx.q, by.p, by.q);
                let Some(bo) = layout.block(k + l, p + p2) else { continue };
                let sg = sign(p * q2);
                for (gi, gamma) in cover.nerve.simplices(p + p2).iter().enumerate() {
                    let u = cover.intersection(p + p2, gi);
                    if u.count(q + q2) == 0 {
                        continue;
                    }
                    let ai = cover.nerve.index_of(&gamma[..=p]).expect("face");
                    let bi = cover.nerve.index_of(&gamma[p..]).expect("face");
                    let ua = cover.intersection(p, ai);
                    let ub = cover.intersection(p2, bi);
                    let xo = offs.at(p, q, ai);
                    let yo = offs.at(p2, q2, bi);
                    let base = bo.offset + offs.at(p + p2, q + q2, gi);
                    for (si, s) in u.simplices(q + q2).iter().enumerate() {
                        let xv = &xs[xo + ua.index_of(&s[..=q]).expect("restriction")];
                        if xv.is_zero() {
                            continue;
                        }
                        let yv = &ys[yo + ub.index_of(&s[q..]).expect("restriction")];
                        if yv.is_zero() {
                            continue;
                        }
                        let v = &(xv * yv) * &sg;
                        out[base + si] += &v;
                    }
                }
            }
        }
        out
    }

    pub fn cup_edge(&self, q: i32, x: &[Rat], q2: i32, y: &[Rat]) -> Vec<Rat> {
        if q < 0 || q2 < 0 {
            return vec![Rat::zero(); self.spark().e().rank(q + q2)];
        }
        cup_simplicial(&self.model.base, q as usize, x, q2 as usize, y)
    }

    pub fn cup_nerve(&self, p: i32, r: &[Int], p2: i32, s: &[Int]) -> Vec<Int> {
        if p < 0 || p2 < 0 {
            return vec![Int::zero(); self.spark().i().rank(p + p2)];
        }
        cup_integer(&self.model.cover.nerve, p as usize, r, p2 as usize, s)
    }

    /// Degree `−1` spark `(0, 1)`; needs a connected nerve to be a unit.
    pub fn unit(&self) -> Result<Spark> {
        let sc = self.spark();
        let ones = vec![Int::one(); sc.i().rank(0)];
        sc.make_spark(-1, Vec::new(), ones)
    }

    pub fn product(&self, s1: &Spark, s2: &Spark, form: ProductForm) -> Result<Spark> {
        let sc = self.spark();
        let (k, l) = (s1.degree, s2.degree);
        let n = k + l + 1;
        let sg = sign((k + 1).rem_euclid(2) as usize);
        let a = match form {
            ProductForm::Curvature => {
                let psi = sc.apply_iota(l + 1, &s2.e);
                let first = self.cup_total(k, &s1.a, l + 1, &psi);
                let pr = sc.apply_psi(k + 1, &s1.r);
                let second = self.cup_total(k + 1, &pr, l, &s2.a);
                add_vec(&first, &scale_vec(&sg, &second))
            }
            ProductForm::Integral => {
                let ps = sc.apply_psi(l + 1, &s2.r);
                let first = self.cup_total(k, &s1.a, l + 1, &ps);
                let phi = sc.apply_iota(k + 1, &s1.e);
                let second = self.cup_total(k + 1, &phi, l, &s2.a);
                add_vec(&first, &scale_vec(&sg, &second))
            }
        };
        let a = if a.is_empty() { vec![Rat::zero(); sc.f().rank(n)] } else { a };
        let r = self.cup_nerve(k + 1, &s1.r, l + 1, &s2.r);
        let out = sc.make_spark(n, a, r).map_err(|e| Error::violation("product is not a spark", e.to_string()))?;
        let e = self.cup_edge(k + 1, &s1.e, l + 1, &s2.e);
        if out.e != e {
            return Err(Error::violation("product", "delta1 of the product is not the cup of curvatures"));
        }
        Ok(out)
    }

    /// `δ₁` multiplicative exactly, `δ₂` in the `H(I)` presentation, and the
    /// commutation signs `ε` with `s₁*s₂ ~ ε s₂*s₁`.
    pub fn delta_ring_check(&self, s1: &Spark, s2: &Spark) -> Result<DeltaRingReport> {
        let sc = self.spark();
        let p = self.product(s1, s2, ProductForm::Curvature)?;
        let delta1 = p.e == self.cup_edge(s1.degree + 1, &s1.e, s2.degree + 1, &s2.e);
        let h = cohomology(sc.i(), p.degree + 1)?;
        let want = h.coordinates(sc.i(), &to_rat_vec(&self.cup_nerve(s1.degree + 1, &s1.r, s2.degree + 1, &s2.r)))?;
        let delta2 = h.is_zero_class(&sub_vec(&sc.delta2(&p), &want));
        let q = self.product(s2, s1, ProductForm::Curvature)?;
        let signs = commutation_signs(sc, &p, &q);
        Ok(DeltaRingReport { delta1, delta2, signs })
    }

    /// `(−1)^k a ⌣ b`, the witness relating the two product forms.
    pub fn form_witness(&self, s1: &Spark, s2: &Spark) -> Witness {
        let k = s1.degree;
        let b = self.cup_total(k, &s1.a, s2.degree, &s2.a);
        let b = if b.is_empty() { vec![Rat::zero(); self.spark().f().rank(k + s2.degree)] } else { b };
        Witness {
            b: scale_vec(&sign(k.rem_euclid(2) as usize), &b),
            s: vec![Int::zero(); self.spark().i().rank(k + s2.degree + 1)],
        }
    }

    /// Leibniz `D(x⌣y) = Dx⌣y + (−1)^k x⌣Dy` on a pair of total cochains.
    pub fn leibniz_holds(&self, k: i32, x: &[Rat], l: i32, y: &[Rat]) -> bool {
        let f = self.model.f();
        let lhs = f.d(k + l).mul_vec(&self.cup_total(k, x, l, y));
        let dx = f.d(k).mul_vec(x);
        let dy = f.d(l).mul_vec(y);
        let rhs = add_vec(
            &self.cup_total(k + 1, &dx, l, y),
            &scale_vec(&sign(k.rem_euclid(2) as usize), &self.cup_total(k, x, l + 1, &dy)),
        );
        lhs == rhs
    }

    /// Leibniz on all pairs of basis vectors with `k + l ≤ max_total`; returns the first failure.
    pub fn leibniz_basis(&self, max_total: i32) -> Option<(i32, usize, i32, usize)> {
        let f = self.model.f();
        for k in f.degrees() {
            for l in f.degrees() {
                if k + l > max_total {
                    continue;
                }
                for i in 0..f.rank(k) {
                    let mut x = vec![Rat::zero(); f.rank(k)];
                    x[i] = Rat::one();
                    for j in 0..f.rank(l) {
                        let mut y = vec![Rat::zero(); f.rank(l)];
                        y[j] = Rat::one();
                        if !self.leibniz_holds(k, &x, l, &y) {
                            return Some((k, i, l, j));
                        }
                    }
                }
            }
        }
        None
    }

    /// Leibniz on `n` random pairs per degree pair.
    pub fn leibniz_sampled(&self, rng: &mut ChaCha8Rng, n: usize) -> bool {
        use crate::spark::sample::sparse_rat_vec;
        let f = self.model.f();
        for k in f.degrees() {
            for l in f.degrees() {
                for _ in 0..n {
                    let x = sparse_rat_vec(rng, f.rank(k));
                    let y = sparse_rat_vec(rng, f.rank(l));
                    if !self.leibniz_holds(k, &x, l, &y) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `ι(e)⌣ι(e') = ι(e⌣e')` and `Ψ(r)⌣Ψ(s) = Ψ(r⌣s)` on basis pairs.
    pub fn compatibility_certificates(&self) -> (bool, bool) {
        let sc = self.spark();
        let mut iota_ok = true;
        for q in sc.e().degrees() {
            for q2 in sc.e().degrees() {
                for i in 0..sc.e().rank(q) {
                    for j in 0..sc.e().rank(q2) {
                        let x = unit_vec(sc.e().rank(q), i);
                        let y = unit_vec(sc.e().rank(q2), j);
                        let lhs = self.cup_total(q, &sc.apply_iota(q, &x), q2, &sc.apply_iota(q2, &y));
                        let rhs = sc.apply_iota(q + q2, &self.cup_edge(q, &x, q2, &y));
                        iota_ok &= lhs == rhs;
                    }
                }
            }
        }
        let mut psi_ok = true;
        for p in sc.i().degrees() {
            for p2 in sc.i().degrees() {
                for i in 0..sc.i().rank(p) {
                    for j in 0..sc.i().rank(p2) {
                        let mut r = vec![Int::zero(); sc.i().rank(p)];
                        r[i] = Int::one();
                        let mut s = vec![Int::zero(); sc.i().rank(p2)];
                        s[j] = Int::one();
                        let lhs = self.cup_total(p, &sc.apply_psi(p, &r), p2, &sc.apply_psi(p2, &s));
                        let rhs = sc.apply_psi(p + p2, &self.cup_nerve(p, &r, p2, &s));
                        psi_ok &= lhs == rhs;
                    }
                }
            }
        }
        (iota_ok, psi_ok)
    }

    /// The product on `M_∞`: the same formula on the form part, with the
    /// acyclic part normalized to `(0, −r⌣s)`.
    pub fn product_full(&self, level: &LevelModel, s1: &Spark, s2: &Spark) -> Result<Spark> {
        let full = &level.full;
        let sc = self.spark();
        let (k, l) = (s1.degree, s2.degree);
        let n = k + l + 1;
        let nf = |d: i32| sc.f().rank(d);
        let a1 = &s1.a[..nf(k)];
        let b2 = &s2.a[..nf(l)];
        let psi2 = &s2.e;
        let sg = sign((k + 1).rem_euclid(2) as usize);
        let first = self.cup_total(k, a1, l + 1, psi2);
        let pr = sc.apply_psi(k + 1, &s1.r);
        let second = self.cup_total(k + 1, &pr, l, b2);
        let mut a = add_vec(&first, &scale_vec(&sg, &second));
        if a.is_empty() {
            a = vec![Rat::zero(); nf(n)];
        }
        let r = self.cup_nerve(k + 1, &s1.r, l + 1, &s2.r);
        a.extend(vec![Rat::zero(); sc.i().rank(n)]);
        a.extend(neg_vec(&to_rat_vec(&r)));
        full.make_spark(n, a, r).map_err(|e| Error::violation("product is not a spark", e.to_string()))
    }

    /// `Π_p(s₁*s₂)` against `Π_p(s₁) *_p Π_p(s₂)`, where `*_p` multiplies zero
    /// extensions in `M_∞` and projects back.
    pub fn truncation_push(&self, level: &LevelModel, s1: &Spark, s2: &Spark) -> Result<TruncationPush> {
        if !Arc::ptr_eq(&level.edge, &self.model) {
            return Err(Error::input("level model was built from a different Čech model"));
        }
        let projected = level.project(&self.product_full(level, s1, s2)?);
        let t1 = level.extend(&level.project(s1));
        let t2 = level.extend(&level.project(s2));
        let truncated = level.project(&self.product_full(level, &t1, &t2)?);
        let witness = level.spark.sparks_equivalent(&projected, &truncated);
        Ok(TruncationPush { projected, truncated, witness })
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Signs `ε ∈ {1, −1}` with `p ~ ε q`.
pub fn commutation_signs(sc: &SparkComplex, p: &Spark, q: &Spark) -> Vec<i64> {
    let mut out = Vec::new();
    if sc.sparks_equivalent(p, q).is_some() {
        out.push(1);
    }
    if sc.sparks_equivalent(p, &sc.neg(q)).is_some() {
        out.push(-1);
    }
    out
}

/// Sign table entry for one degree pair.
#[derive(Clone, Debug)]
pub struct SignEntry {
    pub k: i32,
    pub l: i32,
    /// Signs consistent with every pair whose curvatures graded-commute as cochains.
    pub signs: Vec<i64>,
    pub compared: usize,
    /// Pairs with `φ⌣ψ ≠ ±ψ⌣φ` (graded) as cochains; simplicial cup products
    /// of curvatures do not commute, and equivalent sparks share `δ₁`.
    pub incomparable: usize,
    /// Random pairs with no sign relating `s*t` and `t*s`.
    pub random_failures: usize,
}

impl SignEntry {
    /// `(−1)^{(k+1)(l+1)}`.
    pub fn expected(&self) -> i64 {
        if ((self.k + 1) * (self.l + 1)).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn consistent(&self) -> bool {
        self.signs.contains(&self.expected())
    }
}

impl ProductStructure {
    /// Flat spark of degree `k`: closed forms from `H^k(F)` with random coefficients.
    pub fn flat_spark(&self, k: i32, rng: &mut ChaCha8Rng) -> Spark {
        use crate::spark::sample::small_rat;
        let sc = self.spark();
        let mut s = sc.zero_spark(k);
        if let Ok(h) = cohomology(sc.f(), k) {
            for rep in &h.representatives {
                s.a = add_vec(&s.a, &scale_vec(&small_rat(rng), rep));
            }
        }
        s
    }

    /// Generator sparks `generator_spark(k, g)` for the `H^{k+1}(I)` generators.
    pub fn generator_sparks(&self, k: i32) -> Vec<Spark> {
        let sc = self.spark();
        match cohomology(sc.i(), k + 1) {
            Ok(h) => h
                .representatives
                .iter()
                .map(|g| sc.generator_spark(k, &rat_to_int_vec(g).expect("integral generator")))
                .collect(),
            Err(_) => Vec::new(),
        }
    }

    /// Commutation signs for `(k, l) ∈ {−1, 0, 1}²`, decided on generator and
    /// flat sparks. Random sparks are compared too but only counted.
    pub fn sign_table(&self, seed: u64, samples: usize) -> Result<Vec<SignEntry>> {
        let sc = self.spark();
        let mut rng = crate::spark::sample::rng(seed);
        let mut out = Vec::new();
        for k in -1..=1 {
            for l in -1..=1 {
                let mut left = self.generator_sparks(k);
                let mut right = self.generator_sparks(l);
                for _ in 0..samples {
                    left.push(self.flat_spark(k, &mut rng));
                    right.push(self.flat_spark(l, &mut rng));
                }
                let mut entry =
                    SignEntry { k, l, signs: vec![1, -1], compared: 0, incomparable: 0, random_failures: 0 };
                for s in &left {
                    for t in &right {
                        let p = self.product(s, t, ProductForm::Curvature)?;
                        let q = self.product(t, s, ProductForm::Curvature)?;
                        let et = self.cup_edge(l + 1, &t.e, k + 1, &s.e);
                        let graded = scale_vec(&sign(((k + 1) * (l + 1)).rem_euclid(2) as usize), &et);
                        if p.e != graded {
                            entry.incomparable += 1;
                            continue;
                        }
                        entry.compared += 1;
                        let found = commutation_signs(sc, &p, &q);
                        entry.signs.retain(|e| found.contains(e));
                    }
                }
                for _ in 0..samples {
                    let s = sc.random_spark(k, &mut rng);
                    let t = sc.random_spark(l, &mut rng);
                    let p = self.product(&s, &t, ProductForm::Curvature)?;
                    let q = self.product(&t, &s, ProductForm::Curvature)?;
                    if commutation_signs(sc, &p, &q).is_empty() {
                        entry.random_failures += 1;
                    }
                }
                out.push(entry);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct DeltaRingReport {
    pub delta1: bool,
    pub delta2: bool,
    /// Signs consistent with `s₁*s₂ ~ ε s₂*s₁`.
    pub signs: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct TruncationPush {
    pub projected: Spark,
    pub truncated: Spark,
    pub witness: Option<Witness>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::fixtures::fixture;
    use crate::spark::sample::rng;

    fn structure(name: &str) -> ProductStructure {
        let fx = fixture(name).unwrap();
        ProductStructure::new(Arc::new(CechModel::build(&fx.model_base, &fx.cover).unwrap()))
    }

    #[test]
    fn circle6_products() {
        let ps = structure("circle6");
        assert_eq!(ps.leibniz_basis(3), None);
        assert_eq!(ps.compatibility_certificates(), (true, true));
        let sc = ps.spark().clone();
        let u = ps.unit().unwrap();
        let mut r = rng(1);
        for k in -1..=1 {
            for _ in 0..6 {
                let s = sc.random_spark(k, &mut r);
                let p = ps.product(&u, &s, ProductForm::Curvature).unwrap();
                assert!(sc.sparks_equivalent(&p, &s).is_some());
                for l in -1..=1 {
                    let t = sc.random_spark(l, &mut r);
                    let a = ps.product(&s, &t, ProductForm::Curvature).unwrap();
                    let b = ps.product(&s, &t, ProductForm::Integral).unwrap();
                    let w = ps.form_witness(&s, &t);
                    assert!(sc.verify_witness(&a, &b, &w), "forms k={k} l={l}");
                    let rep = ps.delta_ring_check(&s, &t).unwrap();
                    assert!(rep.delta1 && rep.delta2);
                }
            }
        }
    }

    #[test]
    fn sign_table_torus() {
        let ps = structure("torus");
        let table = ps.sign_table(5, 2).unwrap();
        for e in &table {
            assert!(e.consistent(), "{e:?}");
        }
        let pinned = |k, l| table.iter().find(|e| e.k == k && e.l == l).unwrap().signs.clone();
        assert_eq!(pinned(-1, -1), vec![1]);
        assert_eq!(pinned(-1, 1), vec![1]);
        assert_eq!(pinned(0, 0), vec![-1]);
    }

    #[test]
    fn kernel_is_an_ideal() {
        let ps = structure("circle6");
        let level = LevelModel::build(ps.model.clone(), 1).unwrap();
        let kappa = level.kernel_representative(1, 3).unwrap();
        assert!(level.kernel_membership(&kappa).is_some());
        let mut r = rng(9);
        for l in -1..=1 {
            for _ in 0..4 {
                let s = level.embed(&ps.spark().random_spark(l, &mut r));
                let left = level.project(&ps.product_full(&level, &kappa, &s).unwrap());
                let right = level.project(&ps.product_full(&level, &s, &kappa).unwrap());
                assert!(level.spark.is_zero_class(&left), "kappa * s, l={l}");
                assert!(level.spark.is_zero_class(&right), "s * kappa, l={l}");
                let t = level.embed(&ps.spark().random_spark(0, &mut r));
                let push = ps.truncation_push(&level, &s, &t).unwrap();
                assert!(push.witness.is_some());
            }
        }
    }
}
