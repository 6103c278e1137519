//! Discrete line bundles with connection, in additive form.
//!
//! `g_{αβ}` is a rational function on `U_α ∩ U_β` (the log of the transition
//! function), `A_α` a rational 1-cochain on `U_α`. Valid data satisfy
//! `δg ∈ ℤ` (constant on each triple overlap) and `A_α − A_β = d g_{αβ}`.
//! The associated degree-1 spark is `a = (A, −g)`, `r = δg`.

use crate::cech::fixtures::CoverKind;
use crate::cech::{CechModel, SimplicialComplex};
use crate::complex::cohomology;
use crate::error::{Error, Result};
use crate::linalg::matrix::{add_vec, is_zero_vec, neg_vec, rat_to_int_vec, sub_vec, to_rat_vec};
use crate::linalg::{ColumnHermite, Int, IntegerMatrix, Rat, RowEchelon};
use crate::spark::Spark;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct DiscreteLineBundle {
    pub model: Arc<CechModel>,
    /// Bidegree `(1, 0)`: the functions `g_{αβ}` concatenated over nerve edges.
    pub g: Vec<Rat>,
    /// Bidegree `(0, 1)`: the 1-cochains `A_α` concatenated over members.
    pub a: Vec<Rat>,
}

impl DiscreteLineBundle {
    pub fn new(model: Arc<CechModel>, g: Vec<Rat>, a: Vec<Rat>) -> Result<DiscreteLineBundle> {
        let dc = &model.double;
        if g.len() != dc.rank(1, 0) || a.len() != dc.rank(0, 1) {
            return Err(Error::input(format!(
                "bundle needs {} transition values and {} connection values, got {} and {}",
                dc.rank(1, 0),
                dc.rank(0, 1),
                g.len(),
                a.len()
            )));
        }
        let l = DiscreteLineBundle { model, g, a };
        l.validate()?;
        Ok(l)
    }

    pub fn trivial(model: Arc<CechModel>) -> DiscreteLineBundle {
        let dc = &model.double;
        let (ng, na) = (dc.rank(1, 0), dc.rank(0, 1));
        DiscreteLineBundle { model, g: vec![Rat::zero(); ng], a: vec![Rat::zero(); na] }
    }

    /// Flat bundle with constant transition values `θ_{αβ}` (a nerve 1-cochain).
    pub fn flat(model: Arc<CechModel>, theta: &[Rat]) -> Result<DiscreteLineBundle> {
        let cover = &model.cover;
        if theta.len() != cover.nerve.count(1) {
            return Err(Error::input(format!(
                "expected {} nerve edge values, got {}",
                cover.nerve.count(1),
                theta.len()
            )));
        }
        let mut g = Vec::new();
        for (i, t) in theta.iter().enumerate() {
            g.extend(std::iter::repeat_n(t.clone(), cover.intersection(1, i).count(0)));
        }
        let na = model.double.rank(0, 1);
        Self::new(model, g, vec![Rat::zero(); na])
    }

    fn validate(&self) -> Result<()> {
        let dc = &self.model.double;
        let cover = &self.model.cover;
        let offs = self.model.offsets();
        if dc.width() > 2 {
            let dg = dc.delta(1, 0).mul_vec(&self.g);
            for (i, s) in cover.nerve.simplices(2).iter().enumerate() {
                let n = cover.intersection(2, i).count(0);
                let part = &dg[offs.at(2, 0, i)..offs.at(2, 0, i) + n];
                if part.iter().any(|v| *v != part[0]) || !part[0].is_integer() {
                    return Err(Error::input(format!("cocycle condition fails on the triple overlap {s:?}")));
                }
            }
        }
        let lhs = dc.delta(0, 1).mul_vec(&self.a);
        let dg = dc.vert(1, 0).mul_vec(&self.g);
        // δA = A_β − A_α on (α, β), so compatibility reads δA = −d g
        let bad = add_vec(&lhs, &dg);
        for (i, s) in cover.nerve.simplices(1).iter().enumerate() {
            let n = cover.intersection(1, i).count(1);
            let o = offs.at(1, 1, i);
            if !is_zero_vec(&bad[o..o + n]) {
                return Err(Error::input(format!("A_a - A_b != d g_ab on the overlap {s:?}")));
            }
        }
        Ok(())
    }

    /// `δg`, an integer Čech 2-cocycle.
    pub fn transition_cocycle(&self) -> Vec<Int> {
        let cover = &self.model.cover;
        let offs = self.model.offsets();
        let dc = &self.model.double;
        if dc.width() <= 2 {
            return Vec::new();
        }
        let dg = dc.delta(1, 0).mul_vec(&self.g);
        (0..cover.nerve.count(2)).map(|i| dg[offs.at(2, 0, i)].to_integer().expect("validated")).collect()
    }

    pub fn to_spark(&self) -> Spark {
        let m = &self.model;
        let f = m.f();
        let mut a = vec![Rat::zero(); f.rank(1)];
        if let Some(b) = m.layout.block(1, 0) {
            a[b.offset..b.offset + b.len].clone_from_slice(&self.a);
        }
        if let Some(b) = m.layout.block(1, 1) {
            a[b.offset..b.offset + b.len].clone_from_slice(&neg_vec(&self.g));
        }
        let r = self.transition_cocycle();
        let r = if r.is_empty() { vec![Int::zero(); m.spark.i().rank(2)] } else { r };
        m.spark.make_spark(1, a, r).expect("valid bundle data give a spark")
    }

    /// The global 2-cochain `dA_α`.
    pub fn curvature(&self) -> Vec<Rat> {
        self.to_spark().e
    }

    /// Coordinates of `[δg]` in the `H²(N; ℤ)` presentation.
    pub fn chern_class(&self) -> Result<Vec<Int>> {
        let i = self.model.spark.i();
        let h = cohomology(i, 2)?;
        let r = self.to_spark().r;
        h.int_coordinates(i, &to_rat_vec(&r))
    }

    /// A bundle whose class is `c` in the `H²(N; ℤ)` presentation.
    pub fn from_chern(model: Arc<CechModel>, c: &[Int]) -> Result<DiscreteLineBundle> {
        let i = model.spark.i();
        let h = cohomology(i, 2)?;
        if c.len() != h.rank() {
            return Err(Error::input(format!("H^2 has {} generators, got {} coordinates", h.rank(), c.len())));
        }
        let dc = &model.double;
        if h.rank() == 0 || dc.width() <= 2 {
            return Ok(Self::trivial(model));
        }
        let r = h.cocycle(&to_rat_vec(c));
        rat_to_int_vec(&r).ok_or_else(|| Error::input("class coordinates have no integral representative"))?;
        // Ψ(r) in bidegree (2, 0)
        let cover = &model.cover;
        let offs = model.offsets();
        let mut pr = vec![Rat::zero(); dc.rank(2, 0)];
        for (j, v) in r.iter().enumerate() {
            let o = offs.at(2, 0, j);
            for x in &mut pr[o..o + cover.intersection(2, j).count(0)] {
                *x = v.clone();
            }
        }
        let g = RowEchelon::new(&dc.delta(1, 0))
            .solve(&pr)
            .ok_or_else(|| Error::violation("row exactness", "delta g = r has no solution"))?;
        let rhs = neg_vec(&dc.vert(1, 0).mul_vec(&g));
        let a = RowEchelon::new(&dc.delta(0, 1))
            .solve(&rhs)
            .ok_or_else(|| Error::violation("row exactness", "delta A = -d g has no solution"))?;
        Self::new(model, g, a)
    }

    pub fn tensor(&self, other: &DiscreteLineBundle) -> Result<DiscreteLineBundle> {
        self.same_base(other)?;
        Self::new(self.model.clone(), add_vec(&self.g, &other.g), add_vec(&self.a, &other.a))
    }

    pub fn dual(&self) -> DiscreteLineBundle {
        DiscreteLineBundle { model: self.model.clone(), g: neg_vec(&self.g), a: neg_vec(&self.a) }
    }

    pub fn gauge_equivalent(&self, other: &DiscreteLineBundle) -> Result<bool> {
        self.same_base(other)?;
        Ok(self.model.spark.sparks_equivalent(&self.to_spark(), &other.to_spark()).is_some())
    }

    fn same_base(&self, other: &DiscreteLineBundle) -> Result<()> {
        if Arc::ptr_eq(&self.model, &other.model) {
            Ok(())
        } else {
            Err(Error::input("bundles live on different models"))
        }
    }

    /// Holonomy around an integer 1-cycle `z` of the base, in `[0, 1)`.
    pub fn holonomy(&self, z: &[Int]) -> Result<Rat> {
        let zt = total_cycle(&self.model, 1, z)?;
        self.model.spark.evaluate(&self.to_spark(), &zt)
    }
}

/// An integer chain `Z` of the total complex in degree `k` with `∂Z = 0` and
/// `ι^T Z = z`, for an integer `k`-cycle `z` of the base.
pub fn total_cycle(model: &CechModel, k: i32, z: &[Int]) -> Result<Vec<Int>> {
    let sc = &model.spark;
    if z.len() != sc.e().rank(k) {
        return Err(Error::input(format!("cycle has length {}, expected {}", z.len(), sc.e().rank(k))));
    }
    if !is_zero_vec(&sc.e().d(k - 1).vec_mul(&to_rat_vec(z))) {
        return Err(Error::input("chain has nonzero boundary"));
    }
    let f = model.f();
    let dt = f.d(k - 1).transpose();
    let it = sc.iota().f(k).transpose();
    let m: IntegerMatrix = dt.vstack(&it).to_integer().expect("integral maps");
    let mut rhs = vec![Int::zero(); dt.rows()];
    rhs.extend_from_slice(z);
    let zt = ColumnHermite::new(&m)
        .solve(&rhs)
        .ok_or_else(|| Error::violation("total cycle", "no integral lift of the cycle"))?;
    debug_assert!(is_zero_vec(&sub_vec(&it.mul_vec(&to_rat_vec(&zt)), &to_rat_vec(z))));
    Ok(zt)
}

/// The integer 1-cycle on the model base traced by a closed vertex loop of
/// `k`; for dual-block covers the loop runs through edge barycenters.
pub fn vertex_loop(
    k: &SimplicialComplex,
    base: &SimplicialComplex,
    kind: CoverKind,
    verts: &[usize],
) -> Result<Vec<Int>> {
    if verts.len() < 2 {
        return Err(Error::input("a loop needs at least two vertices"));
    }
    let mut path: Vec<usize> = Vec::new();
    let sd = (kind == CoverKind::DualBlock).then(|| k.barycentric_subdivision());
    let vertex = |s: &[usize]| -> usize {
        match &sd {
            None => s[0],
            Some((_, vs)) => vs.iter().position(|t| t.as_slice() == s).expect("simplex of k"),
        }
    };
    for i in 0..verts.len() {
        let (u, v) = (verts[i], verts[(i + 1) % verts.len()]);
        let e = [u.min(v), u.max(v)];
        if u == v || !k.contains(&e) {
            return Err(Error::input(format!("{u} {v} is not an edge")));
        }
        path.push(vertex(&[u]));
        if sd.is_some() {
            path.push(vertex(&e));
        }
    }
    let mut z = vec![Int::zero(); base.count(1)];
    for i in 0..path.len() {
        let (u, v) = (path[i], path[(i + 1) % path.len()]);
        let j = base.index_of(&[u.min(v), u.max(v)]).expect("edge of the model base");
        let one = if u < v { Int::one() } else { -Int::one() };
        z[j] = &z[j] + &one;
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::fixtures::fixture;

    fn model(name: &str) -> Arc<CechModel> {
        let fx = fixture(name).unwrap();
        Arc::new(CechModel::build(&fx.model_base, &fx.cover).unwrap())
    }

    fn fundamental_cycle(n: usize, m: &CechModel) -> Vec<Int> {
        let base = &m.base;
        let mut z = vec![Int::zero(); base.count(1)];
        for i in 0..n {
            let (u, v) = (i, (i + 1) % n);
            let j = base.index_of(&[u.min(v), u.max(v)]).unwrap();
            z[j] = if u < v { Int::one() } else { -Int::one() };
        }
        z
    }

    /// Integer generator of `H¹(N; ℤ)` as a nerve 1-cochain.
    fn nerve_generator(m: &CechModel) -> Vec<Rat> {
        let h = cohomology(m.spark.i(), 1).unwrap();
        h.representatives[0].clone()
    }

    #[test]
    fn flat_circle_bundles() {
        let m = model("circle6");
        let gen = nerve_generator(&m);
        let third: Vec<Rat> = gen.iter().map(|v| v * &Rat::from_frac(1, 3)).collect();
        let half: Vec<Rat> = gen.iter().map(|v| v * &Rat::from_frac(1, 2)).collect();
        let l3 = DiscreteLineBundle::flat(m.clone(), &third).unwrap();
        let l2 = DiscreteLineBundle::flat(m.clone(), &half).unwrap();
        let z = fundamental_cycle(6, &m);
        let h3 = l3.holonomy(&z).unwrap();
        assert!(h3 == Rat::from_frac(1, 3) || h3 == Rat::from_frac(2, 3), "{h3}");
        assert_eq!(l2.holonomy(&z).unwrap(), Rat::from_frac(1, 2));
        assert!(!l3.gauge_equivalent(&l2).unwrap());
        let t = l3.tensor(&l2).unwrap();
        assert_eq!(t.holonomy(&z).unwrap(), (h3 + Rat::from_frac(1, 2)).fract());
        assert!(is_zero_vec(&l3.curvature()));
    }

    #[test]
    fn sphere_chern_round_trip() {
        let m = model("sphere");
        for d in [-2i64, 1, 2, 3] {
            let l = DiscreteLineBundle::from_chern(m.clone(), &[Int::from(d)]).unwrap();
            assert_eq!(l.chern_class().unwrap(), vec![Int::from(d)]);
            let s = l.to_spark();
            assert_eq!(s.e, l.curvature());
        }
        let l1 = DiscreteLineBundle::from_chern(m.clone(), &[Int::from(1)]).unwrap();
        let l2 = DiscreteLineBundle::from_chern(m.clone(), &[Int::from(2)]).unwrap();
        assert_eq!(l1.tensor(&l2).unwrap().chern_class().unwrap(), vec![Int::from(3)]);
    }

    #[test]
    fn doubling_pullback_doubles_holonomy() {
        use crate::cech::simplicial::SimplicialMap;
        use crate::cech::SparkPullback;
        let c6 = model("circle6");
        let c12 = model("circle12");
        let mut theta: Vec<Rat> = nerve_generator(&c6).iter().map(|v| v * &Rat::from_frac(1, 3)).collect();
        let z6 = fundamental_cycle(6, &c6);
        if DiscreteLineBundle::flat(c6.clone(), &theta).unwrap().holonomy(&z6).unwrap() != Rat::from_frac(1, 3) {
            theta = neg_vec(&theta);
        }
        let l = DiscreteLineBundle::flat(c6.clone(), &theta).unwrap();
        assert_eq!(l.holonomy(&z6).unwrap(), Rat::from_frac(1, 3));
        let pb =
            SparkPullback::new(c12.clone(), c6, SimplicialMap { vertex_map: (0..12).map(|i| i % 6).collect() }, None)
                .unwrap();
        let s = pb.pull(&l.to_spark()).unwrap();
        let z12 = total_cycle(&c12, 1, &fundamental_cycle(12, &c12)).unwrap();
        assert_eq!(c12.spark.evaluate(&s, &z12).unwrap(), Rat::from_frac(2, 3));
    }
}
