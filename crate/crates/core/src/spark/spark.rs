//! Sparks, their equivalence and invariants.

use super::complex::{fmt_vec, SparkComplex};
use crate::complex::cohomology;
use crate::error::{Error, Result};
use crate::linalg::matrix::{add_vec, is_zero_vec, neg_vec, sub_vec, to_rat_vec};
use crate::linalg::{Int, Rat};

/// A degree-`k` spark `(a, r) ∈ F^k ⊕ I^{k+1}` with `d a = ι(e) − Ψ(r)`, `d r = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spark {
    pub degree: i32,
    pub a: Vec<Rat>,
    pub r: Vec<Int>,
    pub e: Vec<Rat>,
}

/// `(b, s) ∈ F^{k−1} ⊕ I^k` with `a₁ − a₂ = d b + Ψ(s)` and `r₁ − r₂ = −d s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub b: Vec<Rat>,
    pub s: Vec<Int>,
}

impl Witness {
    pub fn zero(sc: &SparkComplex, k: i32) -> Witness {
        Witness { b: vec![Rat::zero(); sc.f().rank(k - 1)], s: vec![Int::zero(); sc.i().rank(k)] }
    }

    pub fn neg(&self) -> Witness {
        Witness { b: neg_vec(&self.b), s: self.s.iter().map(|v| -v).collect() }
    }

    pub fn add(&self, other: &Witness) -> Witness {
        Witness { b: add_vec(&self.b, &other.b), s: add_vec(&self.s, &other.s) }
    }
}

/// Representative `(ι x, 0)` produced from a spark with `δ₂ = 0`, and the
/// witness relating the original spark to it.
#[derive(Clone, Debug)]
pub struct EdgeForm {
    pub x: Vec<Rat>,
    pub spark: Spark,
    pub witness: Witness,
}

impl SparkComplex {
    /// Checks `d r = 0` and solves `ι(e) = d a + Ψ(r)`.
    pub fn make_spark(&self, k: i32, a: Vec<Rat>, r: Vec<Int>) -> Result<Spark> {
        if a.len() != self.f().rank(k) || r.len() != self.i().rank(k + 1) {
            return Err(Error::input(format!(
                "degree {k} spark needs |a| = {} and |r| = {}, got {} and {}",
                self.f().rank(k),
                self.i().rank(k + 1),
                a.len(),
                r.len()
            )));
        }
        let rr = to_rat_vec(&r);
        if !self.i().is_cocycle(k + 1, &rr) {
            return Err(Error::violation("not a cycle", format!("d r != 0 for r = {}", fmt_vec(&r))));
        }
        let target = add_vec(&self.f().d(k).mul_vec(&a), &self.apply_psi(k + 1, &r));
        match self.iota_preimage(k + 1, &target) {
            Some(e) => Ok(Spark { degree: k, a, r, e }),
            None => {
                let residual = self.iota_echelon(k + 1).cokernel_projector().mul_vec(&target);
                Err(Error::violation(
                    "not a spark",
                    format!("d a + Psi(r) leaves iota(E); residual {}", fmt_vec(&residual)),
                ))
            }
        }
    }

    pub fn zero_spark(&self, k: i32) -> Spark {
        Spark {
            degree: k,
            a: vec![Rat::zero(); self.f().rank(k)],
            r: vec![Int::zero(); self.i().rank(k + 1)],
            e: vec![Rat::zero(); self.e().rank(k + 1)],
        }
    }

    /// Re-checks all spark equations of a stored spark.
    pub fn is_valid(&self, s: &Spark) -> bool {
        match self.make_spark(s.degree, s.a.clone(), s.r.clone()) {
            Ok(t) => t.e == s.e,
            Err(_) => false,
        }
    }

    /// Solves `d a = ι(e) − Ψ(r)` given a closed `e` and a cocycle `r` of matching class.
    pub fn spark_from_data(&self, k: i32, e: &[Rat], r: &[Int]) -> Result<Spark> {
        if !self.e().is_cocycle(k + 1, e) {
            return Err(Error::input("e is not closed"));
        }
        if !self.i().is_cocycle(k + 1, &to_rat_vec(r)) {
            return Err(Error::violation("not a cycle", format!("d r != 0 for r = {}", fmt_vec(r))));
        }
        let ie = self.apply_iota(k + 1, e);
        let pr = self.apply_psi(k + 1, r);
        let rhs = sub_vec(&ie, &pr);
        match self.f().echelon(k).solve(&rhs) {
            Some(a) => Ok(Spark { degree: k, a, r: r.to_vec(), e: e.to_vec() }),
            None => {
                let hf = cohomology(self.f(), k + 1)?;
                let ce = hf.coordinates(self.f(), &ie)?;
                let cr = hf.coordinates(self.f(), &pr)?;
                Err(Error::violation(
                    "classes disagree",
                    format!("[iota e] = {} but Psi_*[r] = {}", fmt_vec(&ce), fmt_vec(&cr)),
                ))
            }
        }
    }

    pub fn delta1<'a>(&self, s: &'a Spark) -> &'a [Rat] {
        &s.e
    }

    /// Coordinates of `[r]` in the `H^{k+1}(I)` presentation.
    pub fn delta2(&self, s: &Spark) -> Vec<Rat> {
        cohomology(self.i(), s.degree + 1)
            .expect("integer complex")
            .coordinates(self.i(), &to_rat_vec(&s.r))
            .expect("r is a cocycle")
    }

    /// Whether `δ₂` vanishes (as a class, torsion included).
    pub fn delta2_vanishes(&self, s: &Spark) -> bool {
        let h = cohomology(self.i(), s.degree + 1).expect("integer complex");
        h.is_zero_class(&self.delta2(s))
    }

    pub fn add(&self, x: &Spark, y: &Spark) -> Spark {
        assert_eq!(x.degree, y.degree, "adding sparks of different degrees");
        Spark { degree: x.degree, a: add_vec(&x.a, &y.a), r: add_vec(&x.r, &y.r), e: add_vec(&x.e, &y.e) }
    }

    pub fn neg(&self, x: &Spark) -> Spark {
        Spark { degree: x.degree, a: neg_vec(&x.a), r: x.r.iter().map(|v| -v).collect(), e: neg_vec(&x.e) }
    }

    pub fn sub(&self, x: &Spark, y: &Spark) -> Spark {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, c: i64, x: &Spark) -> Spark {
        let q = Rat::from(c);
        let n = Int::from(c);
        Spark {
            degree: x.degree,
            a: x.a.iter().map(|v| v * &q).collect(),
            r: x.r.iter().map(|v| v * &n).collect(),
            e: x.e.iter().map(|v| v * &q).collect(),
        }
    }

    /// `(a + d b + Ψ(s), r − d s)`, equivalent to `x` via the witness `(−b, −s)`.
    pub fn perturb(&self, x: &Spark, w: &Witness) -> Spark {
        let k = x.degree;
        let db = self.f().d(k - 1).mul_vec(&w.b);
        let ps = self.apply_psi(k, &w.s);
        let ds = self.i().d_int(k).mul_vec(&w.s);
        Spark { degree: k, a: add_vec(&add_vec(&x.a, &db), &ps), r: sub_vec(&x.r, &ds), e: x.e.clone() }
    }

    /// Decides equivalence; the witness satisfies `a₁ − a₂ = d b + Ψ(s)`, `r₁ − r₂ = −d s`.
    pub fn sparks_equivalent(&self, x: &Spark, y: &Spark) -> Option<Witness> {
        if x.degree != y.degree {
            return None;
        }
        let k = x.degree;
        let rhs = sub_vec(&y.r, &x.r);
        let s0 =
            if is_zero_vec(&rhs) { vec![Int::zero(); self.i().rank(k)] } else { self.i().hermite(k).solve(&rhs)? };
        let target = sub_vec(&sub_vec(&x.a, &y.a), &self.apply_psi(k, &s0));
        let sol = self.equivalence_solver(k);
        let (zm, solver) = (&sol.0, &sol.1);
        let (b, yv) = solver.solve(&target)?;
        let s = add_vec(&s0, &zm.mul_vec(&yv));
        let w = Witness { b, s };
        debug_assert!(self.verify_witness(x, y, &w));
        Some(w)
    }

    pub fn verify_witness(&self, x: &Spark, y: &Spark, w: &Witness) -> bool {
        let k = x.degree;
        if y.degree != k || w.b.len() != self.f().rank(k - 1) || w.s.len() != self.i().rank(k) {
            return false;
        }
        let lhs = sub_vec(&x.a, &y.a);
        let rhs = add_vec(&self.f().d(k - 1).mul_vec(&w.b), &self.apply_psi(k, &w.s));
        let ds = self.i().d_int(k).mul_vec(&w.s);
        lhs == rhs && sub_vec(&x.r, &y.r) == neg_vec(&ds)
    }

    pub fn is_zero_class(&self, x: &Spark) -> bool {
        self.sparks_equivalent(x, &self.zero_spark(x.degree)).is_some()
    }

    /// The procedure behind `ker δ₂ = E^k / Z_I^k(E)`: solve `r = −d s`, absorb
    /// `Ψ(s)`, then move `a` into `ι(E)` by an `F`-coboundary.
    pub fn edge_form(&self, x: &Spark) -> Result<EdgeForm> {
        let k = x.degree;
        let neg_r: Vec<Int> = x.r.iter().map(|v| -v).collect();
        let s = if is_zero_vec(&neg_r) {
            vec![Int::zero(); self.i().rank(k)]
        } else {
            self.i().hermite(k).solve(&neg_r).ok_or_else(|| Error::input("delta2 of the spark is not zero"))?
        };
        let a1 = sub_vec(&x.a, &self.apply_psi(k, &s));
        // a1 = ι(x) − d b  ⇒  a1 + d b ∈ ι(E)
        let (xe, b) = self
            .split_edge(k, &a1)
            .ok_or_else(|| Error::violation("edge cohomology", "d a lies in E but a is not E-cohomologous"))?;
        let a = self.apply_iota(k, &xe);
        let dx = self.e().d(k).mul_vec(&xe);
        let spark = Spark { degree: k, a, r: vec![Int::zero(); self.i().rank(k + 1)], e: dx };
        let witness = Witness { b: neg_vec(&b), s };
        debug_assert!(self.verify_witness(x, &spark, &witness));
        Ok(EdgeForm { x: xe, spark, witness })
    }

    /// `⟨a, z⟩ mod 1` for an integer cycle `z` in the chain dual of `F^k`.
    pub fn evaluate(&self, s: &Spark, z: &[Int]) -> Result<Rat> {
        let k = s.degree;
        if z.len() != self.f().rank(k) {
            return Err(Error::input(format!("cycle has length {}, expected {}", z.len(), self.f().rank(k))));
        }
        let zr = to_rat_vec(z);
        if !is_zero_vec(&self.f().d(k - 1).vec_mul(&zr)) {
            return Err(Error::input("chain has nonzero boundary"));
        }
        let v: Rat = s.a.iter().zip(&zr).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum();
        Ok(v.fract())
    }
}
