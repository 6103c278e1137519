//! Quasi-isomorphisms of spark complexes and transport of spark classes.
//!
//! Only inclusion-shaped maps are supported: `F ↪ F̄` on the form side, the
//! identity on `E`, and `ψ: I → Ī` inducing isomorphisms on cohomology.

use crate::complex::{induced_map, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::matrix::{is_zero_vec, rat_to_int_vec, sub_vec, to_rat_vec};
use crate::linalg::{echelon, ColumnHermite, Int, IntegerMatrix, Rat, RationalMatrix, RowEchelon};
use crate::spark::complex::{same_complex, DegreeCache};
use crate::spark::{Spark, SparkComplex, Witness};
use std::sync::Arc;

pub struct SparkQuasiIso {
    pub small: Arc<SparkComplex>,
    pub big: Arc<SparkComplex>,
    /// `ψ: I → Ī`.
    pub psi: ChainMap,
    /// `F ↪ F̄`.
    pub inclusion: ChainMap,
    integer_step: DegreeCache<ColumnHermite>,
    rational_step: DegreeCache<RowEchelon>,
}

impl std::fmt::Debug for SparkQuasiIso {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparkQuasiIso({:?} -> {:?})", self.small, self.big)
    }
}

/// A lifted spark together with the witness of `t ~ push(spark)`.
#[derive(Clone, Debug)]
pub struct Lift {
    pub spark: Spark,
    pub witness: Witness,
}

impl SparkQuasiIso {
    pub fn validate(
        small: Arc<SparkComplex>,
        big: Arc<SparkComplex>,
        psi: ChainMap,
        inclusion: ChainMap,
    ) -> Result<SparkQuasiIso> {
        if !same_complex(psi.source(), small.i()) || !same_complex(psi.target(), big.i()) {
            return Err(Error::input("psi must map I to I-bar"));
        }
        if !same_complex(inclusion.source(), small.f()) || !same_complex(inclusion.target(), big.f()) {
            return Err(Error::input("the F-map must go from F to F-bar"));
        }
        if !same_complex(small.e(), big.e()) {
            return Err(Error::input("the two spark complexes must share E"));
        }
        let (lo, hi) = degree_window(&small, &big);
        for k in lo..=hi {
            let inc = inclusion.f(k);
            if echelon::rank(&inc) != inc.cols() {
                return Err(Error::violation("F-map is not injective", format!("degree {k}")));
            }
            if inc.mul_mat(&small.iota().f(k)) != *big.iota().f(k) {
                return Err(Error::violation(
                    "square does not commute",
                    format!("F-map after iota differs from iota-bar in degree {k}"),
                ));
            }
            if inc.mul_mat(&small.psi().f(k)) != big.psi().f(k).mul_mat(&psi.f(k)) {
                return Err(Error::violation(
                    "square does not commute",
                    format!("F-map after Psi differs from Psi-bar after psi in degree {k}"),
                ));
            }
            if !psi.f(k).is_integral() {
                return Err(Error::input(format!("psi has non-integral entries in degree {k}")));
            }
        }
        for k in psi.source().degrees().chain(psi.target().degrees()) {
            let m = induced_map(&psi, k)?;
            if !m.isomorphism {
                let mut parts = Vec::new();
                if let Some(c) = &m.cokernel {
                    if !c.is_trivial() {
                        parts.push(format!("cokernel {c}"));
                    }
                }
                if let Some(w) = &m.kernel_witness {
                    parts.push(format!("kernel class of {}", crate::spark::complex::fmt_vec(w)));
                }
                return Err(Error::violation(
                    format!("psi is not a cohomology isomorphism in degree {k}"),
                    parts.join("; "),
                ));
            }
        }
        let (lo, hi) = (lo - 2, hi + 2);
        Ok(SparkQuasiIso {
            small,
            big,
            psi,
            inclusion,
            integer_step: DegreeCache::new(lo, hi),
            rational_step: DegreeCache::new(lo, hi),
        })
    }

    /// Identity quasi-isomorphism of a spark complex onto itself.
    pub fn identity(s: Arc<SparkComplex>) -> Result<SparkQuasiIso> {
        let psi = ChainMap::identity(s.i().clone());
        let inc = ChainMap::identity(s.f().clone());
        Self::validate(s.clone(), s, psi, inc)
    }

    pub fn push(&self, s: &Spark) -> Spark {
        let k = s.degree;
        Spark { degree: k, a: self.inclusion.apply(k, &s.a), r: self.psi_int(k + 1, &s.r), e: s.e.clone() }
    }

    pub fn push_witness(&self, k: i32, w: &Witness) -> Witness {
        Witness { b: self.inclusion.apply(k - 1, &w.b), s: self.psi_int(k, &w.s) }
    }

    fn psi_int(&self, k: i32, r: &[Int]) -> Vec<Int> {
        rat_to_int_vec(&self.psi.apply(k, &to_rat_vec(r))).expect("integral psi")
    }

    /// Moves `r̄` into the image of `ψ` by a coboundary, absorbs `Ψ̄(s̄)`,
    /// then corrects by `d b̄` so the form lands in `F`.
    pub fn lift(&self, t: &Spark) -> Result<Lift> {
        let k = t.degree;
        let big = &self.big;
        let small = &self.small;
        if !big.is_valid(t) {
            return Err(Error::input("spark is not valid in the target complex"));
        }
        let ni = small.i().rank(k + 1);
        let mut rhs = t.r.clone();
        rhs.extend(vec![Int::zero(); small.i().rank(k + 2)]);
        let sol = if is_zero_vec(&rhs) {
            vec![Int::zero(); ni + big.i().rank(k)]
        } else {
            self.integer_step(k).solve(&rhs).expect("psi_* is surjective on cohomology")
        };
        let r: Vec<Int> = sol[..ni].to_vec();
        let sbar: Vec<Int> = sol[ni..].to_vec();
        let a1 = sub_vec(&t.a, &big.apply_psi(k, &sbar));
        let nf = small.f().rank(k);
        let ab = self.rational_step(k).solve(&a1).expect("H(F) -> H(F-bar) is an isomorphism");
        let a: Vec<Rat> = ab[..nf].to_vec();
        let bbar: Vec<Rat> = ab[nf..].to_vec();
        let spark = small.make_spark(k, a, r)?;
        let witness = Witness { b: bbar, s: sbar };
        let pushed = self.push(&spark);
        if !big.verify_witness(t, &pushed, &witness) {
            return Err(Error::violation("lift", "constructed witness does not verify"));
        }
        Ok(Lift { spark, witness })
    }

    /// `[[ψ_{k+1}, −D̄_k], [d_{k+1}, 0]]` acting on `(r, s̄)`.
    fn integer_step(&self, k: i32) -> Arc<ColumnHermite> {
        self.integer_step.get(k, || {
            let psi = self.psi.f(k + 1).to_integer().expect("integral");
            let dbar = self.big.i().d(k).to_integer().expect("integral").neg_mat();
            let di = self.small.i().d(k + 1).to_integer().expect("integral");
            let top = psi.hstack(&dbar);
            let bottom = di.hstack(&IntegerMatrix::zeros(di.rows(), dbar.cols()));
            ColumnHermite::new(&top.vstack(&bottom))
        })
    }

    /// `[incl_k | D̄_{k−1}]` acting on `(a, b̄)`.
    fn rational_step(&self, k: i32) -> Arc<RowEchelon> {
        self.rational_step.get(k, || {
            let inc: RationalMatrix = self.inclusion.f(k).into_owned();
            RowEchelon::new(&inc.hstack(self.big.f().d(k - 1)))
        })
    }
}

fn degree_window(a: &SparkComplex, b: &SparkComplex) -> (i32, i32) {
    let cs = [a.f(), a.e(), a.i(), b.f(), b.e(), b.i()];
    let lo = cs.iter().map(|c| c.min_degree()).min().unwrap() - 1;
    let hi = cs.iter().map(|c| c.max_degree()).max().unwrap() + 1;
    (lo, hi)
}
