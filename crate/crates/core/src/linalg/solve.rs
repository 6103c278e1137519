//! Linear solvers over ℤ, ℚ and mixed ℚ/ℤ unknowns.

use super::descriptor::GroupDescriptor;
use super::echelon::RowEchelon;
use super::hermite::ColumnHermite;
use super::int::Int;
use super::matrix::{sub_vec, to_rat_vec, IntegerMatrix, RationalMatrix};
use super::rat::Rat;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct IntegerSolution {
    pub particular: Vec<Int>,
    pub kernel: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalSolution {
    pub particular: Vec<Rat>,
    pub kernel: Vec<Vec<Rat>>,
}

fn check_rhs(rows: usize, len: usize) -> Result<()> {
    if rows != len {
        return Err(Error::input(format!("right-hand side has length {len} but the matrix has {rows} rows")));
    }
    Ok(())
}

pub fn solve_integer(m: &IntegerMatrix, b: &[Int]) -> Result<Option<IntegerSolution>> {
    check_rhs(m.rows(), b.len())?;
    let ch = ColumnHermite::new(m);
    Ok(ch.solve(b).map(|particular| IntegerSolution { particular, kernel: ch.kernel_basis() }))
}

pub fn solve_rational(m: &RationalMatrix, b: &[Rat]) -> Result<Option<RationalSolution>> {
    check_rhs(m.rows(), b.len())?;
    let e = RowEchelon::new(m);
    Ok(e.solve(b).map(|particular| RationalSolution { particular, kernel: e.kernel_basis() }))
}

/// Finds rational `x` and integer `y` with `A x + L y = b`.
pub fn solve_mixed(a: &RationalMatrix, l: &IntegerMatrix, b: &[Rat]) -> Result<Option<(Vec<Rat>, Vec<Int>)>> {
    if a.rows() != l.rows() {
        return Err(Error::input(format!("rational block has {} rows but lattice block has {}", a.rows(), l.rows())));
    }
    check_rhs(a.rows(), b.len())?;
    Ok(MixedSolver::new(a, &l.to_rational()).solve(b))
}

/// Reusable factorization for repeated `A x + L y = b` queries.
///
/// The rational block is eliminated first: rows of the echelon transform past
/// the rank of `A` annihilate its column span (leftmost-pivot convention). The
/// projected lattice system is scaled row-wise to integers and decided with a
/// column Hermite form; `x` is then recovered by back-substitution.
#[derive(Clone, Debug)]
pub struct MixedSolver {
    a_echelon: RowEchelon,
    projector: RationalMatrix,
    l: RationalMatrix,
    row_scale: Vec<Int>,
    hermite: ColumnHermite,
}

impl MixedSolver {
    /// `l` may have rational entries; `y` is still required to be integral.
    pub fn new(a: &RationalMatrix, l: &RationalMatrix) -> MixedSolver {
        assert_eq!(a.rows(), l.rows(), "row mismatch in mixed system");
        let a_echelon = RowEchelon::new(a);
        let projector = a_echelon.cokernel_projector();
        let pl = projector.mul_mat(l);
        let mut row_scale = Vec::with_capacity(pl.rows());
        let mut pl_int = IntegerMatrix::zeros(pl.rows(), pl.cols());
        for i in 0..pl.rows() {
            let mut s = Int::one();
            for v in pl.row(i) {
                let d = v.denom();
                if !d.is_one() {
                    let g = s.gcd(d);
                    s = (&s * d).div_exact(&g).unwrap();
                }
            }
            for j in 0..pl.cols() {
                let v = pl.get(i, j);
                if !v.is_zero() {
                    pl_int.set(i, j, (v * &Rat::from(&s)).to_integer().unwrap());
                }
            }
            row_scale.push(s);
        }
        let hermite = ColumnHermite::new(&pl_int);
        MixedSolver { a_echelon, projector, l: l.clone(), row_scale, hermite }
    }

    pub fn solve(&self, b: &[Rat]) -> Option<(Vec<Rat>, Vec<Int>)> {
        let pb = self.projector.mul_vec(b);
        let mut rhs = Vec::with_capacity(pb.len());
        for (v, s) in pb.iter().zip(&self.row_scale) {
            rhs.push((v * &Rat::from(s)).to_integer()?);
        }
        let y = self.hermite.solve(&rhs)?;
        let residual = sub_vec(b, &self.l.mul_vec(&to_rat_vec(&y)));
        let x = self.a_echelon.solve(&residual).expect("projected system guarantees solvability");
        Some((x, y))
    }

    /// Integer kernel of the projected lattice block: `y` with `L y ∈ span(A)`.
    pub fn lattice_kernel(&self) -> Vec<Vec<Int>> {
        self.hermite.kernel_basis()
    }
}

/// Isomorphism type of `ℤ^ambient / span(relations)`.
pub fn quotient_descriptor(ambient_rank: usize, relations: &IntegerMatrix) -> Result<GroupDescriptor> {
    if relations.rows() != ambient_rank {
        return Err(Error::input(format!("relations have {} rows, ambient rank is {ambient_rank}", relations.rows())));
    }
    let s = smith_normal_form(relations);
    let diag = s.diagonal();
    let mut orders: Vec<Int> = diag.to_vec();
    orders.extend(std::iter::repeat_n(Int::zero(), ambient_rank - diag.len()));
    Ok(GroupDescriptor::from_cyclic_orders(&orders))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{int_vec, rat_vec};

    #[test]
    fn integer_examples() {
        let m = IntegerMatrix::from_i64(1, 1, &[2]);
        let s = solve_integer(&m, &int_vec(&[4])).unwrap().unwrap();
        assert_eq!(s.particular, int_vec(&[2]));
        assert!(s.kernel.is_empty());
        assert!(solve_integer(&m, &int_vec(&[3])).unwrap().is_none());
        assert!(solve_integer(&m, &int_vec(&[3, 1])).is_err());
    }

    #[test]
    fn rational_examples() {
        let m = RationalMatrix::from_i64(1, 1, &[2]);
        let s = solve_rational(&m, &rat_vec(&[3])).unwrap().unwrap();
        assert_eq!(s.particular, vec![Rat::from_frac(3, 2)]);
        let m = RationalMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(solve_rational(&m, &rat_vec(&[1, 2])).unwrap().is_none());
    }

    #[test]
    fn mixed_examples() {
        let a = RationalMatrix::zeros(1, 0);
        let l = IntegerMatrix::from_i64(1, 1, &[2]);
        let (x, y) = solve_mixed(&a, &l, &rat_vec(&[4])).unwrap().unwrap();
        assert!(x.is_empty());
        assert_eq!(y, int_vec(&[2]));

        let a = RationalMatrix::from_i64(1, 1, &[1]);
        let l = IntegerMatrix::from_i64(1, 1, &[1]);
        let b = vec![Rat::from_frac(1, 2)];
        let (x, y) = solve_mixed(&a, &l, &b).unwrap().unwrap();
        assert_eq!(&x[0] + &Rat::from(&y[0]), b[0]);

        let a = RationalMatrix::from_i64(2, 1, &[1, 0]);
        let l = IntegerMatrix::from_i64(2, 1, &[0, 2]);
        assert!(solve_mixed(&a, &l, &[Rat::from_frac(1, 3), Rat::from(3)]).unwrap().is_none());
    }

    #[test]
    fn quotient_examples() {
        let g = quotient_descriptor(1, &IntegerMatrix::from_i64(1, 1, &[2])).unwrap();
        assert_eq!(g.to_string(), "Z/2");
        let g = quotient_descriptor(2, &IntegerMatrix::zeros(2, 0)).unwrap();
        assert_eq!(g, GroupDescriptor::free(2));
        let g = quotient_descriptor(2, &IntegerMatrix::from_i64(2, 2, &[2, 0, 0, 0])).unwrap();
        assert_eq!(g.to_string(), "Z + Z/2");
    }
}
