//! Column-style Hermite normal form over ℤ with unimodular transform.

use super::int::Int;
use super::matrix::IntegerMatrix;

/// `m · v = h`, where `h` is in column echelon form: column `j < rank` has its
/// first nonzero entry (positive) in row `pivot_rows[j]`, pivot rows strictly
/// increase, entries left of a pivot are reduced into `[0, pivot)`, and columns
/// `rank..` are zero. `v_inv` is the inverse of `v`.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    pub h: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub pivot_rows: Vec<usize>,
}

struct Work {
    h: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Work {
    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        let nq = -q;
        self.h.add_col_multiple(dst, src, &nq);
        self.v.add_col_multiple(dst, src, &nq);
        self.v_inv.add_row_multiple(src, dst, q);
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.h.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn negate(&mut self, j: usize) {
        self.h.negate_col(j);
        self.v.negate_col(j);
        self.v_inv.negate_row(j);
    }
}

impl ColumnHermite {
    pub fn new(m: &IntegerMatrix) -> ColumnHermite {
        let (rows, cols) = m.shape();
        let mut w = Work { h: m.clone(), v: IntegerMatrix::identity(cols), v_inv: IntegerMatrix::identity(cols) };
        let mut pivot_rows = Vec::new();
        let mut c = 0;
        for i in 0..rows {
            if c == cols {
                break;
            }
            loop {
                let nz: Vec<usize> = (c..cols).filter(|&j| !w.h.get(i, j).is_zero()).collect();
                if nz.len() <= 1 {
                    if let Some(&j) = nz.first() {
                        w.swap(c, j);
                    }
                    break;
                }
                let best = *nz.iter().min_by_key(|&&j| w.h.get(i, j).abs()).unwrap();
                w.swap(c, best);
                let p = w.h.get(i, c).clone();
                for j in c + 1..cols {
                    if w.h.get(i, j).is_zero() {
                        continue;
                    }
                    let (q, _) = w.h.get(i, j).div_mod_floor(&p);
                    w.col_sub(j, c, &q);
                }
            }
            if w.h.get(i, c).is_zero() {
                continue;
            }
            if w.h.get(i, c).is_negative() {
                w.negate(c);
            }
            let p = w.h.get(i, c).clone();
            for j in 0..c {
                let (q, _) = w.h.get(i, j).div_mod_floor(&p);
                w.col_sub(j, c, &q);
            }
            pivot_rows.push(i);
            c += 1;
        }
        ColumnHermite { h: w.h, v: w.v, v_inv: w.v_inv, pivot_rows }
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Integer solution of `m x = b`, if any.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        let rank = self.rank();
        let mut z = vec![Int::zero(); self.h.cols()];
        for j in 0..rank {
            let r = self.pivot_rows[j];
            let mut val = b[r].clone();
            for (i, zi) in z.iter().enumerate().take(j) {
                let hv = self.h.get(r, i);
                if !hv.is_zero() && !zi.is_zero() {
                    val -= &(hv * zi);
                }
            }
            z[j] = val.div_exact(self.h.get(r, j))?;
        }
        if self.h.mul_vec(&z) != b {
            return None;
        }
        Some(self.v.mul_vec(&z))
    }

    /// ℤ-basis of the kernel lattice (saturated).
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        (self.rank()..self.v.cols()).map(|j| self.v.column(j)).collect()
    }

    /// Coordinates of a kernel vector `x` in `kernel_basis()`.
    pub fn kernel_coordinates(&self, x: &[Int]) -> Vec<Int> {
        let y = self.v_inv.mul_vec(x);
        y[self.rank()..].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_vec;

    #[test]
    fn echelon_shape_and_transform() {
        let m = IntegerMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
        let ch = ColumnHermite::new(&m);
        assert_eq!(m.mul_mat(&ch.v), ch.h);
        assert_eq!(ch.v.mul_mat(&ch.v_inv), IntegerMatrix::identity(3));
        for (j, &r) in ch.pivot_rows.iter().enumerate() {
            for rr in 0..r {
                assert!(ch.h.get(rr, j).is_zero());
            }
            assert!(!ch.h.get(r, j).is_negative());
        }
    }

    #[test]
    fn solve_and_kernel() {
        let m = IntegerMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        let ch = ColumnHermite::new(&m);
        let x = ch.solve(&int_vec(&[3, 6])).unwrap();
        assert_eq!(m.mul_vec(&x), int_vec(&[3, 6]));
        let k = ch.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(&k[0]), int_vec(&[0, 0]));
        assert!(ch.solve(&int_vec(&[1, 1])).is_none());
        assert_eq!(ch.kernel_coordinates(&k[0]), int_vec(&[1]));
    }
}
