//! Rational row reduction with a recorded transform.

use super::matrix::{is_zero_vec, RationalMatrix};
use super::rat::Rat;

/// `transform · M = rref`, with leftmost pivots.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub rref: RationalMatrix,
    pub transform: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(m: &RationalMatrix) -> RowEchelon {
        let (rows, cols) = m.shape();
        let mut a = m.clone();
        let mut t = RationalMatrix::identity(rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            t.swap_rows(r, p);
            let inv = a.get(r, c).recip();
            if inv != Rat::one() {
                scale_row(&mut a, r, &inv);
                scale_row(&mut t, r, &inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let nf = -&f;
                a.add_row_multiple(i, r, &nf);
                t.add_row_multiple(i, r, &nf);
            }
            pivots.push(c);
            r += 1;
        }
        RowEchelon { rref: a, transform: t, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Particular solution of `M x = b` with free variables set to zero.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        let c = self.transform.mul_vec(b);
        let rank = self.rank();
        if !is_zero_vec(&c[rank..]) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.rref.cols()];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = c[i].clone();
        }
        Some(x)
    }

    pub fn is_in_span(&self, b: &[Rat]) -> bool {
        let rank = self.rank();
        (rank..self.transform.rows()).all(|i| super::matrix::dot(self.transform.row(i), b).is_zero())
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let n = self.rref.cols();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..n).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (i, &p) in self.pivots.iter().enumerate() {
                v[p] = -self.rref.get(i, f);
            }
            out.push(v);
        }
        out
    }

    /// Rows annihilating the column span: `P · M = 0`, `P` of full row rank.
    pub fn cokernel_projector(&self) -> RationalMatrix {
        let rank = self.rank();
        let rows = self.transform.rows();
        self.transform.block(rank, rows - rank, 0, rows)
    }
}

fn scale_row(m: &mut RationalMatrix, i: usize, s: &Rat) {
    for j in 0..m.cols() {
        let v = m.get(i, j);
        if !v.is_zero() {
            let nv = v * s;
            m.set(i, j, nv);
        }
    }
}

/// Rank of a rational matrix (no transform is built).
pub fn rank(m: &RationalMatrix) -> usize {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let piv = a.get(r, c).clone();
        for i in r + 1..rows {
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            let q = -(&f / &piv);
            a.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    r
}

/// Indices of a maximal linearly independent prefix-greedy subset of columns.
pub fn independent_columns(m: &RationalMatrix) -> Vec<usize> {
    RowEchelon::new(m).pivots
}

/// Basis of the column span, as columns of `m` (leftmost choice).
pub fn column_space_basis(m: &RationalMatrix) -> Vec<Vec<Rat>> {
    independent_columns(m).into_iter().map(|j| m.column(j)).collect()
}

pub fn kernel(m: &RationalMatrix) -> Vec<Vec<Rat>> {
    RowEchelon::new(m).kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_kernels() {
        let m = RationalMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 7]);
        let e = RowEchelon::new(&m);
        assert_eq!(e.rank(), 2);
        let b = vec![Rat::from(1), Rat::from(3)];
        let x = e.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let k = e.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&k[0])));
        let p = e.cokernel_projector();
        assert_eq!(p.rows(), 0);
    }

    #[test]
    fn inconsistent_system() {
        let m = RationalMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        let e = RowEchelon::new(&m);
        assert!(e.solve(&[Rat::from(1), Rat::from(2)]).is_none());
        assert_eq!(rank(&m), 1);
        let p = e.cokernel_projector();
        assert!(p.mul_mat(&m).is_zero());
    }
}
