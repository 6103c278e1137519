//! Smith normal form with transforms.
//!
//! Pivoting picks the nonzero entry of least absolute value in the remaining
//! block. Any strategy yields the same diagonal once it is normalized to a
//! divisibility chain, so the choice only affects coefficient growth.

use super::int::Int;
use super::matrix::IntegerMatrix;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, `d[i] | d[i+1]`,
/// diagonal entries nonnegative. `u_inv` is the inverse of `u`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

struct Work {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
}

impl Work {
    /// row[dst] += q * row[src]
    fn row_add(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        self.a.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
        let nq = -q;
        self.u_inv.add_col_multiple(src, dst, &nq);
    }

    fn col_add(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        self.a.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> Smith {
    let (rows, cols) = m.shape();
    let mut w = Work {
        a: m.clone(),
        u: IntegerMatrix::identity(rows),
        u_inv: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
    };
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = w.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let av = v.abs();
                if best.as_ref().is_none_or(|b| av < b.2) {
                    let one = av.is_one();
                    best = Some((i, j, av));
                    if one {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|b| b.2.is_one()) {
                break;
            }
        }
        let Some((bi, bj, _)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let mut changed = false;
            let p = w.a.get(t, t).clone();
            for i in t + 1..rows {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let (q, _) = w.a.get(i, t).div_mod_floor(&p);
                w.row_add(i, t, &(-q));
                if !w.a.get(i, t).is_zero() {
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let (q, _) = w.a.get(t, j).div_mod_floor(&p);
                w.col_add(j, t, &(-q));
                if !w.a.get(t, j).is_zero() {
                    changed = true;
                }
            }
            if changed {
                // move the smallest remaining entry of row/column t to the pivot
                let mut bi = t;
                let mut bj = t;
                let mut bv = w.a.get(t, t).abs();
                for i in t + 1..rows {
                    let v = w.a.get(i, t);
                    if !v.is_zero() && v.abs() < bv {
                        bv = v.abs();
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..cols {
                    let v = w.a.get(t, j);
                    if !v.is_zero() && v.abs() < bv {
                        bv = v.abs();
                        bi = t;
                        bj = j;
                    }
                }
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            // row and column clean; enforce divisibility on the remaining block
            let p = w.a.get(t, t).clone();
            let mut bad = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !w.a.get(i, j).is_divisible_by(&p) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => w.row_add(t, i, &Int::one()),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    Smith { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v }
}

impl Smith {
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).take_while(|v| !v.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntegerMatrix) -> Int {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Int::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(a.get(i, j) * a.get(k, k)) - &(a.get(i, k) * a.get(k, j));
                a.set(i, j, num.div_exact(&prev).expect("Bareiss division is exact"));
            }
        }
        prev = a.get(k, k).clone();
    }
    &sign * a.get(n - 1, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntegerMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul_mat(m).mul_mat(&s.v), s.d);
        assert_eq!(s.u.mul_mat(&s.u_inv), IntegerMatrix::identity(m.rows()));
        assert!(determinant(&s.u).abs().is_one());
        assert!(determinant(&s.v).abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_divisible_by(&w[0]));
        }
        s
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntegerMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.diagonal(), vec![Int::from(2), Int::from(4)]);
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&IntegerMatrix::identity(3));
        assert_eq!(s.d, IntegerMatrix::identity(3));
        let z = check(&IntegerMatrix::zeros(2, 3));
        assert!(z.d.is_zero());
    }

    #[test]
    fn needs_divisibility_fix() {
        let s = check(&IntegerMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.diagonal(), vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn bareiss() {
        let m = IntegerMatrix::from_i64(3, 3, &[2, -1, 0, -1, 2, -1, 0, -1, 2]);
        assert_eq!(determinant(&m), Int::from(4));
        let m = IntegerMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(determinant(&m), Int::from(-1));
    }
}
