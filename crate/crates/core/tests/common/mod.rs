//! Shared helpers and frozen oracle values for the integration tests.
#![allow(dead_code)]

use sparks::cech::fixtures::fixture;
use sparks::cech::CechModel;
pub use sparks::linalg::IntegerMatrix;
use sparks::linalg::{determinant, smith_normal_form, solve_integer, solve_rational, ColumnHermite, Int, Rat};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// `H^k(K; Z)` from `oracle/snf_cohomology.py`.
pub const Z_COHOMOLOGY: &[(&str, &[&str])] = &[
    ("point", &["Z"]),
    ("circle3", &["Z", "Z"]),
    ("circle6", &["Z", "Z"]),
    ("circle12", &["Z", "Z"]),
    ("sphere", &["Z", "0", "Z"]),
    ("torus", &["Z", "Z^2", "Z"]),
    ("rp2", &["Z", "0", "Z/2"]),
    ("klein", &["Z", "Z", "Z/2"]),
];

/// `H^k(K; Q/Z)` from the same script, by universal coefficients.
pub const QZ_COHOMOLOGY: &[(&str, &[&str])] = &[
    ("point", &["Q/Z"]),
    ("circle3", &["Q/Z", "Q/Z"]),
    ("circle6", &["Q/Z", "Q/Z"]),
    ("circle12", &["Q/Z", "Q/Z"]),
    ("sphere", &["Q/Z", "0", "Q/Z"]),
    ("torus", &["Q/Z", "(Q/Z)^2", "Q/Z"]),
    ("rp2", &["Q/Z", "Z/2", "0"]),
    ("klein", &["Q/Z", "Z/2 + Q/Z", "0"]),
];

/// Models are built once per test binary.
pub fn model(name: &str) -> Arc<CechModel> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<CechModel>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap().get(name) {
        return m.clone();
    }
    let fx = fixture(name).unwrap();
    let m = Arc::new(CechModel::build(&fx.model_base, &fx.cover).unwrap());
    cache.lock().unwrap().insert(name.to_string(), m.clone());
    m
}

pub fn imat(rows: &[Vec<i64>], cols: usize) -> IntegerMatrix {
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    IntegerMatrix::from_i64(rows.len(), cols, &flat)
}

fn get(m: &IntegerMatrix, i: usize, j: usize) -> i64 {
    m.get(i, j).to_i64().unwrap()
}

fn det_small(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_small(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all `k×k` minors (0 when they all vanish).
pub fn determinantal_divisor(m: &IntegerMatrix, k: usize) -> i64 {
    let mut g = 0;
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| get(m, i, j)).collect()).collect();
            g = gcd(g, det_small(&sub));
        }
    }
    g
}

pub fn minor_rank(m: &IntegerMatrix) -> usize {
    (1..=m.rows().min(m.cols())).take_while(|&k| determinantal_divisor(m, k) != 0).count()
}

/// Invariant factors as quotients of consecutive determinantal divisors.
pub fn minor_invariants(m: &IntegerMatrix) -> Vec<i64> {
    let r = minor_rank(m);
    (1..=r).map(|k| determinantal_divisor(m, k) / determinantal_divisor(m, k - 1).max(1)).collect()
}

fn is_unimodular(m: &IntegerMatrix) -> bool {
    determinant(m).abs().is_one()
}

pub fn check_smith(m: &IntegerMatrix) -> Result<(), String> {
    let s = smith_normal_form(m);
    if s.u.mul_mat(m).mul_mat(&s.v) != s.d {
        return Err(format!("u m v != d for {m:?}"));
    }
    if s.u.mul_mat(&s.u_inv) != IntegerMatrix::identity(m.rows()) || !is_unimodular(&s.u) || !is_unimodular(&s.v) {
        return Err(format!("transforms not unimodular for {m:?}"));
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d.get(i, j).is_zero() {
                return Err(format!("off-diagonal entry in d for {m:?}"));
            }
        }
    }
    let diag: Vec<i64> = s.diagonal().iter().map(|v| v.to_i64().unwrap()).filter(|&v| v != 0).collect();
    if diag != minor_invariants(m) {
        return Err(format!("diagonal {diag:?} vs minors {:?} for {m:?}", minor_invariants(m)));
    }
    Ok(())
}

pub fn check_hermite(m: &IntegerMatrix) -> Result<(), String> {
    let ch = ColumnHermite::new(m);
    if m.mul_mat(&ch.v) != ch.h || ch.v.mul_mat(&ch.v_inv) != IntegerMatrix::identity(m.cols()) {
        return Err(format!("m v != h or v v_inv != 1 for {m:?}"));
    }
    let r = ch.rank();
    if r != minor_rank(m) || ch.pivot_rows.len() != r {
        return Err(format!("rank {r} vs {} for {m:?}", minor_rank(m)));
    }
    for j in 0..m.cols() {
        if j >= r {
            if (0..m.rows()).any(|i| !ch.h.get(i, j).is_zero()) {
                return Err(format!("column {j} past the rank is nonzero for {m:?}"));
            }
            continue;
        }
        let p = ch.pivot_rows[j];
        if j > 0 && p <= ch.pivot_rows[j - 1] {
            return Err(format!("pivot rows not increasing for {m:?}"));
        }
        if (0..p).any(|i| !ch.h.get(i, j).is_zero()) || get(&ch.h, p, j) <= 0 {
            return Err(format!("bad pivot in column {j} for {m:?}"));
        }
        let piv = get(&ch.h, p, j);
        if (0..j).any(|c| !(0..piv).contains(&get(&ch.h, p, c))) {
            return Err(format!("row {p} not reduced for {m:?}"));
        }
    }
    Ok(())
}

/// Integer solvability against the minors criterion: `m x = b` has an integer
/// solution iff `m` and `[m | b]` share rank and top determinantal divisor.
pub fn check_solvers(m: &IntegerMatrix, b: &[i64]) -> Result<(), String> {
    let bi: Vec<Int> = b.iter().map(|&v| Int::from(v)).collect();
    let aug = m.hstack(&IntegerMatrix::from_i64(m.rows(), 1, b));
    let r = minor_rank(m);
    let rational = minor_rank(&aug) == r;
    let integral = rational && determinantal_divisor(m, r) == determinantal_divisor(&aug, r);
    let zs = solve_integer(m, &bi).map_err(|e| e.to_string())?;
    if zs.is_some() != integral {
        return Err(format!("integer solvability {} vs {integral} for {m:?} b={b:?}", zs.is_some()));
    }
    if let Some(s) = zs {
        if m.mul_vec(&s.particular) != bi {
            return Err(format!("integer solution does not solve for {m:?}"));
        }
        if s.kernel.len() != m.cols() - r || s.kernel.iter().any(|k| m.mul_vec(k).iter().any(|v| !v.is_zero())) {
            return Err(format!("integer kernel wrong for {m:?}"));
        }
    }
    let q = m.to_rational();
    let br: Vec<Rat> = b.iter().map(|&v| Rat::from(v)).collect();
    let qs = solve_rational(&q, &br).map_err(|e| e.to_string())?;
    if qs.is_some() != rational {
        return Err(format!("rational solvability {} vs {rational} for {m:?} b={b:?}", qs.is_some()));
    }
    if let Some(s) = qs {
        if q.mul_vec(&s.particular) != br || s.kernel.len() != m.cols() - r {
            return Err(format!("rational solution wrong for {m:?}"));
        }
    }
    Ok(())
}
