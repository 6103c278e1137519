//! Cohomology presentations and induced maps.

use super::cochain::{ChainMap, CochainComplex, Coeff};
use crate::error::{Error, Result};
use crate::linalg::matrix::{is_zero_vec, rat_to_int_vec, to_rat_vec};
use crate::linalg::{
    quotient_descriptor, smith_normal_form, ColumnHermite, GroupDescriptor, Int, IntegerMatrix, Rat, RationalMatrix,
    RowEchelon,
};
use std::sync::Arc;

/// `H^k` as generators with cyclic orders (0 = infinite order).
///
/// Over ℤ the generators are integral cocycles and coordinates are integers,
/// reduced modulo the torsion orders. Over ℚ all orders are 0.
#[derive(Clone, Debug)]
pub struct CohomologyPresentation {
    pub degree: i32,
    pub coeff: Coeff,
    pub representatives: Vec<Vec<Rat>>,
    pub orders: Vec<Int>,
    pub descriptor: GroupDescriptor,
    /// Rank of the cochain group in this degree.
    pub ambient: usize,
    inner: Inner,
}

#[derive(Clone, Debug)]
enum Inner {
    Integer {
        kernel: Arc<ColumnHermite>,
        u: IntegerMatrix,
        /// Rows of `u` that carry nontrivial generators.
        rows: Vec<usize>,
    },
    Rational {
        /// Reduction of `[B | reps]`; coordinates are the trailing entries.
        echelon: RowEchelon,
        boundary_dim: usize,
    },
}

impl CohomologyPresentation {
    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    /// Relation matrix: diagonal of the orders (free generators give zero columns).
    pub fn relations(&self) -> IntegerMatrix {
        let n = self.orders.len();
        let mut m = IntegerMatrix::zeros(n, n);
        for (i, o) in self.orders.iter().enumerate() {
            m.set(i, i, o.clone());
        }
        m
    }

    pub fn free_indices(&self) -> Vec<usize> {
        (0..self.orders.len()).filter(|&i| self.orders[i].is_zero()).collect()
    }

    /// Coordinates of the class of a cocycle. Errors if `x` is not a cocycle
    /// (or not integral, over ℤ).
    pub fn coordinates(&self, c: &CochainComplex, x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != c.rank(self.degree) {
            return Err(Error::input(format!(
                "vector of length {} in degree {} of a complex of rank {}",
                x.len(),
                self.degree,
                c.rank(self.degree)
            )));
        }
        if !c.is_cocycle(self.degree, x) {
            return Err(Error::input(format!("not a cocycle in degree {}", self.degree)));
        }
        match &self.inner {
            Inner::Integer { kernel, u, rows } => {
                let xi = rat_to_int_vec(x).ok_or_else(|| Error::input("integer cocycle expected"))?;
                let y = kernel.kernel_coordinates(&xi);
                let w = u.mul_vec(&y);
                Ok(rows
                    .iter()
                    .zip(&self.orders)
                    .map(|(&r, o)| {
                        let v = if o.is_zero() { w[r].clone() } else { w[r].rem_nonneg(o) };
                        Rat::from(v)
                    })
                    .collect())
            }
            Inner::Rational { echelon, boundary_dim } => {
                let sol = echelon.solve(x).expect("cocycle lies in span of boundaries and representatives");
                Ok(sol[*boundary_dim..].to_vec())
            }
        }
    }

    pub fn int_coordinates(&self, c: &CochainComplex, x: &[Rat]) -> Result<Vec<Int>> {
        Ok(self.coordinates(c, x)?.iter().map(|v| v.numer().clone()).collect())
    }

    /// Whether coordinates represent the zero class.
    pub fn is_zero_class(&self, coords: &[Rat]) -> bool {
        coords.iter().zip(&self.orders).all(
            |(v, o)| {
                if o.is_zero() {
                    v.is_zero()
                } else {
                    v.numer().is_divisible_by(o)
                }
            },
        )
    }

    /// Cocycle representing the given integer/rational combination of generators.
    pub fn cocycle(&self, coords: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient];
        for (c, r) in coords.iter().zip(&self.representatives) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(r) {
                if !v.is_zero() {
                    *o += &(c * v);
                }
            }
        }
        out
    }
}

/// Cohomology in degree `k`; cached on the complex.
pub fn cohomology(c: &CochainComplex, k: i32) -> Result<Arc<CohomologyPresentation>> {
    if c.coeff() == Coeff::Mixed {
        return Err(Error::input("mixed complexes expose cohomology only through cone descriptors"));
    }
    match c.cohomology_cache(k) {
        Some(cell) => Ok(cell.get_or_init(|| Arc::new(compute(c, k))).clone()),
        None => Ok(Arc::new(compute(c, k))),
    }
}

fn compute(c: &CochainComplex, k: i32) -> CohomologyPresentation {
    match c.coeff() {
        Coeff::Z => compute_integer(c, k),
        _ => compute_rational(c, k),
    }
}

fn compute_integer(c: &CochainComplex, k: i32) -> CohomologyPresentation {
    let kernel = c.hermite(k);
    let basis = kernel.kernel_basis();
    let z = basis.len();
    // boundaries expressed in kernel coordinates
    let prev = c.d_int(k - 1);
    let mut rel = IntegerMatrix::zeros(z, prev.cols());
    for j in 0..prev.cols() {
        let col = prev.column(j);
        let y = kernel.kernel_coordinates(&col);
        for (i, v) in y.into_iter().enumerate() {
            if !v.is_zero() {
                rel.set(i, j, v);
            }
        }
    }
    let s = smith_normal_form(&rel);
    let diag = s.diagonal();
    let basis_mat = IntegerMatrix::from_columns(c.rank(k), &basis);
    let gens = basis_mat.mul_mat(&s.u_inv);
    let mut reps = Vec::new();
    let mut orders = Vec::new();
    let mut rows = Vec::new();
    for i in 0..z {
        let order = if i < diag.len() { diag[i].clone() } else { Int::zero() };
        if order.is_one() {
            continue;
        }
        reps.push(to_rat_vec(&gens.column(i)));
        orders.push(order);
        rows.push(i);
    }
    let descriptor = GroupDescriptor::from_cyclic_orders(&orders);
    CohomologyPresentation {
        degree: k,
        coeff: Coeff::Z,
        representatives: reps,
        orders,
        descriptor,
        ambient: c.rank(k),
        inner: Inner::Integer { kernel, u: s.u, rows },
    }
}

fn compute_rational(c: &CochainComplex, k: i32) -> CohomologyPresentation {
    let n = c.rank(k);
    let kernel = c.echelon(k).kernel_basis();
    let prev = c.d(k - 1);
    let prev_e = c.echelon(k - 1);
    let boundary: Vec<Vec<Rat>> = prev_e.pivots.iter().map(|&j| prev.column(j)).collect();
    let mut cols = boundary.clone();
    cols.extend(kernel.iter().cloned());
    let m = RationalMatrix::from_columns(n, &cols);
    let e = RowEchelon::new(&m);
    let reps: Vec<Vec<Rat>> = e.pivots.iter().filter(|&&j| j >= boundary.len()).map(|&j| cols[j].clone()).collect();
    let mut basis = boundary.clone();
    basis.extend(reps.iter().cloned());
    let echelon = RowEchelon::new(&RationalMatrix::from_columns(n, &basis));
    let orders = vec![Int::zero(); reps.len()];
    CohomologyPresentation {
        degree: k,
        coeff: c.coeff(),
        descriptor: GroupDescriptor::free(reps.len()),
        representatives: reps,
        orders,
        ambient: n,
        inner: Inner::Rational { echelon, boundary_dim: boundary.len() },
    }
}

/// A homomorphism between cohomology presentations.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub degree: i32,
    /// Column `j` = target coordinates of the image of source generator `j`.
    pub matrix: RationalMatrix,
    pub injective: bool,
    pub surjective: bool,
    pub isomorphism: bool,
    pub kernel_witness: Option<Vec<Rat>>,
    pub cokernel: Option<GroupDescriptor>,
}

pub fn induced_map(f: &ChainMap, k: i32) -> Result<InducedMap> {
    let src = f.source();
    let tgt = f.target();
    let hs = cohomology(src, k)?;
    let ht = cohomology(tgt, k)?;
    let mut cols = Vec::with_capacity(hs.rank());
    for r in &hs.representatives {
        let img = f.apply(k, r);
        cols.push(ht.coordinates(tgt, &img)?);
    }
    let matrix = RationalMatrix::from_columns(ht.rank(), &cols);
    let (injective, kernel_witness) = injectivity(&hs, &ht, &matrix);
    let (surjective, cokernel) = surjectivity(&ht, &matrix);
    Ok(InducedMap {
        degree: k,
        injective,
        surjective,
        isomorphism: injective && surjective,
        kernel_witness,
        cokernel,
        matrix,
    })
}

fn injectivity(
    hs: &CohomologyPresentation,
    ht: &CohomologyPresentation,
    m: &RationalMatrix,
) -> (bool, Option<Vec<Rat>>) {
    match (hs.coeff, ht.coeff) {
        (Coeff::Z, Coeff::Z) => {
            // x ↦ M x lands in the target relations; kernel = {x : M x ∈ col(R_t)} mod R_s
            let mi = m.to_integer().expect("integer coordinates");
            let rt = ht.relations();
            let mut big = mi.hstack(&rt.neg_mat());
            if big.rows() == 0 {
                big = IntegerMatrix::zeros(0, mi.cols() + rt.cols());
            }
            let ch = ColumnHermite::new(&big);
            for v in ch.kernel_basis() {
                let x: Vec<Int> = v[..mi.cols()].to_vec();
                let trivial =
                    x.iter().zip(&hs.orders).all(
                        |(xi, o)| {
                            if o.is_zero() {
                                xi.is_zero()
                            } else {
                                xi.is_divisible_by(o)
                            }
                        },
                    );
                if !trivial {
                    return (false, Some(hs.cocycle(&to_rat_vec(&x))));
                }
            }
            (true, None)
        }
        (Coeff::Z, _) => {
            // torsion always dies in a ℚ-vector space; free part must map injectively
            if let Some(i) = hs.orders.iter().position(|o| !o.is_zero()) {
                return (false, Some(hs.representatives[i].clone()));
            }
            rational_injective(hs, m)
        }
        _ => rational_injective(hs, m),
    }
}

fn rational_injective(hs: &CohomologyPresentation, m: &RationalMatrix) -> (bool, Option<Vec<Rat>>) {
    let ker = RowEchelon::new(m).kernel_basis();
    match ker.first() {
        None => (true, None),
        Some(v) => (false, Some(hs.cocycle(v))),
    }
}

fn surjectivity(ht: &CohomologyPresentation, m: &RationalMatrix) -> (bool, Option<GroupDescriptor>) {
    match ht.coeff {
        Coeff::Z => match m.to_integer() {
            Some(mi) => {
                let rel = mi.hstack(&ht.relations());
                let rel = if rel.rows() == 0 { IntegerMatrix::zeros(0, 0) } else { rel };
                let coker = quotient_descriptor(ht.rank(), &rel).expect("shape matches");
                (coker.is_trivial(), Some(coker))
            }
            None => (false, None),
        },
        _ => {
            let r = crate::linalg::echelon::rank(m);
            let free = ht.rank() - r;
            (free == 0, Some(GroupDescriptor::free(free)))
        }
    }
}

/// Cohomology descriptor in every degree of the complex.
pub fn descriptors(c: &CochainComplex) -> Result<Vec<(i32, GroupDescriptor)>> {
    c.degrees().map(|k| Ok((k, cohomology(c, k)?.descriptor.clone()))).collect()
}

pub fn is_acyclic(c: &CochainComplex) -> Result<bool> {
    for k in c.degrees() {
        if !cohomology(c, k)?.descriptor.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `x` is a coboundary (`x = d y` for some `y`; integral `y` over ℤ).
pub fn is_coboundary(c: &CochainComplex, k: i32, x: &[Rat]) -> bool {
    if is_zero_vec(x) {
        return true;
    }
    match c.coeff() {
        Coeff::Z => match rat_to_int_vec(x) {
            Some(xi) => c.hermite(k - 1).solve(&xi).is_some(),
            None => false,
        },
        _ => c.echelon(k - 1).is_in_span(x),
    }
}
