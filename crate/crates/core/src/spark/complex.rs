//! Validated spark complexes `I --Ψ--> F ⊃ E`.

use crate::complex::{cohomology, induced_map, ChainMap, CochainComplex, Coeff};
use crate::error::{Error, Result};
use crate::linalg::matrix::{is_zero_vec, rat_to_int_vec, to_rat_vec};
use crate::linalg::{Int, IntegerMatrix, MixedSolver, Rat, RationalMatrix, RowEchelon};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Per-degree lazily computed values over a fixed window of degrees.
pub(crate) struct DegreeCache<T> {
    lo: i32,
    cells: Vec<OnceLock<Arc<T>>>,
}

impl<T> DegreeCache<T> {
    pub(crate) fn new(lo: i32, hi: i32) -> Self {
        let n = (hi - lo + 1).max(0) as usize;
        DegreeCache { lo, cells: (0..n).map(|_| OnceLock::new()).collect() }
    }

    pub(crate) fn get(&self, k: i32, f: impl FnOnce() -> T) -> Arc<T> {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.cells.len() {
            self.cells[i as usize].get_or_init(|| Arc::new(f())).clone()
        } else {
            Arc::new(f())
        }
    }
}

/// Which axiom failed, with a concrete witness.
#[derive(Clone, Debug, PartialEq)]
pub enum AxiomFailure {
    /// `E ⊂ F` is not an inclusion in this degree.
    NotInclusion { degree: i32 },
    /// A nonzero `Ψ(s)` lies in the span of `ι(E^k)`, `k > 0`.
    Disjointness { degree: i32, s: Vec<Int>, image: Vec<Rat> },
    /// `ι*: H^k(E) → H^k(F)` is not bijective.
    EdgeCohomology { degree: i32, injective: bool, surjective: bool, witness: Option<Vec<Rat>> },
    /// `Ψ` kills the nonzero integer 0-cochain `s`.
    DegreeZeroKernel { s: Vec<Int> },
}

impl AxiomFailure {
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomFailure::NotInclusion { .. } => "E is not a subcomplex",
            AxiomFailure::Disjointness { .. } => "axiom (i)",
            AxiomFailure::EdgeCohomology { .. } => "axiom (ii)",
            AxiomFailure::DegreeZeroKernel { .. } => "axiom (iii)",
        }
    }
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::NotInclusion { degree } => write!(f, "iota is not injective in degree {degree}"),
            AxiomFailure::Disjointness { degree, s, .. } => {
                write!(f, "degree {degree}: Psi(s) lies in iota(E) for s = {}", fmt_vec(s))
            }
            AxiomFailure::EdgeCohomology { degree, injective, surjective, .. } => {
                write!(f, "degree {degree}: H(E) -> H(F) injective={injective} surjective={surjective}")
            }
            AxiomFailure::DegreeZeroKernel { s } => write!(f, "Psi(s) = 0 for s = {}", fmt_vec(s)),
        }
    }
}

pub(crate) fn fmt_vec<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

/// `Z_I^k(E)`: closed `e` whose class lies in `Ψ_* H^k(I)`.
///
/// It is the exact part `dE^{k-1}` plus the lattice spanned by `generators`;
/// for each generator `g` the witness `(ρ, b)` satisfies `ι(g) − Ψ(ρ) = d b`.
#[derive(Clone, Debug)]
pub struct ZISubgroup {
    pub degree: i32,
    /// Basis of `ker(Z^k(E) → H^k(F)) = dE^{k−1}`.
    pub exact_basis: Vec<Vec<Rat>>,
    pub generators: Vec<Vec<Rat>>,
    pub witnesses: Vec<(Vec<Int>, Vec<Rat>)>,
    /// Columns: `H^k(F)` coordinates of `Ψ_*` of each free generator of `H^k(I)`.
    pub period_matrix: RationalMatrix,
    /// Rank of the lattice `Ψ_* H^k(I)` (its ℚ-span dimension).
    pub lattice_rank: usize,
    solver: MixedSolver,
}

impl ZISubgroup {
    /// Integer coordinates `y` with `[ι e] = period_matrix · y`, if any.
    pub fn lattice_coordinates(&self, class: &[Rat]) -> Option<Vec<Int>> {
        self.solver.solve(class).map(|(_, y)| y)
    }
}

pub struct SparkComplex {
    f: Arc<CochainComplex>,
    e: Arc<CochainComplex>,
    i: Arc<CochainComplex>,
    iota: ChainMap,
    psi: ChainMap,
    iota_echelon: DegreeCache<RowEchelon>,
    edge_solver: DegreeCache<RowEchelon>,
    equivalence: DegreeCache<(IntegerMatrix, MixedSolver)>,
    zi: DegreeCache<ZISubgroup>,
    iota_inverse: DegreeCache<RationalMatrix>,
}

impl fmt::Debug for SparkComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparkComplex(F={:?}, E={:?}, I={:?})", self.f, self.e, self.i)
    }
}

impl SparkComplex {
    /// Validates the three axioms; the error names the failing axiom and a witness.
    pub fn new(iota: ChainMap, psi: ChainMap) -> Result<SparkComplex> {
        let s = Self::unchecked(iota, psi)?;
        if let Some(fail) = s.check_axioms()?.into_iter().next() {
            return Err(Error::violation(format!("spark complex {}", fail.axiom()), fail.to_string()));
        }
        Ok(s)
    }

    /// Builds without checking the axioms (shapes and coefficients still checked).
    pub fn unchecked(iota: ChainMap, psi: ChainMap) -> Result<SparkComplex> {
        if !Arc::ptr_eq(iota.target(), psi.target()) && !same_complex(iota.target(), psi.target()) {
            return Err(Error::input("iota and Psi must share the target F"));
        }
        let f = iota.target().clone();
        let e = iota.source().clone();
        let i = psi.source().clone();
        if f.coeff() != Coeff::Q || e.coeff() != Coeff::Q {
            return Err(Error::input("F and E must be rational complexes"));
        }
        if i.coeff() != Coeff::Z {
            return Err(Error::input("I must be an integer complex"));
        }
        for k in psi_degrees(&i, &f) {
            if !psi.f(k).is_integral() {
                return Err(Error::input(format!("Psi has non-integral entries in degree {k}")));
            }
        }
        let lo = [f.min_degree(), e.min_degree(), i.min_degree()].into_iter().min().unwrap() - 2;
        let hi = [f.max_degree(), e.max_degree(), i.max_degree()].into_iter().max().unwrap() + 2;
        Ok(SparkComplex {
            f,
            e,
            i,
            iota,
            psi,
            iota_echelon: DegreeCache::new(lo, hi),
            edge_solver: DegreeCache::new(lo, hi),
            equivalence: DegreeCache::new(lo, hi),
            zi: DegreeCache::new(lo, hi),
            iota_inverse: DegreeCache::new(lo, hi),
        })
    }

    /// All axiom failures (empty when the triple is a spark complex).
    pub fn check_axioms(&self) -> Result<Vec<AxiomFailure>> {
        let mut out = Vec::new();
        for k in self.e.degrees() {
            if self.iota_echelon(k).rank() != self.e.rank(k) {
                out.push(AxiomFailure::NotInclusion { degree: k });
            }
        }
        if let Some(fail) = self.disjointness_failure()? {
            out.push(fail);
        }
        let (lo, hi) = span(&self.e, &self.f);
        for k in lo..=hi {
            let m = induced_map(&self.iota, k)?;
            if !m.isomorphism {
                out.push(AxiomFailure::EdgeCohomology {
                    degree: k,
                    injective: m.injective,
                    surjective: m.surjective,
                    witness: m.kernel_witness.clone(),
                });
            }
        }
        let p0 = self.psi.f(0).to_integer().expect("integral Psi");
        let ker = crate::linalg::ColumnHermite::new(&p0).kernel_basis();
        if let Some(s) = ker.into_iter().next() {
            out.push(AxiomFailure::DegreeZeroKernel { s });
        }
        Ok(out)
    }

    fn disjointness_failure(&self) -> Result<Option<AxiomFailure>> {
        for k in psi_degrees(&self.i, &self.f) {
            if k <= 0 || self.i.rank(k) == 0 {
                continue;
            }
            let a = self.iota.f(k).into_owned();
            let l = self.psi.f(k).into_owned();
            let solver = MixedSolver::new(&a, &l);
            for y in solver.lattice_kernel() {
                let img = l.mul_vec(&to_rat_vec(&y));
                if !is_zero_vec(&img) {
                    return Ok(Some(AxiomFailure::Disjointness { degree: k, s: y, image: img }));
                }
            }
        }
        Ok(None)
    }

    pub fn f(&self) -> &Arc<CochainComplex> {
        &self.f
    }

    pub fn e(&self) -> &Arc<CochainComplex> {
        &self.e
    }

    pub fn i(&self) -> &Arc<CochainComplex> {
        &self.i
    }

    pub fn iota(&self) -> &ChainMap {
        &self.iota
    }

    pub fn psi(&self) -> &ChainMap {
        &self.psi
    }

    pub fn apply_psi(&self, k: i32, r: &[Int]) -> Vec<Rat> {
        self.psi.apply(k, &to_rat_vec(r))
    }

    pub fn apply_iota(&self, k: i32, e: &[Rat]) -> Vec<Rat> {
        self.iota.apply(k, e)
    }

    pub(crate) fn iota_echelon(&self, k: i32) -> Arc<RowEchelon> {
        self.iota_echelon.get(k, || RowEchelon::new(&self.iota.f(k)))
    }

    /// Preimage under `ι` in degree `k`, if `v ∈ ι(E^k)`.
    pub fn iota_preimage(&self, k: i32, v: &[Rat]) -> Option<Vec<Rat>> {
        self.iota_echelon(k).solve(v)
    }

    /// Reduction of `[ι_k | −d^F_{k−1}]`: writes `v = ι(x) − d b`.
    pub(crate) fn edge_solver(&self, k: i32) -> Arc<RowEchelon> {
        self.edge_solver.get(k, || {
            let m = self.iota.f(k).hstack(&self.f.d(k - 1).neg_mat());
            RowEchelon::new(&m)
        })
    }

    /// Splits `v ∈ F^k` as `ι(x) − d b` when possible.
    pub fn split_edge(&self, k: i32, v: &[Rat]) -> Option<(Vec<Rat>, Vec<Rat>)> {
        let sol = self.edge_solver(k).solve(v)?;
        let ne = self.e.rank(k);
        Some((sol[..ne].to_vec(), sol[ne..].to_vec()))
    }

    /// For degree-`k` sparks: integer cocycle basis `Z^k(I)` (columns) and the
    /// solver for `dF^{k−1} x + Ψ(Z^k(I)) y = v`.
    pub(crate) fn equivalence_solver(&self, k: i32) -> Arc<(IntegerMatrix, MixedSolver)> {
        self.equivalence.get(k, || {
            let z = self.i.hermite(k).kernel_basis();
            let zm = IntegerMatrix::from_columns(self.i.rank(k), &z);
            let l = self.psi.f(k).mul_mat(&zm.to_rational());
            let a = self.f.d(k - 1).clone();
            (zm, MixedSolver::new(&a, &l))
        })
    }

    /// Inverse of the matrix of `ι*` on cohomology in degree `k`.
    pub(crate) fn iota_star_inverse(&self, k: i32) -> Arc<RationalMatrix> {
        self.iota_inverse.get(k, || {
            let m = induced_map(&self.iota, k).expect("validated inclusion").matrix;
            let n = m.rows();
            let e = RowEchelon::new(&m);
            let cols: Vec<Vec<Rat>> = (0..n)
                .map(|j| {
                    let mut b = vec![Rat::zero(); n];
                    b[j] = Rat::one();
                    e.solve(&b).expect("edge cohomology isomorphism")
                })
                .collect();
            RationalMatrix::from_columns(m.cols(), &cols)
        })
    }

    /// A cocycle `e ∈ E^k` with `[ι e] = [x]` for a cocycle `x ∈ F^k`.
    pub fn edge_representative(&self, k: i32, x: &[Rat]) -> Result<Vec<Rat>> {
        let hf = cohomology(&self.f, k)?;
        let he = cohomology(&self.e, k)?;
        let c = hf.coordinates(&self.f, x)?;
        let ce = self.iota_star_inverse(k).mul_vec(&c);
        Ok(he.cocycle(&ce))
    }

    pub fn zi_subgroup(&self, k: i32) -> Arc<ZISubgroup> {
        self.zi.get(k, || self.build_zi(k))
    }

    fn build_zi(&self, k: i32) -> ZISubgroup {
        let exact_basis = crate::linalg::echelon::column_space_basis(self.e.d(k - 1));
        let hi = cohomology(&self.i, k).expect("integer complex");
        let hf = cohomology(&self.f, k).expect("rational complex");
        let mut cols = Vec::new();
        let mut generators = Vec::new();
        let mut witnesses = Vec::new();
        for j in hi.free_indices() {
            let rho = rat_to_int_vec(&hi.representatives[j]).expect("integral representative");
            let img = self.apply_psi(k, &rho);
            cols.push(hf.coordinates(&self.f, &img).expect("Psi maps cocycles to cocycles"));
            let g = self.edge_representative(k, &img).expect("cocycle");
            // ι(g) − Ψ(ρ) is exact in F
            let diff = crate::linalg::matrix::sub_vec(&self.apply_iota(k, &g), &img);
            let b = self.f.echelon(k - 1).solve(&diff).expect("same class");
            generators.push(g);
            witnesses.push((rho, b));
        }
        let period_matrix = RationalMatrix::from_columns(hf.rank(), &cols);
        let lattice_rank = crate::linalg::echelon::rank(&period_matrix);
        let solver = MixedSolver::new(&RationalMatrix::zeros(hf.rank(), 0), &period_matrix);
        ZISubgroup { degree: k, exact_basis, generators, witnesses, period_matrix, lattice_rank, solver }
    }

    /// Whether a closed `e ∈ E^k` has `[ι e] ∈ Ψ_* H^k(I)`.
    pub fn z_i_membership(&self, k: i32, e: &[Rat]) -> Result<bool> {
        if !self.e.is_cocycle(k, e) {
            return Err(Error::input(format!("element of E^{k} is not closed")));
        }
        let hf = cohomology(&self.f, k)?;
        let c = hf.coordinates(&self.f, &self.apply_iota(k, e))?;
        Ok(self.zi_subgroup(k).lattice_coordinates(&c).is_some())
    }
}

pub(crate) fn same_complex(a: &CochainComplex, b: &CochainComplex) -> bool {
    a.coeff() == b.coeff()
        && a.degrees() == b.degrees()
        && a.degrees().all(|k| a.rank(k) == b.rank(k) && a.d(k) == b.d(k))
}

fn span(a: &CochainComplex, b: &CochainComplex) -> (i32, i32) {
    crate::complex::cochain::degree_union(a, b)
}

fn psi_degrees(i: &CochainComplex, f: &CochainComplex) -> std::ops::RangeInclusive<i32> {
    let (lo, hi) = span(i, f);
    lo..=hi
}
