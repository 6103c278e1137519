//! Finitely presented cochain complexes and chain maps.

use crate::error::{Error, Result};
use crate::linalg::{ColumnHermite, IntegerMatrix, RationalMatrix, RowEchelon};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::cohomology::CohomologyPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Z,
    Q,
    /// Abelian-group complexes `ℚ^m ⊕ ℤ^n` per degree (cones of ℤ → ℚ maps).
    Mixed,
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Z => write!(f, "Z"),
            Coeff::Q => write!(f, "Q"),
            Coeff::Mixed => write!(f, "Q+Z"),
        }
    }
}

#[derive(Default)]
struct Caches {
    echelon: Vec<OnceLock<Arc<RowEchelon>>>,
    hermite: Vec<OnceLock<Arc<ColumnHermite>>>,
    cohomology: Vec<OnceLock<Arc<CohomologyPresentation>>>,
}

impl Clone for Caches {
    fn clone(&self) -> Self {
        Caches { echelon: self.echelon.clone(), hermite: self.hermite.clone(), cohomology: self.cohomology.clone() }
    }
}

/// Degrees `min_degree ..= min_degree + ranks.len() - 1`; zero outside.
///
/// `diffs[i]` is `d_k` for `k = min_degree - 1 + i`, so the boundary maps into
/// the first and out of the last degree are stored as empty-shaped matrices.
#[derive(Clone)]
pub struct CochainComplex {
    coeff: Coeff,
    min_degree: i32,
    ranks: Vec<usize>,
    diffs: Vec<RationalMatrix>,
    int_diffs: Vec<IntegerMatrix>,
    /// For mixed complexes: the trailing coordinates of each degree that are integral.
    lattice_dims: Vec<usize>,
    empty: RationalMatrix,
    empty_int: IntegerMatrix,
    caches: Caches,
}

impl fmt::Debug for CochainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CochainComplex({}, degrees {}..={}, ranks {:?})",
            self.coeff,
            self.min_degree,
            self.max_degree(),
            self.ranks
        )
    }
}

impl CochainComplex {
    /// `diffs[i]` is the differential out of degree `min_degree + i`, of shape
    /// `ranks[i+1] × ranks[i]`; there must be `ranks.len() - 1` of them.
    pub fn new(coeff: Coeff, min_degree: i32, ranks: Vec<usize>, diffs: Vec<RationalMatrix>) -> Result<Self> {
        Self::with_lattice(coeff, min_degree, ranks, diffs, Vec::new())
    }

    pub fn with_lattice(
        coeff: Coeff,
        min_degree: i32,
        ranks: Vec<usize>,
        diffs: Vec<RationalMatrix>,
        lattice_dims: Vec<usize>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Ok(Self::zero(coeff));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::input(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[i + 1], ranks[i]) {
                return Err(Error::input(format!(
                    "differential out of degree {} has shape {:?}, expected {:?}",
                    min_degree + i as i32,
                    d.shape(),
                    (ranks[i + 1], ranks[i])
                )));
            }
        }
        let mut all = Vec::with_capacity(ranks.len() + 1);
        all.push(RationalMatrix::zeros(ranks[0], 0));
        all.extend(diffs);
        all.push(RationalMatrix::zeros(0, *ranks.last().unwrap()));
        let int_diffs = if coeff == Coeff::Q {
            Vec::new()
        } else {
            let mut v = Vec::with_capacity(all.len());
            for (i, d) in all.iter().enumerate() {
                match d.to_integer() {
                    Some(m) => v.push(m),
                    None if coeff == Coeff::Z => {
                        return Err(Error::input(format!(
                            "integer complex has a non-integral differential out of degree {}",
                            min_degree - 1 + i as i32
                        )))
                    }
                    None => v.push(IntegerMatrix::zeros(0, 0)),
                }
            }
            v
        };
        if coeff == Coeff::Mixed && lattice_dims.len() != ranks.len() {
            return Err(Error::input("mixed complex needs a lattice dimension per degree"));
        }
        let n = all.len();
        let c = CochainComplex {
            coeff,
            min_degree,
            ranks,
            diffs: all,
            int_diffs,
            lattice_dims,
            empty: RationalMatrix::zeros(0, 0),
            empty_int: IntegerMatrix::zeros(0, 0),
            caches: Caches {
                echelon: (0..n).map(|_| OnceLock::new()).collect(),
                hermite: (0..n).map(|_| OnceLock::new()).collect(),
                cohomology: (0..n).map(|_| OnceLock::new()).collect(),
            },
        };
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn from_integer(min_degree: i32, ranks: Vec<usize>, diffs: Vec<IntegerMatrix>) -> Result<Self> {
        Self::new(Coeff::Z, min_degree, ranks, diffs.iter().map(|d| d.to_rational()).collect())
    }

    pub fn zero(coeff: Coeff) -> Self {
        CochainComplex {
            coeff,
            min_degree: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
            int_diffs: Vec::new(),
            lattice_dims: Vec::new(),
            empty: RationalMatrix::zeros(0, 0),
            empty_int: IntegerMatrix::zeros(0, 0),
            caches: Caches::default(),
        }
    }

    fn check_square_zero(&self) -> Result<()> {
        for i in 0..self.diffs.len().saturating_sub(1) {
            let a = &self.diffs[i];
            let b = &self.diffs[i + 1];
            if !b.mul_mat(a).is_zero() {
                return Err(Error::violation("d∘d ≠ 0", format!("at degree {}", self.min_degree - 1 + i as i32)));
            }
        }
        Ok(())
    }

    /// Same data over ℚ.
    pub fn to_rational(&self) -> Self {
        let n = self.ranks.len();
        if n == 0 {
            return Self::zero(Coeff::Q);
        }
        Self::new(Coeff::Q, self.min_degree, self.ranks.clone(), self.diffs[1..n].to_vec()).expect("already validated")
    }

    pub fn coeff(&self) -> Coeff {
        self.coeff
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.ranks.len() as i32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, k: i32) -> usize {
        if k < self.min_degree || k > self.max_degree() {
            0
        } else {
            self.ranks[(k - self.min_degree) as usize]
        }
    }

    pub fn lattice_dim(&self, k: i32) -> usize {
        match self.coeff {
            Coeff::Z => self.rank(k),
            Coeff::Q => 0,
            Coeff::Mixed => {
                if k < self.min_degree || k > self.max_degree() {
                    0
                } else {
                    self.lattice_dims[(k - self.min_degree) as usize]
                }
            }
        }
    }

    fn slot(&self, k: i32) -> Option<usize> {
        if self.ranks.is_empty() {
            return None;
        }
        let i = k - self.min_degree + 1;
        if i < 0 || i as usize >= self.diffs.len() {
            None
        } else {
            Some(i as usize)
        }
    }

    /// `d_k: C^k → C^{k+1}`.
    pub fn d(&self, k: i32) -> &RationalMatrix {
        match self.slot(k) {
            Some(i) => &self.diffs[i],
            None => &self.empty,
        }
    }

    /// Integer form of `d_k`; only for ℤ complexes.
    pub fn d_int(&self, k: i32) -> &IntegerMatrix {
        assert_eq!(self.coeff, Coeff::Z, "integer differential requested on a non-integer complex");
        match self.slot(k) {
            Some(i) => &self.int_diffs[i],
            None => &self.empty_int,
        }
    }

    /// Cached rational row reduction of `d_k`.
    pub fn echelon(&self, k: i32) -> Arc<RowEchelon> {
        match self.slot(k) {
            Some(i) => self.caches.echelon[i].get_or_init(|| Arc::new(RowEchelon::new(&self.diffs[i]))).clone(),
            None => Arc::new(RowEchelon::new(&RationalMatrix::zeros(self.rank(k + 1), self.rank(k)))),
        }
    }

    /// Cached column Hermite form of `d_k`; only for ℤ complexes.
    pub fn hermite(&self, k: i32) -> Arc<ColumnHermite> {
        match self.slot(k) {
            Some(i) => self.caches.hermite[i].get_or_init(|| Arc::new(ColumnHermite::new(self.d_int(k)))).clone(),
            None => Arc::new(ColumnHermite::new(&IntegerMatrix::zeros(self.rank(k + 1), self.rank(k)))),
        }
    }

    pub(crate) fn cohomology_cache(&self, k: i32) -> Option<&OnceLock<Arc<CohomologyPresentation>>> {
        self.slot(k).map(|i| &self.caches.cohomology[i])
    }

    pub fn is_cocycle(&self, k: i32, x: &[crate::linalg::Rat]) -> bool {
        x.len() == self.rank(k) && crate::linalg::matrix::is_zero_vec(&self.d(k).mul_vec(x))
    }

    /// Copy of the complex restricted to a degree window (used for truncated views).
    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.min_degree..=self.max_degree()
    }
}

/// Per-degree maps `f_k: source^k → target^k` commuting with the differentials.
#[derive(Clone)]
pub struct ChainMap {
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
    min_degree: i32,
    maps: Vec<RationalMatrix>,
    empty: RationalMatrix,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} -> {:?})", self.source, self.target)
    }
}

impl ChainMap {
    /// `maps[i]` is `f_k` for `k = min_degree + i`; missing degrees are zero.
    pub fn new(
        source: Arc<CochainComplex>,
        target: Arc<CochainComplex>,
        min_degree: i32,
        maps: Vec<RationalMatrix>,
    ) -> Result<Self> {
        for (i, m) in maps.iter().enumerate() {
            let k = min_degree + i as i32;
            if m.shape() != (target.rank(k), source.rank(k)) {
                return Err(Error::input(format!(
                    "chain map in degree {k} has shape {:?}, expected {:?}",
                    m.shape(),
                    (target.rank(k), source.rank(k))
                )));
            }
            if source.coeff() == Coeff::Z && target.coeff() == Coeff::Z && !m.is_integral() {
                return Err(Error::input(format!("non-integral map between integer complexes in degree {k}")));
            }
        }
        let f = ChainMap { source, target, min_degree, maps, empty: RationalMatrix::zeros(0, 0) };
        f.check_commutes()?;
        Ok(f)
    }

    /// Builds the map over the union of the two degree ranges from a per-degree closure.
    pub fn from_fn(
        source: Arc<CochainComplex>,
        target: Arc<CochainComplex>,
        mut f: impl FnMut(i32) -> RationalMatrix,
    ) -> Result<Self> {
        let (lo, hi) = degree_union(&source, &target);
        let maps = (lo..=hi).map(&mut f).collect();
        Self::new(source, target, lo, maps)
    }

    pub fn identity(c: Arc<CochainComplex>) -> Self {
        let lo = c.min_degree();
        let maps = c.degrees().map(|k| RationalMatrix::identity(c.rank(k))).collect();
        ChainMap::new(c.clone(), c, lo, maps).expect("identity commutes")
    }

    pub fn zero(source: Arc<CochainComplex>, target: Arc<CochainComplex>) -> Self {
        Self::from_fn(source.clone(), target.clone(), |k| RationalMatrix::zeros(target.rank(k), source.rank(k)))
            .expect("zero map commutes")
    }

    fn check_commutes(&self) -> Result<()> {
        let (lo, hi) = degree_union(&self.source, &self.target);
        for k in lo - 1..=hi {
            let lhs = self.f(k + 1).mul_mat(self.source.d(k));
            let rhs = self.target.d(k).mul_mat(&self.f(k));
            if lhs != rhs {
                return Err(Error::violation(
                    "chain map does not commute with differentials",
                    format!("square out of degree {k}"),
                ));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<CochainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CochainComplex> {
        &self.target
    }

    pub fn f(&self, k: i32) -> std::borrow::Cow<'_, RationalMatrix> {
        let i = k - self.min_degree;
        if i >= 0 && (i as usize) < self.maps.len() {
            std::borrow::Cow::Borrowed(&self.maps[i as usize])
        } else if self.target.rank(k) == 0 && self.source.rank(k) == 0 {
            std::borrow::Cow::Borrowed(&self.empty)
        } else {
            std::borrow::Cow::Owned(RationalMatrix::zeros(self.target.rank(k), self.source.rank(k)))
        }
    }

    pub fn apply(&self, k: i32, x: &[crate::linalg::Rat]) -> Vec<crate::linalg::Rat> {
        self.f(k).mul_vec(x)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        let (lo, hi) = degree_union(&self.source, &other.target);
        let maps = (lo..=hi).map(|k| other.f(k).mul_mat(&self.f(k))).collect();
        ChainMap::new(self.source.clone(), other.target.clone(), lo, maps)
    }
}

pub(crate) fn degree_union(a: &CochainComplex, b: &CochainComplex) -> (i32, i32) {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (b.min_degree(), b.max_degree()),
        (false, true) => (a.min_degree(), a.max_degree()),
        (false, false) => (a.min_degree().min(b.min_degree()), a.max_degree().max(b.max_degree())),
    }
}
