//! First-quadrant double complexes, totalization and horizontal truncation.

use super::cochain::{ChainMap, CochainComplex, Coeff};
use crate::error::{Error, Result};
use crate::linalg::{Rat, RationalMatrix};
use std::sync::Arc;

/// Bidegrees `(p, q)` with `0 ≤ p < width`, `0 ≤ q < height`.
///
/// `delta[p][q]: (p,q) → (p+1,q)` is horizontal (Čech), `d[p][q]: (p,q) → (p,q+1)`
/// vertical. The two commute; the total differential on `(p,q)` is
/// `(−1)^q δ + d`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    coeff: Coeff,
    ranks: Vec<Vec<usize>>,
    delta: Vec<Vec<RationalMatrix>>,
    d: Vec<Vec<RationalMatrix>>,
}

/// Where bidegree `(p, q)` sits inside total degree `p + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub p: usize,
    pub q: usize,
    pub offset: usize,
    pub len: usize,
}

/// Summand layout of each total degree (blocks ordered by increasing `p`).
#[derive(Clone, Debug, Default)]
pub struct TotalLayout {
    pub degrees: Vec<Vec<Block>>,
}

impl TotalLayout {
    pub fn rank(&self, k: i32) -> usize {
        self.blocks(k).iter().map(|b| b.len).sum()
    }

    pub fn blocks(&self, k: i32) -> &[Block] {
        if k < 0 || k as usize >= self.degrees.len() {
            &[]
        } else {
            &self.degrees[k as usize]
        }
    }

    pub fn block(&self, k: i32, p: usize) -> Option<&Block> {
        self.blocks(k).iter().find(|b| b.p == p)
    }

    /// The `(p, k−p)` component of a total `k`-cochain (empty if absent).
    pub fn component<'a>(&self, k: i32, p: usize, x: &'a [Rat]) -> &'a [Rat] {
        match self.block(k, p) {
            Some(b) => &x[b.offset..b.offset + b.len],
            None => &[],
        }
    }

    /// Total cochain with only the `(p, k−p)` component set.
    pub fn embed(&self, k: i32, p: usize, y: &[Rat]) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.rank(k)];
        if let Some(b) = self.block(k, p) {
            assert_eq!(b.len, y.len(), "component length mismatch");
            x[b.offset..b.offset + b.len].clone_from_slice(y);
        }
        x
    }

    /// Column indices of the blocks with `p < level` in degree `k`.
    pub fn low_indices(&self, k: i32, level: usize) -> Vec<usize> {
        self.blocks(k).iter().filter(|b| b.p < level).flat_map(|b| b.offset..b.offset + b.len).collect()
    }
}

impl DoubleComplex {
    pub fn new(
        coeff: Coeff,
        ranks: Vec<Vec<usize>>,
        delta: Vec<Vec<RationalMatrix>>,
        d: Vec<Vec<RationalMatrix>>,
    ) -> Result<Self> {
        if coeff == Coeff::Mixed {
            return Err(Error::input("double complexes are over Z or Q"));
        }
        let w = ranks.len();
        let h = ranks.first().map_or(0, |c| c.len());
        if ranks.iter().any(|c| c.len() != h) {
            return Err(Error::input("ragged bidegree rank table"));
        }
        let dc = DoubleComplex { coeff, ranks, delta, d };
        for p in 0..w {
            for q in 0..h {
                let r = dc.rank(p, q);
                let dl = dc.delta(p, q);
                let dv = dc.vert(p, q);
                if dl.shape() != (dc.rank(p + 1, q), r) || dv.shape() != (dc.rank(p, q + 1), r) {
                    return Err(Error::input(format!("bad differential shape at bidegree ({p},{q})")));
                }
                if coeff == Coeff::Z && (!dl.is_integral() || !dv.is_integral()) {
                    return Err(Error::input(format!("non-integral differential at ({p},{q}) over Z")));
                }
            }
        }
        for p in 0..w {
            for q in 0..h {
                if !dc.delta(p + 1, q).mul_mat(&dc.delta(p, q)).is_zero() {
                    return Err(Error::violation("δ∘δ ≠ 0", format!("at ({p},{q})")));
                }
                if !dc.vert(p, q + 1).mul_mat(&dc.vert(p, q)).is_zero() {
                    return Err(Error::violation("d∘d ≠ 0", format!("at ({p},{q})")));
                }
                let a = dc.vert(p + 1, q).mul_mat(&dc.delta(p, q));
                let b = dc.delta(p, q + 1).mul_mat(&dc.vert(p, q));
                if a != b {
                    return Err(Error::violation("δd ≠ dδ", format!("at ({p},{q})")));
                }
            }
        }
        Ok(dc)
    }

    pub fn coeff(&self) -> Coeff {
        self.coeff
    }

    pub fn width(&self) -> usize {
        self.ranks.len()
    }

    pub fn height(&self) -> usize {
        self.ranks.first().map_or(0, |c| c.len())
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.ranks.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    /// `δ: (p,q) → (p+1,q)`.
    pub fn delta(&self, p: usize, q: usize) -> RationalMatrix {
        match self.delta.get(p).and_then(|c| c.get(q)) {
            Some(m) => m.clone(),
            None => RationalMatrix::zeros(self.rank(p + 1, q), self.rank(p, q)),
        }
    }

    /// `d: (p,q) → (p,q+1)`.
    pub fn vert(&self, p: usize, q: usize) -> RationalMatrix {
        match self.d.get(p).and_then(|c| c.get(q)) {
            Some(m) => m.clone(),
            None => RationalMatrix::zeros(self.rank(p, q + 1), self.rank(p, q)),
        }
    }

    pub fn layout(&self) -> TotalLayout {
        let top = (self.width() + self.height()).saturating_sub(1);
        let mut degrees = Vec::new();
        for k in 0..top {
            let mut blocks = Vec::new();
            let mut off = 0;
            for p in 0..=k.min(self.width().saturating_sub(1)) {
                let q = k - p;
                if q >= self.height() {
                    continue;
                }
                let len = self.rank(p, q);
                blocks.push(Block { p, q, offset: off, len });
                off += len;
            }
            degrees.push(blocks);
        }
        TotalLayout { degrees }
    }

    /// Total differential out of degree `k` in the given layout.
    fn total_d(&self, layout: &TotalLayout, k: i32) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(layout.rank(k + 1), layout.rank(k));
        for b in layout.blocks(k) {
            if let Some(t) = layout.block(k + 1, b.p + 1) {
                let mut dl = self.delta(b.p, b.q);
                if b.q % 2 == 1 {
                    dl = dl.neg_mat();
                }
                m.set_block(t.offset, b.offset, &dl);
            }
            if let Some(t) = layout.block(k + 1, b.p) {
                m.set_block(t.offset, b.offset, &self.vert(b.p, b.q));
            }
        }
        m
    }

    pub fn totalize(&self) -> Result<(CochainComplex, TotalLayout)> {
        let layout = self.layout();
        let n = layout.degrees.len() as i32;
        if n == 0 {
            return Ok((CochainComplex::zero(self.coeff), layout));
        }
        let ranks = (0..n).map(|k| layout.rank(k)).collect();
        let diffs = (0..n - 1).map(|k| self.total_d(&layout, k)).collect();
        Ok((CochainComplex::new(self.coeff, 0, ranks, diffs)?, layout))
    }

    /// Column `p` as a complex in `q`.
    pub fn column(&self, p: usize) -> Result<CochainComplex> {
        let h = self.height();
        let ranks = (0..h).map(|q| self.rank(p, q)).collect();
        let diffs = (0..h.saturating_sub(1)).map(|q| self.vert(p, q)).collect();
        CochainComplex::new(self.coeff, 0, ranks, diffs)
    }

    /// Row `q` as a complex in `p`.
    pub fn row(&self, q: usize) -> Result<CochainComplex> {
        let w = self.width();
        let ranks = (0..w).map(|p| self.rank(p, q)).collect();
        let diffs = (0..w.saturating_sub(1)).map(|p| self.delta(p, q)).collect();
        CochainComplex::new(self.coeff, 0, ranks, diffs)
    }
}

/// Horizontal truncation of a total complex at level `p`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub level: usize,
    pub complex: Arc<CochainComplex>,
    /// `Π_p` from the full total complex.
    pub projection: ChainMap,
    /// Kept total indices per degree.
    pub kept: Vec<Vec<usize>>,
}

impl Truncation {
    /// Restricts a total `k`-cochain to the kept bidegrees.
    pub fn project(&self, k: i32, x: &[Rat]) -> Vec<Rat> {
        self.projection.apply(k, x)
    }

    /// Extends a truncated cochain by zero.
    pub fn extend(&self, k: i32, y: &[Rat], full_rank: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); full_rank];
        if k >= 0 {
            if let Some(idx) = self.kept.get(k as usize) {
                for (i, &j) in idx.iter().enumerate() {
                    x[j] = y[i].clone();
                }
            }
        }
        x
    }
}

/// `F_p^k = ⊕_{r<p} (r, k−r)` with differential `Π ∘ D`.
pub fn truncate(total: &Arc<CochainComplex>, layout: &TotalLayout, level: usize) -> Result<Truncation> {
    if level < 1 {
        return Err(Error::input("truncation level must be at least 1"));
    }
    if total.is_empty() {
        let z = Arc::new(CochainComplex::zero(total.coeff()));
        return Ok(Truncation {
            level,
            complex: z.clone(),
            projection: ChainMap::zero(total.clone(), z),
            kept: Vec::new(),
        });
    }
    let degs: Vec<i32> = total.degrees().collect();
    let kept: Vec<Vec<usize>> = degs.iter().map(|&k| layout.low_indices(k, level)).collect();
    let ranks = kept.iter().map(|v| v.len()).collect();
    let mut diffs = Vec::new();
    for (i, &k) in degs.iter().enumerate().take(degs.len() - 1) {
        diffs.push(total.d(k).select_rows(&kept[i + 1]).select_cols(&kept[i]));
    }
    let complex = Arc::new(CochainComplex::new(total.coeff(), total.min_degree(), ranks, diffs)?);
    let maps =
        degs.iter().enumerate().map(|(i, &k)| RationalMatrix::identity(total.rank(k)).select_rows(&kept[i])).collect();
    let projection = ChainMap::new(total.clone(), complex.clone(), total.min_degree(), maps)?;
    Ok(Truncation { level, complex, projection, kept })
}
