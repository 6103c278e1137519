//! The Čech–simplicial double complex and the edge spark complex.

use super::cover::Cover;
use super::simplicial::SimplicialComplex;
use crate::complex::{ChainMap, CochainComplex, Coeff, DoubleComplex, TotalLayout};
use crate::error::{Error, Result};
use crate::linalg::{Rat, RationalMatrix};
use crate::spark::SparkComplex;
use std::sync::Arc;

/// Bidegree `(p, q)` is `⊕_α C^q(U_α)` over nerve `p`-simplices `α`;
/// `δ` is the alternating Čech restriction, `d` the simplicial coboundary.
pub fn cech_double_complex(base: &SimplicialComplex, cover: &Cover, coeff: Coeff) -> Result<DoubleComplex> {
    let _ = base;
    let width = (cover.nerve.dim() + 1).max(0) as usize;
    let height = cover.intersections.iter().flatten().map(|u| (u.dim() + 1).max(0) as usize).max().unwrap_or(0);
    let offsets = BlockOffsets::new(cover, width, height);
    let ranks: Vec<Vec<usize>> = (0..width).map(|p| (0..height).map(|q| offsets.total(p, q)).collect()).collect();
    let mut delta = Vec::with_capacity(width);
    let mut d = Vec::with_capacity(width);
    for p in 0..width {
        let mut dcol = Vec::with_capacity(height);
        let mut vcol = Vec::with_capacity(height);
        for q in 0..height {
            let mut h = RationalMatrix::zeros(offsets.total(p + 1, q), offsets.total(p, q));
            if p + 1 < width {
                for (bi, beta) in cover.nerve.simplices(p + 1).iter().enumerate() {
                    let ub = cover.intersection(p + 1, bi);
                    for j in 0..beta.len() {
                        let mut alpha = beta.clone();
                        alpha.remove(j);
                        let ai = cover.nerve.index_of(&alpha).expect("nerve is closed");
                        let ua = cover.intersection(p, ai);
                        let mut res = ua.restriction(ub, q);
                        if j % 2 == 1 {
                            res = res.neg_mat();
                        }
                        h.set_block(offsets.at(p + 1, q, bi), offsets.at(p, q, ai), &res);
                    }
                }
            }
            dcol.push(h);
            let mut v = RationalMatrix::zeros(offsets.total(p, q + 1), offsets.total(p, q));
            for (ai, _) in cover.nerve.simplices(p).iter().enumerate() {
                let ua = cover.intersection(p, ai);
                if ua.count(q) > 0 && ua.count(q + 1) > 0 {
                    v.set_block(offsets.at(p, q + 1, ai), offsets.at(p, q, ai), &ua.coboundary(q));
                }
            }
            vcol.push(v);
        }
        delta.push(dcol);
        d.push(vcol);
    }
    DoubleComplex::new(coeff, ranks, delta, d)
}

/// Offsets of each nerve simplex's block inside bidegree `(p, q)`.
pub(crate) struct BlockOffsets {
    offsets: Vec<Vec<Vec<usize>>>,
}

impl BlockOffsets {
    pub(crate) fn new(cover: &Cover, width: usize, height: usize) -> Self {
        let offsets = (0..width)
            .map(|p| {
                (0..=height)
                    .map(|q| {
                        let mut acc = 0;
                        let mut v = Vec::new();
                        for u in &cover.intersections[p] {
                            v.push(acc);
                            acc += u.count(q);
                        }
                        v.push(acc);
                        v
                    })
                    .collect()
            })
            .collect();
        BlockOffsets { offsets }
    }

    pub(crate) fn at(&self, p: usize, q: usize, i: usize) -> usize {
        self.offsets[p][q][i]
    }

    pub(crate) fn total(&self, p: usize, q: usize) -> usize {
        self.offsets.get(p).and_then(|c| c.get(q)).map_or(0, |v| *v.last().unwrap())
    }
}

/// The edge spark complex of a good cover: `F` = total ℚ complex, `E` = global
/// cochains in column 0, `I` = integer Čech cochains of the nerve in row 0.
pub struct CechModel {
    pub base: SimplicialComplex,
    pub cover: Cover,
    pub double: DoubleComplex,
    pub layout: TotalLayout,
    pub spark: Arc<SparkComplex>,
    offsets: BlockOffsets,
}

impl std::fmt::Debug for CechModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CechModel({:?})", self.spark)
    }
}

impl CechModel {
    pub fn build(base: &SimplicialComplex, cover: &Cover) -> Result<CechModel> {
        if let Some(defect) = cover.defect() {
            return Err(Error::violation("cover not good", defect.to_string()));
        }
        Self::build_unchecked_cover(base, cover)
    }

    /// Skips the cover check (the spark axioms are still verified).
    pub fn build_unchecked_cover(base: &SimplicialComplex, cover: &Cover) -> Result<CechModel> {
        let (iota, psi, double, layout, offsets) = Self::maps(base, cover)?;
        let spark = Arc::new(SparkComplex::new(iota, psi)?);
        Ok(CechModel { base: base.clone(), cover: cover.clone(), double, layout, spark, offsets })
    }

    #[allow(clippy::type_complexity)]
    pub(crate) fn maps(
        base: &SimplicialComplex,
        cover: &Cover,
    ) -> Result<(ChainMap, ChainMap, DoubleComplex, TotalLayout, BlockOffsets)> {
        let double = cech_double_complex(base, cover, Coeff::Q)?;
        let (total, layout) = double.totalize()?;
        let f = Arc::new(total);
        let e = Arc::new(base.cochain_complex(Coeff::Q));
        let i = Arc::new(cover.nerve.cochain_complex(Coeff::Z));
        let offsets = BlockOffsets::new(cover, double.width(), double.height());
        let iota =
            ChainMap::from_fn(e.clone(), f.clone(), |k| column_zero_map(base, cover, &layout, &offsets, k, f.rank(k)))?;
        let psi = ChainMap::from_fn(i.clone(), f.clone(), |k| bottom_row_map(cover, &layout, &offsets, k, f.rank(k)))?;
        Ok((iota, psi, double, layout, offsets))
    }

    pub fn f(&self) -> &Arc<CochainComplex> {
        self.spark.f()
    }

    pub(crate) fn offsets(&self) -> &BlockOffsets {
        &self.offsets
    }

    /// Total cochain with the given `(p, k−p)` block for nerve simplex index `i`.
    pub fn embed_block(&self, k: i32, p: usize, i: usize, y: &[Rat]) -> Vec<Rat> {
        let q = (k as usize) - p;
        let mut comp = vec![Rat::zero(); self.offsets.total(p, q)];
        let o = self.offsets.at(p, q, i);
        comp[o..o + y.len()].clone_from_slice(y);
        self.layout.embed(k, p, &comp)
    }

    /// The `(p, k−p)` block of nerve simplex `i` in a total cochain.
    pub fn block_of(&self, k: i32, p: usize, i: usize, x: &[Rat]) -> Vec<Rat> {
        let q = (k as usize) - p;
        let comp = self.layout.component(k, p, x);
        if comp.is_empty() {
            return Vec::new();
        }
        let o = self.offsets.at(p, q, i);
        let n = self.cover.intersection(p, i).count(q);
        comp[o..o + n].to_vec()
    }
}

/// `ι_k`: global `k`-cochains restricted to every member, in bidegree `(0, k)`.
fn column_zero_map(
    base: &SimplicialComplex,
    cover: &Cover,
    layout: &TotalLayout,
    offsets: &BlockOffsets,
    k: i32,
    total_rank: usize,
) -> RationalMatrix {
    let q = k.max(0) as usize;
    let mut m = RationalMatrix::zeros(total_rank, if k < 0 { 0 } else { base.count(q) });
    if k < 0 {
        return m;
    }
    if let Some(b) = layout.block(k, 0) {
        for (i, u) in cover.intersections[0].iter().enumerate() {
            if u.count(q) == 0 {
                continue;
            }
            let r = base.restriction(u, q);
            m.set_block(b.offset + offsets.at(0, q, i), 0, &r);
        }
    }
    m
}

/// `Ψ_k`: an integer Čech `k`-cochain as locally constant functions in `(k, 0)`.
pub(crate) fn bottom_row_map(
    cover: &Cover,
    layout: &TotalLayout,
    offsets: &BlockOffsets,
    k: i32,
    total_rank: usize,
) -> RationalMatrix {
    if k < 0 {
        return RationalMatrix::zeros(total_rank, 0);
    }
    let p = k as usize;
    let mut m = RationalMatrix::zeros(total_rank, cover.nerve.count(p));
    if let Some(b) = layout.block(k, p) {
        for (i, u) in cover.intersections.get(p).into_iter().flatten().enumerate() {
            let o = b.offset + offsets.at(p, 0, i);
            for v in 0..u.count(0) {
                m.set(o + v, i, Rat::one());
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::fixtures::{fixture, octahedron_star, FIXTURE_NAMES};
    use crate::complex::cohomology;

    #[test]
    fn fixtures_build() {
        for name in FIXTURE_NAMES {
            let fx = fixture(name).unwrap();
            let m = CechModel::build(&fx.model_base, &fx.cover).unwrap();
            let base = fx.complex.cochain_complex(Coeff::Z);
            for k in base.degrees() {
                let a = cohomology(&base, k).unwrap().descriptor.to_string();
                assert_eq!(cohomology(m.spark.i(), k).unwrap().descriptor.to_string(), a, "{name} H^{k}");
            }
        }
    }

    #[test]
    fn octahedron_refused() {
        let (k, c) = octahedron_star();
        let err = CechModel::build(&k, &c).unwrap_err();
        assert!(err.to_string().contains("cover not good"), "{err}");
    }
}
