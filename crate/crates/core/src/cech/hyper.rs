//! The hyperspark enlargement: `I` replaced by the integer total complex.
//!
//! `Ī` is the total complex of the ℤ-coefficient Čech–simplicial double
//! complex. Mapping `Ī` straight into the rational total complex would meet
//! `ι(E)` along column 0, so the form side is enlarged to `F̄ = F ⊕ Q` where
//! `Q = (Ī ⊗ ℚ)/ψ(I ⊗ ℚ)` is acyclic, and `Ψ̄(x) = (x, [x])`.

use super::cover::Cover;
use super::model::{bottom_row_map, cech_double_complex, BlockOffsets, CechModel};
use super::simplicial::SimplicialComplex;
use crate::complex::{ChainMap, CochainComplex, Coeff, TotalLayout};
use crate::error::Result;
use crate::linalg::{Rat, RationalMatrix};
use crate::quasi::SparkQuasiIso;
use crate::spark::SparkComplex;
use std::sync::Arc;

pub struct HyperModel {
    pub edge: Arc<CechModel>,
    pub spark: Arc<SparkComplex>,
    pub quasi: SparkQuasiIso,
    /// The integer total complex `Ī` and its bidegree layout.
    pub i_bar: Arc<CochainComplex>,
    pub layout: TotalLayout,
}

impl std::fmt::Debug for HyperModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HyperModel({:?})", self.spark)
    }
}

impl HyperModel {
    pub fn build(base: &SimplicialComplex, cover: &Cover) -> Result<HyperModel> {
        let edge = Arc::new(CechModel::build(base, cover)?);
        Self::over(edge)
    }

    pub fn over(edge: Arc<CechModel>) -> Result<HyperModel> {
        let cover = &edge.cover;
        let dz = cech_double_complex(&edge.base, cover, Coeff::Z)?;
        let (ibar, layout) = dz.totalize()?;
        let ibar = Arc::new(ibar);
        let offsets = BlockOffsets::new(cover, dz.width(), dz.height());
        let f = edge.f().clone();
        let degs: Vec<i32> = f.degrees().collect();

        // quotient by the locally constant bottom row, in difference coordinates
        let mut pi = Vec::new();
        let mut section = Vec::new();
        for &k in &degs {
            let n = layout.rank(k);
            let mut base_of = vec![None; n];
            let mut dropped = vec![false; n];
            if let Some(b) = layout.block(k, k as usize) {
                for (i, u) in cover.intersections[k as usize].iter().enumerate() {
                    let o = b.offset + offsets.at(k as usize, 0, i);
                    dropped[o] = true;
                    for v in 1..u.count(0) {
                        base_of[o + v] = Some(o);
                    }
                }
            }
            let keep: Vec<usize> = (0..n).filter(|&j| !dropped[j]).collect();
            let mut p = RationalMatrix::zeros(keep.len(), n);
            for (row, &j) in keep.iter().enumerate() {
                p.set(row, j, Rat::one());
                if let Some(o) = base_of[j] {
                    p.set(row, o, -Rat::one());
                }
            }
            pi.push(p);
            section.push(RationalMatrix::identity(n).select_cols(&keep));
        }
        let lo = f.min_degree();
        let q_ranks: Vec<usize> = pi.iter().map(|p| p.rows()).collect();
        let q_diffs: Vec<RationalMatrix> =
            (0..degs.len().saturating_sub(1)).map(|i| pi[i + 1].mul_mat(f.d(degs[i])).mul_mat(&section[i])).collect();

        let fbar_ranks: Vec<usize> = degs.iter().zip(&q_ranks).map(|(&k, &q)| f.rank(k) + q).collect();
        let fbar_diffs: Vec<RationalMatrix> =
            (0..degs.len().saturating_sub(1)).map(|i| f.d(degs[i]).block_diag(&q_diffs[i])).collect();
        let fbar = Arc::new(CochainComplex::new(Coeff::Q, lo, fbar_ranks, fbar_diffs)?);

        let inclusion = ChainMap::from_fn(f.clone(), fbar.clone(), |k| {
            let nf = f.rank(k);
            RationalMatrix::identity(nf).vstack(&RationalMatrix::zeros(fbar.rank(k) - nf, nf))
        })?;
        let iota_bar = edge.spark.iota().then(&inclusion)?;
        let psi_bar = ChainMap::from_fn(ibar.clone(), fbar.clone(), |k| match degs.iter().position(|&d| d == k) {
            Some(i) => RationalMatrix::identity(layout.rank(k)).vstack(&pi[i]),
            None => RationalMatrix::zeros(fbar.rank(k), ibar.rank(k)),
        })?;
        let psi = ChainMap::from_fn(edge.spark.i().clone(), ibar.clone(), |k| {
            bottom_row_map(cover, &layout, &offsets, k, ibar.rank(k))
        })?;
        let spark = Arc::new(SparkComplex::new(iota_bar, psi_bar)?);
        let quasi = SparkQuasiIso::validate(edge.spark.clone(), spark.clone(), psi, inclusion)?;
        Ok(HyperModel { edge, spark, quasi, i_bar: ibar, layout })
    }
}
