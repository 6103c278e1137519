//! Pullback of sparks along simplicial maps.
//!
//! A map `f: K' → K` together with an index map `φ` on covers, with
//! `f(U'_α) ⊆ U_{φ(α)}`, pulls back every bidegree: the cochain on `U_β` is
//! restricted along `f` to `U'_α` for `β = φ(α)`, with the alternating sign of
//! the sorted index tuple and zero on degenerate ones.

use super::cover::{sd_vertex, Cover};
use super::model::CechModel;
use super::simplicial::{pullback_between, sort_sign, SimplicialComplex, SimplicialMap};
use crate::complex::ChainMap;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::spark::Spark;
use std::sync::Arc;

pub struct SparkPullback {
    /// Model over `K'`.
    pub source: Arc<CechModel>,
    /// Model over `K`.
    pub target: Arc<CechModel>,
    pub map: SimplicialMap,
    pub index_map: Vec<usize>,
    /// `F_K → F_{K'}`, `E_K → E_{K'}`, `I_K → I_{K'}`.
    pub on_f: ChainMap,
    pub on_e: ChainMap,
    pub on_i: ChainMap,
}

impl std::fmt::Debug for SparkPullback {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparkPullback({:?})", self.map.vertex_map)
    }
}

/// First member of `cover` containing the image of each member of `source_cover`.
pub fn compatible_index_map(source_cover: &Cover, cover: &Cover, map: &SimplicialMap) -> Result<Vec<usize>> {
    source_cover
        .members
        .iter()
        .enumerate()
        .map(|(a, m)| {
            cover
                .members
                .iter()
                .position(|u| m.all_simplices().all(|s| u.contains(&map.image(s))))
                .ok_or_else(|| Error::input(format!("cover member {a} maps into no member of the target cover")))
        })
        .collect()
}

/// `sd(f)`: barycenter of `σ` to the barycenter of `f(σ)`.
pub fn subdivided_map(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    map: &SimplicialMap,
) -> Result<(SimplicialComplex, SimplicialComplex, SimplicialMap)> {
    let (sd_s, vs) = source.barycentric_subdivision();
    let (sd_t, vt) = target.barycentric_subdivision();
    let vm = vs.iter().map(|s| sd_vertex(&vt, &map.image(s))).collect();
    let m = SimplicialMap::new(&sd_s, &sd_t, vm)?;
    Ok((sd_s, sd_t, m))
}

impl SparkPullback {
    /// `map` goes from `source.base` to `target.base`; `index_map` defaults to
    /// [`compatible_index_map`].
    pub fn new(
        source: Arc<CechModel>,
        target: Arc<CechModel>,
        map: SimplicialMap,
        index_map: Option<Vec<usize>>,
    ) -> Result<SparkPullback> {
        let map = SimplicialMap::new(&source.base, &target.base, map.vertex_map)?;
        let (sc, tc) = (&source.cover, &target.cover);
        let index_map = match index_map {
            Some(phi) => {
                if phi.len() != sc.members.len() || phi.iter().any(|&b| b >= tc.members.len()) {
                    return Err(Error::input("index map does not match the covers"));
                }
                for (a, &b) in phi.iter().enumerate() {
                    if !sc.members[a].all_simplices().all(|s| tc.members[b].contains(&map.image(s))) {
                        return Err(Error::input(format!("cover member {a} does not map into member {b}")));
                    }
                }
                phi
            }
            None => compatible_index_map(sc, tc, &map)?,
        };
        let vm = &map.vertex_map;
        let on_e = ChainMap::from_fn(target.spark.e().clone(), source.spark.e().clone(), |q| {
            if q < 0 {
                return RationalMatrix::zeros(source.spark.e().rank(q), target.spark.e().rank(q));
            }
            pullback_between(&source.base, &target.base, vm, q as usize)
        })?;
        let on_i = ChainMap::from_fn(target.spark.i().clone(), source.spark.i().clone(), |p| {
            if p < 0 {
                return RationalMatrix::zeros(source.spark.i().rank(p), target.spark.i().rank(p));
            }
            pullback_between(&sc.nerve, &tc.nerve, &index_map, p as usize)
        })?;
        let on_f = ChainMap::from_fn(target.f().clone(), source.f().clone(), |k| {
            let mut m = RationalMatrix::zeros(source.f().rank(k), target.f().rank(k));
            for sb in source.layout.blocks(k) {
                let Some(tb) = target.layout.block(k, sb.p) else { continue };
                let (p, q) = (sb.p, sb.q);
                for (ai, alpha) in sc.nerve.simplices(p).iter().enumerate() {
                    let img: Vec<usize> = alpha.iter().map(|&a| index_map[a]).collect();
                    let Some(sign) = sort_sign(&img) else { continue };
                    let mut beta = img;
                    beta.sort_unstable();
                    let bi = tc.nerve.index_of(&beta).expect("image of a nerve simplex");
                    let ua = sc.intersection(p, ai);
                    let ub = tc.intersection(p, bi);
                    if ua.count(q) == 0 || ub.count(q) == 0 {
                        continue;
                    }
                    let mut block = pullback_between(ua, ub, vm, q);
                    if sign < 0 {
                        block = block.neg_mat();
                    }
                    m.set_block(
                        sb.offset + source.offsets().at(p, q, ai),
                        tb.offset + target.offsets().at(p, q, bi),
                        &block,
                    );
                }
            }
            m
        })?;
        let pb = SparkPullback { source, target, map, index_map, on_f, on_e, on_i };
        pb.check_squares()?;
        Ok(pb)
    }

    fn check_squares(&self) -> Result<()> {
        let (s, t) = (&self.source.spark, &self.target.spark);
        for k in t.f().degrees() {
            if self.on_f.f(k).mul_mat(&t.iota().f(k)) != s.iota().f(k).mul_mat(&self.on_e.f(k)) {
                return Err(Error::violation("pullback", format!("does not commute with iota in degree {k}")));
            }
            if self.on_f.f(k).mul_mat(&t.psi().f(k)) != s.psi().f(k).mul_mat(&self.on_i.f(k)) {
                return Err(Error::violation("pullback", format!("does not commute with Psi in degree {k}")));
            }
        }
        Ok(())
    }

    pub fn pull(&self, x: &Spark) -> Result<Spark> {
        let k = x.degree;
        if !self.target.spark.is_valid(x) {
            return Err(Error::input("spark is not valid over the target"));
        }
        let a = self.on_f.apply(k, &x.a);
        let r =
            crate::linalg::matrix::rat_to_int_vec(&self.on_i.apply(k + 1, &crate::linalg::matrix::to_rat_vec(&x.r)))
                .expect("integral pullback");
        let out = self.source.spark.make_spark(k, a, r)?;
        if out.e != self.on_e.apply(k + 1, &x.e) {
            return Err(Error::violation("pullback", "curvature is not the pulled-back curvature"));
        }
        Ok(out)
    }
}
