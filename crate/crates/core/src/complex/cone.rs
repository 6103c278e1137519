//! Mapping cones and their cohomology.

use super::cochain::{degree_union, ChainMap, CochainComplex, Coeff};
use super::cohomology::{cohomology, induced_map};
use crate::error::{Error, Result};
use crate::linalg::echelon;
use crate::linalg::{GroupDescriptor, MixedGroupDescriptor, RationalMatrix};

/// `G^k = T^k ⊕ S^{k+1}` with `D(a, r) = (d a + f(r), −d r)` for `f: S → T`.
///
/// A ℤ → ℚ cone is a mixed complex whose trailing `S` block is the lattice part.
pub fn cone(f: &ChainMap) -> Result<CochainComplex> {
    let s = f.source();
    let t = f.target();
    let coeff = match (s.coeff(), t.coeff()) {
        (Coeff::Z, Coeff::Z) => Coeff::Z,
        (Coeff::Q, Coeff::Q) => Coeff::Q,
        (Coeff::Z, Coeff::Q) => Coeff::Mixed,
        (a, b) => return Err(Error::input(format!("cone of a map from {a} to {b} is not supported"))),
    };
    let (lo, hi) = degree_union(s, t);
    if lo > hi {
        return Ok(CochainComplex::zero(coeff));
    }
    let lo = lo - 1;
    let ranks: Vec<usize> = (lo..=hi).map(|k| t.rank(k) + s.rank(k + 1)).collect();
    let mut diffs = Vec::new();
    for k in lo..hi {
        let (t0, t1) = (t.rank(k), t.rank(k + 1));
        let (s1, s2) = (s.rank(k + 1), s.rank(k + 2));
        let mut m = RationalMatrix::zeros(t1 + s2, t0 + s1);
        m.set_block(0, 0, t.d(k));
        m.set_block(0, t0, &f.f(k + 1));
        m.set_block(t1, t0, &s.d(k + 1).neg_mat());
        diffs.push(m);
    }
    let lattice = if coeff == Coeff::Mixed { (lo..=hi).map(|k| s.rank(k + 1)).collect() } else { Vec::new() };
    CochainComplex::with_lattice(coeff, lo, ranks, diffs, lattice)
}

/// Isomorphism type of `H^k(cone f)`.
///
/// For `f: ℤ-complex → ℚ-complex` it is assembled from the split sequence
/// `0 → H^k(T)/f*H^k(S) → H^k(G) → ker(f*: H^{k+1}(S) → H^{k+1}(T)) → 0`.
/// The cokernel is `ℚ^s` modulo a lattice of rank `ρ = rank f*`, giving
/// `(ℚ/ℤ)^ρ ⊕ ℚ^{s−ρ}`; the kernel is finitely generated.
pub fn cone_cohomology(f: &ChainMap, k: i32) -> Result<MixedGroupDescriptor> {
    match (f.source().coeff(), f.target().coeff()) {
        (Coeff::Z, Coeff::Q) => {}
        (Coeff::Z, Coeff::Z) => {
            let g = cone(f)?;
            return Ok(MixedGroupDescriptor { qz_rank: 0, q_rank: 0, fg_part: cohomology(&g, k)?.descriptor.clone() });
        }
        (Coeff::Q, Coeff::Q) => {
            let g = cone(f)?;
            return Ok(MixedGroupDescriptor {
                qz_rank: 0,
                q_rank: cohomology(&g, k)?.descriptor.free_rank,
                fg_part: GroupDescriptor::trivial(),
            });
        }
        (a, b) => return Err(Error::input(format!("cone cohomology needs a Z -> Q map, got {a} -> {b}"))),
    }
    let here = induced_map(f, k)?;
    let rho = echelon::rank(&here.matrix);
    let s = here.matrix.rows();
    let next = induced_map(f, k + 1)?;
    let hs = cohomology(f.source(), k + 1)?;
    let free = hs.free_indices();
    let restricted = next.matrix.select_cols(&free);
    let kernel_free = free.len() - echelon::rank(&restricted);
    let torsion: Vec<_> = hs.orders.iter().filter(|o| !o.is_zero()).cloned().collect();
    let mut fg = GroupDescriptor::from_cyclic_orders(&torsion);
    fg.free_rank = kernel_free;
    Ok(MixedGroupDescriptor { qz_rank: rho, q_rank: s - rho, fg_part: fg })
}

/// Hypercohomology of the two-step complex `S → T`, with `T` placed from
/// degree `shift` on: `H^k = H^{k−shift}(cone f)`.
pub fn two_step_hypercohomology(f: &ChainMap, k: i32, shift: i32) -> Result<MixedGroupDescriptor> {
    cone_cohomology(f, k - shift)
}
