//! Covers by subcomplexes, their nerves, and the acyclicity check.

use super::simplicial::{faces_of, Simplex, SimplicialComplex};
use crate::complex::{cohomology, Coeff};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug)]
pub struct Cover {
    pub members: Vec<SimplicialComplex>,
    pub nerve: SimplicialComplex,
    /// `intersections[p][i]`: common part of the members in nerve simplex `nerve.simplices(p)[i]`.
    pub intersections: Vec<Vec<SimplicialComplex>>,
    /// Same indexing; whether the intersection has the cohomology of a point.
    pub acyclic: Vec<Vec<bool>>,
}

/// A nerve simplex whose intersection is not acyclic.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverDefect {
    pub indices: Simplex,
    /// Reduced integer cohomology, one descriptor per degree.
    pub reduced: Vec<String>,
}

impl fmt::Display for CoverDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "intersection of members {:?} has reduced cohomology {}", self.indices, self.reduced.join(", "))
    }
}

impl Cover {
    /// Builds the nerve and checks every intersection. Errors only if the
    /// members fail to cover `base`.
    pub fn new(base: &SimplicialComplex, members: Vec<SimplicialComplex>) -> crate::Result<Cover> {
        for s in base.all_simplices() {
            if !members.iter().any(|m| m.contains(s)) {
                return Err(crate::Error::input(format!("simplex {s:?} is not covered")));
            }
        }
        let mut nerve_sets: BTreeSet<Simplex> = BTreeSet::new();
        for v in 0..base.n_vertices() {
            let owners: Vec<usize> = (0..members.len()).filter(|&i| members[i].contains(&[v])).collect();
            if owners.is_empty() {
                continue;
            }
            for f in faces_of(&owners) {
                nerve_sets.insert(f);
            }
        }
        let maximal: Vec<Simplex> = nerve_sets.into_iter().collect();
        let nerve = SimplicialComplex::from_maximal(members.len(), &maximal)?;
        let mut intersections = Vec::new();
        let mut acyclic = Vec::new();
        for p in 0..=nerve.dim().max(-1) as usize {
            let mut row = Vec::new();
            let mut flags = Vec::new();
            for s in nerve.simplices(p) {
                let mut inter = members[s[0]].clone();
                for &j in &s[1..] {
                    inter = inter.intersection(&members[j]);
                }
                flags.push(inter.is_acyclic());
                row.push(inter);
            }
            intersections.push(row);
            acyclic.push(flags);
        }
        Ok(Cover { members, nerve, intersections, acyclic })
    }

    pub fn intersection(&self, p: usize, i: usize) -> &SimplicialComplex {
        &self.intersections[p][i]
    }

    pub fn is_good(&self) -> bool {
        self.acyclic.iter().flatten().all(|&b| b)
    }

    /// First offending intersection, in nerve order.
    pub fn defect(&self) -> Option<CoverDefect> {
        for (p, flags) in self.acyclic.iter().enumerate() {
            for (i, &ok) in flags.iter().enumerate() {
                if !ok {
                    let inter = &self.intersections[p][i];
                    let c = inter.cochain_complex(Coeff::Z);
                    let reduced = c
                        .degrees()
                        .map(|k| {
                            let mut d = cohomology(&c, k).expect("integer").descriptor.clone();
                            if k == 0 && d.free_rank > 0 {
                                d.free_rank -= 1;
                            }
                            format!("H~{k} = {d}")
                        })
                        .collect();
                    return Some(CoverDefect { indices: self.nerve.simplices(p)[i].clone(), reduced });
                }
            }
        }
        None
    }
}

/// Closed vertex stars.
pub fn star_cover(k: &SimplicialComplex) -> Cover {
    let members = (0..k.n_vertices()).map(|v| closed_star(k, v)).collect();
    Cover::new(k, members).expect("stars cover every simplex")
}

pub fn closed_star(k: &SimplicialComplex, v: usize) -> SimplicialComplex {
    let gens: Vec<Simplex> = k.all_simplices().filter(|s| s.contains(&v)).cloned().collect();
    k.subcomplex(gens)
}

/// One member covering everything.
pub fn trivial_cover(k: &SimplicialComplex) -> Cover {
    Cover::new(k, vec![k.clone()]).expect("whole complex covers itself")
}

/// Closed stars, in the barycentric subdivision, of the original vertices.
///
/// Members meet exactly along simplices of `k`, each common part is a cone on
/// the corresponding barycenter, so the cover is good and its nerve is `k`.
/// Returns the subdivision together with the cover.
pub fn dual_block_cover(k: &SimplicialComplex) -> (SimplicialComplex, Vec<Simplex>, Cover) {
    let (sd, verts) = k.barycentric_subdivision();
    let members = (0..k.n_vertices()).map(|v| closed_star(&sd, sd_vertex(&verts, &[v]))).collect();
    let cover = Cover::new(&sd, members).expect("stars cover every simplex");
    (sd, verts, cover)
}

/// Index of the barycenter of `s` among the subdivision vertices.
pub fn sd_vertex(verts: &[Simplex], s: &[usize]) -> usize {
    verts.iter().position(|t| t.as_slice() == s).expect("simplex of the original complex")
}
