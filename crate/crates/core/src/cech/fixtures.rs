//! Built-in triangulations and the covers the models use on them.

use super::cover::{dual_block_cover, star_cover, Cover};
use super::model::CechModel;
use super::simplicial::{Simplex, SimplicialComplex};
use crate::complex::{ChainMap, CochainComplex, Coeff};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::spark::SparkComplex;
use std::sync::Arc;

pub const FIXTURE_NAMES: [&str; 8] = ["point", "circle3", "circle6", "circle12", "sphere", "torus", "rp2", "klein"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    /// Closed vertex stars of the complex itself.
    Star,
    /// Closed stars of the original vertices in the barycentric subdivision.
    DualBlock,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    /// The triangulation as stored (what `.scx` dumps contain).
    pub complex: SimplicialComplex,
    /// The complex the cover lives on; the subdivision for dual-block covers.
    pub model_base: SimplicialComplex,
    pub cover: Cover,
    pub cover_kind: CoverKind,
    pub note: String,
}

pub fn circle(n: usize) -> SimplicialComplex {
    let edges: Vec<Simplex> = (0..n).map(|i| sorted(&[i, (i + 1) % n])).collect();
    SimplicialComplex::from_maximal(n, &edges).expect("cycle")
}

pub fn point() -> SimplicialComplex {
    SimplicialComplex::from_maximal(1, &[]).expect("point")
}

/// Boundary of the cross-polytope; vertices `2i`, `2i+1` are antipodal.
pub fn octahedron() -> SimplicialComplex {
    let mut tris = Vec::new();
    for a in 0..2 {
        for b in 2..4 {
            for c in 4..6 {
                tris.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::from_maximal(6, &tris).expect("octahedron")
}

/// Apexes 0 and 11, upper ring 1..=5, lower ring 6..=10.
pub fn icosahedron() -> SimplicialComplex {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut tris = Vec::new();
    for i in 0..5 {
        tris.push(sorted(&[0, u(i), u(i + 1)]));
        tris.push(sorted(&[u(i), u(i + 1), l(i)]));
        tris.push(sorted(&[u(i + 1), l(i), l(i + 1)]));
        tris.push(sorted(&[11, l(i), l(i + 1)]));
    }
    SimplicialComplex::from_maximal(12, &tris).expect("icosahedron")
}

/// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> SimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..7 {
        tris.push(sorted(&[i, (i + 1) % 7, (i + 3) % 7]));
        tris.push(sorted(&[i, (i + 2) % 7, (i + 3) % 7]));
    }
    SimplicialComplex::from_maximal(7, &tris).expect("torus")
}

/// Six-vertex projective plane (half of the icosahedron).
pub fn rp2() -> SimplicialComplex {
    let raw =
        [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]];
    let tris: Vec<Simplex> = raw.iter().map(|t| sorted(&[t[0] - 1, t[1] - 1, t[2] - 1])).collect();
    SimplicialComplex::from_maximal(6, &tris).expect("rp2")
}

/// Quotient of a 4×4 grid of squares: `(x, 0) ~ (x, 4)` and `(0, y) ~ (4, 4 − y)`.
pub fn klein() -> SimplicialComplex {
    let n = 4;
    let vertex = |i: usize, j: usize| -> usize {
        if i == n {
            (n - j % n) % n
        } else {
            i * n + j % n
        }
    };
    let mut tris = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (a, b, c, d) = (vertex(i, j), vertex(i + 1, j), vertex(i, j + 1), vertex(i + 1, j + 1));
            tris.push(sorted(&[a, b, d]));
            tris.push(sorted(&[a, c, d]));
        }
    }
    SimplicialComplex::from_maximal(n * n, &tris).expect("klein")
}

fn sorted(s: &[usize]) -> Simplex {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

/// The stored triangulation of a named fixture (including `octahedron` and
/// `icosahedron`, which are not model fixtures on their own).
pub fn fixture_complex(name: &str) -> Result<SimplicialComplex> {
    Ok(match name {
        "point" => point(),
        "circle3" => circle(3),
        "circle6" => circle(6),
        "circle12" => circle(12),
        "sphere" => sphere_choice().0,
        "torus" => torus(),
        "rp2" => rp2(),
        "klein" => klein(),
        "octahedron" => octahedron(),
        "icosahedron" => icosahedron(),
        _ => return Err(Error::input(format!("unknown fixture '{name}'"))),
    })
}

/// Icosahedron when its star cover is good, else the subdivided octahedron.
fn sphere_choice() -> (SimplicialComplex, String) {
    let ico = icosahedron();
    if star_cover(&ico).is_good() {
        (ico, "icosahedron; star cover passes the acyclicity check".into())
    } else {
        let (sd, _) = octahedron().barycentric_subdivision();
        (sd, "barycentric subdivision of the octahedron; icosahedron star cover failed".into())
    }
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let complex = fixture_complex(name)?;
    let name: &'static str = FIXTURE_NAMES
        .iter()
        .chain(["octahedron", "icosahedron"].iter())
        .find(|n| **n == name)
        .copied()
        .expect("known name");
    let (model_base, cover, cover_kind, note) = choose_cover(&complex);
    let note = if name == "sphere" { sphere_choice().1 } else { note };
    Ok(Fixture { name, complex, model_base, cover, cover_kind, note })
}

/// The star cover when it is good, else the dual-block cover on the subdivision.
pub fn choose_cover(complex: &SimplicialComplex) -> (SimplicialComplex, Cover, CoverKind, String) {
    let star = star_cover(complex);
    if star.is_good() {
        return (complex.clone(), star, CoverKind::Star, "star cover".into());
    }
    let (sd, _, cover) = dual_block_cover(complex);
    let note = format!("star cover fails ({}); dual-block cover on the subdivision", star.defect().expect("not good"));
    (sd, cover, CoverKind::DualBlock, note)
}

/// The refused configuration: the octahedron with its raw star cover.
pub fn octahedron_star() -> (SimplicialComplex, Cover) {
    let k = octahedron();
    let c = star_cover(&k);
    (k, c)
}

/// A triple that violates one spark complex axiom on purpose.
pub struct ViolationFixture {
    pub name: &'static str,
    pub spark: SparkComplex,
    /// The axiom label expected from `check_axioms`.
    pub axiom: &'static str,
}

/// circle6 with `E` replaced by all of `F`, and circle6 with a duplicate
/// degree-0 index in `I` that `Ψ` sends to zero.
pub fn violation_fixtures() -> Result<Vec<ViolationFixture>> {
    let fx = fixture("circle6")?;
    let m = CechModel::build(&fx.model_base, &fx.cover)?;
    let sc = &m.spark;
    let f = sc.f().clone();
    let all_of_f = SparkComplex::unchecked(ChainMap::identity(f.clone()), sc.psi().clone())?;

    let i = sc.i();
    let lo = i.min_degree();
    let ranks: Vec<usize> = i.degrees().map(|k| i.rank(k) + usize::from(k == 0)).collect();
    let diffs: Vec<RationalMatrix> = i
        .degrees()
        .filter(|&k| k < i.max_degree())
        .map(|k| {
            let d = i.d(k).clone();
            if k == 0 {
                d.hstack(&RationalMatrix::zeros(d.rows(), 1))
            } else {
                d
            }
        })
        .collect();
    let dup = Arc::new(CochainComplex::new(Coeff::Z, lo, ranks, diffs)?);
    let psi = ChainMap::from_fn(dup.clone(), f.clone(), |k| {
        let p = sc.psi().f(k).into_owned();
        if k == 0 {
            p.hstack(&RationalMatrix::zeros(p.rows(), 1))
        } else {
            p
        }
    })?;
    let duplicate = SparkComplex::unchecked(sc.iota().clone(), psi)?;
    Ok(vec![
        ViolationFixture { name: "circle6, E = F", spark: all_of_f, axiom: "axiom (i)" },
        ViolationFixture { name: "circle6, duplicate index", spark: duplicate, axiom: "axiom (iii)" },
    ])
}
