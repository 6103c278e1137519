//! Finite abstract simplicial complexes and their cochains.

use crate::complex::{cohomology, CochainComplex, Coeff};
use crate::error::{Error, Result};
use crate::linalg::{Rat, RationalMatrix};
use std::collections::{BTreeSet, HashMap};

pub type Simplex = Vec<usize>;

/// Simplices are strictly increasing vertex lists, stored per dimension in
/// lexicographic order; `simplices[q][i]` is the `i`-th `q`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Face closure of the given simplices. Vertices not in any simplex are
    /// still part of the complex.
    pub fn from_maximal(n_vertices: usize, maximal: &[Simplex]) -> Result<Self> {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        let add = |sets: &mut Vec<BTreeSet<Simplex>>, s: Simplex| {
            let q = s.len() - 1;
            while sets.len() <= q {
                sets.push(BTreeSet::new());
            }
            sets[q].insert(s);
        };
        for v in 0..n_vertices {
            add(&mut sets, vec![v]);
        }
        for s in maximal {
            if s.is_empty() {
                return Err(Error::input("empty simplex"));
            }
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::input(format!("simplex {s:?} is not strictly increasing")));
            }
            if *s.last().unwrap() >= n_vertices {
                return Err(Error::input(format!("simplex {s:?} uses a vertex >= {n_vertices}")));
            }
            for face in faces_of(s) {
                add(&mut sets, face);
            }
        }
        Ok(Self::from_sets(n_vertices, sets))
    }

    fn from_sets(n_vertices: usize, sets: Vec<BTreeSet<Simplex>>) -> Self {
        let simplices: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        SimplicialComplex { n_vertices, simplices, index }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// `-1` for the empty complex.
    pub fn dim(&self) -> i32 {
        self.simplices.len() as i32 - 1
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices.get(q).map_or(0, |l| l.len())
    }

    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.simplices.get(q).map_or(&[], |l| l.as_slice())
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    /// Simplices not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<Simplex> = BTreeSet::new();
        for s in self.all_simplices() {
            if s.len() > 1 {
                for f in boundary_faces(s) {
                    covered.insert(f);
                }
            }
        }
        self.all_simplices().filter(|s| !covered.contains(*s)).cloned().collect()
    }

    /// Coboundary `C^q → C^{q+1}`: `(dx)(σ) = Σ_i (−1)^i x(∂_i σ)`.
    pub fn coboundary(&self, q: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.count(q + 1), self.count(q));
        for (row, s) in self.simplices(q + 1).iter().enumerate() {
            for (i, f) in boundary_faces(s).into_iter().enumerate() {
                let col = self.index_of(&f).expect("face closure");
                let v = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                m.set(row, col, v);
            }
        }
        m
    }

    pub fn cochain_complex(&self, coeff: Coeff) -> CochainComplex {
        if self.simplices.is_empty() {
            return CochainComplex::zero(coeff);
        }
        let top = self.simplices.len();
        let ranks = (0..top).map(|q| self.count(q)).collect();
        let diffs = (0..top - 1).map(|q| self.coboundary(q)).collect();
        CochainComplex::new(coeff, 0, ranks, diffs).expect("coboundary squares to zero")
    }

    /// Subcomplex spanned by the given simplices (closed under faces).
    pub fn subcomplex(&self, generators: impl IntoIterator<Item = Simplex>) -> SimplicialComplex {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in generators {
            for f in faces_of(&s) {
                let q = f.len() - 1;
                while sets.len() <= q {
                    sets.push(BTreeSet::new());
                }
                sets[q].insert(f);
            }
        }
        Self::from_sets(self.n_vertices, sets)
    }

    /// Common simplices of two complexes on the same vertex set.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let gens: Vec<Simplex> = self.all_simplices().filter(|s| other.contains(s)).cloned().collect();
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in gens {
            let q = s.len() - 1;
            while sets.len() <= q {
                sets.push(BTreeSet::new());
            }
            sets[q].insert(s);
        }
        Self::from_sets(self.n_vertices, sets)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Reduced integer cohomology vanishes (nonempty and acyclic).
    pub fn is_acyclic(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let c = self.cochain_complex(Coeff::Z);
        c.degrees().all(|k| {
            let d = &cohomology(&c, k).expect("integer").descriptor;
            if k == 0 {
                d.free_rank == 1 && d.torsion.is_empty()
            } else {
                d.is_trivial()
            }
        })
    }

    /// Restriction of cochains of `self` to a subcomplex `sub` in degree `q`.
    pub fn restriction(&self, sub: &SimplicialComplex, q: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(sub.count(q), self.count(q));
        for (i, s) in sub.simplices(q).iter().enumerate() {
            let j = self.index_of(s).expect("subcomplex");
            m.set(i, j, Rat::one());
        }
        m
    }

    /// First barycentric subdivision. Vertex `i` of the result is the
    /// barycenter of `self.all_simplices().nth(i)` (ordered by dimension,
    /// then lexicographically); flags are increasing chains.
    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, Vec<Simplex>) {
        let verts: Vec<Simplex> = self.all_simplices().cloned().collect();
        let id: HashMap<&Simplex, usize> = verts.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut maximal = Vec::new();
        for top in self.maximal_simplices() {
            for chain in flags(&top) {
                let mut idx: Vec<usize> = chain.iter().map(|s| id[s]).collect();
                idx.sort_unstable();
                maximal.push(idx);
            }
        }
        let sd = SimplicialComplex::from_maximal(verts.len(), &maximal).expect("valid flags");
        (sd, verts)
    }

    /// Vertices connected to `v` by an edge.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.simplices(1)
            .iter()
            .filter_map(|e| {
                if e[0] == v {
                    Some(e[1])
                } else if e[1] == v {
                    Some(e[0])
                } else {
                    None
                }
            })
            .collect()
    }
}

/// All nonempty faces of `s` (including `s`).
pub fn faces_of(s: &[usize]) -> Vec<Simplex> {
    let n = s.len();
    let mut out = Vec::with_capacity((1 << n) - 1);
    for mask in 1u64..(1u64 << n) {
        out.push((0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
    }
    out
}

/// Codimension-one faces, `∂_i s` = `s` without its `i`-th vertex.
pub fn boundary_faces(s: &[usize]) -> Vec<Simplex> {
    (0..s.len()).map(|i| s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect()).collect()
}

/// Maximal flags `{v₀} ⊂ {v₀,v₁} ⊂ … ⊂ s` over all orderings.
fn flags(s: &[usize]) -> Vec<Vec<Simplex>> {
    if s.len() == 1 {
        return vec![vec![s.to_vec()]];
    }
    let mut out = Vec::new();
    for i in 0..s.len() {
        let rest: Simplex = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        for mut chain in flags(&rest) {
            chain.push(s.to_vec());
            out.push(chain);
        }
    }
    out
}

/// A vertex map that sends simplices to simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.n_vertices() {
            return Err(Error::input("vertex map has the wrong length"));
        }
        for s in source.all_simplices() {
            let img = Self::image_set(&vertex_map, s);
            if !target.contains(&img) {
                return Err(Error::input(format!("simplex {s:?} maps to non-simplex {img:?}")));
            }
        }
        Ok(SimplicialMap { vertex_map })
    }

    fn image_set(vm: &[usize], s: &[usize]) -> Simplex {
        let set: BTreeSet<usize> = s.iter().map(|&v| vm[v]).collect();
        set.into_iter().collect()
    }

    pub fn image(&self, s: &[usize]) -> Simplex {
        Self::image_set(&self.vertex_map, s)
    }

    pub fn compose(&self, after: &SimplicialMap) -> SimplicialMap {
        SimplicialMap { vertex_map: self.vertex_map.iter().map(|&v| after.vertex_map[v]).collect() }
    }

    /// Pullback `C^q(target) → C^q(source)` (alternating convention: zero on
    /// degenerate images, the sign of the sorting permutation otherwise).
    pub fn pullback_matrix(&self, source: &SimplicialComplex, target: &SimplicialComplex, q: usize) -> RationalMatrix {
        pullback_between(source, target, &self.vertex_map, q)
    }
}

/// `(f^*x)(σ) = sign · x(f(σ))` for complexes carried by a vertex map.
pub fn pullback_between(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    vm: &[usize],
    q: usize,
) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(source.count(q), target.count(q));
    for (i, s) in source.simplices(q).iter().enumerate() {
        let img: Vec<usize> = s.iter().map(|&v| vm[v]).collect();
        if let Some(sign) = sort_sign(&img) {
            let mut sorted = img.clone();
            sorted.sort_unstable();
            if let Some(j) = target.index_of(&sorted) {
                m.set(i, j, Rat::from(sign));
            }
        }
    }
    m
}

/// Sign of the permutation sorting `v`, or `None` if `v` has repeats.
pub fn sort_sign(v: &[usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return None;
            }
            if v[i] > v[j] {
                sign = -sign;
            }
        }
    }
    Some(sign)
}
