//! Raw spark complexes.
//!
//! ```text
//! spc v1
//! complex F q          # then E q, I z
//! rank 0 3             # optional, for degrees without a differential
//! deg 0 rows 2 cols 3  # differential out of degree 0, followed by its rows
//! 1 -1 0
//! 0 1 -1
//! map iota             # then psi
//! deg 0 rows 3 cols 3
//! ...
//! ```
//! Missing complexes are zero; missing map blocks are zero matrices. Blocks
//! with no rows or no columns have no row lines.

use super::{expect_header, join, lines, num, rats};
use crate::complex::{ChainMap, CochainComplex, Coeff};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::spark::SparkComplex;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct RawSparkComplex {
    pub f: Arc<CochainComplex>,
    pub e: Arc<CochainComplex>,
    pub i: Arc<CochainComplex>,
    pub iota: ChainMap,
    pub psi: ChainMap,
}

impl RawSparkComplex {
    /// The triple without the axiom checks, for reporting failures.
    pub fn unchecked(&self) -> Result<SparkComplex> {
        SparkComplex::unchecked(self.iota.clone(), self.psi.clone())
    }

    pub fn checked(&self) -> Result<SparkComplex> {
        SparkComplex::new(self.iota.clone(), self.psi.clone())
    }
}

#[derive(Default)]
struct ComplexData {
    coeff: Option<Coeff>,
    ranks: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, RationalMatrix>,
}

impl ComplexData {
    fn set_rank(&mut self, line: usize, k: i32, n: usize) -> Result<()> {
        match self.ranks.insert(k, n) {
            Some(m) if m != n => Err(Error::parse(line, format!("degree {k} has rank {m} elsewhere, {n} here"))),
            _ => Ok(()),
        }
    }

    /// Absent sections are zero complexes over `default`.
    fn build(self, default: Coeff) -> Result<Arc<CochainComplex>> {
        let coeff = self.coeff.unwrap_or(default);
        let (Some(&lo), Some(&hi)) = (self.ranks.keys().next(), self.ranks.keys().next_back()) else {
            return Ok(Arc::new(CochainComplex::zero(coeff)));
        };
        let ranks: Vec<usize> = (lo..=hi).map(|k| self.ranks.get(&k).copied().unwrap_or(0)).collect();
        let diffs = (lo..hi)
            .map(|k| {
                self.diffs
                    .get(&k)
                    .cloned()
                    .unwrap_or_else(|| RationalMatrix::zeros(ranks[(k + 1 - lo) as usize], ranks[(k - lo) as usize]))
            })
            .collect();
        Ok(Arc::new(CochainComplex::new(coeff, lo, ranks, diffs)?))
    }
}

enum Target {
    None,
    Complex(usize),
    Map(usize),
}

pub fn parse_spc(text: &str) -> Result<RawSparkComplex> {
    let mut it = lines(text).peekable();
    let mut complexes: [ComplexData; 3] = Default::default();
    let mut maps: [BTreeMap<i32, RationalMatrix>; 2] = Default::default();
    if expect_header(&mut it, "spc")?.is_some() {
        let mut target = Target::None;
        while let Some((line, toks)) = it.next() {
            match toks[0] {
                "complex" => {
                    if toks.len() != 3 {
                        return Err(Error::parse(line, "expected `complex F|E|I z|q`"));
                    }
                    let idx = match toks[1] {
                        "F" => 0,
                        "E" => 1,
                        "I" => 2,
                        other => return Err(Error::parse(line, format!("unknown complex `{other}`"))),
                    };
                    complexes[idx].coeff = Some(match toks[2] {
                        "z" => Coeff::Z,
                        "q" => Coeff::Q,
                        other => return Err(Error::parse(line, format!("unknown coefficients `{other}`"))),
                    });
                    target = Target::Complex(idx);
                }
                "map" => {
                    target = Target::Map(match toks.get(1).copied() {
                        Some("iota") if toks.len() == 2 => 0,
                        Some("psi") if toks.len() == 2 => 1,
                        _ => return Err(Error::parse(line, "expected `map iota` or `map psi`")),
                    });
                }
                "rank" => {
                    let Target::Complex(idx) = target else {
                        return Err(Error::parse(line, "`rank` outside a complex section"));
                    };
                    if toks.len() != 3 {
                        return Err(Error::parse(line, "expected `rank k n`"));
                    }
                    complexes[idx].set_rank(line, num(line, toks[1], "degree")?, num(line, toks[2], "rank")?)?;
                }
                "deg" => {
                    if toks.len() != 6 || toks[2] != "rows" || toks[4] != "cols" {
                        return Err(Error::parse(line, "expected `deg k rows R cols C`"));
                    }
                    let k: i32 = num(line, toks[1], "degree")?;
                    let rows: usize = num(line, toks[3], "row count")?;
                    let cols: usize = num(line, toks[5], "column count")?;
                    let mut m = RationalMatrix::zeros(rows, cols);
                    if cols > 0 {
                        for i in 0..rows {
                            let (rl, rt) = it.next().ok_or_else(|| {
                                Error::parse(line, format!("block `deg {k}` ends after {i} of {rows} rows"))
                            })?;
                            if rt.len() != cols {
                                return Err(Error::parse(
                                    rl,
                                    format!("block `deg {k}` row has {} entries, expected {cols}", rt.len()),
                                ));
                            }
                            for (j, v) in rats(rl, &rt)?.into_iter().enumerate() {
                                m.set(i, j, v);
                            }
                        }
                    }
                    match target {
                        Target::Complex(idx) => {
                            let c = &mut complexes[idx];
                            c.set_rank(line, k, cols)?;
                            c.set_rank(line, k + 1, rows)?;
                            c.diffs.insert(k, m);
                        }
                        Target::Map(idx) => {
                            maps[idx].insert(k, m);
                        }
                        Target::None => return Err(Error::parse(line, "`deg` block outside a section")),
                    }
                }
                other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
            }
        }
    }
    let [f, e, i] = complexes;
    let (f, e, i) = (f.build(Coeff::Q)?, e.build(Coeff::Q)?, i.build(Coeff::Z)?);
    let [iota_m, psi_m] = maps;
    let iota = map_from(e.clone(), f.clone(), iota_m, "iota")?;
    let psi = map_from(i.clone(), f.clone(), psi_m, "psi")?;
    Ok(RawSparkComplex { f, e, i, iota, psi })
}

fn map_from(
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
    mut blocks: BTreeMap<i32, RationalMatrix>,
    name: &str,
) -> Result<ChainMap> {
    for (k, m) in &blocks {
        if m.shape() != (target.rank(*k), source.rank(*k)) {
            return Err(Error::input(format!(
                "map {name} in degree {k} has shape {:?}, expected {:?}",
                m.shape(),
                (target.rank(*k), source.rank(*k))
            )));
        }
    }
    ChainMap::from_fn(source.clone(), target.clone(), |k| {
        blocks.remove(&k).unwrap_or_else(|| RationalMatrix::zeros(target.rank(k), source.rank(k)))
    })
}

pub fn write_spc(sc: &SparkComplex) -> String {
    let mut out = String::from("spc v1\n");
    for (name, c) in [("F", sc.f()), ("E", sc.e()), ("I", sc.i())] {
        let coeff = if c.coeff() == Coeff::Z { "z" } else { "q" };
        out.push_str(&format!("complex {name} {coeff}\n"));
        for k in c.degrees() {
            if c.rank(k) > 0 {
                out.push_str(&format!("rank {k} {}\n", c.rank(k)));
            }
        }
        for k in c.degrees() {
            if k < c.max_degree() && !c.d(k).is_zero() {
                write_block(&mut out, k, c.d(k));
            }
        }
    }
    for (name, m) in [("iota", sc.iota()), ("psi", sc.psi())] {
        out.push_str(&format!("map {name}\n"));
        for k in m.source().degrees() {
            let f = m.f(k);
            if !f.is_zero() {
                write_block(&mut out, k, &f);
            }
        }
    }
    out
}

fn write_block(out: &mut String, k: i32, m: &RationalMatrix) {
    out.push_str(&format!("deg {k} rows {} cols {}\n", m.rows(), m.cols()));
    if m.cols() > 0 {
        for i in 0..m.rows() {
            out.push_str(&join(m.row(i)));
            out.push('\n');
        }
    }
}
