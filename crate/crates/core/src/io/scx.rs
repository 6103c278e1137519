use super::{expect_header, lines, num};
use crate::cech::simplicial::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// `scx v1`, `vertices N`, then one `simplex i j …` line per maximal simplex.
pub fn parse_scx(text: &str) -> Result<SimplicialComplex> {
    let mut it = lines(text);
    expect_header(&mut it, "scx")?.ok_or_else(|| Error::parse(1, "empty file"))?;
    let (n_line, toks) = it.next().ok_or_else(|| Error::parse(2, "missing `vertices N`"))?;
    if toks.len() != 2 || toks[0] != "vertices" {
        return Err(Error::parse(n_line, "expected `vertices N`"));
    }
    let n: usize = num(n_line, toks[1], "vertex count")?;
    let mut seen = BTreeSet::new();
    let mut simplices: Vec<Simplex> = Vec::new();
    for (line, toks) in it {
        if toks[0] != "simplex" {
            return Err(Error::parse(line, format!("unexpected `{}`", toks[0])));
        }
        if toks.len() < 2 {
            return Err(Error::parse(line, "simplex needs at least one vertex"));
        }
        let s: Vec<usize> = toks[1..].iter().map(|t| num(line, t, "vertex")).collect::<Result<_>>()?;
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(line, "vertex indices must be strictly increasing"));
        }
        if s.iter().any(|&v| v >= n) {
            return Err(Error::parse(line, format!("vertex index out of range (vertices {n})")));
        }
        if !seen.insert(s.clone()) {
            return Err(Error::parse(line, "duplicate simplex"));
        }
        simplices.push(s);
    }
    SimplicialComplex::from_maximal(n, &simplices)
}

/// Canonical form: maximal simplices in lexicographic order.
pub fn write_scx(k: &SimplicialComplex) -> String {
    let mut out = format!("scx v1\nvertices {}\n", k.n_vertices());
    let mut max = k.maximal_simplices();
    max.sort();
    for s in max {
        if s.len() == 1 {
            continue;
        }
        out.push_str("simplex");
        for v in s {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}
