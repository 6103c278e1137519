//! Discrete line bundles.
//!
//! ```text
//! lbd v1
//! g 0 1 1/3 1/3      # g on U_0 ∩ U_1, one value per vertex (increasing order)
//! A 2 0 1/2 0        # A on U_2, one value per edge (lexicographic order)
//! ```
//! Omitted overlaps and members carry zero.

use super::{expect_header, join, lines, num, rats};
use crate::bundle::DiscreteLineBundle;
use crate::cech::CechModel;
use crate::error::{Error, Result};
use crate::linalg::matrix::is_zero_vec;
use std::sync::Arc;

pub fn parse_lbd(text: &str, model: Arc<CechModel>) -> Result<DiscreteLineBundle> {
    let mut it = lines(text);
    expect_header(&mut it, "lbd")?.ok_or_else(|| Error::parse(1, "empty file"))?;
    let cover = &model.cover;
    let offs = model.offsets();
    let mut g = vec![crate::linalg::Rat::zero(); model.double.rank(1, 0)];
    let mut a = vec![crate::linalg::Rat::zero(); model.double.rank(0, 1)];
    for (line, toks) in it {
        match toks[0] {
            "g" if toks.len() >= 3 => {
                let (u, v): (usize, usize) = (num(line, toks[1], "cover index")?, num(line, toks[2], "cover index")?);
                if u >= v {
                    return Err(Error::parse(line, "cover indices must be increasing"));
                }
                let i = cover
                    .nerve
                    .index_of(&[u, v])
                    .ok_or_else(|| Error::parse(line, format!("U_{u} and U_{v} do not meet")))?;
                let n = cover.intersection(1, i).count(0);
                let vals = rats(line, &toks[3..])?;
                if vals.len() != n {
                    return Err(Error::parse(
                        line,
                        format!("overlap ({u}, {v}) has {n} vertices, got {} values", vals.len()),
                    ));
                }
                let o = offs.at(1, 0, i);
                g[o..o + n].clone_from_slice(&vals);
            }
            "A" if toks.len() >= 2 => {
                let u: usize = num(line, toks[1], "cover index")?;
                if u >= cover.members.len() {
                    return Err(Error::parse(line, format!("cover has {} members", cover.members.len())));
                }
                let n = cover.intersection(0, u).count(1);
                let vals = rats(line, &toks[2..])?;
                if vals.len() != n {
                    return Err(Error::parse(line, format!("member {u} has {n} edges, got {} values", vals.len())));
                }
                let o = offs.at(0, 1, u);
                a[o..o + n].clone_from_slice(&vals);
            }
            other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
        }
    }
    DiscreteLineBundle::new(model, g, a)
}

pub fn write_lbd(l: &DiscreteLineBundle) -> String {
    let cover = &l.model.cover;
    let offs = l.model.offsets();
    let mut out = String::from("lbd v1\n");
    for (i, s) in cover.nerve.simplices(1).iter().enumerate() {
        let n = cover.intersection(1, i).count(0);
        let o = offs.at(1, 0, i);
        let vals = &l.g[o..o + n];
        if !is_zero_vec(vals) {
            out.push_str(&format!("g {} {} {}\n", s[0], s[1], join(vals)));
        }
    }
    for u in 0..cover.members.len() {
        let n = cover.intersection(0, u).count(1);
        let o = offs.at(0, 1, u);
        let vals = &l.a[o..o + n];
        if !is_zero_vec(vals) {
            out.push_str(&format!("A {u} {}\n", join(vals)));
        }
    }
    out
}
