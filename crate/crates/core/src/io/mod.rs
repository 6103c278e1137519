//! Text formats (`.scx`, `.spc`, `.spk`, `.lbd`) and command reports.
//!
//! All formats are line based. Blank lines and text after `#` are ignored;
//! the first remaining line is a version header such as `scx v1`.

mod lbd;
mod report;
mod scx;
mod spc;
mod spk;

pub use lbd::{parse_lbd, write_lbd};
pub use report::{Report, Section, Status};
pub use scx::{parse_scx, write_scx};
pub use spc::{parse_spc, write_spc, RawSparkComplex};
pub use spk::{parse_spk, parse_witness, write_spk, write_witness};

use crate::error::{Error, Result};
use crate::linalg::{Int, Rat};

/// Non-empty lines with comments stripped, numbered from 1.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub(crate) fn expect_header<'a>(
    it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    kind: &str,
) -> Result<Option<usize>> {
    match it.next() {
        None => Ok(None),
        Some((n, toks)) => {
            if toks != [kind, "v1"] {
                return Err(Error::parse(n, format!("expected header `{kind} v1`")));
            }
            Ok(Some(n))
        }
    }
}

pub(crate) fn rats(line: usize, toks: &[&str]) -> Result<Vec<Rat>> {
    toks.iter().map(|t| t.parse::<Rat>().map_err(|e| Error::parse(line, e))).collect()
}

pub(crate) fn ints(line: usize, toks: &[&str]) -> Result<Vec<Int>> {
    toks.iter().map(|t| t.parse::<Int>().map_err(|e| Error::parse(line, e))).collect()
}

pub(crate) fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
}

pub(crate) fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
