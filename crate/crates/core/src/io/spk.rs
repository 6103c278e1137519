//! Sparks and witnesses.
//!
//! ```text
//! spk v1          wit v1
//! degree 0        degree 0
//! a 1/2 0 ...     b ...
//! r 0 1 ...       s ...
//! ```

use super::{expect_header, ints, join, lines, num, rats};
use crate::error::{Error, Result};
use crate::spark::{Spark, SparkComplex, Witness};

/// Reads `a` and `r`; the curvature is recomputed by the model.
pub fn parse_spk(text: &str, sc: &SparkComplex) -> Result<Spark> {
    let (k, first, second) = parse_pair(text, "spk", ["a", "r"])?;
    let a = rats(first.0, &first.1)?;
    let r = ints(second.0, &second.1)?;
    sc.make_spark(k, a, r)
}

pub fn parse_witness(text: &str) -> Result<(i32, Witness)> {
    let (k, first, second) = parse_pair(text, "wit", ["b", "s"])?;
    Ok((k, Witness { b: rats(first.0, &first.1)?, s: ints(second.0, &second.1)? }))
}

type Row<'a> = (usize, Vec<&'a str>);

fn parse_pair<'a>(text: &'a str, kind: &str, keys: [&str; 2]) -> Result<(i32, Row<'a>, Row<'a>)> {
    let mut it = lines(text);
    expect_header(&mut it, kind)?.ok_or_else(|| Error::parse(1, "empty file"))?;
    let mut degree = None;
    let mut rows: [Option<Row>; 2] = [None, None];
    for (line, toks) in it {
        match toks[0] {
            "degree" if toks.len() == 2 => degree = Some(num::<i32>(line, toks[1], "degree")?),
            key if keys.contains(&key) => {
                let i = keys.iter().position(|k| *k == key).unwrap();
                if rows[i].is_some() {
                    return Err(Error::parse(line, format!("duplicate `{key}` line")));
                }
                rows[i] = Some((line, toks[1..].to_vec()));
            }
            other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(1, "missing `degree k`"))?;
    let [x, y] = rows;
    let x = x.unwrap_or((0, Vec::new()));
    let y = y.unwrap_or((0, Vec::new()));
    Ok((degree, x, y))
}

pub fn write_spk(s: &Spark) -> String {
    format!("spk v1\ndegree {}\na {}\nr {}\n", s.degree, join(&s.a), join(&s.r)).replace(" \n", "\n")
}

pub fn write_witness(k: i32, w: &Witness) -> String {
    format!("wit v1\ndegree {k}\nb {}\ns {}\n", join(&w.b), join(&w.s)).replace(" \n", "\n")
}
