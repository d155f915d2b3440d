//! Matrix files: a `q n m` header line, then `n` rows of `m` entries; or
//! the JSON object `{"q": .., "rows": [[..], ..]}`.
//!
//! Hyperplane systems: a `q n k` header, then `k` lines of `n` normal
//! entries followed by the offset; or
//! `{"q": .., "n": .., "hyperplanes": [{"normal": [..], "offset": ..}]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::linalg::Matrix;
use crate::gf::hyperplane::{AffineHyperplane, AffineHyperplaneWire};
use crate::gf::Field;

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    q: u32,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    q: u32,
    n: usize,
    hyperplanes: Vec<AffineHyperplaneWire>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses either format; the JSON form is recognised by a leading `{`.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let t = text.trim_start();
    if t.starts_with('{') {
        let j: MatrixJson = serde_json::from_str(t).map_err(|e| parse_err(e.to_string()))?;
        let f = Field::new(j.q)?;
        return Matrix::from_rows(f, &j.rows);
    }
    let mut nums = t.split_whitespace().map(|w| {
        w.parse::<u64>()
            .map_err(|_| parse_err(format!("not a non-negative integer: {w:?}")))
    });
    let mut next = |what: &str| nums.next().unwrap_or_else(|| Err(parse_err(format!("missing {what}"))));
    let q = next("q")?;
    let n = next("row count")? as usize;
    let m = next("column count")? as usize;
    let f = Field::new(u32::try_from(q).map_err(|_| parse_err("q too large"))?)?;
    let mut data = Vec::with_capacity(n * m);
    for _ in 0..n * m {
        let x = next("matrix entry")?;
        if x >= f.q() as u64 {
            return Err(parse_err(format!("entry {x} not in GF({q})")));
        }
        data.push(x as u32);
    }
    if nums.next().is_some() {
        return Err(parse_err("trailing data after matrix"));
    }
    Matrix::new(f, n, m, data)
}

/// An affine hyperplane system with its field and dimension.
pub fn parse_hyperplane_system(text: &str) -> Result<(Field, usize, Vec<AffineHyperplane>)> {
    let t = text.trim_start();
    let (q, n, wires) = if t.starts_with('{') {
        let j: SystemJson = serde_json::from_str(t).map_err(|e| parse_err(e.to_string()))?;
        (j.q, j.n, j.hyperplanes)
    } else {
        let nums: Vec<u32> = t
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| parse_err(format!("not a non-negative integer: {w:?}"))))
            .collect::<Result<_>>()?;
        if nums.len() < 3 {
            return Err(parse_err("missing `q n k` header"));
        }
        let (q, n, k) = (nums[0], nums[1] as usize, nums[2] as usize);
        let body = &nums[3..];
        if body.len() != k * (n + 1) {
            return Err(parse_err(format!("expected {k} lines of {} numbers", n + 1)));
        }
        let wires = body
            .chunks(n + 1)
            .map(|c| AffineHyperplaneWire {
                normal: c[..n].to_vec(),
                offset: c[n],
            })
            .collect();
        (q, n, wires)
    };
    let f = Field::new(q)?;
    let hs = wires
        .iter()
        .map(|w| {
            if w.normal.len() != n {
                return Err(parse_err(format!("normal {:?} is not of length {n}", w.normal)));
            }
            AffineHyperplane::from_wire(&f, w)
        })
        .collect::<Result<_>>()?;
    Ok((f, n, hs))
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut s = format!("{} {} {}\n", m.field().q(), m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(u32::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn matrix_to_json(m: &Matrix) -> serde_json::Value {
    serde_json::to_value(MatrixJson {
        q: m.field().q(),
        rows: m.row_vecs(),
    })
    .expect("plain data")
}

/// Several matrices concatenated in the text format, or a JSON array.
pub fn parse_matrix_list(text: &str) -> Result<Vec<Matrix>> {
    let t = text.trim_start();
    if t.starts_with('[') {
        let list: Vec<MatrixJson> = serde_json::from_str(t).map_err(|e| parse_err(e.to_string()))?;
        return list
            .into_iter()
            .map(|j| Matrix::from_rows(Field::new(j.q)?, &j.rows))
            .collect();
    }
    let words: Vec<&str> = t.split_whitespace().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < words.len() {
        if pos + 3 > words.len() {
            return Err(parse_err("truncated matrix header"));
        }
        let dims: Vec<usize> = words[pos..pos + 3]
            .iter()
            .map(|w| w.parse().map_err(|_| parse_err(format!("bad header field {w:?}"))))
            .collect::<Result<_>>()?;
        let len = 3 + dims[1] * dims[2];
        if pos + len > words.len() {
            return Err(parse_err("truncated matrix"));
        }
        out.push(parse_matrix(&words[pos..pos + len].join(" "))?);
        pos += len;
    }
    if out.is_empty() {
        return Err(parse_err("no matrix given"));
    }
    Ok(out)
}
