//! `QCHK v1` check-matrix text format.
//!
//! ```text
//! QCHK v1 n=<n> r=<r>
//! <2n characters of 0/1: the H_X row followed by the H_Z row>   (r lines)
//! ```
//!
//! Writers emit exactly this, newline-terminated. Readers accept nothing
//! else apart from an optional final newline.

use super::CheckMatrix;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

pub fn write_qchk(check: &CheckMatrix) -> String {
    let n = check.n();
    let mut out = format!("QCHK v1 n={n} r={}\n", check.r());
    for i in 0..check.r() {
        out.push_str(&check.hx().row(i).to_string());
        out.push_str(&check.hz().row(i).to_string());
        out.push('\n');
    }
    out
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let bad = || Error::parse(1, format!("expected `QCHK v1 n=<n> r=<r>`, found {line:?}"));
    let parts: Vec<&str> = line.split(' ').collect();
    if parts.len() != 4 || parts[0] != "QCHK" || parts[1] != "v1" {
        return Err(bad());
    }
    let num = |tok: &str, key: &str| -> Result<usize> {
        let digits = tok.strip_prefix(key).ok_or_else(bad)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        digits.parse().map_err(|_| bad())
    };
    Ok((num(parts[2], "n=")?, num(parts[3], "r=")?))
}

pub fn read_qchk(text: &str) -> Result<CheckMatrix> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let header = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let (n, r) = parse_header(header)?;
    let rows: Vec<&str> = if body.contains('\n') { lines.collect() } else { Vec::new() };
    if rows.len() != r {
        return Err(Error::parse(
            rows.len().min(r) + 2,
            format!("expected {r} rows, found {}", rows.len()),
        ));
    }
    let mut hx = BitMatrix::zeros(r, n);
    let mut hz = BitMatrix::zeros(r, n);
    for (i, line) in rows.iter().enumerate() {
        if line.len() != 2 * n {
            return Err(Error::parse(i + 2, format!("row must have {} characters", 2 * n)));
        }
        let v = BitVec::parse(line).map_err(|e| Error::parse(i + 2, e.to_string()))?;
        for c in v.iter_ones() {
            if c < n {
                hx.set(i, c, true);
            } else {
                hz.set(i, c - n, true);
            }
        }
    }
    CheckMatrix::new(hx, hz)
}
