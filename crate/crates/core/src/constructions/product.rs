//! Hypergraph product and lifted product codes.
//!
//! Qubits of both products are ordered left block first, then right block,
//! row-major within each Kronecker factor.

use std::fmt;
use std::str::FromStr;

use super::{css_from_blocks, ClassicalCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::stabilizer::StabilizerCode;

/// Hypergraph product with `H_X = [H1 ⊗ I, I ⊗ H2ᵀ]` and
/// `H_Z = [I ⊗ H2, H1ᵀ ⊗ I]`.
pub fn hgp(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<StabilizerCode> {
    let (h1, h2) = (c1.h(), c2.h());
    let (m1, n1) = (h1.rows(), h1.cols());
    let (m2, n2) = (h2.rows(), h2.cols());
    let hx = h1
        .kron(&BitMatrix::identity(n2))
        .hstack(&BitMatrix::identity(m1).kron(&h2.transpose()))?;
    let hz = BitMatrix::identity(n1)
        .kron(h2)
        .hstack(&h1.transpose().kron(&BitMatrix::identity(m2)))?;
    css_from_blocks(&hx, &hz)
}

/// Element of `F2[x]/(x^l - 1)`; `coeffs[i]` is the coefficient of `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CirculantPoly {
    coeffs: BitVec,
}

impl CirculantPoly {
    pub fn new(coeffs: BitVec) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("lift size must be >= 1"));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(l: usize) -> Self {
        Self::new(BitVec::zeros(l)).expect("l >= 1")
    }

    pub fn one(l: usize) -> Self {
        Self::monomial(l, 0)
    }

    /// `x^e` reduced modulo `x^l - 1`.
    pub fn monomial(l: usize, e: usize) -> Self {
        Self::new(BitVec::from_indices(l, [e % l])).expect("l >= 1")
    }

    pub fn lift_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &BitVec {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Parses `0`, `1`, `x`, `x^3`, `1+x+x^4`; exponents reduce modulo `l`
    /// and repeated terms cancel.
    pub fn parse(s: &str, l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::invalid("lift size must be >= 1"));
        }
        let bad = || Error::invalid(format!("bad polynomial {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(l));
        }
        let mut coeffs = BitVec::zeros(l);
        for term in s.split('+') {
            let e = match term.trim() {
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .ok_or_else(bad)?
                    .parse::<usize>()
                    .map_err(|_| bad())?,
            };
            coeffs.flip(e % l);
        }
        Self::new(coeffs)
    }

    /// `a(x^{-1})`: coefficient `i` moves to `-i mod l`.
    pub fn transpose(&self) -> Self {
        let l = self.lift_size();
        Self::new(BitVec::from_indices(l, self.coeffs.iter_ones().map(|i| (l - i) % l)))
            .expect("l >= 1")
    }

    /// `l x l` circulant whose first column holds the coefficients and whose
    /// column `j` is column 0 shifted down by `j`.
    pub fn lift(&self) -> BitMatrix {
        let l = self.lift_size();
        BitMatrix::from_fn(l, l, |i, j| self.coeffs.get((i + l - j) % l))
    }
}

/// Lift of a single polynomial; see [`CirculantPoly::lift`].
pub fn circulant_lift(p: &CirculantPoly) -> BitMatrix {
    p.lift()
}

pub fn poly_transpose(p: &CirculantPoly) -> CirculantPoly {
    p.transpose()
}

impl fmt::Display for CirculantPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter_ones()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

/// Matrix over `F2[x]/(x^l - 1)` with a shared lift size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    l: usize,
    entries: Vec<CirculantPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, l: usize, entries: Vec<CirculantPoly>) -> Result<Self> {
        if l == 0 {
            return Err(Error::invalid("lift size must be >= 1"));
        }
        Error::check_len(rows * cols, entries.len())?;
        if let Some(e) = entries.iter().find(|e| e.lift_size() != l) {
            return Err(Error::invalid(format!(
                "entry has lift size {}, expected {l}",
                e.lift_size()
            )));
        }
        Ok(Self {
            rows,
            cols,
            l,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        l: usize,
        mut f: impl FnMut(usize, usize) -> CirculantPoly,
    ) -> Result<Self> {
        let entries = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        Self::new(rows, cols, l, entries)
    }

    /// Binary matrix viewed over the ring with lift size `l`.
    pub fn from_binary(m: &BitMatrix, l: usize) -> Result<Self> {
        Self::from_fn(m.rows(), m.cols(), l, |i, j| {
            if m.get(i, j) {
                CirculantPoly::one(l)
            } else {
                CirculantPoly::zero(l)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn lift_size(&self) -> usize {
        self.l
    }

    pub fn get(&self, i: usize, j: usize) -> &CirculantPoly {
        &self.entries[i * self.cols + j]
    }

    /// Conjugate transpose: matrix transpose with every entry transposed.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.l, |i, j| self.get(j, i).transpose())
            .expect("shape preserved")
    }

    /// `self ⊗ I_k`.
    pub fn kron_identity(&self, k: usize) -> Self {
        Self::from_fn(self.rows * k, self.cols * k, self.l, |i, j| {
            if i % k == j % k {
                self.get(i / k, j / k).clone()
            } else {
                CirculantPoly::zero(self.l)
            }
        })
        .expect("shape preserved")
    }

    /// `I_k ⊗ self`.
    pub fn identity_kron(&self, k: usize) -> Self {
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(k * r, k * c, self.l, |i, j| {
            if i / r == j / c {
                self.get(i % r, j % c).clone()
            } else {
                CirculantPoly::zero(self.l)
            }
        })
        .expect("shape preserved")
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        Error::check_len(self.rows, other.rows)?;
        Error::check_len(self.l, other.l)?;
        Self::from_fn(self.rows, self.cols + other.cols, self.l, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Binary `(rows l) x (cols l)` matrix with every entry replaced by its
    /// circulant.
    pub fn lift(&self) -> BitMatrix {
        let l = self.l;
        let mut out = BitMatrix::zeros(self.rows * l, self.cols * l);
        for bi in 0..self.rows {
            for bj in 0..self.cols {
                for e in self.get(bi, bj).coeffs.iter_ones() {
                    for j in 0..l {
                        out.set(bi * l + (e + j) % l, bj * l + j, true);
                    }
                }
            }
        }
        out
    }

    /// Text form: a header line `l=<l>`, then one line per row of
    /// whitespace-separated polynomials. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
            .filter(|(_, line)| !line.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `l=<l>` header"))?;
        let l: usize = header
            .strip_prefix("l=")
            .and_then(|d| d.trim().parse().ok())
            .filter(|&l| l >= 1)
            .ok_or_else(|| Error::parse(hline, "expected `l=<l>` with l >= 1"))?;
        let mut entries = Vec::new();
        let mut rows = 0;
        let mut cols = None;
        for (lineno, line) in lines {
            let row = line
                .split_whitespace()
                .map(|t| CirculantPoly::parse(t, l).map_err(|e| Error::parse(lineno, e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if *cols.get_or_insert(row.len()) != row.len() {
                return Err(Error::parse(lineno, "ragged polynomial matrix"));
            }
            entries.extend(row);
            rows += 1;
        }
        Self::new(rows, cols.unwrap_or(0), l, entries)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "l={}", self.l)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for PolyMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Lifted product with `H_X = B([A1 ⊗ I, I ⊗ A2])` and
/// `H_Z = B([I ⊗ A2ᵀ, A1ᵀ ⊗ I])` on `l (n1 m2 + m1 n2)` qubits.
///
/// With `l = 1`, `lifted_product(H1, H2ᵀ)` coincides with `hgp(H1, H2)`.
pub fn lifted_product(a1: &PolyMatrix, a2: &PolyMatrix) -> Result<StabilizerCode> {
    if a1.l != a2.l {
        return Err(Error::invalid(format!(
            "lift sizes differ: {} and {}",
            a1.l, a2.l
        )));
    }
    let (m1, n1) = (a1.rows, a1.cols);
    let (m2, n2) = (a2.rows, a2.cols);
    let hx = a1.kron_identity(m2).hstack(&a2.identity_kron(m1))?;
    let hz = a2.transpose().identity_kron(n1).hstack(&a1.transpose().kron_identity(n2))?;
    let (hx, hz) = (hx.lift(), hz.lift());
    if !hx.mul_transpose(&hz)?.is_zero() {
        return Err(Error::InvalidCode("lifted X and Z checks do not commute".into()));
    }
    css_from_blocks(&hx, &hz)
}
