use std::fmt;

use super::bitvec::{dot_words, words_for, xor_words, BitVec, WORD_BITS};
use crate::error::{Error, Result};

/// Row-major GF(2) matrix with each row packed into 64-bit words.
///
/// Padding bits past `cols` in every row are zero. Empty shapes (`0 x c`,
/// `r x 0`) are legal: rank 0, and the kernel of an `r x c` zero-rank matrix
/// is all of `F_2^c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Stacks row vectors; all must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            Error::check_len(cols, r.len())?;
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix from nested 0/1 slices. Panics on ragged input.
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged dense matrix");
            for (j, &b) in r.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses lines of `0`/`1` characters. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut cols = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
            let row = BitVec::parse(&compact).map_err(|e| Error::parse(lineno + 1, e.to_string()))?;
            match cols {
                None => cols = Some(row.len()),
                Some(c) if c != row.len() => {
                    return Err(Error::parse(
                        lineno + 1,
                        format!("row has {} columns, expected {c}", row.len()),
                    ))
                }
                _ => {}
            }
            rows.push(row);
        }
        Self::from_rows(cols.unwrap_or(0), &rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_iter(&self) -> impl Iterator<Item = BitVec> + '_ {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Column indices set in row `r`.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
            .iter_ones()
            .collect()
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * s);
        head[lo * s..(lo + 1) * s].swap_with_slice(&mut tail[..s]);
    }

    /// `row[dst] ^= row[src]`.
    pub(crate) fn xor_row_into(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        if dst < src {
            let (head, tail) = self.data.split_at_mut(src * s);
            xor_words(&mut head[dst * s..(dst + 1) * s], &tail[..s]);
        } else {
            let (head, tail) = self.data.split_at_mut(dst * s);
            xor_words(&mut tail[..s], &head[src * s..(src + 1) * s]);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            let row = BitVec::from_words(self.cols, self.row_words(r).to_vec());
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        Error::check_len(self.cols, other.rows)?;
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = BitVec::from_words(self.cols, self.row_words(r).to_vec());
            for k in row.iter_ones() {
                let src = other.row_words(k).to_vec();
                xor_words(out.row_words_mut(r), &src);
            }
        }
        Ok(out)
    }

    /// `self * other^T`, computed as row-by-row parities.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        Error::check_len(self.cols, other.cols)?;
        let mut out = BitMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                if dot_words(self.row_words(i), other.row_words(j)) {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    /// `self * v^T` as a vector of length `rows`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        Error::check_len(self.cols, v.len())?;
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if dot_words(self.row_words(r), v.words()) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in self.row_support(i) {
                for k in 0..other.rows {
                    for l in other.row_support(k) {
                        out.set(i * other.rows + k, j * other.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        Error::check_len(self.rows, other.rows)?;
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                out.set(r, c, true);
            }
            for c in other.row_support(r) {
                out.set(r, self.cols + c, true);
            }
        }
        Ok(out)
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        Error::check_len(self.cols, other.cols)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    /// Copy of columns `start..start + len`.
    pub fn column_block(&self, start: usize, len: usize) -> BitMatrix {
        assert!(start + len <= self.cols);
        let mut out = BitMatrix::zeros(self.rows, len);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                if c >= start && c < start + len {
                    out.set(r, c - start, true);
                }
            }
        }
        out
    }

    /// Sub-matrix formed by the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    /// In-place Gauss-Jordan elimination pivoting only on columns `< pivot_limit`.
    ///
    /// Pivots are taken column by column from the left, using the first row at
    /// or below the current pivot row with a set bit. Returns pivot columns in
    /// increasing order; row `i` of the result carries pivot `pivots[i]`.
    pub(crate) fn eliminate(&mut self, pivot_limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..pivot_limit.min(self.cols) {
            if pr == self.rows {
                break;
            }
            let Some(found) = (pr..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(pr, found);
            for r in 0..self.rows {
                if r != pr && self.get(r, c) {
                    self.xor_row_into(r, pr);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(self.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per row: `self * k^T = 0`.
    ///
    /// Row `j` corresponds to the `j`-th free column (in increasing order).
    pub fn kernel(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = BitMatrix::zeros(free.len(), self.cols);
        for (j, &f) in free.iter().enumerate() {
            k.set(j, f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, f) {
                    k.set(j, p, true);
                }
            }
        }
        k
    }

    /// Whether `v` is a GF(2) combination of the rows.
    pub fn in_rowspace(&self, v: &BitVec) -> Result<bool> {
        Error::check_len(self.cols, v.len())?;
        Ok(super::RowSpace::new(self).contains(v))
    }

    /// Some `x` with `self * x^T = s`, or `None` when the system is inconsistent.
    pub fn solve(&self, s: &BitVec) -> Result<Option<BitVec>> {
        super::LinearSolver::new(self).solve(s)
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as u8).collect())
            .collect()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}
