//! Bit-packed linear algebra over GF(2).
//!
//! Everything in the toolkit reduces to operations on [`BitVec`] and
//! [`BitMatrix`]: check matrices, syndromes, normalizer computations and
//! decoder bookkeeping. Rows are packed into 64-bit words so elimination and
//! inner products run one word at a time.

mod bitvec;
mod matrix;

pub use bitvec::BitVec;
pub use matrix::BitMatrix;

use crate::error::{Error, Result};

/// Incrementally maintained row space with fast membership and reduction.
///
/// Every basis vector owns a pivot column that no other basis vector has
/// set, so reduction can proceed in any order.
#[derive(Clone, Debug)]
pub struct RowSpace {
    len: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn empty(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn new(m: &BitMatrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Self {
            len: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    /// Reduces `v` against the basis. The result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn reduce_in_place(&self, v: &mut BitVec) {
        assert_eq!(v.len(), self.len, "length mismatch in reduce");
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns false if it was already contained.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for b in &mut self.basis {
            if b.get(p) {
                b.xor_assign(&r);
            }
        }
        self.basis.push(r);
        self.pivots.push(p);
        true
    }
}

/// Precomputed elimination of `m` for repeated solves of `m * x^T = s`.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    rows: usize,
    cols: usize,
    // transform * m = reduced
    transform: BitMatrix,
    pivots: Vec<usize>,
}

impl LinearSolver {
    pub fn new(m: &BitMatrix) -> Self {
        let mut aug = m
            .hstack(&BitMatrix::identity(m.rows()))
            .expect("row counts agree");
        let pivots = aug.eliminate(m.cols());
        let transform = aug.column_block(m.cols(), m.rows());
        Self {
            rows: m.rows(),
            cols: m.cols(),
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether `s` lies in the column space of `m`.
    pub fn is_consistent(&self, s: &BitVec) -> Result<bool> {
        Error::check_len(self.rows, s.len())?;
        let t = self.transform.mul_vec(s)?;
        Ok((self.pivots.len()..self.rows).all(|i| !t.get(i)))
    }

    pub fn solve(&self, s: &BitVec) -> Result<Option<BitVec>> {
        Error::check_len(self.rows, s.len())?;
        let t = self.transform.mul_vec(s)?;
        if (self.pivots.len()..self.rows).any(|i| t.get(i)) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in self.pivots.iter().enumerate() {
            if t.get(i) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}
