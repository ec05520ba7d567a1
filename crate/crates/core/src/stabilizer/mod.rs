//! Stabilizer codes described by a binary check matrix `[H_X | H_Z]`.
//!
//! A [`StabilizerCode`] is only obtainable through [`validate`], which checks
//! that the generators commute, computes `k` from the rank, and extracts a
//! symplectically paired basis of logical operators.

pub(crate) mod distance;
mod kl;
mod qchk;

pub use distance::{
    is_degenerate, is_degenerate_with_budget, min_distance, min_distance_with_budget,
    DEFAULT_SEARCH_BUDGET,
};
pub use kl::{errors_up_to_weight, kl_check, KlReport, KL_MAX_QUBITS, KL_TOLERANCE};
pub use qchk::{read_qchk, write_qchk};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, RowSpace};
use crate::pauli::PauliOperator;

/// One bit per stored generator row.
pub type Syndrome = BitVec;

/// Generator rows `[a_i | b_i]` split into the X part `hx` and Z part `hz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckMatrix {
    hx: BitMatrix,
    hz: BitMatrix,
}

impl CheckMatrix {
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        Error::check_len(hx.rows(), hz.rows())?;
        Error::check_len(hx.cols(), hz.cols())?;
        Ok(Self { hx, hz })
    }

    /// Check matrix whose rows are the given generators (phases dropped).
    pub fn from_generators(n: usize, generators: &[PauliOperator]) -> Result<Self> {
        let mut hx = BitMatrix::zeros(generators.len(), n);
        let mut hz = BitMatrix::zeros(generators.len(), n);
        for (i, g) in generators.iter().enumerate() {
            Error::check_len(n, g.n())?;
            for q in g.x_bits().iter_ones() {
                hx.set(i, q, true);
            }
            for q in g.z_bits().iter_ones() {
                hz.set(i, q, true);
            }
        }
        Self::new(hx, hz)
    }

    /// Splits an `r x 2n` matrix laid out `[H_X | H_Z]`.
    pub fn from_symplectic(h: &BitMatrix) -> Result<Self> {
        if !h.cols().is_multiple_of(2) {
            return Err(Error::invalid("symplectic matrix must have an even column count"));
        }
        let n = h.cols() / 2;
        Self::new(h.column_block(0, n), h.column_block(n, n))
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn r(&self) -> usize {
        self.hx.rows()
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    /// `[H_X | H_Z]`.
    pub fn symplectic(&self) -> BitMatrix {
        self.hx.hstack(&self.hz).expect("row counts agree")
    }

    pub fn generator(&self, i: usize) -> PauliOperator {
        PauliOperator::new(self.hx.row(i), self.hz.row(i)).expect("lengths agree")
    }

    pub fn generators(&self) -> Vec<PauliOperator> {
        (0..self.r()).map(|i| self.generator(i)).collect()
    }

    /// `H_X H_Zᵀ + H_Z H_Xᵀ`; zero iff all generators commute.
    pub fn commutation_matrix(&self) -> BitMatrix {
        let a = self.hx.mul_transpose(&self.hz).expect("shapes agree");
        let b = self.hz.mul_transpose(&self.hx).expect("shapes agree");
        BitMatrix::from_fn(self.r(), self.r(), |i, j| a.get(i, j) ^ b.get(i, j))
    }

    /// First `(i, j)` with `i < j` whose generators anticommute.
    pub fn first_anticommuting_pair(&self) -> Option<(usize, usize)> {
        let c = self.commutation_matrix();
        (0..self.r())
            .flat_map(|i| (i + 1..self.r()).map(move |j| (i, j)))
            .find(|&(i, j)| c.get(i, j))
    }

    /// Syndrome of an error: bit `i` is the symplectic product with generator `i`.
    pub fn syndrome(&self, e: &PauliOperator) -> Result<Syndrome> {
        Error::check_len(self.n(), e.n())?;
        let mut s = self.hx.mul_vec(e.z_bits())?;
        s.xor_assign(&self.hz.mul_vec(e.x_bits())?);
        Ok(s)
    }
}

/// A logical qubit's `(X̄, Z̄)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalPair {
    pub x: PauliOperator,
    pub z: PauliOperator,
}

/// Row partition of a CSS check matrix.
///
/// `hx` holds the X parts of the X-type rows (they detect Z errors) and `hz`
/// the Z parts of the Z-type rows (they detect X errors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssSplit {
    pub x_rows: Vec<usize>,
    pub z_rows: Vec<usize>,
    pub hx: BitMatrix,
    pub hz: BitMatrix,
}

impl CssSplit {
    fn detect(check: &CheckMatrix) -> Option<Self> {
        let mut x_rows = Vec::new();
        let mut z_rows = Vec::new();
        for i in 0..check.r() {
            let has_x = !check.hx().row_is_zero(i);
            let has_z = !check.hz().row_is_zero(i);
            match (has_x, has_z) {
                (true, true) => return None,
                (true, false) => x_rows.push(i),
                _ => z_rows.push(i),
            }
        }
        Some(Self {
            hx: check.hx().select_rows(&x_rows),
            hz: check.hz().select_rows(&z_rows),
            x_rows,
            z_rows,
        })
    }
}

/// Outcome of checking a Pauli operator against a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Residual {
    /// Element of the stabilizer group (up to phase).
    Stabilizer,
    /// Commutes with every generator but is not a stabilizer.
    Logical,
    /// Nonzero syndrome.
    Detectable,
}

#[derive(Clone, Debug)]
pub struct StabilizerCode {
    check: CheckMatrix,
    rank: usize,
    logicals: Vec<LogicalPair>,
    stabilizers: RowSpace,
    css: Option<CssSplit>,
}

/// Validates a check matrix and builds the code.
///
/// Redundant generator rows are kept as given when `allow_redundant` is set;
/// syndromes always carry one bit per stored row.
pub fn validate(check: CheckMatrix, allow_redundant: bool) -> Result<StabilizerCode> {
    if let Some((i, j)) = check.first_anticommuting_pair() {
        return Err(Error::NonCommuting(i, j));
    }
    let stabilizers = RowSpace::new(&check.symplectic());
    let rank = stabilizers.dim();
    if rank < check.r() && !allow_redundant {
        return Err(Error::RedundantGenerators {
            rows: check.r(),
            rank,
        });
    }
    let logicals = extract_logicals(&check)?;
    let css = CssSplit::detect(&check);
    Ok(StabilizerCode {
        check,
        rank,
        logicals,
        stabilizers,
        css,
    })
}

/// Symplectically paired basis of `N(S)/S`.
///
/// The normalizer is the kernel of `[H_Z | H_X]`. Its basis vectors are taken
/// in ascending lexicographic order, kept if independent of the stabilizers
/// and earlier picks, reduced modulo the stabilizers, and then paired by
/// symplectic Gram-Schmidt.
pub fn extract_logicals(check: &CheckMatrix) -> Result<Vec<LogicalPair>> {
    let n = check.n();
    let swapped = check.hz().hstack(check.hx())?;
    let mut normalizer: Vec<BitVec> = swapped.kernel().row_iter().collect();
    normalizer.sort();

    let stabilizers = RowSpace::new(&check.symplectic());
    let expected = 2 * (n - stabilizers.dim());
    let mut span = stabilizers.clone();
    let mut pool: Vec<PauliOperator> = Vec::with_capacity(expected);
    for v in &normalizer {
        if span.insert(v) {
            pool.push(PauliOperator::from_symplectic(&stabilizers.reduce(v), n)?);
        }
    }
    if pool.len() != expected {
        return Err(Error::InvalidCode(format!(
            "normalizer quotient has dimension {}, expected {expected}",
            pool.len()
        )));
    }

    let mut pairs = Vec::with_capacity(expected / 2);
    while !pool.is_empty() {
        let u = pool.remove(0);
        let Some(pos) = pool.iter().position(|w| u.symp_unchecked(w)) else {
            return Err(Error::InvalidCode(
                "logical operator has no symplectic partner".into(),
            ));
        };
        let w = pool.remove(pos);
        for v in &mut pool {
            let add_u = v.symp_unchecked(&w);
            let add_w = v.symp_unchecked(&u);
            let mut sv = v.to_symplectic();
            if add_u {
                sv.xor_assign(&u.to_symplectic());
            }
            if add_w {
                sv.xor_assign(&w.to_symplectic());
            }
            *v = PauliOperator::from_symplectic(&sv, n)?;
        }
        // Prefer an X-type operator as X̄ when the pair splits that way.
        let (x, z) = if u.x_bits().is_zero() && !w.x_bits().is_zero() {
            (w, u)
        } else {
            (u, w)
        };
        pairs.push(LogicalPair { x, z });
    }
    Ok(pairs)
}

impl StabilizerCode {
    pub fn check(&self) -> &CheckMatrix {
        &self.check
    }

    pub fn n(&self) -> usize {
        self.check.n()
    }

    /// Number of stored generator rows (syndrome length).
    pub fn r(&self) -> usize {
        self.check.r()
    }

    /// Rank of `[H_X | H_Z]`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn k(&self) -> usize {
        self.n() - self.rank
    }

    pub fn logicals(&self) -> &[LogicalPair] {
        &self.logicals
    }

    pub fn stabilizers(&self) -> &RowSpace {
        &self.stabilizers
    }

    pub fn css(&self) -> Option<&CssSplit> {
        self.css.as_ref()
    }

    pub fn is_css(&self) -> bool {
        self.css.is_some()
    }

    pub fn generator(&self, i: usize) -> PauliOperator {
        self.check.generator(i)
    }

    pub fn generators(&self) -> Vec<PauliOperator> {
        self.check.generators()
    }

    pub fn syndrome(&self, e: &PauliOperator) -> Result<Syndrome> {
        self.check.syndrome(e)
    }

    /// Whether `p` (ignoring phase) is an element of the stabilizer group.
    pub fn is_stabilizer(&self, p: &PauliOperator) -> Result<bool> {
        Error::check_len(self.n(), p.n())?;
        Ok(self.stabilizers.contains(&p.to_symplectic()))
    }

    pub fn classify_residual(&self, p: &PauliOperator) -> Result<Residual> {
        if !self.syndrome(p)?.is_zero() {
            Ok(Residual::Detectable)
        } else if self.stabilizers.contains(&p.to_symplectic()) {
            Ok(Residual::Stabilizer)
        } else {
            Ok(Residual::Logical)
        }
    }

    /// Replaces the extracted logical basis after checking it against the code.
    pub fn with_logicals(mut self, pairs: Vec<LogicalPair>) -> Result<Self> {
        if pairs.len() != self.k() {
            return Err(Error::InvalidCode(format!(
                "{} logical pairs supplied for k = {}",
                pairs.len(),
                self.k()
            )));
        }
        let ops: Vec<&PauliOperator> = pairs.iter().flat_map(|p| [&p.x, &p.z]).collect();
        for op in &ops {
            if self.classify_residual(op)? != Residual::Logical {
                return Err(Error::InvalidCode(format!("{op} is not a nontrivial logical")));
            }
        }
        for (i, a) in pairs.iter().enumerate() {
            for (j, b) in pairs.iter().enumerate() {
                let ok = a.x.symp_unchecked(&b.z) == (i == j)
                    && !a.x.symp_unchecked(&b.x)
                    && !a.z.symp_unchecked(&b.z);
                if !ok {
                    return Err(Error::InvalidCode(format!(
                        "logical pairs {i} and {j} violate the pairing conditions"
                    )));
                }
            }
        }
        self.logicals = pairs;
        Ok(self)
    }

    /// Counts of generator weights, indexed by weight.
    pub fn weight_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.n() + 1];
        for g in self.generators() {
            hist[g.weight()] += 1;
        }
        while hist.len() > 1 && hist.last() == Some(&0) {
            hist.pop();
        }
        hist
    }
}
