//! Code families: classical component codes, CSS, Steane, Shor, repetition
//! style quantum codes, surface and toric lattices, hypergraph and lifted
//! products, and two-level concatenation.
//!
//! Every constructor returns a validated [`StabilizerCode`]. CSS-type
//! constructors store the X-type rows first, then the Z-type rows, and keep
//! redundant rows.

mod lattice;
mod product;

pub use lattice::{surface, toric};
pub use product::{circulant_lift, hgp, lifted_product, poly_transpose, CirculantPoly, PolyMatrix};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::pauli::{Letter, PauliOperator};
use crate::stabilizer::distance::binomial;
use crate::stabilizer::{
    validate, CheckMatrix, LogicalPair, StabilizerCode, DEFAULT_SEARCH_BUDGET,
};

/// Classical binary linear code given by an `m x n` parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCode {
    h: BitMatrix,
}

impl ClassicalCode {
    pub fn new(h: BitMatrix) -> Result<Self> {
        if h.cols() == 0 {
            return Err(Error::invalid("parity-check matrix needs at least one column"));
        }
        Ok(Self { h })
    }

    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn m(&self) -> usize {
        self.h.rows()
    }

    /// Dimension `n - rank(h)`.
    pub fn k(&self) -> usize {
        self.n() - self.h.rank()
    }

    /// The code whose parity-check matrix is `hᵀ`.
    pub fn transpose(&self) -> Result<Self> {
        Self::new(self.h.transpose())
    }
}

/// `(L-1) x L` checks `e_i + e_{i+1}`.
pub fn repetition(l: usize) -> Result<ClassicalCode> {
    if l < 2 {
        return Err(Error::invalid(format!("repetition length must be >= 2, got {l}")));
    }
    ClassicalCode::new(BitMatrix::from_fn(l - 1, l, |i, j| j == i || j == i + 1))
}

/// `[7,4,3]` Hamming code; column `j` is `j + 1` in binary, most significant
/// bit in row 0.
pub fn hamming_7_4() -> ClassicalCode {
    ClassicalCode::new(BitMatrix::from_fn(3, 7, |i, j| (j + 1) >> (2 - i) & 1 == 1))
        .expect("nonempty")
}

/// Minimum weight of a nonzero codeword, searched up to `max_weight`.
///
/// `None` covers both a trivial kernel and the absence of a codeword within
/// the cap.
pub fn classical_distance(c: &ClassicalCode, max_weight: usize) -> Result<Option<usize>> {
    classical_distance_with_budget(c, max_weight, DEFAULT_SEARCH_BUDGET)
}

pub fn classical_distance_with_budget(
    c: &ClassicalCode,
    max_weight: usize,
    budget: u128,
) -> Result<Option<usize>> {
    let n = c.n();
    let max_weight = max_weight.min(n);
    if c.h.rank() == n {
        return Ok(None);
    }
    let needed = (1..=max_weight).fold(0u128, |a, w| a.saturating_add(binomial(n, w)));
    if needed > budget {
        return Err(Error::ResourceGuard { needed, budget });
    }
    let columns: Vec<BitVec> = (0..n).map(|j| c.h.column(j)).collect();

    fn hit(cols: &[BitVec], acc: &BitVec, start: usize, left: usize) -> bool {
        let n = cols.len();
        for j in start..=n - left {
            let next = acc.xor(&cols[j]);
            let found = if left == 1 {
                next.is_zero()
            } else {
                hit(cols, &next, j + 1, left - 1)
            };
            if found {
                return true;
            }
        }
        false
    }

    let zero = BitVec::zeros(c.m());
    Ok((1..=max_weight).find(|&w| hit(&columns, &zero, 0, w)))
}

/// Builds and validates a CSS code from an X-check block and a Z-check block.
pub(crate) fn css_from_blocks(hx: &BitMatrix, hz: &BitMatrix) -> Result<StabilizerCode> {
    Error::check_len(hx.cols(), hz.cols())?;
    let n = hx.cols();
    let x_part = hx.vstack(&BitMatrix::zeros(hz.rows(), n))?;
    let z_part = BitMatrix::zeros(hx.rows(), n).vstack(hz)?;
    validate(CheckMatrix::new(x_part, z_part)?, true)
}

/// CSS code with X-type checks from `h1` and Z-type checks from `h2`.
///
/// Requires `h2 h1ᵀ = 0`; a violation reports the first offending row pair.
pub fn css(h1: &ClassicalCode, h2: &ClassicalCode) -> Result<StabilizerCode> {
    Error::check_len(h1.n(), h2.n())?;
    let prod = h2.h.mul_transpose(&h1.h)?;
    for i in 0..prod.rows() {
        if let Some(j) = prod.row(i).first_one() {
            return Err(Error::DualContainment { h2_row: i, h1_row: j });
        }
    }
    css_from_blocks(&h1.h, &h2.h)
}

/// `[[7,1,3]]` Steane code.
pub fn steane() -> StabilizerCode {
    let h = hamming_7_4();
    css(&h, &h).expect("Hamming code contains its dual")
}

fn from_strings(n: usize, gens: &[&str], allow_redundant: bool) -> Result<StabilizerCode> {
    let ops = gens
        .iter()
        .map(|g| PauliOperator::parse(g, n))
        .collect::<Result<Vec<_>>>()?;
    validate(CheckMatrix::from_generators(n, &ops)?, allow_redundant)
}

/// `[[9,1,3]]` Shor code with its standard eight generators.
pub fn shor() -> StabilizerCode {
    from_strings(
        9,
        &[
            "Z1 Z2",
            "Z2 Z3",
            "Z4 Z5",
            "Z5 Z6",
            "Z7 Z8",
            "Z8 Z9",
            "X1 X2 X3 X4 X5 X6",
            "X4 X5 X6 X7 X8 X9",
        ],
        false,
    )
    .expect("Shor generators are valid")
}

fn adjacent_pairs(n: usize, letter: Letter) -> Result<StabilizerCode> {
    if n < 2 {
        return Err(Error::invalid(format!("block length must be >= 2, got {n}")));
    }
    let ops: Vec<PauliOperator> = (0..n - 1)
        .map(|i| {
            let mut p = PauliOperator::single(n, i, letter);
            p.set_letter(i + 1, letter);
            p
        })
        .collect();
    validate(CheckMatrix::from_generators(n, &ops)?, false)
}

/// `n`-qubit bit-flip code, generators `Z_i Z_{i+1}`.
pub fn bit_flip_code(n: usize) -> Result<StabilizerCode> {
    adjacent_pairs(n, Letter::Z)
}

/// `n`-qubit phase-flip code, generators `X_i X_{i+1}`.
pub fn phase_flip_code(n: usize) -> Result<StabilizerCode> {
    adjacent_pairs(n, Letter::X)
}

/// Replaces every qubit of `outer` by a block of `inner`.
///
/// The result carries the inner generators on each block, then the outer
/// generators with X and Z mapped to the inner logical operators, and the
/// outer logical operators lifted the same way.
pub fn concatenate(outer: &StabilizerCode, inner: &StabilizerCode) -> Result<StabilizerCode> {
    if inner.k() != 1 {
        return Err(Error::invalid(format!(
            "inner code must encode one qubit, got k = {}",
            inner.k()
        )));
    }
    let m = inner.n();
    let n = outer.n() * m;
    let lx = inner.logicals()[0].x.to_symplectic();
    let lz = inner.logicals()[0].z.to_symplectic();

    // Places an inner-length symplectic vector on block `b`.
    let place = |acc: &mut BitVec, v: &BitVec, b: usize| {
        for i in v.iter_ones() {
            let (half, q) = if i < m { (0, i) } else { (n, i - m) };
            acc.flip(half + b * m + q);
        }
    };
    let lift = |p: &PauliOperator| -> Result<PauliOperator> {
        let mut acc = BitVec::zeros(2 * n);
        for b in 0..outer.n() {
            let (x, z) = p.letter(b).bits();
            if x {
                place(&mut acc, &lx, b);
            }
            if z {
                place(&mut acc, &lz, b);
            }
        }
        PauliOperator::from_symplectic(&acc, n)
    };

    let mut gens = Vec::with_capacity(outer.n() * inner.r() + outer.r());
    for b in 0..outer.n() {
        for g in inner.generators() {
            let mut acc = BitVec::zeros(2 * n);
            place(&mut acc, &g.to_symplectic(), b);
            gens.push(PauliOperator::from_symplectic(&acc, n)?);
        }
    }
    for (row, g) in outer.generators().iter().enumerate() {
        if let Some(qubit) = (0..g.n()).find(|&q| g.letter(q) == Letter::Y) {
            return Err(Error::MixedLetter { row, qubit });
        }
        gens.push(lift(g)?);
    }
    let code = validate(CheckMatrix::from_generators(n, &gens)?, true)?;
    let pairs = outer
        .logicals()
        .iter()
        .map(|p| {
            Ok(LogicalPair {
                x: lift(&p.x)?,
                z: lift(&p.z)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    code.with_logicals(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::{is_degenerate, min_distance, Residual};

    fn rowspace_equal(a: &StabilizerCode, b: &StabilizerCode) -> bool {
        let (ma, mb) = (a.check().symplectic(), b.check().symplectic());
        (0..ma.rows()).all(|i| mb.in_rowspace(&ma.row(i)).unwrap())
            && (0..mb.rows()).all(|i| ma.in_rowspace(&mb.row(i)).unwrap())
    }

    #[test]
    fn repetition_matrices() {
        assert_eq!(repetition(3).unwrap().h(), &BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]));
        assert_eq!(repetition(2).unwrap().h(), &BitMatrix::from_dense(&[[1u8, 1]]));
        for l in 2..9 {
            assert_eq!(repetition(l).unwrap().h().rank(), l - 1);
        }
        assert!(repetition(1).is_err());
    }

    #[test]
    fn hamming_layout_and_distance() {
        let h = hamming_7_4();
        assert_eq!(
            h.h(),
            &BitMatrix::from_dense(&[
                [0u8, 0, 0, 1, 1, 1, 1],
                [0, 1, 1, 0, 0, 1, 1],
                [1, 0, 1, 0, 1, 0, 1],
            ])
        );
        assert_eq!(h.h().rank(), 3);
        assert!(h.h().mul_transpose(h.h()).unwrap().is_zero());
        assert_eq!(classical_distance(&h, 7).unwrap(), Some(3));
    }

    #[test]
    fn classical_distances() {
        let r3 = repetition(3).unwrap();
        assert_eq!(classical_distance(&r3, 3).unwrap(), Some(3));
        assert_eq!(classical_distance(&r3, 2).unwrap(), None);
        assert_eq!(classical_distance(&r3.transpose().unwrap(), 2).unwrap(), None);
        let big = ClassicalCode::new(BitMatrix::zeros(1, 60)).unwrap();
        assert!(matches!(
            classical_distance_with_budget(&big, 30, 1000),
            Err(Error::ResourceGuard { .. })
        ));
    }

    #[test]
    fn steane_parameters() {
        let code = steane();
        assert_eq!((code.n(), code.k(), code.r()), (7, 1, 6));
        assert!(code.is_css());
        assert_eq!(min_distance(&code, 3).unwrap(), Some(3));
        assert_eq!(min_distance(&code, 2).unwrap(), None);
        assert!(!is_degenerate(&code, 3).unwrap());
        // X1 is caught by the Z-type rows: column 1 of H is (0,0,1).
        let s = code.syndrome(&PauliOperator::parse("X1", 7).unwrap()).unwrap();
        assert_eq!(s.to_string(), "000001");
    }

    #[test]
    fn css_rejects_non_orthogonal_pair() {
        let a = ClassicalCode::new(BitMatrix::from_dense(&[[1u8, 0, 0]])).unwrap();
        let b = ClassicalCode::new(BitMatrix::from_dense(&[[0u8, 1, 1], [1, 1, 0]])).unwrap();
        assert_eq!(css(&a, &b).unwrap_err(), Error::DualContainment { h2_row: 1, h1_row: 0 });
    }

    #[test]
    fn shor_parameters() {
        let code = shor();
        assert_eq!((code.n(), code.k(), code.r()), (9, 1, 8));
        assert_eq!(min_distance(&code, 3).unwrap(), Some(3));
        assert!(is_degenerate(&code, 3).unwrap());
        let xs = PauliOperator::x_type(BitVec::ones(9));
        let zs = PauliOperator::z_type(BitVec::ones(9));
        assert_eq!(code.classify_residual(&xs).unwrap(), Residual::Logical);
        assert_eq!(code.classify_residual(&zs).unwrap(), Residual::Logical);
    }

    #[test]
    fn shor_by_concatenation() {
        let cat = concatenate(&phase_flip_code(3).unwrap(), &bit_flip_code(3).unwrap()).unwrap();
        assert_eq!((cat.n(), cat.k()), (9, 1));
        assert!(rowspace_equal(&cat, &shor()));
        assert_eq!(min_distance(&cat, 3).unwrap(), Some(3));

        let bb = concatenate(&bit_flip_code(3).unwrap(), &bit_flip_code(3).unwrap()).unwrap();
        assert_eq!((bb.n(), bb.k()), (9, 1));
    }

    #[test]
    fn concatenation_rejects_y_and_multi_qubit_inner() {
        let outer = from_strings(2, &["Y1 Y2"], false).unwrap();
        let inner = bit_flip_code(3).unwrap();
        assert_eq!(concatenate(&outer, &inner).unwrap_err(), Error::MixedLetter { row: 0, qubit: 0 });
        let two = from_strings(3, &["Z1 Z2"], false).unwrap();
        assert!(concatenate(&inner, &two).is_err());
    }

    #[test]
    fn self_orthogonal_css_dimension() {
        let h = hamming_7_4();
        let code = css(&h, &h).unwrap();
        assert_eq!(code.k(), 7 - 2 * h.h().rank());
    }
}
