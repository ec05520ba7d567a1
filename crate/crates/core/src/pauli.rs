//! n-qubit Pauli operators in binary symplectic form.
//!
//! An operator is stored as `i^phase * E(x, z)` where
//! `E(x, z) = (i^{x_1 z_1} X^{x_1} Z^{z_1}) ⊗ ... ⊗ (i^{x_n z_n} X^{x_n} Z^{z_n})`.
//! With this convention `E(1, 1) = Y`, so every `E(x, z)` is Hermitian and the
//! phase exponent alone records any non-Hermitian scalar.
//!
//! The symplectic vector of an operator is laid out `[x | z]`, matching the
//! check-matrix layout `[H_X | H_Z]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const NON_IDENTITY: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// `E(x, z)` with zero phase exponent.
    pub fn new(x: BitVec, z: BitVec) -> Result<Self> {
        Error::check_len(x.len(), z.len())?;
        Ok(Self { x, z, phase: 0 })
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase = phase_exp % 4;
        self
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let n = letters.len();
        let mut p = Self::identity(n);
        for (q, &l) in letters.iter().enumerate() {
            p.set_letter(q, l);
        }
        p
    }

    /// Weight-one operator `letter` on qubit `q` (0-indexed).
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        p.set_letter(q, letter);
        p
    }

    /// Pure X-type operator `X^support`.
    pub fn x_type(x: BitVec) -> Self {
        let n = x.len();
        Self {
            x,
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// Pure Z-type operator `Z^support`.
    pub fn z_type(z: BitVec) -> Self {
        let n = z.len();
        Self {
            x: BitVec::zeros(n),
            z,
            phase: 0,
        }
    }

    /// Inverse of [`PauliOperator::to_symplectic`]; the phase exponent is zero.
    pub fn from_symplectic(v: &BitVec, n: usize) -> Result<Self> {
        Error::check_len(2 * n, v.len())?;
        Ok(Self {
            x: v.slice(0, n),
            z: v.slice(n, n),
            phase: 0,
        })
    }

    /// `[x | z]`, length `2n`.
    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set_letter(&mut self, q: usize, letter: Letter) {
        let (x, z) = letter.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).iter_ones().collect()
    }

    /// `c·bᵀ + a·dᵀ mod 2` for `self = [a|b]`, `other = [c|d]`. Phases are ignored.
    pub fn symplectic_product(&self, other: &PauliOperator) -> Result<bool> {
        Error::check_len(self.n(), other.n())?;
        Ok(self.symp_unchecked(other))
    }

    #[inline]
    pub(crate) fn symp_unchecked(&self, other: &PauliOperator) -> bool {
        self.z.dot(&other.x) ^ self.x.dot(&other.z)
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        Ok(!self.symplectic_product(other)?)
    }

    /// Operator product `self * other`, phase included.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        Error::check_len(self.n(), other.n())?;
        // Per qubit: i^{ab} X^a Z^b · i^{cd} X^c Z^d = i^{ab + cd + 2bc} X^{a^c} Z^{b^d},
        // and re-absorbing into E(a^c, b^d) costs i^{-(a^c)(b^d)}.
        let mut ab = 0u32;
        let mut cd = 0u32;
        let mut bc = 0u32;
        let mut merged = 0u32;
        let words = self
            .x
            .words()
            .iter()
            .zip(self.z.words())
            .zip(other.x.words().iter().zip(other.z.words()));
        for ((&a, &b), (&c, &d)) in words {
            ab += (a & b).count_ones();
            cd += (c & d).count_ones();
            bc += (b & c).count_ones();
            merged += ((a ^ c) & (b ^ d)).count_ones();
        }
        let exp = (self.phase as u32 + other.phase as u32 + ab + cd + 2 * bc + 4 * merged - merged) % 4;
        Ok(PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: exp as u8,
        })
    }

    /// Adjoint: `(i^φ E)† = i^{-φ} E`.
    pub fn adjoint(&self) -> PauliOperator {
        let mut p = self.clone();
        p.phase = (4 - self.phase) % 4;
        p
    }

    /// Parses the text grammar used by the CLI for an `n`-qubit operator.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut p = Self::identity(n);
        let mut tokens = s.split_whitespace().peekable();
        if let Some(&first) = tokens.peek() {
            let phase = match first {
                "+" => Some(0),
                "i" | "+i" => Some(1),
                "-" => Some(2),
                "-i" => Some(3),
                _ => None,
            };
            if let Some(ph) = phase {
                p.phase = ph;
                tokens.next();
            }
        }
        for tok in tokens {
            if tok == "I" {
                continue;
            }
            let mut chars = tok.chars();
            let letter = match chars.next() {
                Some('X') => Letter::X,
                Some('Y') => Letter::Y,
                Some('Z') => Letter::Z,
                _ => return Err(Error::invalid(format!("bad Pauli token {tok:?}"))),
            };
            let idx: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::invalid(format!("bad qubit index in {tok:?}")))?;
            if idx == 0 || idx > n {
                return Err(Error::invalid(format!("qubit index {idx} outside 1..={n}")));
            }
            if p.letter(idx - 1) != Letter::I {
                return Err(Error::invalid(format!("qubit {idx} listed twice")));
            }
            p.set_letter(idx - 1, letter);
        }
        Ok(p)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i ", "- ", "-i "][self.phase as usize];
        f.write_str(prefix)?;
        if self.is_identity() {
            return f.write_str("I");
        }
        let mut first = true;
        for q in self.support() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}{}", self.letter(q).as_char(), q + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli[n={}; {}]", self.n(), self)
    }
}

/// Dense letter string such as `"XIZY"`, phase zero.
impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'I' | '_' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                'Z' => Ok(Letter::Z),
                other => Err(Error::invalid(format!("bad Pauli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_letters(&letters))
    }
}
