//! Single-qubit Pauli channels and i.i.d. error sampling.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};

const SUM_TOLERANCE: f64 = 1e-12;

/// Distribution over `I, X, Y, Z` applied independently to every qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliChannel {
    probs: [f64; 4],
}

impl PauliChannel {
    pub fn new(p_i: f64, p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        let probs = [p_i, p_x, p_y, p_z];
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::invalid(format!("probabilities must be >= 0, got {probs:?}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::invalid(format!("probabilities sum to {sum}, expected 1")));
        }
        Ok(Self { probs })
    }

    pub fn identity() -> Self {
        Self {
            probs: [1.0, 0.0, 0.0, 0.0],
        }
    }

    /// `(1-ε, ε/3, ε/3, ε/3)` for `0 <= ε <= 3/4`.
    pub fn depolarizing(eps: f64) -> Result<Self> {
        check_range("depolarizing", eps, 0.75)?;
        let third = eps / 3.0;
        Self::new(1.0 - eps, third, third, third)
    }

    /// `(1-ε, ε, 0, 0)`.
    pub fn bit_flip(eps: f64) -> Result<Self> {
        check_range("bit-flip", eps, 1.0)?;
        Self::new(1.0 - eps, eps, 0.0, 0.0)
    }

    /// `(1-ε, 0, 0, ε)`.
    pub fn dephasing(eps: f64) -> Result<Self> {
        check_range("dephasing", eps, 1.0)?;
        Self::new(1.0 - eps, 0.0, 0.0, eps)
    }

    /// Probabilities in the order `I, X, Y, Z`.
    pub fn probs(&self) -> [f64; 4] {
        self.probs
    }

    pub fn prob(&self, l: Letter) -> f64 {
        self.probs[l as usize]
    }

    pub fn p_i(&self) -> f64 {
        self.probs[0]
    }

    pub fn p_x(&self) -> f64 {
        self.probs[1]
    }

    pub fn p_y(&self) -> f64 {
        self.probs[2]
    }

    pub fn p_z(&self) -> f64 {
        self.probs[3]
    }

    /// Probability that a qubit carries an X component (`X` or `Y`).
    pub fn x_marginal(&self) -> f64 {
        self.p_x() + self.p_y()
    }

    /// Probability that a qubit carries a Z component (`Z` or `Y`).
    pub fn z_marginal(&self) -> f64 {
        self.p_z() + self.p_y()
    }

    /// Inverse-CDF draw with letter order `I < X < Y < Z`; `u` is in `[0, 1)`.
    pub fn letter_for(&self, u: f64) -> Letter {
        const ORDER: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];
        let mut acc = 0.0;
        let mut last = Letter::I;
        for (l, &p) in ORDER.iter().zip(&self.probs) {
            if p <= 0.0 {
                continue;
            }
            acc += p;
            last = *l;
            if u < acc {
                return *l;
            }
        }
        last
    }

    pub fn sample_letter<R: Rng + ?Sized>(&self, rng: &mut R) -> Letter {
        self.letter_for(rng.gen::<f64>())
    }
}

fn check_range(name: &str, eps: f64, max: f64) -> Result<()> {
    if !(0.0..=max).contains(&eps) {
        return Err(Error::invalid(format!("{name} parameter must lie in [0, {max}], got {eps}")));
    }
    Ok(())
}

/// Named channel family, parameterized later by ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelKind {
    Depolarizing,
    BitFlip,
    Dephasing,
}

impl ChannelKind {
    pub fn with_eps(self, eps: f64) -> Result<PauliChannel> {
        match self {
            ChannelKind::Depolarizing => PauliChannel::depolarizing(eps),
            ChannelKind::BitFlip => PauliChannel::bit_flip(eps),
            ChannelKind::Dephasing => PauliChannel::dephasing(eps),
        }
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "depolarizing" => Ok(ChannelKind::Depolarizing),
            "bitflip" => Ok(ChannelKind::BitFlip),
            "dephasing" => Ok(ChannelKind::Dephasing),
            _ => Err(Error::invalid(format!(
                "unknown channel {s:?} (expected depolarizing, bitflip or dephasing)"
            ))),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::Depolarizing => "depolarizing",
            ChannelKind::BitFlip => "bitflip",
            ChannelKind::Dephasing => "dephasing",
        })
    }
}

/// Independent draw on each of `n` qubits, qubit 1 first; phase exponent 0.
pub fn sample_error<R: Rng + ?Sized>(ch: &PauliChannel, n: usize, rng: &mut R) -> PauliOperator {
    let mut e = PauliOperator::identity(n);
    for q in 0..n {
        let l = ch.sample_letter(rng);
        if l != Letter::I {
            e.set_letter(q, l);
        }
    }
    e
}
