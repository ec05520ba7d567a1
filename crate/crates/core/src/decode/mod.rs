//! Decoders and residual classification.
//!
//! Two exhaustive table decoders (maximum-likelihood coset and most likely
//! single error) for small codes, and belief propagation run separately on
//! the X- and Z-check Tanner graphs of CSS codes.

mod bp;
mod table;

pub use bp::{bp_decode, BpOutput, BpVariant, TannerGraph, DEFAULT_MIN_SUM_NORM};
pub use table::{
    build_ml_coset_table, build_ml_error_table, ml_error_decode, CosetTable, MlErrorTable,
    SyndromeTable, EXACT_TIE_MAX_QUBITS, TABLE_MAX_CELLS, TABLE_MAX_QUBITS, TABLE_MAX_ROWS,
};

use std::fmt;
use std::str::FromStr;

use crate::channels::PauliChannel;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::pauli::PauliOperator;
use crate::stabilizer::{Residual, StabilizerCode, Syndrome};

pub const DEFAULT_MAX_ITER: usize = 50;

/// Smallest prior handed to BP; marginals are clamped into
/// `[PRIOR_FLOOR, 1/2 - PRIOR_FLOOR]`.
pub const PRIOR_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub estimate: PauliOperator,
    /// Whether the estimate reproduces the input syndrome.
    pub converged: bool,
    pub iterations: usize,
}

fn clamp_prior(p: f64) -> f64 {
    p.clamp(PRIOR_FLOOR, 0.5 - PRIOR_FLOOR)
}

/// BP decoder for a CSS code with its Tanner graphs and priors fixed.
///
/// X-type rows detect Z errors, so the X-row syndrome is decoded on the H_X
/// graph with prior `p_z + p_y`; the Z-row syndrome on the H_Z graph with
/// prior `p_x + p_y`. Correlations between the two halves are ignored.
#[derive(Clone, Debug)]
pub struct CssBpDecoder {
    n: usize,
    x_rows: Vec<usize>,
    z_rows: Vec<usize>,
    hx_graph: TannerGraph,
    hz_graph: TannerGraph,
    z_prior: f64,
    x_prior: f64,
    max_iter: usize,
    variant: BpVariant,
}

impl CssBpDecoder {
    pub fn new(
        code: &StabilizerCode,
        ch: &PauliChannel,
        max_iter: usize,
        variant: BpVariant,
    ) -> Result<Self> {
        let split = code.css().ok_or_else(|| {
            let row = (0..code.r())
                .find(|&i| !code.check().hx().row_is_zero(i) && !code.check().hz().row_is_zero(i))
                .unwrap_or(0);
            Error::NotCss(row)
        })?;
        if max_iter == 0 {
            return Err(Error::invalid("max_iter must be >= 1"));
        }
        Ok(Self {
            n: code.n(),
            x_rows: split.x_rows.clone(),
            z_rows: split.z_rows.clone(),
            hx_graph: TannerGraph::new(&split.hx),
            hz_graph: TannerGraph::new(&split.hz),
            z_prior: clamp_prior(ch.z_marginal()),
            x_prior: clamp_prior(ch.x_marginal()),
            max_iter,
            variant,
        })
    }

    pub fn decode(&self, s: &Syndrome) -> Result<DecodeResult> {
        Error::check_len(self.x_rows.len() + self.z_rows.len(), s.len())?;
        let pick = |rows: &[usize]| BitVec::from_bools(&rows.iter().map(|&i| s.get(i)).collect::<Vec<_>>());
        let z_side = bp_decode(&self.hx_graph, &pick(&self.x_rows), self.z_prior, self.max_iter, self.variant)?;
        let x_side = bp_decode(&self.hz_graph, &pick(&self.z_rows), self.x_prior, self.max_iter, self.variant)?;
        let estimate = PauliOperator::new(x_side.estimate, z_side.estimate)?;
        debug_assert_eq!(estimate.n(), self.n);
        Ok(DecodeResult {
            estimate,
            converged: x_side.converged && z_side.converged,
            iterations: x_side.iterations.max(z_side.iterations),
        })
    }
}

/// One-shot CSS decode; see [`CssBpDecoder`].
pub fn css_decode(
    code: &StabilizerCode,
    s: &Syndrome,
    ch: &PauliChannel,
    max_iter: usize,
    variant: BpVariant,
) -> Result<DecodeResult> {
    CssBpDecoder::new(code, ch, max_iter, variant)?.decode(s)
}

/// Decoder names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecoderKind {
    MlCoset,
    MlError,
    Bp,
    MinSum,
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mlcoset" => Ok(DecoderKind::MlCoset),
            "mlerror" => Ok(DecoderKind::MlError),
            "bp" => Ok(DecoderKind::Bp),
            "minsum" => Ok(DecoderKind::MinSum),
            _ => Err(Error::invalid(format!(
                "unknown decoder {s:?} (expected mlcoset, mlerror, bp or minsum)"
            ))),
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::MlCoset => "mlcoset",
            DecoderKind::MlError => "mlerror",
            DecoderKind::Bp => "bp",
            DecoderKind::MinSum => "minsum",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoderOptions {
    pub max_iter: usize,
    pub norm: f64,
}

impl Default for DecoderOptions {
    fn default() -> Self {
        Self {
            max_iter: DEFAULT_MAX_ITER,
            norm: DEFAULT_MIN_SUM_NORM,
        }
    }
}

/// A decoder prepared for one code and channel.
#[derive(Clone, Debug)]
pub enum Decoder {
    MlCoset(CosetTable),
    MlError(MlErrorTable),
    Bp(CssBpDecoder),
}

impl Decoder {
    pub fn build(
        kind: DecoderKind,
        code: &StabilizerCode,
        ch: &PauliChannel,
        opts: DecoderOptions,
    ) -> Result<Self> {
        Ok(match kind {
            DecoderKind::MlCoset => Decoder::MlCoset(build_ml_coset_table(code, ch)?),
            DecoderKind::MlError => Decoder::MlError(build_ml_error_table(code, ch)?),
            DecoderKind::Bp => {
                Decoder::Bp(CssBpDecoder::new(code, ch, opts.max_iter, BpVariant::SumProduct)?)
            }
            DecoderKind::MinSum => Decoder::Bp(CssBpDecoder::new(
                code,
                ch,
                opts.max_iter,
                BpVariant::MinSum { norm: opts.norm },
            )?),
        })
    }

    pub fn decode(&self, s: &Syndrome) -> Result<DecodeResult> {
        match self {
            Decoder::MlCoset(t) | Decoder::MlError(t) => t.decode(s),
            Decoder::Bp(d) => d.decode(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// The residual is a stabilizer.
    Success,
    /// The residual is a nontrivial logical, or (when `detectable`) still has
    /// a nonzero syndrome because the decoder did not converge.
    LogicalError { detectable: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub outcome: Outcome,
    pub converged: bool,
}

impl Classification {
    pub fn is_failure(&self) -> bool {
        self.outcome != Outcome::Success
    }
}

/// Decodes the syndrome of `e` and classifies the residual `estimate * e`.
pub fn decode_and_classify(
    code: &StabilizerCode,
    e: &PauliOperator,
    decoder: &Decoder,
) -> Result<Classification> {
    let result = decoder.decode(&code.syndrome(e)?)?;
    let outcome = match code.classify_residual(&result.estimate.multiply(e)?)? {
        Residual::Stabilizer => Outcome::Success,
        Residual::Logical => Outcome::LogicalError { detectable: false },
        Residual::Detectable => Outcome::LogicalError { detectable: true },
    };
    Ok(Classification {
        outcome,
        converged: result.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{shor, steane, surface};

    #[test]
    fn css_decode_basics() {
        let code = steane();
        let ch = PauliChannel::depolarizing(0.05).unwrap();
        let zero = css_decode(&code, &BitVec::zeros(6), &ch, 10, BpVariant::SumProduct).unwrap();
        assert!(zero.estimate.is_identity() && zero.converged && zero.iterations == 0);

        let z3 = PauliOperator::parse("Z3", 7).unwrap();
        let out = css_decode(&code, &code.syndrome(&z3).unwrap(), &ch, 20, BpVariant::SumProduct).unwrap();
        assert!(out.converged);
        let residual = out.estimate.multiply(&z3).unwrap();
        assert_eq!(code.classify_residual(&residual).unwrap(), Residual::Stabilizer);
    }

    #[test]
    fn css_priors_are_marginals() {
        let eps = 0.09;
        let ch = PauliChannel::depolarizing(eps).unwrap();
        let dec = CssBpDecoder::new(&steane(), &ch, 5, BpVariant::SumProduct).unwrap();
        assert!((dec.z_prior - 2.0 * eps / 3.0).abs() < 1e-15);
        assert!((dec.x_prior - 2.0 * eps / 3.0).abs() < 1e-15);
        let bf = CssBpDecoder::new(&steane(), &PauliChannel::bit_flip(0.1).unwrap(), 5, BpVariant::SumProduct).unwrap();
        assert_eq!(bf.z_prior, PRIOR_FLOOR);
    }

    #[test]
    fn non_css_rejected() {
        let ops: Vec<PauliOperator> = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"].iter().map(|g| g.parse().unwrap()).collect();
        let code = crate::stabilizer::validate(crate::stabilizer::CheckMatrix::from_generators(5, &ops).unwrap(), false).unwrap();
        let err = CssBpDecoder::new(&code, &PauliChannel::depolarizing(0.1).unwrap(), 5, BpVariant::SumProduct).unwrap_err();
        assert_eq!(err, Error::NotCss(0));
    }

    #[test]
    fn classification_paths() {
        let code = steane();
        let ch = PauliChannel::depolarizing(0.01).unwrap();
        let dec = Decoder::build(DecoderKind::MlCoset, &code, &ch, DecoderOptions::default()).unwrap();
        let id = PauliOperator::identity(7);
        assert_eq!(decode_and_classify(&code, &id, &dec).unwrap().outcome, Outcome::Success);
        let g = code.generator(0).with_phase(2);
        assert_eq!(decode_and_classify(&code, &g, &dec).unwrap().outcome, Outcome::Success);
        let xbar = code.logicals()[0].x.clone();
        assert_eq!(
            decode_and_classify(&code, &xbar, &dec).unwrap().outcome,
            Outcome::LogicalError { detectable: false }
        );
        for phase in 0..4 {
            let e = PauliOperator::parse("X2 Z5", 7).unwrap().with_phase(phase);
            let c = decode_and_classify(&code, &e, &dec).unwrap();
            assert_eq!(c, decode_and_classify(&code, &e.clone().with_phase(0), &dec).unwrap());
        }
    }

    #[test]
    fn shor_weight_one_under_ml_coset() {
        let code = shor();
        let ch = PauliChannel::depolarizing(0.05).unwrap();
        let dec = Decoder::build(DecoderKind::MlCoset, &code, &ch, DecoderOptions::default()).unwrap();
        for e in crate::stabilizer::errors_up_to_weight(9, 1) {
            assert_eq!(decode_and_classify(&code, &e, &dec).unwrap().outcome, Outcome::Success, "{e}");
        }
    }

    #[test]
    fn bp_on_surface() {
        let code = surface(3).unwrap();
        let ch = PauliChannel::depolarizing(0.03).unwrap();
        let dec = Decoder::build(DecoderKind::MinSum, &code, &ch, DecoderOptions::default()).unwrap();
        let e = PauliOperator::parse("X5", 13).unwrap();
        let c = decode_and_classify(&code, &e, &dec).unwrap();
        assert_eq!(c.converged, c.outcome != Outcome::LogicalError { detectable: true });
    }
}
