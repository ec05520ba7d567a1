//! Monte Carlo logical-error-rate experiments.
//!
//! Trial `t` of a point draws its error from ChaCha8 seeded with the master
//! seed and switched to stream `t`, so every trial owns an independent,
//! addressable random sequence. Results depend only on `(seed, trials)`,
//! never on the worker count or scheduling, and the same streams are reused
//! at every noise strength of a sweep.

mod spec;

pub use spec::CodeSpec;

use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channels::{sample_error, ChannelKind, PauliChannel};
use crate::decode::{decode_and_classify, Decoder, DecoderKind, DecoderOptions};
use crate::error::{Error, Result};
use crate::stabilizer::StabilizerCode;

/// Two-sided 95% standard normal quantile.
pub const WILSON_Z: f64 = 1.959963984540054;

pub const CSV_HEADER: &str = "eps,trials,failures,nonconverged,ler,ci_lo,ci_hi,seconds";

const CHUNK: u64 = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub code: CodeSpec,
    pub channel: ChannelKind,
    pub eps: Vec<f64>,
    pub decoder: DecoderKind,
    pub options: DecoderOptions,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be >= 1"));
        }
        if self.workers == 0 {
            return Err(Error::invalid("workers must be >= 1"));
        }
        if self.eps.is_empty() {
            return Err(Error::invalid("noise parameter list is empty"));
        }
        for &e in &self.eps {
            self.channel.with_eps(e)?;
        }
        if self.options.max_iter == 0 {
            return Err(Error::invalid("max_iter must be >= 1"));
        }
        Ok(())
    }
}

/// Statistics of one noise strength.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub eps: f64,
    pub trials: u64,
    /// Logical errors, including non-converged decodes.
    pub failures: u64,
    pub nonconverged: u64,
    pub ler: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub records: Vec<TrialRecord>,
}

/// 95% Wilson score interval for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

/// Generator for trial `t` under master seed `seed`.
pub fn trial_rng(seed: u64, t: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    rng
}

fn run_chunk(
    code: &StabilizerCode,
    ch: &PauliChannel,
    decoder: &Decoder,
    seed: u64,
    range: std::ops::Range<u64>,
) -> Result<(u64, u64)> {
    let (mut failures, mut nonconverged) = (0, 0);
    for t in range {
        let e = sample_error(ch, code.n(), &mut trial_rng(seed, t));
        let c = decode_and_classify(code, &e, decoder)?;
        failures += c.is_failure() as u64;
        nonconverged += !c.converged as u64;
    }
    Ok((failures, nonconverged))
}

/// Runs `trials` independent trials at one channel.
///
/// The work is split into fixed chunks of trial indices; tallies are integer
/// sums, so the result is identical for every worker count.
pub fn run_point(
    code: &StabilizerCode,
    ch: &PauliChannel,
    decoder: &Decoder,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<TrialRecord> {
    if trials == 0 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let chunks = trials.div_ceil(CHUNK);
    let per_chunk: Vec<Result<(u64, u64)>> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| run_chunk(code, ch, decoder, seed, c * CHUNK..((c + 1) * CHUNK).min(trials)))
            .collect()
    });
    let (mut failures, mut nonconverged) = (0, 0);
    for r in per_chunk {
        let (f, nc) = r?;
        failures += f;
        nonconverged += nc;
    }
    let (ci_lo, ci_hi) = wilson_interval(failures, trials);
    Ok(TrialRecord {
        eps: f64::NAN,
        trials,
        failures,
        nonconverged,
        ler: failures as f64 / trials as f64,
        ci_lo,
        ci_hi,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// One record per noise strength, in input order.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let code = cfg.code.build()?;
    run_sweep_on(&code, cfg)
}

/// As [`run_sweep`] with an already constructed code.
pub fn run_sweep_on(code: &StabilizerCode, cfg: &ExperimentConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let mut records = Vec::with_capacity(cfg.eps.len());
    for &eps in &cfg.eps {
        let ch = cfg.channel.with_eps(eps)?;
        let decoder = Decoder::build(cfg.decoder, code, &ch, cfg.options)?;
        let mut rec = run_point(code, &ch, &decoder, cfg.trials, cfg.seed, cfg.workers)?;
        rec.eps = eps;
        records.push(rec);
    }
    Ok(SweepResult { records })
}

/// Plain decimal with at most 10 significant digits, trailing zeros dropped.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32 + 1;
    let decimals = (10 - magnitude).max(0) as usize;
    let x = if magnitude > 10 {
        let scale = 10f64.powi(magnitude - 10);
        (x / scale).round() * scale
    } else {
        x
    };
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

impl SweepResult {
    /// CSV with [`CSV_HEADER`]. The `seconds` column is written as `0` unless
    /// `timing` is set, so output is reproducible byte for byte.
    pub fn to_csv(&self, timing: bool) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let secs = if timing { r.seconds } else { 0.0 };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                format_sig(r.eps),
                r.trials,
                r.failures,
                r.nonconverged,
                format_sig(r.ler),
                format_sig(r.ci_lo),
                format_sig(r.ci_hi),
                format_sig(secs)
            )
            .expect("writing to a String");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bit_flip_code, steane};

    fn config(code: CodeSpec, channel: ChannelKind, eps: Vec<f64>, decoder: DecoderKind) -> ExperimentConfig {
        ExperimentConfig {
            code,
            channel,
            eps,
            decoder,
            options: DecoderOptions::default(),
            trials: 2000,
            seed: 11,
            workers: 2,
        }
    }

    #[test]
    fn number_format() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(0.05), "0.05");
        assert_eq!(format_sig(1.0 / 3.0), "0.3333333333");
        assert_eq!(format_sig(123.456), "123.456");
        assert_eq!(format_sig(2.0 / 3.0 * 1e-5), "0.000006666666667");
        assert_eq!(format_sig(12345678901.0), "12345678900");
    }

    #[test]
    fn wilson_properties() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
        assert!(((lo + hi) / 2.0 - 0.5).abs() < 1e-12);
        let (lo, hi) = wilson_interval(100, 100);
        assert!(lo < 1.0 && hi == 1.0);
    }

    #[test]
    fn zero_noise_never_fails() {
        let code = steane();
        let ch = PauliChannel::identity();
        let dec = Decoder::build(DecoderKind::Bp, &code, &ch, DecoderOptions::default()).unwrap();
        let rec = run_point(&code, &ch, &dec, 500, 3, 3).unwrap();
        assert_eq!((rec.failures, rec.nonconverged), (0, 0));
    }

    #[test]
    fn worker_count_does_not_matter() {
        let code = bit_flip_code(3).unwrap();
        let ch = PauliChannel::bit_flip(0.2).unwrap();
        let dec = Decoder::build(DecoderKind::MlCoset, &code, &ch, DecoderOptions::default()).unwrap();
        let a = run_point(&code, &ch, &dec, 5000, 9, 1).unwrap();
        let b = run_point(&code, &ch, &dec, 5000, 9, 7).unwrap();
        assert_eq!((a.failures, a.nonconverged), (b.failures, b.nonconverged));
    }

    #[test]
    fn sweep_order_and_errors() {
        let cfg = config(CodeSpec::Steane, ChannelKind::Depolarizing, vec![0.05, 0.0, 0.01], DecoderKind::MlCoset);
        let res = run_sweep(&cfg).unwrap();
        let eps: Vec<f64> = res.records.iter().map(|r| r.eps).collect();
        assert_eq!(eps, vec![0.05, 0.0, 0.01]);
        assert_eq!(res.records[1].failures, 0);
        let csv = res.to_csv(false);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",0")));

        let mut empty = cfg.clone();
        empty.eps.clear();
        assert!(run_sweep(&empty).is_err());
        let mut bad = cfg.clone();
        bad.eps = vec![0.9];
        assert!(run_sweep(&bad).is_err());
        let mut zero = cfg;
        zero.trials = 0;
        assert!(run_sweep(&zero).is_err());
    }

    #[test]
    fn single_point_sweep_matches_run_point() {
        let cfg = config(CodeSpec::BitFlip(3), ChannelKind::BitFlip, vec![0.1], DecoderKind::MlError);
        let sweep = run_sweep(&cfg).unwrap();
        let code = bit_flip_code(3).unwrap();
        let ch = PauliChannel::bit_flip(0.1).unwrap();
        let dec = Decoder::build(DecoderKind::MlError, &code, &ch, DecoderOptions::default()).unwrap();
        let rec = run_point(&code, &ch, &dec, cfg.trials, cfg.seed, 1).unwrap();
        assert_eq!(sweep.records[0].failures, rec.failures);
    }
}
