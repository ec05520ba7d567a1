mod common;

use common::bit_flip_failure;
use qec_core::channels::{ChannelKind, PauliChannel};
use qec_core::constructions::bit_flip_code;
use qec_core::decode::{Decoder, DecoderKind, DecoderOptions};
use qec_core::harness::{run_point, run_sweep, wilson_interval, CodeSpec, ExperimentConfig};

#[test]
fn wilson_intervals_cover_the_exact_rate() {
    let code = bit_flip_code(3).unwrap();
    let eps = 0.1;
    let ch = PauliChannel::bit_flip(eps).unwrap();
    let dec = Decoder::build(DecoderKind::MlCoset, &code, &ch, DecoderOptions::default()).unwrap();
    let exact = bit_flip_failure(eps);
    let covered = (0..100u64)
        .filter(|&seed| {
            let rec = run_point(&code, &ch, &dec, 2000, 1000 + seed, 4).unwrap();
            rec.ci_lo <= exact && exact <= rec.ci_hi
        })
        .count();
    assert!(covered >= 90, "covered {covered} of 100");
}

#[test]
fn wilson_matches_closed_form() {
    // Hand evaluation of the score interval for 10 of 100.
    let (lo, hi) = wilson_interval(10, 100);
    assert!((lo - 0.05522914).abs() < 1e-7, "{lo}");
    assert!((hi - 0.17436566).abs() < 1e-7, "{hi}");
}

#[test]
fn tallies_reconcile() {
    for decoder in [DecoderKind::Bp, DecoderKind::MinSum, DecoderKind::MlError] {
        let cfg = ExperimentConfig {
            code: CodeSpec::HgpRep(3, 3),
            channel: ChannelKind::Depolarizing,
            eps: vec![0.01, 0.1, 0.3],
            decoder,
            options: DecoderOptions::default(),
            trials: 3000,
            seed: 4,
            workers: 3,
        };
        for r in run_sweep(&cfg).unwrap().records {
            assert!(r.failures <= r.trials);
            assert!(r.nonconverged <= r.failures);
            assert_eq!(r.ler, r.failures as f64 / r.trials as f64);
            assert!(r.ci_lo <= r.ler && r.ler <= r.ci_hi);
        }
    }
}

#[test]
fn surface_bp_rate_grows_with_noise() {
    let cfg = ExperimentConfig {
        code: CodeSpec::Surface(3),
        channel: ChannelKind::Depolarizing,
        eps: vec![0.001, 0.01, 0.05],
        decoder: DecoderKind::Bp,
        options: DecoderOptions::default(),
        trials: 20_000,
        seed: 8,
        workers: 4,
    };
    let recs = run_sweep(&cfg).unwrap().records;
    for w in recs.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let sd = |r: &qec_core::harness::TrialRecord| (r.ler * (1.0 - r.ler) / r.trials as f64).sqrt();
        let slack = 3.0 * (sd(a).powi(2) + sd(b).powi(2)).sqrt();
        assert!(b.ler + slack >= a.ler, "{} -> {}", a.ler, b.ler);
    }
}

#[test]
fn csv_is_worker_independent() {
    let mut cfg = ExperimentConfig {
        code: CodeSpec::Steane,
        channel: ChannelKind::Depolarizing,
        eps: vec![0.02, 0.08],
        decoder: DecoderKind::Bp,
        options: DecoderOptions::default(),
        trials: 5000,
        seed: 21,
        workers: 1,
    };
    let one = run_sweep(&cfg).unwrap().to_csv(false);
    cfg.workers = 8;
    assert_eq!(run_sweep(&cfg).unwrap().to_csv(false), one);
    cfg.seed = 22;
    assert_ne!(run_sweep(&cfg).unwrap().to_csv(false), one);
}
