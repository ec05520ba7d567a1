mod common;

use std::collections::HashMap;

use common::paulis_up_to_weight;
use qec_core::channels::{sample_error, PauliChannel};
use qec_core::constructions::{
    bit_flip_code, hgp, repetition, shor, steane, surface, toric,
};
use qec_core::decode::{
    build_ml_coset_table, build_ml_error_table, decode_and_classify, Decoder, DecoderKind,
    DecoderOptions, Outcome,
};
use qec_core::pauli::{Letter, PauliOperator};
use qec_core::stabilizer::{Residual, StabilizerCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_paulis(n: usize) -> impl Iterator<Item = PauliOperator> {
    (0..4usize.pow(n as u32)).map(move |c| {
        let letters: Vec<Letter> = (0..n)
            .map(|q| [Letter::I, Letter::X, Letter::Y, Letter::Z][(c >> (2 * q)) & 3])
            .collect();
        PauliOperator::from_letters(&letters)
    })
}

fn prob(ch: &PauliChannel, e: &PauliOperator) -> f64 {
    (0..e.n()).map(|q| ch.prob(e.letter(q))).product()
}

/// Errors with equal syndrome differ by a stabilizer exactly when they agree
/// on commutation with every logical operator.
fn class_key(code: &StabilizerCode, e: &PauliOperator) -> (Vec<bool>, Vec<bool>) {
    let s = code.syndrome(e).unwrap().to_bools();
    let l = code
        .logicals()
        .iter()
        .flat_map(|p| [p.x.commutes(e).unwrap(), p.z.commutes(e).unwrap()])
        .collect();
    (s, l)
}

/// `(optimal success probability, decoder success probability)` over all 4^n errors.
fn exact_success(code: &StabilizerCode, ch: &PauliChannel, dec: &Decoder) -> (f64, f64) {
    let mut cosets: HashMap<(Vec<bool>, Vec<bool>), f64> = HashMap::new();
    let mut achieved = 0.0;
    for e in all_paulis(code.n()) {
        let p = prob(ch, &e);
        *cosets.entry(class_key(code, &e)).or_default() += p;
        if decode_and_classify(code, &e, dec).unwrap().outcome == Outcome::Success {
            achieved += p;
        }
    }
    let mut best: HashMap<Vec<bool>, f64> = HashMap::new();
    for ((s, _), p) in cosets {
        let b = best.entry(s).or_default();
        *b = b.max(p);
    }
    (best.values().sum(), achieved)
}

#[test]
fn coset_decoder_is_optimal() {
    let cases = [
        (steane(), PauliChannel::depolarizing(0.1).unwrap()),
        (steane(), PauliChannel::new(0.8, 0.1, 0.02, 0.08).unwrap()),
        (bit_flip_code(3).unwrap(), PauliChannel::bit_flip(0.2).unwrap()),
        (bit_flip_code(5).unwrap(), PauliChannel::depolarizing(0.15).unwrap()),
        (surface(2).unwrap(), PauliChannel::depolarizing(0.05).unwrap()),
    ];
    for (code, ch) in cases {
        let coset = Decoder::MlCoset(build_ml_coset_table(&code, &ch).unwrap());
        let error = Decoder::MlError(build_ml_error_table(&code, &ch).unwrap());
        let (opt, got) = exact_success(&code, &ch, &coset);
        assert!((opt - got).abs() < 1e-12, "n={} opt={opt} got={got}", code.n());
        let (_, other) = exact_success(&code, &ch, &error);
        assert!(other <= got + 1e-12);
    }
}

#[test]
fn coset_decoder_corrects_within_radius() {
    let cases = [
        (steane(), 1, PauliChannel::depolarizing(0.05).unwrap()),
        (shor(), 1, PauliChannel::depolarizing(0.05).unwrap()),
        (bit_flip_code(5).unwrap(), 2, PauliChannel::bit_flip(0.05).unwrap()),
    ];
    for (code, t, ch) in cases {
        let dec = Decoder::build(DecoderKind::MlCoset, &code, &ch, DecoderOptions::default()).unwrap();
        for e in paulis_up_to_weight(code.n(), t) {
            if ch.probs().iter().zip([Letter::I, Letter::X, Letter::Y, Letter::Z]).any(|(&p, l)| {
                p == 0.0 && (0..code.n()).any(|q| e.letter(q) == l)
            }) {
                continue;
            }
            let c = decode_and_classify(&code, &e, &dec).unwrap();
            assert_eq!(c.outcome, Outcome::Success, "n={} e={e}", code.n());
        }
    }
}

#[test]
fn steane_weight_one_count() {
    let code = steane();
    let ch = PauliChannel::depolarizing(0.01).unwrap();
    let dec = Decoder::build(DecoderKind::MlCoset, &code, &ch, DecoderOptions::default()).unwrap();
    let errors = paulis_up_to_weight(7, 1);
    assert_eq!(errors.len(), 21);
    let ok = errors
        .iter()
        .filter(|e| decode_and_classify(&code, e, &dec).unwrap().outcome == Outcome::Success)
        .count();
    assert_eq!(ok, 21);
}

#[test]
fn bp_converged_implies_syndrome_match() {
    let codes = [surface(3).unwrap(), hgp(&repetition(4).unwrap(), &repetition(4).unwrap()).unwrap(), toric(3).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for code in &codes {
        for kind in [DecoderKind::Bp, DecoderKind::MinSum] {
            for eps in [0.02, 0.1] {
                let ch = PauliChannel::depolarizing(eps).unwrap();
                let dec = Decoder::build(kind, code, &ch, DecoderOptions::default()).unwrap();
                for _ in 0..10_000 / 4 {
                    let e = sample_error(&ch, code.n(), &mut rng);
                    let s = code.syndrome(&e).unwrap();
                    let out = dec.decode(&s).unwrap();
                    let reproduced = code.syndrome(&out.estimate).unwrap() == s;
                    assert_eq!(out.converged, reproduced);
                    let c = decode_and_classify(code, &e, &dec).unwrap();
                    if !c.converged {
                        assert_eq!(c.outcome, Outcome::LogicalError { detectable: true });
                    }
                }
            }
        }
    }
}

#[test]
fn estimates_reproduce_syndrome_for_tables() {
    let code = shor();
    let ch = PauliChannel::depolarizing(0.1).unwrap();
    for kind in [DecoderKind::MlCoset, DecoderKind::MlError] {
        let dec = Decoder::build(kind, &code, &ch, DecoderOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let e = sample_error(&ch, 9, &mut rng);
            let s = code.syndrome(&e).unwrap();
            let out = dec.decode(&s).unwrap();
            assert!(out.converged);
            assert_eq!(code.syndrome(&out.estimate).unwrap(), s);
            let residual = out.estimate.multiply(&e).unwrap();
            assert_ne!(code.classify_residual(&residual).unwrap(), Residual::Detectable);
        }
    }
}
