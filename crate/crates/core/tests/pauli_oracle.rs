mod common;

use common::{dense, matmul, negate, random_pauli};
use proptest::prelude::*;
use qec_core::pauli::{Letter, PauliOperator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::I), Just(Letter::X), Just(Letter::Y), Just(Letter::Z)]
}

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (prop::collection::vec(letter(), n), 0u8..4)
        .prop_map(|(ls, ph)| PauliOperator::from_letters(&ls).with_phase(ph))
}

fn pair() -> impl Strategy<Value = (PauliOperator, PauliOperator)> {
    (1usize..=3).prop_flat_map(|n| (pauli(n), pauli(n)))
}

fn triple() -> impl Strategy<Value = (PauliOperator, PauliOperator, PauliOperator)> {
    (1usize..=8).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))
}

#[test]
fn thousand_random_pairs_match_dense_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..1000 {
        let n = 1 + i % 3;
        let p = random_pauli(&mut rng, n);
        let q = random_pauli(&mut rng, n);
        let (dp, dq) = (dense(&p), dense(&q));
        assert_eq!(dense(&p.multiply(&q).unwrap()), matmul(&dp, &dq), "{p} * {q}");
        let pq = matmul(&dp, &dq);
        let qp = matmul(&dq, &dp);
        let commutes = p.commutes(&q).unwrap();
        assert_eq!(pq == qp, commutes);
        assert_eq!(pq == negate(&qp), !commutes);
    }
}

proptest! {
    #[test]
    fn product_matches_dense((p, q) in pair()) {
        prop_assert_eq!(dense(&p.multiply(&q).unwrap()), matmul(&dense(&p), &dense(&q)));
    }

    #[test]
    fn symplectic_round_trip(p in (1usize..=70).prop_flat_map(pauli)) {
        let v = p.to_symplectic();
        prop_assert_eq!(v.len(), 2 * p.n());
        let back = PauliOperator::from_symplectic(&v, p.n()).unwrap();
        prop_assert_eq!(back.with_phase(p.phase_exp()), p);
    }

    #[test]
    fn text_round_trip(p in (1usize..=20).prop_flat_map(pauli)) {
        let q = PauliOperator::parse(&p.to_string(), p.n()).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn symplectic_form_is_symmetric_and_bilinear((a, b, c) in triple()) {
        prop_assert_eq!(a.symplectic_product(&b).unwrap(), b.symplectic_product(&a).unwrap());
        prop_assert!(!a.symplectic_product(&a).unwrap());
        let bc = b.multiply(&c).unwrap();
        prop_assert_eq!(
            a.symplectic_product(&bc).unwrap(),
            a.symplectic_product(&b).unwrap() ^ a.symplectic_product(&c).unwrap()
        );
    }

    #[test]
    fn multiplication_group_laws((a, b, c) in triple()) {
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let id = PauliOperator::identity(a.n());
        prop_assert_eq!(a.multiply(&id).unwrap(), a.clone());
        // a a† = I
        prop_assert_eq!(a.multiply(&a.adjoint()).unwrap(), id);
        // ab = ±ba according to commutation
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        let shift = if a.commutes(&b).unwrap() { 0 } else { 2 };
        let ba_phase = ba.phase_exp();
        prop_assert_eq!(ab.clone(), ba.with_phase(ba_phase + shift));
        prop_assert!(ab.weight() <= a.weight() + b.weight());
    }
}

#[test]
fn mismatched_lengths_are_rejected() {
    let a = PauliOperator::identity(3);
    let b = PauliOperator::identity(4);
    assert!(a.multiply(&b).is_err());
    assert!(a.commutes(&b).is_err());
}
