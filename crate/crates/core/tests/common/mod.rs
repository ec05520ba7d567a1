//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's linear algebra.
#![allow(dead_code)]

use std::collections::HashSet;

use num_complex::Complex64;
use qec_core::pauli::{Letter, PauliOperator};
use qec_core::stabilizer::StabilizerCode;
use rand::Rng;

pub type Dense = Vec<Vec<Complex64>>;

fn letter_matrix(l: Letter) -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match l {
        Letter::I => [[one, o], [o, one]],
        Letter::X => [[o, one], [one, o]],
        Letter::Y => [[o, -i], [i, o]],
        Letter::Z => [[one, o], [o, -one]],
    }
}

/// `i^phase` times the Kronecker product of the letters, qubit 0 leftmost.
pub fn dense(p: &PauliOperator) -> Dense {
    let mut m: Dense = vec![vec![Complex64::new(1.0, 0.0)]];
    for q in 0..p.n() {
        let f = letter_matrix(p.letter(q));
        let d = m.len();
        let mut out = vec![vec![Complex64::new(0.0, 0.0); 2 * d]; 2 * d];
        for r in 0..d {
            for c in 0..d {
                for a in 0..2 {
                    for b in 0..2 {
                        out[2 * r + a][2 * c + b] = m[r][c] * f[a][b];
                    }
                }
            }
        }
        m = out;
    }
    let ph = Complex64::new(0.0, 1.0).powu(p.phase_exp() as u32);
    m.iter().map(|row| row.iter().map(|&v| v * ph).collect()).collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let d = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn negate(a: &Dense) -> Dense {
    a.iter().map(|r| r.iter().map(|v| -v).collect()).collect()
}

pub fn random_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliOperator {
    let letters: Vec<Letter> = (0..n)
        .map(|_| [Letter::I, Letter::X, Letter::Y, Letter::Z][rng.gen_range(0..4)])
        .collect();
    PauliOperator::from_letters(&letters).with_phase(rng.gen_range(0..4))
}

/// Row-major 0/1 matrix.
pub type Bits = Vec<Vec<u8>>;

pub fn random_bits<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Bits {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..2)).collect()).collect()
}

/// Rank over GF(2) by plain Gaussian elimination.
pub fn rank(m: &Bits) -> usize {
    let mut m = m.clone();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] == 1) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] == 1 {
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn transpose(m: &Bits, cols: usize) -> Bits {
    (0..cols).map(|c| m.iter().map(|r| r[c]).collect()).collect()
}

pub fn product_is_zero(a: &Bits, b: &Bits) -> bool {
    a.iter()
        .all(|ra| b.iter().all(|rb| ra.iter().zip(rb).map(|(x, y)| x & y).sum::<u8>() % 2 == 0))
}

/// All `2^rank` stabilizer group elements as `(x, z)` bit masks (n <= 64).
pub fn stabilizer_group(code: &StabilizerCode) -> HashSet<(u64, u64)> {
    let gens: Vec<(u64, u64)> = code.generators().iter().map(masks).collect();
    let mut group = HashSet::from([(0u64, 0u64)]);
    for g in gens {
        let extra: Vec<_> = group.iter().map(|&(x, z)| (x ^ g.0, z ^ g.1)).collect();
        group.extend(extra);
    }
    group
}

pub fn masks(p: &PauliOperator) -> (u64, u64) {
    let mut x = 0;
    let mut z = 0;
    for q in 0..p.n() {
        let l = p.letter(q);
        if matches!(l, Letter::X | Letter::Y) {
            x |= 1 << q;
        }
        if matches!(l, Letter::Z | Letter::Y) {
            z |= 1 << q;
        }
    }
    (x, z)
}

fn symp(a: (u64, u64), b: (u64, u64)) -> bool {
    ((a.0 & b.1).count_ones() + (a.1 & b.0).count_ones()) % 2 == 1
}

/// Minimum weight over all `4^n` Paulis commuting with every generator and
/// outside the stabilizer group.
pub fn exhaustive_distance(code: &StabilizerCode) -> Option<usize> {
    let n = code.n();
    assert!(n <= 10);
    let gens: Vec<(u64, u64)> = code.generators().iter().map(masks).collect();
    let group = stabilizer_group(code);
    let mut best: Option<usize> = None;
    for x in 0u64..1 << n {
        for z in 0u64..1 << n {
            let p = (x, z);
            if gens.iter().any(|&g| symp(p, g)) || group.contains(&p) {
                continue;
            }
            let w = (x | z).count_ones() as usize;
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    best
}

/// Every Pauli (phase 0) of weight `1..=t` on `n` qubits.
pub fn paulis_up_to_weight(n: usize, t: usize) -> Vec<PauliOperator> {
    let mut out = Vec::new();
    let total = 4usize.pow(n as u32);
    for code in 1..total {
        let letters: Vec<Letter> = (0..n)
            .map(|q| [Letter::I, Letter::X, Letter::Y, Letter::Z][(code >> (2 * q)) & 3])
            .collect();
        let p = PauliOperator::from_letters(&letters);
        if p.weight() <= t {
            out.push(p);
        }
    }
    out
}

/// Closed-form majority-vote failure rate of the 3-qubit repetition code.
pub fn bit_flip_failure(eps: f64) -> f64 {
    3.0 * eps * eps * (1.0 - eps) + eps.powi(3)
}
