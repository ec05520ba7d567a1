//! Exhaustive syndrome tables for small codes.
//!
//! Both tables come from one depth-first walk over all `4^n` Pauli errors.
//! Errors are packed into a `u32` with symplectic bit `i` of `[x | z]` at
//! position `2n - 1 - i`, so integer order equals the lexicographic order of
//! [`BitVec`](crate::gf2::BitVec) (bit 0 read first).

use std::cmp::Ordering;

use num_bigint::BigUint;

use super::DecodeResult;
use crate::channels::PauliChannel;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::pauli::{Letter, PauliOperator};
use crate::stabilizer::{StabilizerCode, Syndrome};

pub const TABLE_MAX_QUBITS: usize = 14;
pub const TABLE_MAX_ROWS: usize = 16;
/// Cap on `2^(2n - rank)`, the number of (syndrome, logical class) cells.
pub const TABLE_MAX_CELLS: u128 = 1 << 24;
/// Exact tie resolution between coset sums is attempted up to this size.
pub const EXACT_TIE_MAX_QUBITS: usize = 10;

const LETTERS: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

/// Decoding table keyed by the full stored syndrome.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    n: usize,
    r: usize,
    // syndrome value -> slot, u32::MAX when unattainable
    index: Vec<u32>,
    reps: Vec<PauliOperator>,
    scores: Vec<f64>,
}

/// Most likely logical coset per syndrome, stored as a minimum-weight member.
pub type CosetTable = SyndromeTable;

/// Most likely single error per syndrome.
pub type MlErrorTable = SyndromeTable;

impl SyndromeTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of attainable syndromes.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    fn slot(&self, s: &Syndrome) -> Result<Option<usize>> {
        Error::check_len(self.r, s.len())?;
        let v = if self.r == 0 { 0 } else { s.to_u64() as usize };
        Ok(match self.index[v] {
            u32::MAX => None,
            i => Some(i as usize),
        })
    }

    pub fn lookup(&self, s: &Syndrome) -> Result<Option<&PauliOperator>> {
        Ok(self.slot(s)?.map(|i| &self.reps[i]))
    }

    /// Probability of the winning coset (or error) for `s`.
    pub fn score(&self, s: &Syndrome) -> Result<Option<f64>> {
        Ok(self.slot(s)?.map(|i| self.scores[i]))
    }

    /// `(syndrome, representative)` for every attainable syndrome.
    pub fn entries(&self) -> impl Iterator<Item = (Syndrome, &PauliOperator)> + '_ {
        self.index
            .iter()
            .enumerate()
            .filter(|(_, &i)| i != u32::MAX)
            .map(|(v, &i)| (BitVec::from_u64(self.r, v as u64), &self.reps[i as usize]))
    }

    pub fn decode(&self, s: &Syndrome) -> Result<DecodeResult> {
        let rep = self
            .lookup(s)?
            .ok_or_else(|| Error::invalid(format!("syndrome {s} is not attainable")))?;
        Ok(DecodeResult {
            estimate: rep.clone(),
            converged: true,
            iterations: 0,
        })
    }
}

/// Per-(qubit, letter) data for the enumeration.
struct Walk {
    n: usize,
    synd: Vec<[u32; 4]>,
    class: Vec<[u32; 4]>,
    packed: Vec<[u32; 4]>,
    probs: [f64; 4],
}

impl Walk {
    fn new(code: &StabilizerCode, ch: &PauliChannel) -> Self {
        let n = code.n();
        let mut synd = vec![[0u32; 4]; n];
        let mut class = vec![[0u32; 4]; n];
        let mut packed = vec![[0u32; 4]; n];
        for q in 0..n {
            for (li, &l) in LETTERS.iter().enumerate() {
                if l == Letter::I {
                    continue;
                }
                let e = PauliOperator::single(n, q, l);
                synd[q][li] = code.syndrome(&e).expect("sizes agree").to_u64() as u32;
                let mut c = 0u32;
                for (j, pair) in code.logicals().iter().enumerate() {
                    c |= (e.symp_unchecked(&pair.x) as u32) << (2 * j);
                    c |= (e.symp_unchecked(&pair.z) as u32) << (2 * j + 1);
                }
                class[q][li] = c;
                let (x, z) = l.bits();
                packed[q][li] = ((x as u32) << (2 * n - 1 - q)) | ((z as u32) << (n - 1 - q));
            }
        }
        Self {
            n,
            synd,
            class,
            packed,
            probs: ch.probs(),
        }
    }

    /// Calls `visit(syndrome, class, prob, weight, packed)` for every error.
    fn run(&self, visit: &mut impl FnMut(u32, u32, f64, u32, u32)) {
        self.rec(0, 0, 0, 1.0, 0, 0, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        q: usize,
        s: u32,
        c: u32,
        p: f64,
        w: u32,
        e: u32,
        visit: &mut impl FnMut(u32, u32, f64, u32, u32),
    ) {
        if q == self.n {
            visit(s, c, p, w, e);
            return;
        }
        for li in 0..4 {
            self.rec(
                q + 1,
                s ^ self.synd[q][li],
                c ^ self.class[q][li],
                p * self.probs[li],
                w + (li != 0) as u32,
                e | self.packed[q][li],
                visit,
            );
        }
    }
}

fn guard(code: &StabilizerCode) -> Result<()> {
    let (n, r) = (code.n(), code.r());
    if n > TABLE_MAX_QUBITS || r > TABLE_MAX_ROWS {
        return Err(Error::ResourceGuard {
            needed: 1u128 << (2 * n).min(127),
            budget: 1u128 << (2 * TABLE_MAX_QUBITS),
        });
    }
    let cells = 1u128 << (2 * n - code.rank());
    if cells > TABLE_MAX_CELLS {
        return Err(Error::ResourceGuard {
            needed: cells,
            budget: TABLE_MAX_CELLS,
        });
    }
    Ok(())
}

/// Slot per attainable syndrome value, in increasing syndrome order.
fn syndrome_index(walk: &Walk, r: usize) -> (Vec<u32>, usize) {
    let mut seen = vec![false; 1 << r];
    // The attainable set is the span of the single-qubit X and Z columns.
    let mut basis: Vec<u32> = Vec::new();
    for q in 0..walk.n {
        for li in [1, 3] {
            let mut v = walk.synd[q][li];
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
    }
    let mut acc = 0u32;
    seen[0] = true;
    for i in 1u64..1 << basis.len() {
        acc ^= basis[i.trailing_zeros() as usize];
        seen[acc as usize] = true;
    }
    let mut index = vec![u32::MAX; 1 << r];
    let mut count = 0;
    for (v, s) in seen.iter().enumerate() {
        if *s {
            index[v] = count as u32;
            count += 1;
        }
    }
    (index, count)
}

fn unpack(n: usize, e: u32) -> PauliOperator {
    let v = BitVec::from_indices(2 * n, (0..2 * n).filter(|i| e >> (2 * n - 1 - i) & 1 == 1));
    PauliOperator::from_symplectic(&v, n).expect("length 2n")
}

fn pack(n: usize, v: &BitVec) -> u32 {
    v.iter_ones().fold(0u32, |acc, i| acc | 1 << (2 * n - 1 - i))
}

/// Nonnegative dyadic rational `mant * 2^exp`.
#[derive(Clone, Debug)]
struct Dyadic {
    mant: BigUint,
    exp: i64,
}

impl Dyadic {
    fn zero() -> Self {
        Self {
            mant: BigUint::from(0u32),
            exp: 0,
        }
    }

    fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | 1 << 52, raw_exp - 1075)
        };
        Self {
            mant: BigUint::from(mant),
            exp,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    fn aligned(&self, exp: i64) -> BigUint {
        &self.mant << (self.exp - exp) as usize
    }

    fn add(&self, other: &Self) -> Self {
        if self.mant.bits() == 0 {
            return other.clone();
        }
        if other.mant.bits() == 0 {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        Self {
            mant: self.aligned(exp) + other.aligned(exp),
            exp,
        }
    }

    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.min(other.exp);
        self.aligned(exp).cmp(&other.aligned(exp))
    }
}

/// Exact probability of the coset `rep * S`.
fn exact_coset_sum(n: usize, rep: u32, group_basis: &[u32], letters: &[Dyadic; 4]) -> Dyadic {
    let prob = |e: u32| {
        let mut acc = Dyadic::from_f64(1.0);
        for q in 0..n {
            let x = e >> (2 * n - 1 - q) & 1;
            let z = e >> (n - 1 - q) & 1;
            let li = match (x, z) {
                (0, 0) => 0,
                (1, 0) => 1,
                (1, 1) => 2,
                _ => 3,
            };
            acc = acc.mul(&letters[li]);
        }
        acc
    };
    let mut g = rep;
    let mut total = prob(g);
    for i in 1u64..1 << group_basis.len() {
        g ^= group_basis[i.trailing_zeros() as usize];
        total = total.add(&prob(g));
    }
    total
}

/// Maximum-likelihood coset table.
///
/// Every attainable syndrome maps to a minimum-weight member (ties by
/// lexicographic symplectic vector) of its most probable logical coset.
/// Coset probabilities within a relative `1e-9` of the best are compared
/// exactly for `n <= 10`; exact ties go to the lowest logical class index.
pub fn build_ml_coset_table(code: &StabilizerCode, ch: &PauliChannel) -> Result<CosetTable> {
    guard(code)?;
    let (n, r) = (code.n(), code.r());
    let walk = Walk::new(code, ch);
    let (index, slots) = syndrome_index(&walk, r);
    let classes = 1usize << (2 * code.k());
    let cells = slots * classes;
    let mut prob = vec![0.0f64; cells];
    let mut best = vec![(u32::MAX, u32::MAX); cells];
    walk.run(&mut |s, c, p, w, e| {
        let cell = index[s as usize] as usize * classes + c as usize;
        prob[cell] += p;
        if (w, e) < best[cell] {
            best[cell] = (w, e);
        }
    });

    let group_basis: Vec<u32> = code.stabilizers().basis().iter().map(|b| pack(n, b)).collect();
    let letters = ch.probs().map(Dyadic::from_f64);
    let mut reps = Vec::with_capacity(slots);
    let mut scores = Vec::with_capacity(slots);
    for slot in 0..slots {
        let row = &prob[slot * classes..(slot + 1) * classes];
        let top = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut winner = row.iter().position(|&p| p == top).expect("nonempty");
        let near: Vec<usize> = (0..classes).filter(|&c| row[c] >= top * (1.0 - 1e-9)).collect();
        if near.len() > 1 && n <= EXACT_TIE_MAX_QUBITS {
            let mut best_sum: Option<Dyadic> = None;
            for &c in &near {
                let sum = exact_coset_sum(n, best[slot * classes + c].1, &group_basis, &letters);
                if best_sum.as_ref().is_none_or(|b| sum.cmp(b) == Ordering::Greater) {
                    best_sum = Some(sum);
                    winner = c;
                }
            }
        }
        reps.push(unpack(n, best[slot * classes + winner].1));
        scores.push(row[winner]);
    }
    Ok(SyndromeTable {
        n,
        r,
        index,
        reps,
        scores,
    })
}

/// Most probable single error per syndrome; probabilities within a relative
/// `1e-12` count as tied and go to the lexicographically smaller error.
pub fn build_ml_error_table(code: &StabilizerCode, ch: &PauliChannel) -> Result<MlErrorTable> {
    guard(code)?;
    let (n, r) = (code.n(), code.r());
    let walk = Walk::new(code, ch);
    let (index, slots) = syndrome_index(&walk, r);
    let mut best = vec![(-1.0f64, u32::MAX); slots];
    walk.run(&mut |s, _, p, _, e| {
        let slot = &mut best[index[s as usize] as usize];
        let tol = 1e-12 * p.max(slot.0);
        if p > slot.0 + tol || ((p - slot.0).abs() <= tol && e < slot.1) {
            *slot = (p, e);
        }
    });
    Ok(SyndromeTable {
        n,
        r,
        index,
        reps: best.iter().map(|&(_, e)| unpack(n, e)).collect(),
        scores: best.iter().map(|&(p, _)| p).collect(),
    })
}

/// Single most probable error with syndrome `s`.
///
/// Builds the full table on every call; use [`build_ml_error_table`] when
/// decoding repeatedly.
pub fn ml_error_decode(
    code: &StabilizerCode,
    ch: &PauliChannel,
    s: &Syndrome,
) -> Result<DecodeResult> {
    build_ml_error_table(code, ch)?.decode(s)
}
