//! Weight-bounded enumeration over Pauli errors.
//!
//! Candidates of weight `w` are visited in increasing support order with the
//! letter order X < Y < Z on each support qubit. Syndromes are accumulated by
//! XOR of precomputed single-qubit syndrome columns, so each candidate costs a
//! handful of word operations. Work at each level is split across rayon
//! workers by the first two support qubits; any hit at level `w` is minimal
//! because all lighter levels have already been exhausted.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use super::StabilizerCode;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::pauli::{Letter, PauliOperator};

/// Default cap on candidate evaluations for the exhaustive searches.
pub const DEFAULT_SEARCH_BUDGET: u128 = 200_000_000;

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `sum_{w=1}^{max_weight} C(n, w) 3^w`.
pub(crate) fn enumeration_count(n: usize, max_weight: usize) -> u128 {
    (1..=max_weight)
        .map(|w| binomial(n, w).saturating_mul(3u128.saturating_pow(w as u32)))
        .fold(0u128, |a, b| a.saturating_add(b))
}

fn guard(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::ResourceGuard { needed, budget })
    } else {
        Ok(())
    }
}

/// Single-qubit syndrome columns packed per (qubit, letter).
struct SyndromeColumns {
    n: usize,
    stride: usize,
    data: Vec<u64>,
}

impl SyndromeColumns {
    fn new(code: &StabilizerCode) -> Self {
        let n = code.n();
        let stride = code.r().div_ceil(64).max(1);
        let mut data = vec![0u64; n * 3 * stride];
        for q in 0..n {
            for (li, &letter) in Letter::NON_IDENTITY.iter().enumerate() {
                let s = code
                    .syndrome(&PauliOperator::single(n, q, letter))
                    .expect("sizes agree");
                let off = (q * 3 + li) * stride;
                data[off..off + s.words().len()].copy_from_slice(s.words());
            }
        }
        Self { n, stride, data }
    }

    #[inline]
    fn column(&self, q: usize, letter: usize) -> &[u64] {
        let off = (q * 3 + letter) * self.stride;
        &self.data[off..off + self.stride]
    }
}

/// Searches level `weight` for a zero-syndrome operator accepted by `accept`.
fn search_level<F>(cols: &SyndromeColumns, weight: usize, accept: &F) -> bool
where
    F: Fn(&[(usize, usize)]) -> bool + Sync,
{
    let n = cols.n;
    if weight == 0 || weight > n {
        return false;
    }
    let found = AtomicBool::new(false);
    let stride = cols.stride;
    // Seeds: every admissible prefix of length min(2, weight).
    let prefix_len = weight.min(2);
    let mut seeds = Vec::new();
    if prefix_len == 1 {
        for q in 0..n {
            for l in 0..3 {
                seeds.push(vec![(q, l)]);
            }
        }
    } else {
        for q1 in 0..=n - weight {
            for q2 in q1 + 1..=n - weight + 1 {
                for l1 in 0..3 {
                    for l2 in 0..3 {
                        seeds.push(vec![(q1, l1), (q2, l2)]);
                    }
                }
            }
        }
    }
    seeds.par_iter().any(|seed| {
        if found.load(Ordering::Relaxed) {
            return false;
        }
        let mut stack = vec![0u64; (weight + 1) * stride];
        for (d, &(q, l)) in seed.iter().enumerate() {
            let col = cols.column(q, l);
            for i in 0..stride {
                stack[(d + 1) * stride + i] = stack[d * stride + i] ^ col[i];
            }
        }
        let mut chosen = seed.clone();
        let hit = if seed.len() == weight {
            stack[weight * stride..].iter().all(|&w| w == 0) && accept(&chosen)
        } else {
            let start = seed.last().unwrap().0 + 1;
            extend(cols, weight, accept, &found, &mut chosen, &mut stack, start)
        };
        if hit {
            found.store(true, Ordering::Relaxed);
        }
        hit
    })
}

fn extend<F>(
    cols: &SyndromeColumns,
    weight: usize,
    accept: &F,
    found: &AtomicBool,
    chosen: &mut Vec<(usize, usize)>,
    stack: &mut [u64],
    start: usize,
) -> bool
where
    F: Fn(&[(usize, usize)]) -> bool + Sync,
{
    let depth = chosen.len();
    let remaining = weight - depth;
    if found.load(Ordering::Relaxed) {
        return false;
    }
    let stride = cols.stride;
    let last = cols.n + 1 - remaining;
    for q in start..last {
        for letter in 0..3 {
            let col = cols.column(q, letter);
            let mut zero = true;
            for i in 0..stride {
                let v = stack[depth * stride + i] ^ col[i];
                stack[(depth + 1) * stride + i] = v;
                zero &= v == 0;
            }
            chosen.push((q, letter));
            let hit = if remaining == 1 {
                zero && accept(chosen)
            } else {
                extend(cols, weight, accept, found, chosen, stack, q + 1)
            };
            chosen.pop();
            if hit {
                return true;
            }
        }
    }
    false
}

fn symplectic_of(n: usize, chosen: &[(usize, usize)]) -> BitVec {
    let mut v = BitVec::zeros(2 * n);
    for &(q, l) in chosen {
        let (x, z) = Letter::NON_IDENTITY[l].bits();
        if x {
            v.set(q, true);
        }
        if z {
            v.set(n + q, true);
        }
    }
    v
}

/// Minimum weight of an element of `N(S) \ S`, searched up to `max_weight`.
///
/// Returns `None` when no logical operator of weight `<= max_weight` exists.
pub fn min_distance(code: &StabilizerCode, max_weight: usize) -> Result<Option<usize>> {
    min_distance_with_budget(code, max_weight, DEFAULT_SEARCH_BUDGET)
}

pub fn min_distance_with_budget(
    code: &StabilizerCode,
    max_weight: usize,
    budget: u128,
) -> Result<Option<usize>> {
    let n = code.n();
    if max_weight > n {
        return Err(Error::invalid(format!("max_weight {max_weight} exceeds n = {n}")));
    }
    guard(enumeration_count(n, max_weight), budget)?;
    let cols = SyndromeColumns::new(code);
    let stabilizers = code.stabilizers();
    let accept = |chosen: &[(usize, usize)]| !stabilizers.contains(&symplectic_of(n, chosen));
    for w in 1..=max_weight {
        if search_level(&cols, w, &accept) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Whether some non-identity stabilizer has weight below `d`.
pub fn is_degenerate(code: &StabilizerCode, d: usize) -> Result<bool> {
    is_degenerate_with_budget(code, d, DEFAULT_SEARCH_BUDGET)
}

pub fn is_degenerate_with_budget(code: &StabilizerCode, d: usize, budget: u128) -> Result<bool> {
    if d <= 1 {
        return Ok(false);
    }
    let n = code.n();
    let basis = code.stabilizers().basis();
    if basis.len() <= 20 {
        // Gray-code walk over all 2^rank group elements.
        let mut acc = BitVec::zeros(2 * n);
        for i in 1u64..1 << basis.len() {
            acc.xor_assign(&basis[i.trailing_zeros() as usize]);
            let x = acc.slice(0, n);
            let z = acc.slice(n, n);
            if x.or(&z).weight() < d {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let max_weight = (d - 1).min(n);
    guard(enumeration_count(n, max_weight), budget)?;
    let cols = SyndromeColumns::new(code);
    let stabilizers = code.stabilizers();
    let accept = |chosen: &[(usize, usize)]| stabilizers.contains(&symplectic_of(n, chosen));
    Ok((1..=max_weight).any(|w| search_level(&cols, w, &accept)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(41, 5), 749_398);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(enumeration_count(3, 1), 9);
        assert_eq!(enumeration_count(2, 2), 6 + 9);
    }
}
