//! Belief propagation on a parity-check Tanner graph.
//!
//! Messages are log-likelihood ratios `ln(P(0)/P(1))` updated on a flooding
//! schedule. After every iteration the hard decision is checked against the
//! syndrome and decoding stops as soon as it matches.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

/// Default normalization for min-sum check updates.
pub const DEFAULT_MIN_SUM_NORM: f64 = 0.75;

// Keeps tanh products away from +-1 so atanh stays finite.
const TANH_CLAMP: f64 = 1.0 - 1e-15;

/// Bipartite check/variable adjacency of a parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    checks: Vec<Vec<usize>>,
    vars: Vec<Vec<usize>>,
    // edge ids per variable, parallel to `vars`
    var_edges: Vec<Vec<usize>>,
    // first edge id of each check; edges of a check are contiguous
    check_offset: Vec<usize>,
}

impl TannerGraph {
    pub fn new(h: &BitMatrix) -> Self {
        let mut checks = Vec::with_capacity(h.rows());
        let mut vars = vec![Vec::new(); h.cols()];
        let mut var_edges = vec![Vec::new(); h.cols()];
        let mut check_offset = Vec::with_capacity(h.rows() + 1);
        let mut edge = 0;
        for c in 0..h.rows() {
            check_offset.push(edge);
            let support = h.row_support(c);
            for &v in &support {
                vars[v].push(c);
                var_edges[v].push(edge);
                edge += 1;
            }
            checks.push(support);
        }
        check_offset.push(edge);
        Self {
            checks,
            vars,
            var_edges,
            check_offset,
        }
    }

    pub fn check_count(&self) -> usize {
        self.checks.len()
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn edge_count(&self) -> usize {
        *self.check_offset.last().unwrap_or(&0)
    }

    /// Variables adjacent to check `c`.
    pub fn check_neighbors(&self, c: usize) -> &[usize] {
        &self.checks[c]
    }

    /// Checks adjacent to variable `v`.
    pub fn var_neighbors(&self, v: usize) -> &[usize] {
        &self.vars[v]
    }

    /// Parity of `x` on every check.
    pub fn syndrome_of(&self, x: &[bool]) -> BitVec {
        let mut s = BitVec::zeros(self.check_count());
        for (c, vs) in self.checks.iter().enumerate() {
            if vs.iter().filter(|&&v| x[v]).count() % 2 == 1 {
                s.set(c, true);
            }
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BpVariant {
    SumProduct,
    /// Normalized min-sum with the given scaling of check messages.
    MinSum { norm: f64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpOutput {
    pub estimate: BitVec,
    pub converged: bool,
    pub iterations: usize,
}

fn check_update_sum_product(incoming: &[f64], flip: bool, out: &mut [f64], scratch: &mut Vec<f64>) {
    let d = incoming.len();
    scratch.clear();
    scratch.extend(incoming.iter().map(|m| (m / 2.0).tanh()));
    // out[i] temporarily holds the prefix product before i
    let mut acc = 1.0;
    for i in 0..d {
        out[i] = acc;
        acc *= scratch[i];
    }
    let mut suffix = 1.0;
    for i in (0..d).rev() {
        let prod = (out[i] * suffix).clamp(-TANH_CLAMP, TANH_CLAMP);
        let m = 2.0 * prod.atanh();
        out[i] = if flip { -m } else { m };
        suffix *= scratch[i];
    }
}

fn check_update_min_sum(incoming: &[f64], flip: bool, norm: f64, out: &mut [f64]) {
    let mut negative = flip;
    let (mut min1, mut min2, mut arg) = (f64::INFINITY, f64::INFINITY, usize::MAX);
    for (i, &m) in incoming.iter().enumerate() {
        negative ^= m < 0.0;
        let a = m.abs();
        if a < min1 {
            min2 = min1;
            min1 = a;
            arg = i;
        } else if a < min2 {
            min2 = a;
        }
    }
    for (i, &m) in incoming.iter().enumerate() {
        let mag = if i == arg { min2 } else { min1 };
        let neg = negative ^ (m < 0.0);
        let v = norm * if mag.is_finite() { mag } else { f64::MAX };
        out[i] = if neg { -v } else { v };
    }
}

/// Decodes `h x^T = syndrome` for a bit vector `x` with i.i.d. prior `prior`.
///
/// A zero syndrome returns the zero vector at iteration 0. Hard decisions
/// set a bit only when its posterior LLR is strictly negative.
pub fn bp_decode(
    g: &TannerGraph,
    syndrome: &BitVec,
    prior: f64,
    max_iter: usize,
    variant: BpVariant,
) -> Result<BpOutput> {
    Error::check_len(g.check_count(), syndrome.len())?;
    if !(prior > 0.0 && prior < 0.5) {
        return Err(Error::invalid(format!("prior must lie in (0, 1/2), got {prior}")));
    }
    if max_iter == 0 {
        return Err(Error::invalid("max_iter must be >= 1"));
    }
    if let BpVariant::MinSum { norm } = variant {
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::invalid(format!("min-sum normalization must be > 0, got {norm}")));
        }
    }
    let n = g.var_count();
    if syndrome.is_zero() {
        return Ok(BpOutput {
            estimate: BitVec::zeros(n),
            converged: true,
            iterations: 0,
        });
    }

    let llr = ((1.0 - prior) / prior).ln();
    let edges = g.edge_count();
    let mut var_to_check = vec![llr; edges];
    let mut check_to_var = vec![0.0; edges];
    let mut scratch = Vec::new();
    let mut hard = vec![false; n];

    for iter in 1..=max_iter {
        for c in 0..g.check_count() {
            let (lo, hi) = (g.check_offset[c], g.check_offset[c + 1]);
            let flip = syndrome.get(c);
            let (incoming, out) = (&var_to_check[lo..hi], &mut check_to_var[lo..hi]);
            match variant {
                BpVariant::SumProduct => check_update_sum_product(incoming, flip, out, &mut scratch),
                BpVariant::MinSum { norm } => check_update_min_sum(incoming, flip, norm, out),
            }
        }
        for (edges, bit) in g.var_edges.iter().zip(hard.iter_mut()) {
            let total: f64 = llr + edges.iter().map(|&e| check_to_var[e]).sum::<f64>();
            for &e in edges {
                var_to_check[e] = total - check_to_var[e];
            }
            *bit = total < 0.0;
        }
        if g.syndrome_of(&hard) == *syndrome {
            return Ok(BpOutput {
                estimate: BitVec::from_bools(&hard),
                converged: true,
                iterations: iter,
            });
        }
    }
    Ok(BpOutput {
        estimate: BitVec::from_bools(&hard),
        converged: false,
        iterations: max_iter,
    })
}

impl fmt::Display for BpVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BpVariant::SumProduct => f.write_str("bp"),
            BpVariant::MinSum { norm } => write!(f, "minsum({norm})"),
        }
    }
}

impl FromStr for BpVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bp" | "sum-product" => Ok(BpVariant::SumProduct),
            "minsum" | "min-sum" => Ok(BpVariant::MinSum {
                norm: DEFAULT_MIN_SUM_NORM,
            }),
            _ => Err(Error::invalid(format!("unknown BP variant {s:?}"))),
        }
    }
}
