//! Dense Knill-Laflamme oracle for small codes.
//!
//! Builds the code-space projector `P = prod_i (I + S_i)/2` as an explicit
//! `2^n x 2^n` complex matrix from the single-qubit Pauli matrices, then tests
//! `P E_i† E_j P = c_ij P` for every pair of errors. With `V` an orthonormal
//! basis of `range(P)` (so `P = V V†`), the condition is equivalent to
//! `V† E_i† E_j V = c_ij I`, which is what gets evaluated.
//!
//! Qubit 1 is the most significant tensor factor, matching `A ⊗ B ⊗ ...`.

use num_complex::Complex64;

use super::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};

pub const KL_MAX_QUBITS: usize = 12;

/// Entrywise slack for scalar matching; all exact entries are dyadic rationals.
pub const KL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct KlReport {
    pub passed: bool,
    /// `c_ij` for every error pair; entries for failing pairs hold the `(0,0)`
    /// element of the reduced block.
    pub coefficients: Vec<Vec<Complex64>>,
    /// Dimension of the code space, `2^k`.
    pub code_dim: usize,
    /// First failing pair, if any.
    pub witness: Option<(usize, usize)>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn letter_matrix(l: Letter) -> [[Complex64; 2]; 2] {
    match l {
        Letter::I => [[ONE, ZERO], [ZERO, ONE]],
        Letter::X => [[ZERO, ONE], [ONE, ZERO]],
        Letter::Y => [[ZERO, -I], [I, ZERO]],
        Letter::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// `v <- p v` using the dense 2x2 factor on every non-identity qubit.
fn apply_pauli(p: &PauliOperator, v: &mut [Complex64]) {
    let n = p.n();
    for q in 0..n {
        let l = p.letter(q);
        if l == Letter::I {
            continue;
        }
        let m = letter_matrix(l);
        let bit = 1usize << (n - 1 - q);
        for idx in 0..v.len() {
            if idx & bit == 0 {
                let (a, b) = (v[idx], v[idx | bit]);
                v[idx] = m[0][0] * a + m[0][1] * b;
                v[idx | bit] = m[1][0] * a + m[1][1] * b;
            }
        }
    }
    let scale = I.powu(p.phase_exp() as u32);
    if scale != ONE {
        for x in v.iter_mut() {
            *x *= scale;
        }
    }
}

fn apply_projector(gens: &[PauliOperator], v: &mut [Complex64], scratch: &mut Vec<Complex64>) {
    for g in gens {
        scratch.clear();
        scratch.extend_from_slice(v);
        apply_pauli(g, scratch);
        for (a, b) in v.iter_mut().zip(scratch.iter()) {
            *a = (*a + *b) * 0.5;
        }
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn kl_check(code: &StabilizerCode, errors: &[PauliOperator]) -> Result<KlReport> {
    let n = code.n();
    if n > KL_MAX_QUBITS {
        return Err(Error::invalid(format!(
            "dense Knill-Laflamme check limited to n <= {KL_MAX_QUBITS}, got {n}"
        )));
    }
    for e in errors {
        Error::check_len(n, e.n())?;
    }
    let dim = 1usize << n;
    let gens = code.generators();
    let mut scratch = Vec::with_capacity(dim);

    // Column j of P is P e_j; stored column-major.
    let mut proj = vec![ZERO; dim * dim];
    for j in 0..dim {
        let col = &mut proj[j * dim..(j + 1) * dim];
        col[j] = ONE;
        apply_projector(&gens, col, &mut scratch);
    }

    let not_projector = |why: &str| Error::InvalidCode(format!("code-space operator is not a projector: {why}"));
    for i in 0..dim {
        for j in 0..=i {
            if (proj[j * dim + i] - proj[i * dim + j].conj()).norm() > KL_TOLERANCE {
                return Err(not_projector("not Hermitian"));
            }
        }
    }
    let mut check = vec![ZERO; dim];
    for j in 0..dim {
        check.copy_from_slice(&proj[j * dim..(j + 1) * dim]);
        apply_projector(&gens, &mut check, &mut scratch);
        let col = &proj[j * dim..(j + 1) * dim];
        if check.iter().zip(col).any(|(a, b)| (a - b).norm() > KL_TOLERANCE) {
            return Err(not_projector("not idempotent"));
        }
    }
    let trace: Complex64 = (0..dim).map(|i| proj[i * dim + i]).sum();
    let code_dim = trace.re.round();
    if trace.im.abs() > KL_TOLERANCE || (trace.re - code_dim).abs() > KL_TOLERANCE || code_dim < 1.0 {
        return Err(not_projector("trace is not a positive integer"));
    }
    let code_dim = code_dim as usize;

    // Orthonormal basis of range(P) by modified Gram-Schmidt over its columns.
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(code_dim);
    for j in 0..dim {
        if basis.len() == code_dim {
            break;
        }
        let mut v = proj[j * dim..(j + 1) * dim].to_vec();
        for b in &basis {
            let c = inner(b, &v);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        let norm = inner(&v, &v).re.sqrt();
        if norm > 1e-6 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            basis.push(v);
        }
    }
    if basis.len() != code_dim {
        return Err(not_projector("rank differs from trace"));
    }
    drop(proj);

    let images: Vec<Vec<Vec<Complex64>>> = errors
        .iter()
        .map(|e| {
            basis
                .iter()
                .map(|b| {
                    let mut v = b.clone();
                    apply_pauli(e, &mut v);
                    v
                })
                .collect()
        })
        .collect();

    let m = errors.len();
    let mut coefficients = vec![vec![ZERO; m]; m];
    let mut passed = true;
    let mut witness = None;
    for i in 0..m {
        for j in 0..m {
            let block: Vec<Vec<Complex64>> = (0..code_dim)
                .map(|a| (0..code_dim).map(|b| inner(&images[i][a], &images[j][b])).collect())
                .collect();
            let c = block[0][0];
            coefficients[i][j] = c;
            let scalar = (0..code_dim).all(|a| {
                (0..code_dim).all(|b| {
                    let target = if a == b { c } else { ZERO };
                    (block[a][b] - target).norm() <= KL_TOLERANCE
                })
            });
            if !scalar && passed {
                passed = false;
                witness = Some((i, j));
            }
        }
    }
    if passed {
        debug_assert!((0..m).all(|i| (0..m)
            .all(|j| (coefficients[i][j] - coefficients[j][i].conj()).norm() <= KL_TOLERANCE)));
    }
    Ok(KlReport {
        passed,
        coefficients,
        code_dim,
        witness,
    })
}

/// Every Pauli error on `n` qubits with weight at most `t`, identity first.
pub fn errors_up_to_weight(n: usize, t: usize) -> Vec<PauliOperator> {
    fn rec(n: usize, t: usize, start: usize, cur: &mut PauliOperator, out: &mut Vec<PauliOperator>) {
        if cur.weight() == t {
            return;
        }
        for q in start..n {
            for l in Letter::NON_IDENTITY {
                cur.set_letter(q, l);
                out.push(cur.clone());
                rec(n, t, q + 1, cur, out);
            }
            cur.set_letter(q, Letter::I);
        }
    }
    let mut out = vec![PauliOperator::identity(n)];
    let mut cur = PauliOperator::identity(n);
    rec(n, t, 0, &mut cur, &mut out);
    out
}
