//! Surface and toric codes on the square lattice.
//!
//! Qubits live on edges, X checks on vertices and Z checks on faces.

use super::css_from_blocks;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::stabilizer::StabilizerCode;

fn check_side(l: usize) -> Result<()> {
    if l < 2 {
        return Err(Error::invalid(format!("lattice side must be >= 2, got {l}")));
    }
    Ok(())
}

/// Planar surface code with side `l`: `[[l² + (l-1)², 1, l]]`.
///
/// Horizontal edges `(i, j)`, `i, j < l`, come first in row-major order,
/// followed by the `(l-1)²` vertical edges. Vertex `(i, j)`, `j < l-1`, sits
/// between horizontal edges `(i, j)` and `(i, j+1)` and vertical edge `(i, j)`
/// leaves it downward. Face `(i, j)`, `i < l-1`, is bounded by horizontal
/// edges `(i, j)` and `(i+1, j)` and vertical edges `(i, j-1)` and `(i, j)`
/// where those exist.
pub fn surface(l: usize) -> Result<StabilizerCode> {
    check_side(l)?;
    let nh = l * l;
    let n = nh + (l - 1) * (l - 1);
    let h = |i: usize, j: usize| i * l + j;
    let v = |i: usize, j: usize| nh + i * (l - 1) + j;

    let mut hx = BitMatrix::zeros(l * (l - 1), n);
    for i in 0..l {
        for j in 0..l - 1 {
            let row = i * (l - 1) + j;
            hx.set(row, h(i, j), true);
            hx.set(row, h(i, j + 1), true);
            if i >= 1 {
                hx.set(row, v(i - 1, j), true);
            }
            if i + 1 < l {
                hx.set(row, v(i, j), true);
            }
        }
    }
    let mut hz = BitMatrix::zeros((l - 1) * l, n);
    for i in 0..l - 1 {
        for j in 0..l {
            let row = i * l + j;
            hz.set(row, h(i, j), true);
            hz.set(row, h(i + 1, j), true);
            if j >= 1 {
                hz.set(row, v(i, j - 1), true);
            }
            if j + 1 < l {
                hz.set(row, v(i, j), true);
            }
        }
    }
    css_from_blocks(&hx, &hz)
}

/// Toric code on the `l x l` periodic lattice: `[[2l², 2, l]]`.
///
/// Horizontal edge `(i, j)` is qubit `i l + j`, vertical edge `(i, j)` is
/// `l² + i l + j`. All `l²` vertex and `l²` face checks are stored, so each
/// block has one dependent row.
pub fn toric(l: usize) -> Result<StabilizerCode> {
    check_side(l)?;
    let n = 2 * l * l;
    let h = |i: usize, j: usize| (i % l) * l + j % l;
    let v = |i: usize, j: usize| l * l + (i % l) * l + j % l;
    let mut hx = BitMatrix::zeros(l * l, n);
    let mut hz = BitMatrix::zeros(l * l, n);
    for i in 0..l {
        for j in 0..l {
            let row = i * l + j;
            for q in [h(i, j), h(i, j + l - 1), v(i, j), v(i + l - 1, j)] {
                hx.set(row, q, true);
            }
            for q in [h(i, j), h(i + 1, j), v(i, j), v(i, j + 1)] {
                hz.set(row, q, true);
            }
        }
    }
    css_from_blocks(&hx, &hz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::min_distance;

    #[test]
    fn surface_parameters() {
        for l in 2..7 {
            let code = surface(l).unwrap();
            assert_eq!(code.n(), l * l + (l - 1) * (l - 1));
            assert_eq!(code.k(), 1);
            assert_eq!(code.r(), 2 * l * (l - 1));
            let hist = code.weight_histogram();
            assert!(hist.len() <= 5);
            assert_eq!(hist[..2], [0, 0]);
        }
        assert_eq!(surface(5).unwrap().n(), 41);
        assert_eq!(min_distance(&surface(3).unwrap(), 3).unwrap(), Some(3));
        assert_eq!(min_distance(&surface(2).unwrap(), 2).unwrap(), Some(2));
        assert!(surface(1).is_err());
    }

    #[test]
    fn surface_boundary_weights() {
        // l=3: 2 boundary-row vertices per side row, 1 interior; same for faces
        let hist = surface(3).unwrap().weight_histogram();
        assert_eq!(hist, vec![0, 0, 0, 8, 4]);
    }

    #[test]
    fn toric_parameters() {
        for l in 2..6 {
            let code = toric(l).unwrap();
            assert_eq!((code.n(), code.k(), code.r()), (2 * l * l, 2, 2 * l * l));
            let css = code.css().unwrap();
            assert_eq!(css.hx.rank(), l * l - 1);
            assert_eq!(css.hz.rank(), l * l - 1);
            assert_eq!(code.weight_histogram(), vec![0, 0, 0, 0, 2 * l * l]);
        }
        assert_eq!(min_distance(&toric(3).unwrap(), 3).unwrap(), Some(3));
    }
}
