//! Cyclic Jacobi diagonalization for the small real symmetric matrices built by
//! the Fraxis (3×3) and FQS (4×4) steps.

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 64;

/// Full eigendecomposition of a symmetric `N×N` matrix.
///
/// Returns eigenvalues and the matrix whose *columns* are the matching
/// orthonormal eigenvectors, in the order Jacobi leaves them (unsorted).
pub fn jacobi_eigen<const N: usize>(a: &[[f64; N]; N]) -> Result<([f64; N], [[f64; N]; N])> {
    for r in 0..N {
        for c in (r + 1)..N {
            let scale = 1.0_f64.max(a[r][c].abs()).max(a[c][r].abs());
            if (a[r][c] - a[c][r]).abs() > SYMMETRY_TOL * scale {
                return Err(Error::Precondition(alloc::format!(
                    "matrix is not symmetric at ({r}, {c}): {} vs {}",
                    a[r][c],
                    a[c][r]
                )));
            }
        }
    }

    let mut m = *a;
    // symmetrize exactly so rotations never see a lopsided pair
    for r in 0..N {
        for c in (r + 1)..N {
            let avg = 0.5 * (m[r][c] + m[c][r]);
            m[r][c] = avg;
            m[c][r] = avg;
        }
    }
    let mut v = [[0.0; N]; N];
    for (k, row) in v.iter_mut().enumerate() {
        row[k] = 1.0;
    }

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) < OFF_DIAGONAL_TOL {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                if m[p][q] == 0.0 {
                    continue;
                }
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut values = [0.0; N];
    for (k, val) in values.iter_mut().enumerate() {
        *val = m[k][k];
    }
    Ok((values, v))
}

fn off_diagonal_norm<const N: usize>(m: &[[f64; N]; N]) -> f64 {
    let mut s = 0.0;
    for r in 0..N {
        for c in 0..N {
            if r != c {
                s += m[r][c] * m[r][c];
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation zeroing `m[p][q]`, accumulated into the eigenvector columns of `v`.
fn rotate<const N: usize>(m: &mut [[f64; N]; N], v: &mut [[f64; N]; N], p: usize, q: usize) {
    let apq = m[p][q];
    let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let app = m[p][p];
    let aqq = m[q][q];
    m[p][p] = app - t * apq;
    m[q][q] = aqq + t * apq;
    m[p][q] = 0.0;
    m[q][p] = 0.0;
    for k in 0..N {
        if k != p && k != q {
            let akp = m[k][p];
            let akq = m[k][q];
            m[k][p] = c * akp - s * akq;
            m[p][k] = m[k][p];
            m[k][q] = s * akp + c * akq;
            m[q][k] = m[k][q];
        }
    }
    for row in v.iter_mut() {
        let vkp = row[p];
        let vkq = row[q];
        row[p] = c * vkp - s * vkq;
        row[q] = s * vkp + c * vkq;
    }
}

/// Smallest eigenvalue of a symmetric 3×3 or 4×4 matrix and a unit eigenvector.
///
/// Ties go to the lowest index in Jacobi's output order. The vector's sign is
/// fixed so that its first nonzero component is positive.
pub fn lowest_eigenpair_sym<const N: usize>(a: &[[f64; N]; N]) -> Result<(f64, [f64; N])> {
    if N != 3 && N != 4 {
        return Err(Error::Capability(alloc::format!(
            "lowest_eigenpair_sym supports 3x3 and 4x4 matrices, got {N}x{N}"
        )));
    }
    let (values, vectors) = jacobi_eigen(a)?;
    let mut best = 0;
    for k in 1..N {
        if values[k] < values[best] {
            best = k;
        }
    }
    let mut vec = [0.0; N];
    for (r, x) in vec.iter_mut().enumerate() {
        *x = vectors[r][best];
    }
    let norm = vec.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in vec.iter_mut() {
        *x /= norm;
    }
    if let Some(first) = vec.iter().copied().find(|x| x.abs() > 1e-12) {
        if first < 0.0 {
            for x in vec.iter_mut() {
                *x = -*x;
            }
        }
    }
    Ok((values[best], vec))
}
