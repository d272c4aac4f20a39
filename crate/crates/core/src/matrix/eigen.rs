//! Cyclic Jacobi eigensolver for Hermitian matrices.

use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Sweep cap for the Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Converged once the off-diagonal Frobenius norm drops below this fraction of `||M||_F`.
const OFF_DIAGONAL_RTOL: f64 = 1e-13;

/// Relative slack used when picking the largest-modulus entry of an eigenvector.
const PHASE_TIE_RTOL: f64 = 1e-12;

/// `M = P diag(eigenvalues) P^dagger`, eigenvalues descending.
///
/// Column `k` of `eigenvectors` belongs to `eigenvalues[k]`. Each column is
/// scaled so that its largest-modulus entry (lowest index on ties) is real and
/// positive, which makes the decomposition reproducible bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn min_eigenvalue(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    /// `P diag(lambda) P^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let p = &self.eigenvectors;
        let scaled = ComplexMatrix::from_fn(p.rows(), p.cols(), |i, k| p[(i, k)] * self.eigenvalues[k]);
        scaled.matmul(&p.adjoint())
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic-by-row complex Jacobi rotations.
///
/// `tol` bounds the accepted Hermiticity defect relative to `max(1, ||m||_max)`;
/// only the Hermitian part of `m` is diagonalized.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::InvalidShape(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let threshold = tol * m.max_abs().max(1.0);
    let defect = m.hermiticity_defect();
    if defect > threshold {
        return Err(Error::NotHermitian { defect, threshold });
    }

    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let target = OFF_DIAGONAL_RTOL * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off_norm = off_diagonal_norm(&a);
        if off_norm > target {
            return Err(Error::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                off_norm,
            });
        }
    }

    // Stable sort keeps the Jacobi order among equal eigenvalues.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    for k in 0..n {
        fix_phase(&mut eigenvectors, k);
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Annihilates `a[p, q]` with `a <- G^dagger a G`, `v <- v G`.
///
/// `G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]` on the `(p, q)` plane, where
/// `phi` is the phase of `a[p, q]`. When the two diagonal entries tie, the
/// larger eigenvalue lands in slot `p`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta > 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let e = phase.conj();
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = e * (-s);
    let g_qq = e * c;

    let n = a.rows();
    for k in 0..n {
        let x = a[(k, p)];
        let y = a[(k, q)];
        a.set(k, p, x * g_pp + y * g_qp);
        a.set(k, q, x * g_pq + y * g_qq);
    }
    for k in 0..n {
        let x = a[(p, k)];
        let y = a[(q, k)];
        a.set(p, k, g_pp.conj() * x + g_qp.conj() * y);
        a.set(q, k, g_pq.conj() * x + g_qq.conj() * y);
    }
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);
    a.set(p, p, C64::new(a[(p, p)].re, 0.0));
    a.set(q, q, C64::new(a[(q, q)].re, 0.0));

    for k in 0..v.rows() {
        let x = v[(k, p)];
        let y = v[(k, q)];
        v.set(k, p, x * g_pp + y * g_qp);
        v.set(k, q, x * g_pq + y * g_qq);
    }
}

fn fix_phase(vectors: &mut ComplexMatrix, col: usize) {
    let n = vectors.rows();
    let largest = (0..n).map(|i| vectors[(i, col)].norm()).fold(0.0, f64::max);
    if largest == 0.0 {
        return;
    }
    let pivot = (0..n)
        .find(|&i| vectors[(i, col)].norm() >= largest * (1.0 - PHASE_TIE_RTOL))
        .expect("some entry attains the maximum");
    let z = vectors[(pivot, col)];
    let rot = z.conj() / z.norm();
    for i in 0..n {
        let w = vectors[(i, col)] * rot;
        vectors.set(i, col, w);
    }
    let w = vectors[(pivot, col)];
    vectors.set(pivot, col, C64::new(w.re, 0.0));
}

/// Factor `m = Q Q^dagger` with `Q = P D^{1/2}`, columns in descending eigenvalue order.
///
/// Eigenvalues in `[-tol * max(1, lambda_max), 0)` are clipped to zero; anything
/// lower is rejected as [`Error::NotPsd`].
pub fn psd_sqrt_factor(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m, tol)?;
    sqrt_factor_from_eigen(&eig, tol)
}

pub(crate) fn sqrt_factor_from_eigen(eig: &EigenDecomposition, tol: f64) -> Result<ComplexMatrix> {
    let threshold = tol * eig.max_eigenvalue().unwrap_or(0.0).max(1.0);
    if let Some(min) = eig.min_eigenvalue() {
        if min < -threshold {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
                threshold,
            });
        }
    }
    let roots: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let p = &eig.eigenvectors;
    Ok(ComplexMatrix::from_fn(p.rows(), p.cols(), |i, k| p[(i, k)] * roots[k]))
}
