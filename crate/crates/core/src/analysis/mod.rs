//! Complete-positivity decision via the Choi matrix, and everything that
//! follows once a map is known to be CP: Kraus extraction, unitary remixing
//! of Kraus sets, and the minimal Kraus count.

mod lemmas;

pub use lemmas::{gram_matrix, gram_vectors, gram_vectors_in_basis, psd_from_blocks};

use crate::channel::{ChoiMatrix, KrausSet};
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, sqrt_factor_from_eigen, ComplexMatrix, EigenDecomposition, ZERO};

/// Unitarity slack accepted by [`remix_kraus`], as `||U^dagger U - I||_max`.
pub const UNITARY_TOL: f64 = 1e-9;

/// Relative thresholds for the numerical checks.
///
/// Each is scaled by `max(1, ||J||_max)` (Hermiticity) or `max(1, lambda_max)`
/// (PSD and rank), so normalized channels see absolute thresholds and scaled
/// inputs see relative ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    herm_tol: f64,
    psd_tol: f64,
    rank_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm_tol: 1e-9,
            psd_tol: 1e-9,
            rank_tol: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn new(herm_tol: f64, psd_tol: f64, rank_tol: f64) -> Result<Self> {
        for (name, value) in [("herm_tol", herm_tol), ("psd_tol", psd_tol), ("rank_tol", rank_tol)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::ParameterOutOfRange {
                    name,
                    value,
                    reason: "tolerances must be finite and strictly positive",
                });
            }
        }
        Ok(Self {
            herm_tol,
            psd_tol,
            rank_tol,
        })
    }

    /// The same value for all three thresholds.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol, tol)
    }

    pub fn herm_tol(&self) -> f64 {
        self.herm_tol
    }

    pub fn psd_tol(&self) -> f64 {
        self.psd_tol
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }
}

/// Outcome of [`cp_verdict`].
///
/// The spectrum fields are `None` when the Hermiticity check failed, in which
/// case no eigendecomposition is attempted.
#[derive(Debug, Clone, PartialEq)]
pub struct CpReport {
    pub dim: usize,
    pub hermiticity_defect: f64,
    pub is_hermitian: bool,
    pub min_eigenvalue: Option<f64>,
    pub max_eigenvalue: Option<f64>,
    /// Descending.
    pub eigenvalues: Option<Vec<f64>>,
    pub is_psd: bool,
    pub is_cp: bool,
    /// Eigenvalues above `rank_tol * max(1, lambda_max)`.
    pub rank: usize,
    pub zero_diag_consistent: bool,
    /// Filled only when a Kraus set accompanies the Choi matrix.
    pub trace_preserving: Option<bool>,
}

/// Hermiticity of `m`: returns the verdict and `||m - m^dagger||_max`.
pub fn check_hermitian(m: &ComplexMatrix, t: &Tolerances) -> (bool, f64) {
    let defect = m.hermiticity_defect();
    (defect <= t.herm_tol * m.max_abs().max(1.0), defect)
}

/// Necessary condition for PSD: a (numerically) zero diagonal entry must have
/// an all-zero row and column. Passing it proves nothing on its own.
pub fn zero_diagonal_consistent(m: &ComplexMatrix, t: &Tolerances) -> bool {
    assert!(m.is_square(), "zero-diagonal check needs a square matrix");
    let thr = t.psd_tol * m.max_abs().max(1.0);
    let n = m.rows();
    (0..n)
        .filter(|&d| m[(d, d)].norm() <= thr)
        .all(|d| (0..n).all(|k| m[(d, k)].norm() <= thr && m[(k, d)].norm() <= thr))
}

/// Decides complete positivity of the map whose Choi matrix is `j`.
///
/// `is_psd` requires both the eigenvalue test and the zero-diagonal test, so
/// a report never claims PSD while flagging an inconsistent zero diagonal.
pub fn cp_verdict(j: &ChoiMatrix, t: &Tolerances, kraus: Option<&KrausSet>) -> Result<CpReport> {
    Ok(analyze(j, t, kraus)?.0)
}

fn analyze(j: &ChoiMatrix, t: &Tolerances, kraus: Option<&KrausSet>) -> Result<(CpReport, Option<EigenDecomposition>)> {
    let m = j.matrix();
    let (is_hermitian, hermiticity_defect) = check_hermitian(m, t);
    let zero_diag_consistent = zero_diagonal_consistent(m, t);
    let trace_preserving = kraus.map(|k| k.is_trace_preserving(t.herm_tol));

    let mut report = CpReport {
        dim: j.dim(),
        hermiticity_defect,
        is_hermitian,
        min_eigenvalue: None,
        max_eigenvalue: None,
        eigenvalues: None,
        is_psd: false,
        is_cp: false,
        rank: 0,
        zero_diag_consistent,
        trace_preserving,
    };
    if !is_hermitian {
        return Ok((report, None));
    }

    let eig = hermitian_eigen(m, t.herm_tol).map_err(Error::into_numerical)?;
    let max = eig.max_eigenvalue().unwrap_or(0.0);
    let min = eig.min_eigenvalue().unwrap_or(0.0);
    let scale = max.max(1.0);
    report.is_psd = min >= -t.psd_tol * scale && zero_diag_consistent;
    report.is_cp = report.is_hermitian && report.is_psd;
    report.rank = count_above(&eig, t.rank_tol * scale);
    report.min_eigenvalue = Some(min);
    report.max_eigenvalue = Some(max);
    report.eigenvalues = Some(eig.eigenvalues.clone());
    Ok((report, Some(eig)))
}

fn count_above(eig: &EigenDecomposition, threshold: f64) -> usize {
    eig.eigenvalues.iter().filter(|&&l| l > threshold).count()
}

fn require_cp(j: &ChoiMatrix, t: &Tolerances) -> Result<(CpReport, EigenDecomposition)> {
    match analyze(j, t, None)? {
        (report, Some(eig)) if report.is_cp => Ok((report, eig)),
        (report, _) => Err(Error::NotCp {
            min_eigenvalue: report.min_eigenvalue,
        }),
    }
}

/// Minimal Kraus set of a CP map: one matrix per eigenvalue above the rank
/// threshold, taken from the columns of `Q = P D^{1/2}`.
///
/// Kraus matrix `k` has entry `(a, b)` equal to `Q[a*N + b, k]`, so that
/// applying the returned set reproduces the map encoded by `j`.
pub fn kraus_from_choi(j: &ChoiMatrix, t: &Tolerances) -> Result<KrausSet> {
    let (report, eig) = require_cp(j, t)?;
    if report.rank == 0 {
        return Err(Error::ZeroMap);
    }
    let q = sqrt_factor_from_eigen(&eig, t.psd_tol)?;
    let n = j.dim();
    let matrices = (0..report.rank)
        .map(|k| ComplexMatrix::from_fn(n, n, |a, b| q[(a * n + b, k)]))
        .collect();
    KrausSet::new(matrices)
}

/// `M~_j = sum_p U[p, j] M_p` with the set zero-padded to the size of `u`.
pub fn remix_kraus(k: &KrausSet, u: &ComplexMatrix) -> Result<KrausSet> {
    let Some(defect) = u.unitarity_defect() else {
        return Err(Error::mismatch("square unitary", format!("{}x{}", u.rows(), u.cols())));
    };
    if u.rows() < k.len() {
        return Err(Error::mismatch(format!("unitary of size >= {}", k.len()), u.rows()));
    }
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary {
            defect,
            threshold: UNITARY_TOL,
        });
    }
    let padded = k.padded(u.rows());
    let n = k.dim();
    let remixed = (0..u.cols())
        .map(|col| {
            padded
                .matrices()
                .iter()
                .enumerate()
                .fold(ComplexMatrix::zeros(n, n), |acc, (p, m)| {
                    let w = u[(p, col)];
                    if w == ZERO {
                        acc
                    } else {
                        &acc + &m.scale(w)
                    }
                })
        })
        .collect();
    KrausSet::new(remixed)
}

/// Number of matrices in a minimal Kraus representation: the count of Choi
/// eigenvalues above `rank_tol * max(1, lambda_max)`.
pub fn minimal_kraus_count(j: &ChoiMatrix, t: &Tolerances) -> Result<usize> {
    Ok(require_cp(j, t)?.0.rank)
}
