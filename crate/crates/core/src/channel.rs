//! Superoperator, Choi and Kraus representations of a linear map on `M_N(C)`.
//!
//! Index conventions (all 0-based):
//!
//! * `vec(X)` stacks the rows of `X`, so `vec(E_ij)` is the unit vector at `i*N + j`.
//! * The superoperator maps `vec(X)` to `vec(L[X])`; its column `i*N + j` is `vec(L[E_ij])`.
//! * The Choi matrix is `sum_ij L[E_ij] (x) E_ij`, output factor first. Its entry at
//!   row `m*N + a`, column `n*N + b` is `L[E_ab]_{mn}`.
//! * A Kraus matrix `M` contributes `vec(M) vec(M)^dagger` to the Choi matrix.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

fn check_operator_shape(dim: usize, m: &ComplexMatrix, what: &str) -> Result<()> {
    let n2 = dim * dim;
    if dim == 0 {
        return Err(Error::InvalidShape(format!("{what} dimension must be positive")));
    }
    if m.shape() != (n2, n2) {
        return Err(Error::mismatch(
            format!("{n2}x{n2} {what} for N = {dim}"),
            format!("{}x{}", m.rows(), m.cols()),
        ));
    }
    Ok(())
}

fn check_input(dim: usize, x: &ComplexMatrix) -> Result<()> {
    if x.shape() != (dim, dim) {
        return Err(Error::mismatch(
            format!("{dim}x{dim} input"),
            format!("{}x{}", x.rows(), x.cols()),
        ));
    }
    Ok(())
}

/// Linear map acting on row-major vectorized `N x N` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    dim: usize,
    action: ComplexMatrix,
}

impl SuperOperator {
    pub fn new(dim: usize, action: ComplexMatrix) -> Result<Self> {
        check_operator_shape(dim, &action, "superoperator")?;
        Ok(Self { dim, action })
    }

    /// Tabulates a map by evaluating it on every matrix unit `E_ij`.
    pub fn from_map(dim: usize, map: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        let n2 = dim * dim;
        let mut action = ComplexMatrix::zeros(n2, n2);
        for i in 0..dim {
            for j in 0..dim {
                let image = map(&ComplexMatrix::unit(dim, i, j));
                check_input(dim, &image)?;
                for (r, &z) in image.as_slice().iter().enumerate() {
                    action.set(r, i * dim + j, z);
                }
            }
        }
        Self::new(dim, action)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            action: ComplexMatrix::identity(dim * dim),
        }
    }

    /// Inverse of the Choi reshuffle; a pure index permutation.
    pub fn from_choi(choi: &ChoiMatrix) -> Self {
        let n = choi.dim;
        let j = &choi.matrix;
        let action = ComplexMatrix::from_fn(n * n, n * n, |row, col| {
            let (m, nn) = (row / n, row % n);
            let (a, b) = (col / n, col % n);
            j[(m * n + a, nn * n + b)]
        });
        Self { dim: n, action }
    }

    pub fn from_kraus(kraus: &KrausSet) -> Self {
        Self::from_choi(&ChoiMatrix::from_kraus(kraus))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.action
    }

    /// `L[X]`, computed as `unvec(S vec(X))`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_input(self.dim, x)?;
        let out = self.action.matmul(&x.vectorize());
        ComplexMatrix::unvectorize(out.as_slice(), self.dim)
    }
}

/// The Choi matrix `sum_ij L[E_ij] (x) E_ij` of a map on `M_N(C)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl ChoiMatrix {
    pub fn new(dim: usize, matrix: ComplexMatrix) -> Result<Self> {
        check_operator_shape(dim, &matrix, "Choi matrix")?;
        Ok(Self { dim, matrix })
    }

    /// Reshuffles superoperator entries: `J[mN+a, nN+b] = S[mN+n, aN+b]`.
    pub fn from_superop(s: &SuperOperator) -> Self {
        let n = s.dim;
        let action = &s.action;
        let matrix = ComplexMatrix::from_fn(n * n, n * n, |row, col| {
            let (m, a) = (row / n, row % n);
            let (nn, b) = (col / n, col % n);
            action[(m * n + nn, a * n + b)]
        });
        Self { dim: n, matrix }
    }

    /// `sum_p vec(M_p) vec(M_p)^dagger`.
    pub fn from_kraus(kraus: &KrausSet) -> Self {
        let n2 = kraus.dim * kraus.dim;
        let mut acc = vec![ZERO; n2 * n2];
        for m in &kraus.matrices {
            let v = m.as_slice();
            for (r, &vr) in v.iter().enumerate() {
                if vr == ZERO {
                    continue;
                }
                for (c, &vc) in v.iter().enumerate() {
                    acc[r * n2 + c] += vr * vc.conj();
                }
            }
        }
        let matrix = ComplexMatrix::new(n2, n2, acc).expect("sum of finite products");
        Self { dim: kraus.dim, matrix }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// Ordered Kraus matrices `M_1..M_K`, defining `X -> sum_p M_p X M_p^dagger`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// Requires at least one matrix, all `N x N` for a common `N >= 1`, and
    /// at least one of them nonzero.
    pub fn new(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let first = matrices.first().ok_or(Error::EmptyKrausSet)?;
        let dim = first.rows();
        if dim == 0 {
            return Err(Error::InvalidShape("Kraus matrices must be non-empty".into()));
        }
        for (p, m) in matrices.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(Error::mismatch(
                    format!("{dim}x{dim} Kraus matrix"),
                    format!("{}x{} at position {p}", m.rows(), m.cols()),
                ));
            }
        }
        if matrices.iter().all(ComplexMatrix::is_zero) {
            return Err(Error::EmptyKrausSet);
        }
        Ok(Self { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn into_matrices(self) -> Vec<ComplexMatrix> {
        self.matrices
    }

    /// Appends zero matrices until the set has `k` elements.
    pub fn padded(&self, k: usize) -> Self {
        let mut matrices = self.matrices.clone();
        while matrices.len() < k {
            matrices.push(ComplexMatrix::zeros(self.dim, self.dim));
        }
        Self {
            dim: self.dim,
            matrices,
        }
    }

    /// `sum_p M_p X M_p^dagger`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_input(self.dim, x)?;
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for m in &self.matrices {
            out = &out + &m.matmul(x).matmul(&m.adjoint());
        }
        Ok(out)
    }

    /// `sum_p M_p^dagger M_p`.
    pub fn completeness_sum(&self) -> ComplexMatrix {
        self.matrices
            .iter()
            .fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, m| {
                &acc + &m.adjoint().matmul(m)
            })
    }

    /// `||sum_p M_p^dagger M_p - I||_max <= tol`.
    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        self.completeness_sum().max_abs_diff(&ComplexMatrix::identity(self.dim)) <= tol
    }

    /// Total squared Frobenius norm, `tr sum_p M_p^dagger M_p`.
    pub fn weight(&self) -> f64 {
        self.matrices.iter().map(|m| m.frobenius_norm().powi(2)).sum()
    }
}

impl From<&KrausSet> for ChoiMatrix {
    fn from(k: &KrausSet) -> Self {
        ChoiMatrix::from_kraus(k)
    }
}

impl From<&SuperOperator> for ChoiMatrix {
    fn from(s: &SuperOperator) -> Self {
        ChoiMatrix::from_superop(s)
    }
}

impl From<&ChoiMatrix> for SuperOperator {
    fn from(j: &ChoiMatrix) -> Self {
        SuperOperator::from_choi(j)
    }
}

/// Scalar multiple of the identity, handy for building channels by formula.
pub(crate) fn scalar_identity(n: usize, z: C64) -> ComplexMatrix {
    ComplexMatrix::identity(n).scale(z)
}
