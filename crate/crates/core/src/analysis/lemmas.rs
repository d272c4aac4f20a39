//! Two constructive facts about PSD matrices that the Kraus construction leans on:
//! every PSD matrix is a Gram matrix, and the block form
//! `[[S, S C^dagger], [C S, C S C^dagger]]` with `S > 0` is always PSD.

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, psd_sqrt_factor, ComplexMatrix};

use super::UNITARY_TOL;

/// Matrix of inner products `G[i, j] = (f_i, f_j)`, antilinear in the first slot.
pub fn gram_matrix(vectors: &[ComplexMatrix]) -> ComplexMatrix {
    let n = vectors.len();
    ComplexMatrix::from_fn(n, n, |i, j| vectors[i].inner(&vectors[j]))
}

/// Vectors `f_1..f_n` in `C^n` with `(f_i, f_j) = S[i, j]`, expressed in the
/// standard basis.
pub fn gram_vectors(s: &ComplexMatrix, tol: f64) -> Result<Vec<ComplexMatrix>> {
    if !s.is_square() {
        return Err(Error::InvalidShape(format!(
            "Gram target must be square, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    gram_vectors_in_basis(s, &ComplexMatrix::identity(s.rows()), tol)
}

/// Same as [`gram_vectors`] but expanded in the orthonormal basis given by the
/// columns of `basis`: `f_i = sum_j conj(Q[i, j]) b_j` with `S = Q Q^dagger`.
///
/// Different bases give different vector sets with the same Gram matrix.
pub fn gram_vectors_in_basis(s: &ComplexMatrix, basis: &ComplexMatrix, tol: f64) -> Result<Vec<ComplexMatrix>> {
    let n = s.rows();
    if basis.shape() != (n, n) {
        return Err(Error::mismatch(
            format!("{n}x{n} basis"),
            format!("{}x{}", basis.rows(), basis.cols()),
        ));
    }
    let defect = basis.unitarity_defect().unwrap_or(f64::INFINITY);
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary {
            defect,
            threshold: UNITARY_TOL,
        });
    }
    // Q has zero columns for clipped eigenvalues, which simply contribute nothing.
    let q = psd_sqrt_factor(s, tol)?;
    let coefficients = q.conj();
    // Row i of conj(Q) times basis^T gives the components of f_i.
    let vectors = coefficients.matmul(&basis.transpose());
    Ok((0..n)
        .map(|i| vectors.row(i).to_vec())
        .map(|r| ComplexMatrix::column_vector(&r))
        .collect())
}

/// `[[S, S C^dagger], [C S, C S C^dagger]]` for Hermitian positive definite `S`
/// (size `N1`) and any `C` with `N1` columns.
pub fn psd_from_blocks(s: &ComplexMatrix, c: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !s.is_square() {
        return Err(Error::mismatch("square S", format!("{}x{}", s.rows(), s.cols())));
    }
    let n1 = s.rows();
    if c.cols() != n1 {
        return Err(Error::mismatch(
            format!("C with {n1} columns"),
            format!("{}x{}", c.rows(), c.cols()),
        ));
    }
    let eig = hermitian_eigen(s, 1e-9)?;
    let min = eig.min_eigenvalue().unwrap_or(0.0);
    if n1 == 0 || min <= 0.0 {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }

    let s = s.hermitian_part();
    let sc = s.matmul(&c.adjoint());
    let cs = c.matmul(&s);
    let csc = cs.matmul(&c.adjoint());
    let total = n1 + c.rows();
    Ok(ComplexMatrix::from_fn(total, total, |i, j| match (i < n1, j < n1) {
        (true, true) => s[(i, j)],
        (true, false) => sc[(i, j - n1)],
        (false, true) => cs[(i - n1, j)],
        (false, false) => csc[(i - n1, j - n1)],
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random::{random_psd, random_unitary, seeded_rng};

    fn real(n: usize, data: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(n, n, data).unwrap()
    }

    #[test]
    fn identity_gives_orthonormal_vectors() {
        let f = gram_vectors(&ComplexMatrix::identity(2), 1e-9).unwrap();
        assert_eq!(f.len(), 2);
        assert!(gram_matrix(&f).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn two_by_two_positive_definite() {
        let s = real(2, &[2.0, 1.0, 1.0, 2.0]);
        let f = gram_vectors(&s, 1e-9).unwrap();
        assert!((f[0].inner(&f[0]).re - 2.0).abs() < 1e-12);
        assert!((f[1].inner(&f[1]).re - 2.0).abs() < 1e-12);
        assert!((f[0].inner(&f[1]) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn rank_one_gives_identical_unit_vectors() {
        let f = gram_vectors(&real(2, &[1.0, 1.0, 1.0, 1.0]), 1e-9).unwrap();
        assert!(f[0].max_abs_diff(&f[1]) < 1e-12);
        assert!((f[0].frobenius_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn any_orthonormal_basis_works() {
        let mut rng = seeded_rng(11);
        let s = random_psd(4, 4, &mut rng);
        let u = random_unitary(4, 12);
        let f = gram_vectors_in_basis(&s, &u, 1e-9).unwrap();
        let g = gram_vectors(&s, 1e-9).unwrap();
        assert!(gram_matrix(&f).max_abs_diff(&s) < 1e-12);
        assert!(
            f[0].max_abs_diff(&g[0]) > 1e-3,
            "a rotated basis should give different vectors"
        );
        assert!(gram_vectors_in_basis(&s, &ComplexMatrix::identity(4).scale_real(2.0), 1e-9).is_err());
    }

    #[test]
    fn gram_vectors_rejects_indefinite() {
        assert!(matches!(
            gram_vectors(&real(2, &[0.0, 1.0, 1.0, 0.0]), 1e-9),
            Err(Error::NotPsd { .. })
        ));
        assert!(matches!(
            gram_vectors(&real(2, &[1.0, 1.0, 0.0, 1.0]), 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn block_examples() {
        let one = real(1, &[1.0]);
        assert_eq!(psd_from_blocks(&one, &ComplexMatrix::zeros(0, 1)).unwrap(), one);

        let m = psd_from_blocks(&one, &one).unwrap();
        assert_eq!(m, real(2, &[1.0, 1.0, 1.0, 1.0]));
        let eig = hermitian_eigen(&m, 1e-9).unwrap();
        assert!((eig.eigenvalues[0] - 2.0).abs() < 1e-14 && eig.eigenvalues[1].abs() < 1e-14);

        let m = psd_from_blocks(&ComplexMatrix::identity(2), &ComplexMatrix::zeros(2, 2)).unwrap();
        assert_eq!(m, ComplexMatrix::from_diagonal(&[1.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn block_errors() {
        let not_pd = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        assert!(matches!(
            psd_from_blocks(&not_pd, &ComplexMatrix::zeros(1, 2)),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            psd_from_blocks(&ComplexMatrix::identity(2), &ComplexMatrix::zeros(1, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
