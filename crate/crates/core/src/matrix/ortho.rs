use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Orthonormalizes `vectors` in order (modified Gram-Schmidt, two passes).
///
/// Inputs are read as flat vectors, so any shape works as long as all lengths
/// agree; outputs are column vectors. A vector whose residual norm after
/// projection falls below `tol` is dropped, so a rank-deficient input yields a
/// shorter output.
pub fn gram_schmidt(vectors: &[ComplexMatrix], tol: f64) -> Result<Vec<ComplexMatrix>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let len = first.as_slice().len();
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        if v.as_slice().len() != len {
            return Err(Error::mismatch(format!("vector of length {len}"), v.as_slice().len()));
        }
        let mut w = v.as_slice().to_vec();
        for _ in 0..2 {
            for b in &basis {
                let proj: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= proj * bi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < tol {
            continue;
        }
        w.iter_mut().for_each(|z| *z /= norm);
        basis.push(w);
    }
    Ok(basis.iter().map(|b| ComplexMatrix::column_vector(b)).collect())
}
