//! Complete positivity of linear maps on `M_N(C)`.
//!
//! A map is completely positive exactly when its Choi matrix
//! `J = sum_ij L[E_ij] (x) E_ij` is positive semidefinite. This crate builds
//! that matrix from any of the usual representations, decides the question
//! numerically, and for CP maps factors `J = Q Q^dagger` to read off Kraus
//! matrices, remix them by unitaries, and count the minimal number needed.
//!
//! ```
//! use cpcheck::{cp_verdict, kraus_from_choi, zoo, ChoiMatrix, Tolerances};
//!
//! let t = Tolerances::default();
//! let transpose = ChoiMatrix::from_superop(&zoo::transpose_map(2)?);
//! assert!(!cp_verdict(&transpose, &t, None)?.is_cp);
//!
//! let depol = ChoiMatrix::from_superop(&zoo::depolarizing(0.5, 0.5)?);
//! assert_eq!(kraus_from_choi(&depol, &t)?.len(), 4);
//! # Ok::<(), cpcheck::Error>(())
//! ```

pub mod analysis;
pub mod channel;
mod error;
pub mod matrix;
pub mod zoo;

pub use analysis::{
    check_hermitian, cp_verdict, gram_vectors, kraus_from_choi, minimal_kraus_count, psd_from_blocks, remix_kraus,
    zero_diagonal_consistent, CpReport, Tolerances,
};
pub use channel::{ChoiMatrix, KrausSet, SuperOperator};
pub use error::{Error, Result};
pub use matrix::{
    gram_schmidt, hermitian_eigen, psd_sqrt_factor, random_unitary, ComplexMatrix, EigenDecomposition, C64,
};
