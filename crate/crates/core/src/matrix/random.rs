//! Seeded random matrices. All generators are deterministic per seed
//! (ChaCha8 stream), so property tests and the CLI reproduce exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{gram_schmidt, ComplexMatrix, C64};

/// The generator used by every seeded entry point in this crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix with i.i.d. standard complex Gaussian entries (real and imaginary
/// parts each of variance 1/2).
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * s, im * s)
    })
}

/// Haar-random unitary from the QR factorization of a Ginibre matrix.
///
/// Gram-Schmidt leaves a positive real diagonal in `R`, which is exactly the
/// normalization under which `Q` is Haar distributed.
pub fn random_unitary_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    assert!(n >= 1, "random_unitary needs n >= 1");
    loop {
        let g = ginibre(n, n, rng);
        let cols: Vec<ComplexMatrix> = (0..n).map(|j| g.column(j)).collect();
        let q = gram_schmidt(&cols, 1e-8).expect("columns share a length");
        if q.len() == n {
            return ComplexMatrix::from_fn(n, n, |i, j| q[j][(i, 0)]);
        }
    }
}

/// Haar-random `n x n` unitary, deterministic per `seed`.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    random_unitary_with(n, &mut seeded_rng(seed))
}

/// `(G + G^dagger) / 2` for a Ginibre `G`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ginibre(n, n, rng).hermitian_part()
}

/// `G G^dagger` with `G` of shape `n x rank`: PSD of the given rank (almost surely).
pub fn random_psd<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, rank, rng);
    g.matmul(&g.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_unitary_has_unit_modulus() {
        for seed in 0..5 {
            let u = random_unitary(1, seed);
            assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn unitary_defect_and_determinism() {
        let u = random_unitary(4, 7);
        assert!(u.unitarity_defect().unwrap() <= 1e-10);
        assert_eq!(u, random_unitary(4, 7));
        assert_ne!(u, random_unitary(4, 8));
    }

    #[test]
    fn psd_rank() {
        let mut rng = seeded_rng(3);
        let m = random_psd(5, 2, &mut rng);
        assert_eq!(m.shape(), (5, 5));
        assert!(m.hermiticity_defect() < 1e-14);
    }
}
