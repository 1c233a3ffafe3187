//! Seeded random matrices: Ginibre, Haar unitaries and induced density matrices.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use crate::states::{DensityMatrix, PureState};

/// Random number generator used by every sampling routine in the crate.
pub type SampleRng = ChaCha8Rng;

/// Independent generator for sample `index` of an experiment seeded with
/// `seed`; results do not depend on the order samples are drawn in.
pub fn stream_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| gaussian(rng))
}

pub fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    (0..dim).map(|_| gaussian(rng)).collect()
}

/// Random Hermitian matrix `(G + G†) / 2`.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ginibre(dim, rng).hermitian_part()
}

/// Haar-distributed unitary from the QR factorization of a Ginibre matrix.
///
/// The orthonormalization is Gram-Schmidt with one re-orthogonalization pass,
/// which yields an `R` factor with positive real diagonal; that fixes the
/// column phases and makes the distribution exactly Haar.
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    assert!(dim > 0, "unitary dimension must be positive");
    let g = ginibre(dim, rng);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|r| g.get(r, j)).collect();
        for _ in 0..2 {
            for q in &cols {
                let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= overlap * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    ComplexMatrix::from_fn(dim, |r, c| cols[c][r])
}

/// Density matrix `G G† / Tr(G G†)` with `G` Ginibre (Hilbert-Schmidt measure).
pub fn random_density_matrix<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> DensityMatrix {
    let dim: usize = dims.iter().product();
    let g = ginibre(dim, rng);
    let w = g.matmul(&g.adjoint()).hermitian_part();
    let tr = w.trace().re;
    DensityMatrix::from_trusted(w.scale_real(1.0 / tr), dims.to_vec())
}

/// Uniformly distributed pure state.
pub fn random_pure_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> PureState {
    let dim: usize = dims.iter().product();
    PureState::normalized(gaussian_vector(dim, rng), dims.to_vec())
        .expect("Gaussian vector has non-zero norm")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigen::eigvalsh;

    #[test]
    fn one_dimensional_unitary_is_a_phase() {
        let u = haar_random_unitary(1, &mut stream_rng(1, 0));
        assert!((u.get(0, 0).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unitary_from_seed_one() {
        let u = haar_random_unitary(4, &mut SampleRng::seed_from_u64(1));
        assert!(u.unitarity_defect() < 1e-10);
        let u16 = haar_random_unitary(16, &mut SampleRng::seed_from_u64(1));
        assert!(u16.unitarity_defect() < 1e-10);
    }

    #[test]
    fn density_matrix_from_seed_one() {
        let rho = random_density_matrix(&[2, 2], &mut SampleRng::seed_from_u64(1));
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(eigvalsh(rho.matrix()).unwrap()[0] >= -1e-12);
        assert!(crate::states::validate(rho.matrix()).passes());
    }

    #[test]
    fn sampling_is_deterministic_per_stream() {
        let a = haar_random_unitary(3, &mut stream_rng(9, 4));
        let b = haar_random_unitary(3, &mut stream_rng(9, 4));
        let c = haar_random_unitary(3, &mut stream_rng(9, 5));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
