//! Dense complex linear algebra for small (at most 16-dimensional) operators.

mod eigen;
mod matrix;
pub mod random;
mod subsystems;

pub use eigen::{
    eigvalsh, hermitian_eig, matrix_sqrt_psd, trace_norm, EigenDecomposition, HERMITIAN_TOL, PSD_TOL,
};
pub use matrix::{pauli, tensor, tensor_vec, ComplexMatrix};
pub use random::{
    ginibre, haar_random_unitary, random_density_matrix, random_hermitian, random_pure_state, stream_rng,
    SampleRng,
};
pub use subsystems::{check_dims, partial_trace, partial_transpose, partial_transpose_many};

pub use num_complex::Complex64;
