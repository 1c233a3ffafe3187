//! Bipartite state families and density-matrix validation.
//!
//! Basis convention: computational basis `|ab⟩` with subsystem A the slow
//! (left) index, and `|ψ₊⟩ = (|00⟩ + |11⟩)/√2`.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::linalg::{check_dims, eigvalsh, partial_trace, tensor, tensor_vec, ComplexMatrix};

/// Tolerance on Hermiticity, trace and negative eigenvalues of a state.
pub const STATE_TOL: f64 = 1e-10;

/// Tolerance on the norm of a pure state vector.
pub const NORM_TOL: f64 = 1e-12;

/// Unitarity tolerance for operators passed to state constructors.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationFailure {
    NotHermitian,
    TraceDefect,
    NegativeEigenvalue,
}

/// Outcome of checking a matrix against the density-matrix conditions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub failures: Vec<ValidationFailure>,
}

impl Diagnostics {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} (hermiticity defect {:e}, trace defect {:e}, min eigenvalue {:e})",
            self.failures, self.hermiticity_defect, self.trace_defect, self.min_eigenvalue
        )
    }
}

/// Reports how far `m` is from being a density matrix.
pub fn validate(m: &ComplexMatrix) -> Diagnostics {
    let hermiticity_defect = m.hermiticity_defect();
    let tr = m.trace();
    let trace_defect = (tr - Complex64::new(1.0, 0.0)).norm();
    // The spectrum of the Hermitian part is what matters for positivity; the
    // anti-Hermitian defect is reported separately.
    let min_eigenvalue = eigvalsh(&m.hermitian_part()).map(|ev| ev[0]).unwrap_or(f64::NAN);

    let mut failures = Vec::new();
    if hermiticity_defect > STATE_TOL {
        failures.push(ValidationFailure::NotHermitian);
    }
    if trace_defect > STATE_TOL {
        failures.push(ValidationFailure::TraceDefect);
    }
    if min_eigenvalue.is_nan() || min_eigenvalue < -STATE_TOL {
        failures.push(ValidationFailure::NegativeEigenvalue);
    }
    Diagnostics {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
        failures,
    }
}

/// A validated density matrix together with its subsystem dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, matrix.dim())?;
        let diagnostics = validate(&matrix);
        if !diagnostics.passes() {
            return Err(Error::NotAState(diagnostics));
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
            dims,
        })
    }

    /// Wraps a matrix that is a state by construction (e.g. the output of a
    /// CPTP map). Only the dimensions are checked.
    pub(crate) fn from_trusted(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.dim());
        Self { matrix, dims }
    }

    pub fn maximally_mixed(dims: &[usize]) -> Self {
        let d: usize = dims.iter().product();
        Self::from_trusted(
            ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
            dims.to_vec(),
        )
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::from_trusted(tensor(&self.matrix, &other.matrix), dims)
    }

    /// Reduced state on the subsystems in `keep` (ascending order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let reduced = partial_trace(&self.matrix, &self.dims, keep)?;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        let dims = kept.iter().map(|&k| self.dims[k]).collect();
        Ok(Self::from_trusted(reduced, dims))
    }

    /// Convex combination `weight * a + (1 - weight) * b`.
    pub fn mix(weight: f64, a: &Self, b: &Self) -> Result<Self> {
        check_range("weight", weight, 0.0, 1.0)?;
        if a.dims != b.dims {
            return Err(Error::DimensionMismatch(format!(
                "cannot mix states on {:?} and {:?}",
                a.dims, b.dims
            )));
        }
        let m = &a.matrix.scale_real(weight) + &b.matrix.scale_real(1.0 - weight);
        Ok(Self::from_trusted(m, a.dims.clone()))
    }

    /// `u ρ u†` for a unitary `u` on the full space.
    pub fn unitary_conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        check_unitary(u, self.dim())?;
        Ok(Self::from_trusted(
            u.conjugate(&self.matrix).hermitian_part(),
            self.dims.clone(),
        ))
    }
}

/// A normalized state vector with subsystem dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        let norm = vector_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, dims })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        let norm = vector_norm(&amplitudes);
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        amplitudes.iter_mut().for_each(|z| *z /= norm);
        Ok(Self { amplitudes, dims })
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dims: &[usize], index: usize) -> Result<Self> {
        let dim: usize = dims.iter().product();
        if index >= dim {
            return Err(Error::DimensionMismatch(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::new(amplitudes, dims.to_vec())
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(ComplexMatrix::outer(&self.amplitudes), self.dims.clone())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self {
            amplitudes: tensor_vec(&self.amplitudes, &other.amplitudes),
            dims,
        }
    }
}

fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn check_unitary(u: &ComplexMatrix, dim: usize) -> Result<()> {
    if u.dim() != dim {
        return Err(Error::DimensionMismatch(format!(
            "expected a {dim}x{dim} unitary, got {0}x{0}",
            u.dim()
        )));
    }
    let defect = u.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary { defect });
    }
    Ok(())
}

/// `Σᵢ |ii⟩ / √d` on dims `(d, d)`.
pub fn psi_plus(d: usize) -> PureState {
    assert!(d > 0);
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        amplitudes[i * d + i] = amp;
    }
    PureState {
        amplitudes,
        dims: vec![d, d],
    }
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_psi_plus() -> PureState {
    psi_plus(2)
}

/// `(I ⊗ u)|ψ₊⟩`; every maximally entangled two-qubit state has this form.
pub fn max_entangled(u: &ComplexMatrix) -> Result<PureState> {
    check_unitary(u, 2)?;
    let lifted = tensor(&ComplexMatrix::identity(2), u);
    Ok(PureState {
        amplitudes: lifted.mul_vec(bell_psi_plus().amplitudes()),
        dims: vec![2, 2],
    })
}

/// Werner state `q Ψ₊ + (1 - q) I/4`.
pub fn werner_state(q: f64) -> Result<DensityMatrix> {
    check_range("q", q, 0.0, 1.0)?;
    let psi = bell_psi_plus().projector().into_matrix();
    let noise = ComplexMatrix::identity(4).scale_real((1.0 - q) / 4.0);
    Ok(DensityMatrix::from_trusted(
        &psi.scale_real(q) + &noise,
        vec![2, 2],
    ))
}

/// `α|00⟩ + β|11⟩` with `β = √(1 - α²)`.
pub fn schmidt_pure(alpha: f64) -> Result<PureState> {
    check_range("alpha", alpha, 0.0, 1.0)?;
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    let zero = Complex64::new(0.0, 0.0);
    Ok(PureState {
        amplitudes: vec![Complex64::new(alpha, 0.0), zero, zero, Complex64::new(beta, 0.0)],
        dims: vec![2, 2],
    })
}

/// The operator `A` with `(I ⊗ A)|ψ₊⟩ = |φ⟩`.
///
/// Writing `φ = Σ φ_ij |ij⟩`, the filter is `A_ji = √d φ_ij`.
pub fn schmidt_filter(phi: &PureState) -> Result<ComplexMatrix> {
    let dims = phi.dims();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::DimensionMismatch(format!(
            "filter decomposition needs two equal local dimensions, got {dims:?}"
        )));
    }
    let d = dims[0];
    let scale = (d as f64).sqrt();
    Ok(ComplexMatrix::from_fn(d, |r, c| {
        phi.amplitudes()[c * d + r] * scale
    }))
}

/// `(I ⊗ A) ρ (I ⊗ A)†` on a `(d, d)` system, without renormalization.
///
/// This filtering map is generally not trace preserving.
pub fn apply_filter(filter: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = filter.dim();
    if rho.dim() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "filter of dimension {d} cannot act on a {0}x{0} operator",
            rho.dim()
        )));
    }
    Ok(tensor(&ComplexMatrix::identity(d), filter).conjugate(rho))
}
