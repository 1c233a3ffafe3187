use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest tolerated entry of `m - m†` for matrices handed to the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues below `-PSD_TOL` mean the matrix is not positive semidefinite;
/// anything between `-PSD_TOL` and zero is clamped to zero.
pub const PSD_TOL: f64 = 1e-10;

const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `m = V diag(values) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.dim()).map(|r| self.vectors.get(r, k)).collect()
    }

    /// `V f(diag(values)) V†`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mapped: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n)
                .map(|k| self.vectors.get(r, k) * mapped[k] * self.vectors.get(c, k).conj())
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_values(|x| x)
    }
}

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// a real Givens rotation, so the working matrix stays Hermitian throughout.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let n = m.dim();
    let mut a: Vec<Complex64> = m.hermitian_part().into_vec();
    let mut v: Vec<Complex64> = ComplexMatrix::identity(n).into_vec();
    let scale = m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while off_diagonal_norm(&a, n) >= OFF_DIAGONAL_TOL * scale {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[r * n + order[c]]);
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eig(m).map(|e| e.values)
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a[r * n + c].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c + akq * g_qp;
        a[k * n + q] = akp * s + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c + aqk * g_qp.conj();
        a[q * n + k] = apk * s + aqk * g_qq.conj();
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p] = Complex64::new(app - t * g, 0.0);
    a[q * n + q] = Complex64::new(aqq + t * g, 0.0);

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * c + vkq * g_qp;
        v[k * n + q] = vkp * s + vkq * g_qq;
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let min = eig.values[0];
    if min < -PSD_TOL {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok(eig.map_values(|x| x.max(0.0).sqrt()).hermitian_part())
}

/// Sum of the absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigvalsh(m)?.iter().map(|x| x.abs()).sum())
}
