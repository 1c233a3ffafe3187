//! Entanglement measures and witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eigvalsh, hermitian_eig, partial_transpose_many, pauli, tensor, Complex64, ComplexMatrix, PSD_TOL,
};
use crate::states::DensityMatrix;

/// Eigenvalues of a state below this are treated as exact zeros when forming
/// the spin-flip overlap matrix. Round-off leaves null eigenvalues of order
/// 1e-16, whose square roots would otherwise pollute the concurrence at 1e-8.
pub const RANK_CUTOFF: f64 = 1e-12;

/// Bipartition given by the subsystems on the right-hand side of the cut;
/// those are the factors that get partially transposed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    right: Vec<usize>,
}

impl Cut {
    pub fn new(mut right: Vec<usize>) -> Self {
        right.sort_unstable();
        right.dedup();
        Self { right }
    }

    /// `A|B` for a two-party system.
    pub fn bipartite() -> Self {
        Self { right: vec![1] }
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    fn check(&self, dims: &[usize]) -> Result<()> {
        let n = dims.len();
        if self.right.is_empty() || self.right.len() >= n || self.right.iter().any(|&k| k >= n) {
            return Err(Error::DimensionMismatch(format!(
                "cut {:?} does not split {n} subsystems into two non-empty parts",
                self.right
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, k) in self.right.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Concurrence,
    Negativity,
    LogNegativity,
    ChshMax,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Negativity => "negativity",
            Measure::LogNegativity => "log_negativity",
            Measure::ChshMax => "chsh_max",
        }
    }

    /// Evaluates the measure; `cut` is ignored by the two-qubit-only measures.
    pub fn evaluate(self, rho: &DensityMatrix, cut: &Cut) -> Result<MeasureValue> {
        let value = match self {
            Measure::Concurrence => concurrence(rho)?,
            Measure::Negativity => negativity(rho, cut)?,
            Measure::LogNegativity => log_negativity(rho, cut)?,
            Measure::ChshMax => chsh_max(rho)?,
        };
        Ok(MeasureValue {
            name: self,
            value,
            cut: cut.clone(),
        })
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureValue {
    pub name: Measure,
    pub value: f64,
    pub cut: Cut,
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit state required, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// Square roots of the eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`, descending.
///
/// With `ρ = Σ_k |w_k⟩⟨w_k|` (subnormalized eigenvectors), these are the
/// singular values of the symmetric overlap matrix `τ_kl = ⟨w_k|σ_y⊗σ_y|w_l*⟩`,
/// read off from the spectrum of the Hermitian dilation `[[0, τ], [τ†, 0]]`.
pub fn spin_flip_spectrum(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_two_qubits(rho)?;
    let eig = hermitian_eig(rho.matrix())?;
    if eig.values[0] < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.values[0],
        });
    }
    let yy = tensor(&pauli(2), &pauli(2));
    let weighted: Vec<Vec<_>> = (0..4)
        .filter(|&k| eig.values[k] > RANK_CUTOFF)
        .map(|k| {
            let s = eig.values[k].sqrt();
            eig.vector(k).into_iter().map(|z| z * s).collect()
        })
        .collect();
    let flipped: Vec<Vec<_>> = weighted
        .iter()
        .map(|w| yy.mul_vec(&w.iter().map(|z| z.conj()).collect::<Vec<_>>()))
        .collect();

    let r = weighted.len();
    let tau: Vec<Complex64> = (0..r * r)
        .map(|ij| {
            let (i, j) = (ij / r, ij % r);
            weighted[i]
                .iter()
                .zip(&flipped[j])
                .map(|(a, b)| a.conj() * b)
                .sum()
        })
        .collect();
    let zero = Complex64::new(0.0, 0.0);
    let dilation = ComplexMatrix::from_fn(2 * r, |i, j| match (i < r, j < r) {
        (true, false) => tau[i * r + (j - r)],
        (false, true) => tau[j * r + (i - r)].conj(),
        _ => zero,
    });
    let values = eigvalsh(&dilation)?;
    let mut out = [0.0; 4];
    for (slot, &v) in out.iter_mut().zip(values.iter().rev()) {
        *slot = v.max(0.0);
    }
    Ok(out)
}

/// Wootters concurrence `max(0, μ₁ - μ₂ - μ₃ - μ₄)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let mu = spin_flip_spectrum(rho)?;
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).clamp(0.0, 1.0))
}

/// Spectrum of the partial transpose across `cut`.
fn partial_transpose_spectrum(rho: &DensityMatrix, cut: &Cut) -> Result<Vec<f64>> {
    cut.check(rho.dims())?;
    let pt = partial_transpose_many(rho.matrix(), rho.dims(), cut.right())?;
    eigvalsh(&pt)
}

/// `(‖ρ^Γ‖₁ - 1) / 2`, i.e. the magnitude of the negative part of the partial
/// transpose. Eigenvalues in `[-PSD_TOL, 0)` count as zero.
pub fn negativity(rho: &DensityMatrix, cut: &Cut) -> Result<f64> {
    let spectrum = partial_transpose_spectrum(rho, cut)?;
    Ok(spectrum.iter().filter(|&&x| x < -PSD_TOL).map(|x| -x).sum())
}

/// `log₂ ‖ρ^Γ‖₁`, computed as `log₂(1 + 2N)`.
pub fn log_negativity(rho: &DensityMatrix, cut: &Cut) -> Result<f64> {
    Ok((1.0 + 2.0 * negativity(rho, cut)?).log2())
}

/// Positive partial transpose across `cut`.
pub fn is_ppt(rho: &DensityMatrix, cut: &Cut) -> Result<bool> {
    Ok(partial_transpose_spectrum(rho, cut)?[0] >= -PSD_TOL)
}

/// Correlation matrix `T_ij = Tr[ρ σ_i ⊗ σ_j]` for `i, j ∈ {x, y, z}`.
pub fn correlation_matrix(rho: &DensityMatrix) -> Result<[[f64; 3]; 3]> {
    require_two_qubits(rho)?;
    let mut t = [[0.0; 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let obs = tensor(&pauli(i + 1), &pauli(j + 1));
            *entry = rho.matrix().matmul(&obs).trace().re;
        }
    }
    Ok(t)
}

/// Largest CHSH value over all measurement settings: `2√(m₁ + m₂)` with
/// `m₁ ≥ m₂` the top eigenvalues of `TᵀT`.
pub fn chsh_max(rho: &DensityMatrix) -> Result<f64> {
    let t = correlation_matrix(rho)?;
    let mut ttt = [0.0; 9];
    for i in 0..3 {
        for j in 0..3 {
            ttt[i * 3 + j] = (0..3).map(|k| t[k][i] * t[k][j]).sum();
        }
    }
    let values = eigvalsh(&ComplexMatrix::from_real(3, &ttt)?)?;
    Ok(2.0 * (values[2].max(0.0) + values[1].max(0.0)).sqrt())
}
