//! Kraus-operator channels, local lifting `ℰ ⊗ 𝕀`, Choi states and channel
//! classification.

use rand::Rng;

use crate::error::{check_range, Error, Result};
use crate::linalg::{check_dims, haar_random_unitary, pauli, tensor, Complex64, ComplexMatrix};
use crate::measures::{is_ppt, Cut};
use crate::states::{check_unitary, psi_plus, DensityMatrix, PureState};

/// Trace-preservation tolerance for channels built in code.
pub const TP_TOL: f64 = 1e-10;

/// Trace-preservation tolerance for channels read from files.
pub const TP_TOL_LOADED: f64 = 1e-8;

/// Environment dimension used when sampling random qubit channels.
pub const STINESPRING_ENV_DIM: usize = 4;

/// Which factor of a bipartite system a local channel acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Completely positive trace-preserving map in Kraus form.
///
/// Only maps with equal input and output dimension are represented.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumChannel {
    kraus: Vec<ComplexMatrix>,
    dim: usize,
    label: String,
}

/// Max-abs entry of `Σ K†K - I`.
pub fn trace_preservation_defect(kraus: &[ComplexMatrix]) -> f64 {
    let Some(first) = kraus.first() else {
        return f64::INFINITY;
    };
    let d = first.dim();
    let mut sum = ComplexMatrix::zeros(d);
    for k in kraus {
        sum = &sum + &k.adjoint().matmul(k);
    }
    sum.max_abs_diff(&ComplexMatrix::identity(d))
}

impl QuantumChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(kraus, TP_TOL)
    }

    /// Like [`QuantumChannel::new`] with a caller-chosen trace-preservation
    /// tolerance.
    pub fn with_tolerance(kraus: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        let Some(first) = kraus.first() else {
            return Err(Error::DimensionMismatch(
                "a channel needs at least one Kraus operator".into(),
            ));
        };
        let dim = first.dim();
        if let Some(bad) = kraus.iter().find(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operators of dimension {dim} and {} mixed",
                bad.dim()
            )));
        }
        let defect = trace_preservation_defect(&kraus);
        if defect > tol {
            return Err(Error::NotTracePreserving { defect });
        }
        Ok(Self {
            kraus,
            dim,
            label: "custom".into(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: vec![ComplexMatrix::identity(dim)],
            dim,
            label: "identity".into(),
        }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn d_in(&self) -> usize {
        self.dim
    }

    pub fn d_out(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn trace_preservation_defect(&self) -> f64 {
        trace_preservation_defect(&self.kraus)
    }

    /// `Σ K m K†` on a raw operator.
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "channel on dimension {} applied to a {1}x{1} operator",
                self.dim,
                m.dim()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim);
        for k in &self.kraus {
            out = &out + &k.conjugate(m);
        }
        Ok(out.hermitian_part())
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.apply_matrix(rho.matrix())?;
        Ok(DensityMatrix::from_trusted(out, rho.dims().to_vec()))
    }

    /// `ℰ ⊗ 𝕀` (side A) or `𝕀 ⊗ ℰ` (side B) on a bipartite system.
    pub fn lift_local(&self, side: Side, dims: &[usize]) -> Result<Self> {
        if dims.len() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "local lifting needs a bipartite system, got dims {dims:?}"
            )));
        }
        let target = match side {
            Side::A => 0,
            Side::B => 1,
        };
        self.lift_on(dims, target)
    }

    /// Embeds the channel on subsystem `target` of a multipartite system,
    /// acting as the identity on all other subsystems.
    pub fn lift_on(&self, dims: &[usize], target: usize) -> Result<Self> {
        let total: usize = dims.iter().product();
        check_dims(dims, total)?;
        if target >= dims.len() || dims[target] != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "channel on dimension {} cannot act on subsystem {target} of {dims:?}",
                self.dim
            )));
        }
        let before: usize = dims[..target].iter().product();
        let after: usize = dims[target + 1..].iter().product();
        let (left, right) = (ComplexMatrix::identity(before), ComplexMatrix::identity(after));
        let kraus = self
            .kraus
            .iter()
            .map(|k| tensor(&tensor(&left, k), &right))
            .collect();
        Ok(Self {
            kraus,
            dim: total,
            label: self.label.clone(),
        })
    }

    /// `Ω_ℰ = (ℰ ⊗ 𝕀)[Ψ₊]`.
    pub fn choi(&self) -> ChoiState {
        let d = self.dim;
        let lifted = self
            .lift_local(Side::A, &[d, d])
            .expect("a channel always lifts onto its own dimension");
        let state = lifted
            .apply(&psi_plus(d).projector())
            .expect("dimensions match by construction");
        ChoiState { state }
    }

    /// Whether `(ℰ ⊗ 𝕀)[ρ]` is separable for every input `ρ`.
    ///
    /// Decided by the PPT test on the Choi state, which is exact for qubits.
    pub fn is_entanglement_breaking(&self) -> Result<bool> {
        if self.dim != 2 {
            return Err(Error::DimensionUnsupported(format!(
                "entanglement-breaking test is exact only for qubit channels, got dimension {}",
                self.dim
            )));
        }
        is_ppt(self.choi().state(), &Cut::bipartite())
    }
}

/// Qubit depolarizing channel `ρ ↦ pρ + (1 - p) I/2`.
pub fn depolarizing(p: f64) -> Result<QuantumChannel> {
    check_range("p", p, 0.0, 1.0)?;
    let w_id = ((1.0 + 3.0 * p) / 4.0).sqrt();
    let w_pauli = ((1.0 - p) / 4.0).sqrt();
    let mut kraus = vec![pauli(0).scale_real(w_id)];
    if w_pauli > 0.0 {
        kraus.extend((1..4).map(|k| pauli(k).scale_real(w_pauli)));
    }
    Ok(QuantumChannel::new(kraus)?.with_label(format!("depolarizing({p})")))
}

/// Conjugation by a fixed unitary.
pub fn unitary_channel(u: &ComplexMatrix) -> Result<QuantumChannel> {
    check_unitary(u, u.dim())?;
    Ok(QuantumChannel::new(vec![u.clone()])?.with_label("unitary"))
}

/// Replaces every input with the pure state `Ξ = |ξ⟩⟨ξ|`.
///
/// Kraus operators are `|ξ⟩⟨i|` over the computational basis.
pub fn contraction_channel(xi: &PureState) -> Result<QuantumChannel> {
    let amps = xi.amplitudes();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > crate::states::NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let d = amps.len();
    let kraus = (0..d)
        .map(|i| ComplexMatrix::from_fn(d, |r, c| if c == i { amps[r] } else { Complex64::new(0.0, 0.0) }))
        .collect();
    Ok(QuantumChannel::new(kraus)?.with_label("contraction"))
}

/// Random qubit channel from a Haar unitary on system ⊗ environment with the
/// environment traced out.
pub fn random_stinespring<R: Rng + ?Sized>(rng: &mut R) -> QuantumChannel {
    let (d, e) = (2, STINESPRING_ENV_DIM);
    let u = haar_random_unitary(d * e, rng);
    // K_k[i][j] = ⟨i, k| U |j, 0⟩
    let kraus = (0..e)
        .map(|k| ComplexMatrix::from_fn(d, |i, j| u.get(i * e + k, j * e)))
        .collect();
    QuantumChannel {
        kraus,
        dim: d,
        label: "stinespring".into(),
    }
}

/// Image of the maximally entangled state under `ℰ ⊗ 𝕀`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiState {
    state: DensityMatrix,
}

impl ChoiState {
    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn into_state(self) -> DensityMatrix {
        self.state
    }

    /// Marginal on the untouched factor; equals `I/d` for any channel.
    pub fn input_marginal(&self) -> DensityMatrix {
        self.state.partial_trace(&[1]).expect("Choi state is bipartite")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_density_matrix, stream_rng};
    use crate::states::{bell_psi_plus, werner_state};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn depolarizing_endpoints() {
        let rho = random_density_matrix(&[2], &mut stream_rng(3, 0));
        let id = depolarizing(1.0).unwrap().apply(&rho).unwrap();
        assert!(id.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        let flat = depolarizing(0.0).unwrap().apply(&rho).unwrap();
        assert!(
            flat.matrix()
                .max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5))
                < 1e-15
        );
        assert!(matches!(depolarizing(1.2), Err(Error::ParamOutOfRange { .. })));
    }

    #[test]
    fn depolarizing_matches_its_definition() {
        for (i, p) in [0.1, 0.37, 0.8].into_iter().enumerate() {
            let rho = random_density_matrix(&[2], &mut stream_rng(11, i as u64));
            let out = depolarizing(p).unwrap().apply(&rho).unwrap();
            let expected =
                &rho.matrix().scale_real(p) + &ComplexMatrix::identity(2).scale_real((1.0 - p) / 2.0);
            assert!(out.matrix().max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn lifted_depolarizing_on_werner() {
        let (p, q) = (0.5, 0.7);
        let ch = depolarizing(p).unwrap().lift_local(Side::A, &[2, 2]).unwrap();
        let out = ch.apply(&werner_state(q).unwrap()).unwrap();
        assert!(out.matrix().max_abs_diff(werner_state(p * q).unwrap().matrix()) < 1e-12);
    }

    #[test]
    fn contraction_and_unitary_examples() {
        let zero = PureState::basis(&[2], 0).unwrap();
        let ch = contraction_channel(&zero).unwrap();
        assert!(ch.trace_preservation_defect() < 1e-12);
        let out = ch.apply(&DensityMatrix::maximally_mixed(&[2])).unwrap();
        assert!(out.matrix().max_abs_diff(zero.projector().matrix()) < 1e-15);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = PureState::new(vec![c(h, 0.0), c(h, 0.0)], vec![2]).unwrap();
        let minus = PureState::new(vec![c(h, 0.0), c(-h, 0.0)], vec![2]).unwrap();
        let z = unitary_channel(&pauli(3)).unwrap();
        let out = z.apply(&plus.projector()).unwrap();
        assert!(out.matrix().max_abs_diff(minus.projector().matrix()) < 1e-15);
    }

    #[test]
    fn constructor_errors() {
        assert!(matches!(
            QuantumChannel::new(vec![]),
            Err(Error::DimensionMismatch(_))
        ));
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(matches!(
            QuantumChannel::new(vec![half]),
            Err(Error::NotTracePreserving { .. })
        ));
        assert!(matches!(
            QuantumChannel::new(vec![ComplexMatrix::identity(2), ComplexMatrix::identity(3)]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            unitary_channel(&ComplexMatrix::from_diag(&[1.0, 2.0])),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        let ch = depolarizing(0.5).unwrap();
        assert!(matches!(
            ch.apply(&DensityMatrix::maximally_mixed(&[2, 2])),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(ch.lift_on(&[2, 3], 1).is_err());
        assert!(ch.lift_local(Side::A, &[2, 2, 2]).is_err());
    }

    #[test]
    fn lift_identity_is_identity() {
        let lifted = QuantumChannel::identity(2).lift_local(Side::B, &[2, 2]).unwrap();
        assert_eq!(lifted.kraus(), &[ComplexMatrix::identity(4)]);
    }

    #[test]
    fn choi_examples() {
        let id = QuantumChannel::identity(2).choi();
        assert!(
            id.state()
                .matrix()
                .max_abs_diff(bell_psi_plus().projector().matrix())
                < 1e-15
        );

        let p = 0.3;
        let dep = depolarizing(p).unwrap().choi();
        assert!(
            dep.state()
                .matrix()
                .max_abs_diff(werner_state(p).unwrap().matrix())
                < 1e-15
        );

        let xi = PureState::normalized(vec![c(0.6, 0.0), c(0.0, 0.8)], vec![2]).unwrap();
        let contraction = contraction_channel(&xi).unwrap().choi();
        let expected = tensor(
            xi.projector().matrix(),
            &ComplexMatrix::identity(2).scale_real(0.5),
        );
        assert!(contraction.state().matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn entanglement_breaking_examples() {
        let zero = PureState::basis(&[2], 0).unwrap();
        assert!(contraction_channel(&zero)
            .unwrap()
            .is_entanglement_breaking()
            .unwrap());
        assert!(!depolarizing(1.0).unwrap().is_entanglement_breaking().unwrap());
        assert!(depolarizing(0.3).unwrap().is_entanglement_breaking().unwrap());
        assert!(depolarizing(1.0 / 3.0)
            .unwrap()
            .is_entanglement_breaking()
            .unwrap());
        assert!(!depolarizing(0.34).unwrap().is_entanglement_breaking().unwrap());
        assert!(matches!(
            QuantumChannel::identity(3).is_entanglement_breaking(),
            Err(Error::DimensionUnsupported(_))
        ));
    }

    #[test]
    fn stinespring_channels_are_trace_preserving() {
        for i in 0..20 {
            let ch = random_stinespring(&mut stream_rng(5, i));
            assert!(ch.trace_preservation_defect() < 1e-10);
            assert_eq!(ch.kraus().len(), STINESPRING_ENV_DIM);
        }
    }
}
