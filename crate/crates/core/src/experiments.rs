//! Numerical experiments on entanglement under local channels.
//!
//! - [`bound_check`]: for every input `ω`, the concurrence of
//!   `(ℰ ⊗ 𝕀)[ω]` never exceeds that of the Choi state `(ℰ ⊗ 𝕀)[Ψ₊]`.
//! - [`isoentangled_image_check`]: all maximally entangled inputs are mapped
//!   to states of equal entanglement.
//! - [`example1_curves`], [`example1_pair`]: Werner and Schmidt families under
//!   local depolarizing noise, whose output concurrences are piecewise linear
//!   in the input concurrence with different slopes.
//! - [`find_ordering_inversion`]: search for two states whose entanglement
//!   order flips under a local channel.
//! - [`example2_run`]: a four-qubit pair of pure states whose log-negativity
//!   order flips under a local contraction.
//! - [`diagram_scan`]: rows of the input/output entanglement diagram.
//!
//! Sampling loops run in parallel; sample `i` always draws from
//! [`stream_rng`]`(seed, i)`, so results do not depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{contraction_channel, depolarizing, QuantumChannel, Side};
use crate::error::{check_open_range, check_range, Error, Result};
use crate::linalg::{haar_random_unitary, random_density_matrix, random_pure_state, stream_rng};
use crate::measures::{chsh_max, concurrence, log_negativity, Cut, Measure};
use crate::states::{bell_psi_plus, max_entangled, schmidt_pure, werner_state, DensityMatrix, PureState};

/// Slack allowed on the Choi-state bound and on local monotonicity.
pub const BOUND_TOL: f64 = 1e-9;

/// Agreement required between full-pipeline values and closed forms.
pub const CLOSED_FORM_TOL: f64 = 1e-9;

/// Largest allowed concurrence spread over images of maximally entangled states.
pub const ISO_SPREAD_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `q Ψ₊ + (1 - q) I/4`, parameter `q`.
    Werner,
    /// `α|00⟩ + β|11⟩`, parameter `α`.
    Schmidt,
    /// Reference line `e_out` = concurrence of the Choi state.
    Bound,
    /// Reference line `e_out = e_in`.
    Diagonal,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::Schmidt => "schmidt",
            Family::Bound => "bound",
            Family::Diagonal => "diagonal",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "werner" => Some(Family::Werner),
            "schmidt" => Some(Family::Schmidt),
            "bound" => Some(Family::Bound),
            "diagonal" => Some(Family::Diagonal),
            _ => None,
        }
    }

    /// Member of a state family at parameter `param`.
    pub fn state(self, param: f64) -> Result<DensityMatrix> {
        match self {
            Family::Werner => werner_state(param),
            Family::Schmidt => Ok(schmidt_pure(param)?.projector()),
            Family::Bound | Family::Diagonal => Err(Error::Format(format!(
                "`{}` is a reference line, not a state family",
                self.name()
            ))),
        }
    }
}

/// One point of the input/output entanglement diagram.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub family: Family,
    pub family_param: f64,
    pub e_in: f64,
    pub e_out: f64,
    pub channel: String,
    pub measure: Measure,
}

/// Concurrence of a Werner state.
pub fn werner_concurrence(q: f64) -> f64 {
    ((3.0 * q - 1.0) / 2.0).max(0.0)
}

/// Concurrence of a Werner state after local depolarizing noise of strength `p`.
pub fn werner_depolarized_concurrence(p: f64, q: f64) -> f64 {
    ((3.0 * p * q - 1.0) / 2.0).max(0.0)
}

/// Concurrence `2αβ` of a Schmidt state.
pub fn schmidt_concurrence(alpha: f64) -> f64 {
    2.0 * alpha * (1.0 - alpha * alpha).max(0.0).sqrt()
}

/// Concurrence `αβ(3p - 1)` (clamped at zero) of a depolarized Schmidt state.
pub fn schmidt_depolarized_concurrence(p: f64, alpha: f64) -> f64 {
    (0.5 * schmidt_concurrence(alpha) * (3.0 * p - 1.0)).max(0.0)
}

/// Output concurrence of the Werner family as a function of input concurrence.
pub fn werner_line(p: f64, c_in: f64) -> f64 {
    (p * c_in + 0.5 * (p - 1.0)).max(0.0)
}

/// Output concurrence of the Schmidt family as a function of input concurrence.
pub fn schmidt_line(p: f64, c_in: f64) -> f64 {
    (0.5 * (3.0 * p - 1.0) * c_in).max(0.0)
}

/// Werner parameter with concurrence `c` (for `c > 0`).
pub fn werner_param_for(c: f64) -> f64 {
    (2.0 * c + 1.0) / 3.0
}

/// Schmidt coefficient `α ≥ 1/√2` with concurrence `c`.
pub fn schmidt_param_for(c: f64) -> f64 {
    ((1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0).sqrt()
}

fn uniform_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

fn require_qubit(ch: &QuantumChannel) -> Result<()> {
    if ch.d_in() != 2 {
        return Err(Error::DimensionUnsupported(format!(
            "two-qubit experiments need a qubit channel, got dimension {}",
            ch.d_in()
        )));
    }
    Ok(())
}

fn lift(ch: &QuantumChannel) -> Result<QuantumChannel> {
    require_qubit(ch)?;
    ch.lift_local(Side::A, &[2, 2])
}

/// Input and output concurrence of `rho` under an already lifted channel.
fn in_out(lifted: &QuantumChannel, rho: &DensityMatrix) -> Result<(f64, f64)> {
    Ok((concurrence(rho)?, concurrence(&lifted.apply(rho)?)?))
}

/// Concurrence of the Choi state: the largest output concurrence the lifted
/// channel can produce.
pub fn choi_bound(ch: &QuantumChannel) -> Result<f64> {
    require_qubit(ch)?;
    concurrence(ch.choi().state())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    /// Hilbert-Schmidt (Ginibre-induced) mixed states.
    Mixed,
    /// Uniformly random pure states.
    Pure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub channel: String,
    pub ensemble: Ensemble,
    pub n_samples: usize,
    /// Concurrence of the Choi state.
    pub bound: f64,
    pub max_output: f64,
    /// Smallest `bound - e_out` over all samples.
    pub worst_margin: f64,
    /// Samples with `e_out > bound + BOUND_TOL`.
    pub violations: usize,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

pub fn bound_check(
    ch: &QuantumChannel,
    n_samples: usize,
    seed: u64,
    ensemble: Ensemble,
) -> Result<BoundReport> {
    let lifted = lift(ch)?;
    let bound = choi_bound(ch)?;
    let outputs = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let omega = match ensemble {
                Ensemble::Mixed => random_density_matrix(&[2, 2], &mut rng),
                Ensemble::Pure => random_pure_state(&[2, 2], &mut rng).projector(),
            };
            concurrence(&lifted.apply(&omega)?)
        })
        .collect::<Result<Vec<f64>>>()?;

    let max_output = outputs.iter().copied().fold(0.0, f64::max);
    Ok(BoundReport {
        channel: ch.label().to_string(),
        ensemble,
        n_samples,
        bound,
        max_output,
        worst_margin: outputs.iter().map(|e| bound - e).fold(f64::INFINITY, f64::min),
        violations: outputs.iter().filter(|&&e| e > bound + BOUND_TOL).count(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoReport {
    pub channel: String,
    /// Concurrence of the Choi state (the image of `Ψ₊` itself).
    pub choi_value: f64,
    pub values: Vec<f64>,
    pub min: f64,
    pub max: f64,
    pub spread: f64,
}

impl IsoReport {
    pub fn holds(&self) -> bool {
        self.spread < ISO_SPREAD_TOL
    }
}

/// Concurrence of `(ℰ ⊗ 𝕀)[Ψ_U]` over Haar-random `U`.
pub fn isoentangled_image_check(ch: &QuantumChannel, n_unitaries: usize, seed: u64) -> Result<IsoReport> {
    let lifted = lift(ch)?;
    let choi_value = choi_bound(ch)?;
    let values = (0..n_unitaries)
        .into_par_iter()
        .map(|i| {
            let u = haar_random_unitary(2, &mut stream_rng(seed, i as u64));
            let psi_u = max_entangled(&u)?.projector();
            concurrence(&lifted.apply(&psi_u)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = if values.is_empty() { 0.0 } else { max - min };
    Ok(IsoReport {
        channel: ch.label().to_string(),
        choi_value,
        values,
        min,
        max,
        spread,
    })
}

fn check_close(what: &str, numeric: f64, closed: f64) -> Result<()> {
    if (numeric - closed).abs() > CLOSED_FORM_TOL {
        return Err(Error::InvariantViolation(format!(
            "{what}: pipeline gives {numeric}, closed form {closed}"
        )));
    }
    Ok(())
}

/// Werner and Schmidt families under local depolarizing noise on uniform
/// `q` and `α` grids, each point checked against the closed forms.
pub fn example1_curves(p: f64, grid_size: usize) -> Result<Vec<EntanglementReport>> {
    check_range("p", p, 0.0, 1.0)?;
    if grid_size < 2 {
        return Err(Error::ParamOutOfRange {
            name: "grid_size",
            value: grid_size as f64,
            range: "[2, inf)".into(),
        });
    }
    let ch = depolarizing(p)?;
    let lifted = lift(&ch)?;
    let grid = uniform_grid(grid_size);
    let mut rows = Vec::with_capacity(2 * grid_size);
    for family in [Family::Werner, Family::Schmidt] {
        for &param in &grid {
            let (e_in, e_out) = in_out(&lifted, &family.state(param)?)?;
            let (closed_in, closed_out, line) = match family {
                Family::Werner => (
                    werner_concurrence(param),
                    werner_depolarized_concurrence(p, param),
                    werner_line(p, e_in),
                ),
                _ => (
                    schmidt_concurrence(param),
                    schmidt_depolarized_concurrence(p, param),
                    schmidt_line(p, e_in),
                ),
            };
            let at = format!("{} family, p = {p}, param = {param}", family.name());
            check_close(&format!("{at}, input"), e_in, closed_in)?;
            check_close(&format!("{at}, output"), e_out, closed_out)?;
            check_close(&format!("{at}, linear law"), e_out, line)?;
            rows.push(EntanglementReport {
                family,
                family_param: param,
                e_in,
                e_out,
                channel: ch.label().to_string(),
                measure: Measure::Concurrence,
            });
        }
    }
    Ok(rows)
}

/// A Werner state with concurrence `1/2 + ε` and a Schmidt state with
/// concurrence `1/2 - ε`, both sent through local depolarizing noise.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Example1Pair {
    pub p: f64,
    pub epsilon: f64,
    pub q: f64,
    pub alpha: f64,
    pub c1_in: f64,
    pub c2_in: f64,
    pub c1_out: f64,
    pub c2_out: f64,
    pub c1_out_closed: f64,
    pub c2_out_closed: f64,
    /// `c1_in > c2_in` but `c1_out < c2_out`.
    pub inverted: bool,
}

pub fn example1_pair(p: f64, epsilon: f64) -> Result<Example1Pair> {
    check_range("p", p, 0.0, 1.0)?;
    check_open_range("epsilon", epsilon, -0.5, 0.5)?;
    let (c1_target, c2_target) = (0.5 + epsilon, 0.5 - epsilon);
    let q = werner_param_for(c1_target);
    let alpha = schmidt_param_for(c2_target);
    let lifted = lift(&depolarizing(p)?)?;

    let (c1_in, c1_out) = in_out(&lifted, &werner_state(q)?)?;
    let (c2_in, c2_out) = in_out(&lifted, &schmidt_pure(alpha)?.projector())?;
    check_close("Werner input", c1_in, c1_target)?;
    check_close("Schmidt input", c2_in, c2_target)?;
    let c1_out_closed = werner_line(p, c1_target);
    let c2_out_closed = schmidt_line(p, c2_target);
    check_close("Werner output", c1_out, c1_out_closed)?;
    check_close("Schmidt output", c2_out, c2_out_closed)?;

    Ok(Example1Pair {
        p,
        epsilon,
        q,
        alpha,
        c1_in,
        c2_in,
        c1_out,
        c2_out,
        c1_out_closed,
        c2_out_closed,
        inverted: c1_in > c2_in && c1_out < c2_out,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Werner × Schmidt pairs on uniform `q` and `α` grids.
    Families,
    /// Pairs of Ginibre random states.
    Random,
}

/// Two states whose entanglement order is reversed by a local channel:
/// `e_in_1 > e_in_2` but `e_out_1 < e_out_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionWitness {
    pub state_1: DensityMatrix,
    pub state_2: DensityMatrix,
    /// How each state was produced, e.g. `werner(q=0.7)` or `random(17,a)`.
    pub label_1: String,
    pub label_2: String,
    pub e_in_1: f64,
    pub e_in_2: f64,
    pub e_out_1: f64,
    pub e_out_2: f64,
    /// `e_in_1 - e_in_2`
    pub margin_in: f64,
    /// `e_out_2 - e_out_1`
    pub margin_out: f64,
}

#[derive(Clone)]
struct Candidate {
    label: String,
    state: DensityMatrix,
    e_in: f64,
    e_out: f64,
}

fn witness(first: &Candidate, second: &Candidate, delta: f64) -> Option<InversionWitness> {
    let margin_in = first.e_in - second.e_in;
    let margin_out = second.e_out - first.e_out;
    (margin_in >= delta && margin_out >= delta).then(|| InversionWitness {
        state_1: first.state.clone(),
        state_2: second.state.clone(),
        label_1: first.label.clone(),
        label_2: second.label.clone(),
        e_in_1: first.e_in,
        e_in_2: second.e_in,
        e_out_1: first.e_out,
        e_out_2: second.e_out,
        margin_in,
        margin_out,
    })
}

/// Looks for a pair whose concurrence order flips by at least `delta` on both
/// sides.
///
/// In [`SearchMode::Families`] `n_samples` is the grid size for `q` and `α`;
/// pairs are scanned with the Werner state first, then with the Schmidt state
/// first, each in lexicographic grid order, and the first hit is returned.
/// In [`SearchMode::Random`] `n_samples` pairs are drawn and the lowest-index
/// hit is returned.
pub fn find_ordering_inversion(
    ch: &QuantumChannel,
    mode: SearchMode,
    delta: f64,
    n_samples: usize,
    seed: u64,
) -> Result<Option<InversionWitness>> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::ParamOutOfRange {
            name: "delta",
            value: delta,
            range: "(0, inf)".into(),
        });
    }
    let lifted = lift(ch)?;
    let evaluate = |label: String, state: DensityMatrix| -> Result<Candidate> {
        let (e_in, e_out) = in_out(&lifted, &state)?;
        Ok(Candidate {
            label,
            state,
            e_in,
            e_out,
        })
    };

    match mode {
        SearchMode::Families => {
            if n_samples < 2 {
                return Err(Error::ParamOutOfRange {
                    name: "n_samples",
                    value: n_samples as f64,
                    range: "[2, inf)".into(),
                });
            }
            let grid = uniform_grid(n_samples);
            let family = |f: Family| -> Result<Vec<Candidate>> {
                grid.par_iter()
                    .map(|&x| evaluate(format!("{}({x})", f.name()), f.state(x)?))
                    .collect()
            };
            let werner = family(Family::Werner)?;
            let schmidt = family(Family::Schmidt)?;
            for (firsts, seconds) in [(&werner, &schmidt), (&schmidt, &werner)] {
                for a in firsts {
                    if let Some(w) = seconds.iter().find_map(|b| witness(a, b, delta)) {
                        return Ok(Some(w));
                    }
                }
            }
            Ok(None)
        }
        SearchMode::Random => {
            let hits = (0..n_samples)
                .into_par_iter()
                .map(|i| -> Result<Option<InversionWitness>> {
                    let mut rng = stream_rng(seed, i as u64);
                    let a = evaluate(format!("random({i},a)"), random_density_matrix(&[2, 2], &mut rng))?;
                    let b = evaluate(format!("random({i},b)"), random_density_matrix(&[2, 2], &mut rng))?;
                    Ok(witness(&a, &b, delta).or_else(|| witness(&b, &a, delta)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(hits.into_iter().flatten().next())
        }
    }
}

/// Subsystem order of the four-qubit system: the two left qubits hold the
/// slots 0 and 2, the two right qubits 1 and 3.
pub const EXAMPLE2_DIMS: [usize; 4] = [2, 2, 2, 2];
const L1R1_CONTRACTED: usize = 1;

/// Log-negativities across `L₁L₂ | R₁R₂` before and after contracting `R₁`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Example2Report {
    pub alpha2: f64,
    /// `[E(Ω₁), E(Ω₂)]`
    pub before: [f64; 2],
    /// `[E(Ω₁′), E(Ω₂′)]`
    pub after: [f64; 2],
    /// CHSH maximum of the untouched `L₂R₂` pair of `Ω₂′`.
    pub chsh_untouched: f64,
    /// `E(Ω₁) > E(Ω₂)`
    pub ordered_before: bool,
    /// `E(Ω₁′) < E(Ω₂′)`
    pub reversed_after: bool,
    pub inverted: bool,
}

/// Runs the four-qubit contraction counterexample.
///
/// `Ω₁ = Ψ₊(L₁R₁) ⊗ |00⟩(L₂R₂)` and `Ω₂ = |00⟩(L₁R₁) ⊗ (α|00⟩ + β|11⟩)(L₂R₂)`
/// with `α² = alpha2`; the channel replaces `R₁` with `Ξ = |ξ⟩⟨ξ|`
/// (default `|0⟩`).
pub fn example2_run(alpha2: f64, xi: Option<&PureState>) -> Result<Example2Report> {
    check_open_range("alpha2", alpha2, 0.0, 1.0)?;
    let zero_pair = PureState::basis(&[2, 2], 0)?;
    let omega_1 = bell_psi_plus().tensor(&zero_pair).projector();
    let omega_2 = zero_pair.tensor(&schmidt_pure(alpha2.sqrt())?).projector();

    let default_xi = PureState::basis(&[2], 0)?;
    let xi = xi.unwrap_or(&default_xi);
    let contraction = contraction_channel(xi)?.lift_on(&EXAMPLE2_DIMS, L1R1_CONTRACTED)?;
    let cut = Cut::new(vec![1, 3]);

    let before = [log_negativity(&omega_1, &cut)?, log_negativity(&omega_2, &cut)?];
    let omega_1_out = contraction.apply(&omega_1)?;
    let omega_2_out = contraction.apply(&omega_2)?;
    let after = [
        log_negativity(&omega_1_out, &cut)?,
        log_negativity(&omega_2_out, &cut)?,
    ];
    let chsh_untouched = chsh_max(&omega_2_out.partial_trace(&[2, 3])?)?;

    // Contracting R₁ leaves Ω₁′ a product across the cut while the L₂R₂ pair
    // of Ω₂′ is untouched, for every alpha2 in (0, 1).
    if after[0] != 0.0 || after[1] <= 0.0 || chsh_untouched <= 2.0 {
        return Err(Error::InvariantViolation(format!(
            "after contraction: E(Ω₁′) = {}, E(Ω₂′) = {}, CHSH = {chsh_untouched}",
            after[0], after[1]
        )));
    }
    let ordered_before = before[0] > before[1];
    let reversed_after = after[0] < after[1];
    Ok(Example2Report {
        alpha2,
        before,
        after,
        chsh_untouched,
        ordered_before,
        reversed_after,
        inverted: ordered_before && reversed_after,
    })
}

/// Rows of the input/output concurrence diagram for `ch ⊗ 𝕀`.
///
/// Each state family contributes `grid_size` rows. With `include_bound`, two
/// reference lines follow, each as a pair of endpoint rows at `e_in = 0` and
/// `e_in = 1`: the Choi bound and the diagonal `e_out = e_in`.
pub fn diagram_scan(
    ch: &QuantumChannel,
    families: &[Family],
    grid_size: usize,
    include_bound: bool,
) -> Result<Vec<EntanglementReport>> {
    if grid_size < 2 {
        return Err(Error::ParamOutOfRange {
            name: "grid_size",
            value: grid_size as f64,
            range: "[2, inf)".into(),
        });
    }
    let lifted = lift(ch)?;
    let bound = choi_bound(ch)?;
    let grid = uniform_grid(grid_size);
    let label = ch.label().to_string();
    let row = |family, family_param, e_in, e_out| EntanglementReport {
        family,
        family_param,
        e_in,
        e_out,
        channel: label.clone(),
        measure: Measure::Concurrence,
    };

    let mut rows = Vec::with_capacity(families.len() * grid_size + 4);
    for &family in families {
        let points = grid
            .par_iter()
            .map(|&x| in_out(&lifted, &family.state(x)?))
            .collect::<Result<Vec<_>>>()?;
        for (&x, (e_in, e_out)) in grid.iter().zip(points) {
            if e_out > e_in + BOUND_TOL || e_out > bound + BOUND_TOL {
                return Err(Error::InvariantViolation(format!(
                    "{} family at {x}: e_out = {e_out} exceeds e_in = {e_in} or bound = {bound}",
                    family.name()
                )));
            }
            rows.push(row(family, x, e_in, e_out));
        }
    }
    if include_bound {
        for x in [0.0, 1.0] {
            rows.push(row(Family::Bound, x, x, bound));
        }
        for x in [0.0, 1.0] {
            rows.push(row(Family::Diagonal, x, x, x));
        }
    }
    Ok(rows)
}
