//! Bipartite quantum states, local channels `ℰ ⊗ 𝕀` and entanglement
//! measures, plus the experiments that probe how local channels reshape the
//! ordering of states by entanglement.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex matrices, a Jacobi eigensolver for Hermitian
//!   matrices, partial trace/transpose and seeded random sampling.
//! - [`states`]: density matrices, pure states and the Werner / Schmidt /
//!   maximally entangled families.
//! - [`channels`]: Kraus channels, local lifting and Choi states.
//! - [`measures`]: concurrence, negativity, log-negativity, PPT and CHSH.
//! - [`experiments`]: the Choi-state bound, iso-entangled images, the
//!   depolarizing and contraction counterexamples, and diagram scans.
//! - [`io`]: JSON formats for states and channels.

#![forbid(unsafe_code)]

pub mod channels;
pub mod error;
pub mod experiments;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod states;

pub use channels::{QuantumChannel, Side};
pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix};
pub use measures::{Cut, Measure};
pub use states::{DensityMatrix, PureState};
