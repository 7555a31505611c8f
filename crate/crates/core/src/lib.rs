//! Quantum teleportation through the thermal equilibrium state of a two-qubit
//! Heisenberg XXZ chain in a uniform plus inhomogeneous magnetic field.
//!
//! Every closed-form result is paired with an independent matrix-level route:
//!
//! * [`spin_model`]: Hamiltonian, analytic eigensystem, Gibbs state.
//! * [`channel`]: input family, Bell projectors, the two-qubit teleportation
//!   channel and its closed-form output.
//! * [`metrics`]: concurrence and fidelity.
//! * [`critical`]: zero-temperature feasibility, critical fields and the
//!   maximum teleportation temperature.
//! * [`numkit`]: the 4×4 complex linear algebra underneath.

pub mod channel;
pub mod critical;
pub mod error;
pub mod metrics;
pub mod numkit;
pub mod spin_model;

pub use channel::{ChannelCoefficients, InputState, OutputState};
pub use error::{DensityViolation, Error, Result};
pub use numkit::{Matrix4C, C64};
pub use spin_model::{ModelParams, ThermalState};
