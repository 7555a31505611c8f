//! The XXZ Hamiltonian, its analytic eigensystem, and the Gibbs state.
//!
//! ```text
//! H = ½[J(σ₁ˣσ₂ˣ + σ₁ʸσ₂ʸ + λσ₁ᶻσ₂ᶻ) + (B + b)σ₁ᶻ + (B − b)σ₂ᶻ]
//! ```
//!
//! Units have `k = 1`. The closed-form thermal state is evaluated with every
//! exponential ratio taken in the log domain, so temperatures far below the
//! coupling scale (down to `1e-6` with O(1) couplings) stay finite.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::numkit::{self, kron2, pauli, Matrix4C, Vector4C, C64};

/// Energies closer than this are reported as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// The five physical knobs. `field` is the average (uniform) field `B`,
/// `inhomogeneity` the antisymmetric part `b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub coupling: f64,
    pub anisotropy: f64,
    pub field: f64,
    pub inhomogeneity: f64,
    pub temperature: f64,
}

impl ModelParams {
    pub fn new(coupling: f64, anisotropy: f64, field: f64, inhomogeneity: f64, temperature: f64) -> Self {
        ModelParams {
            coupling,
            anisotropy,
            field,
            inhomogeneity,
            temperature,
        }
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        ModelParams { temperature, ..self }
    }

    pub fn with_field(self, field: f64) -> Self {
        ModelParams { field, ..self }
    }

    pub fn with_inhomogeneity(self, inhomogeneity: f64) -> Self {
        ModelParams { inhomogeneity, ..self }
    }

    /// Checks everything except the temperature.
    pub fn validate_hamiltonian(&self) -> Result<()> {
        validate_couplings(self.coupling, self.anisotropy)?;
        finite("B", self.field)?;
        finite("b", self.inhomogeneity)
    }

    pub fn validate_thermal(&self) -> Result<()> {
        self.validate_hamiltonian()?;
        let t = self.temperature;
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidParameter {
                name: "T",
                value: t,
                reason: "temperature must be finite and > 0",
            });
        }
        Ok(())
    }

    /// `η = √(b² + J²)`
    pub fn eta(&self) -> f64 {
        self.inhomogeneity.hypot(self.coupling)
    }

    /// Antiferromagnetic when `J > 0`.
    pub fn is_antiferromagnetic(&self) -> bool {
        self.coupling > 0.0
    }
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

/// `J ≠ 0` and `λ > 0`, both finite.
pub(crate) fn validate_couplings(coupling: f64, anisotropy: f64) -> Result<()> {
    finite("J", coupling)?;
    if coupling == 0.0 {
        return Err(Error::InvalidParameter {
            name: "J",
            value: coupling,
            reason: "exchange coupling must be nonzero; the eigenstate normalization degenerates at J = 0",
        });
    }
    if !(anisotropy.is_finite() && anisotropy > 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: anisotropy,
            reason: "the model requires anisotropy lambda > 0",
        });
    }
    Ok(())
}

/// Scalars shared by the thermal state and the channel coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedQuantities {
    /// `√(b² + J²)`
    pub eta: f64,
    /// `b − η`
    pub epsilon: f64,
    /// `b + η`
    pub zeta: f64,
    /// Partition function; `inf` once it leaves the f64 range.
    pub z: f64,
    pub log_z: f64,
    /// `cosh(η/T)`
    pub m: f64,
    /// `b·sinh(η/T)/η`
    pub n: f64,
    /// `e^{λJ/2T}·J·sinh(η/T)/η`
    pub c: f64,
}

/// `(ε, ζ) = (b − η, b + η)` without cancellation: `εζ = −J²`.
pub(crate) fn epsilon_zeta(coupling: f64, inhomogeneity: f64) -> (f64, f64) {
    let eta = inhomogeneity.hypot(coupling);
    let j2 = coupling * coupling;
    if inhomogeneity == 0.0 {
        (-eta, eta)
    } else if inhomogeneity > 0.0 {
        let zeta = inhomogeneity + eta;
        (-j2 / zeta, zeta)
    } else {
        let epsilon = inhomogeneity - eta;
        (epsilon, -j2 / epsilon)
    }
}

pub(crate) fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// `ln(2 sinh(x))` for `x > 0`.
pub(crate) fn ln_two_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp_m1()).ln()
}

pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    let hi = a.max(b);
    hi + (-(a - b).abs()).exp().ln_1p()
}

/// Log-domain building blocks of `Z = u + v`:
///
/// * `u = 2e^{−λJ/2T}cosh(B/T)` (the `|11⟩`, `|00⟩` sector),
/// * `v = 2e^{λJ/2T}cosh(η/T)` (the `|10⟩`, `|01⟩` sector),
/// * `w = 2e^{λJ/2T}·|J|·sinh(η/T)/η` (twice the coherence `|c|`).
#[derive(Clone, Copy, Debug)]
pub(crate) struct LogWeights {
    pub ln_u: f64,
    pub ln_v: f64,
    pub ln_w: f64,
    pub ln_z: f64,
}

impl LogWeights {
    pub fn new(p: &ModelParams) -> Self {
        let t = p.temperature;
        let eta = p.eta();
        let x = eta / t;
        let half = p.anisotropy * p.coupling / (2.0 * t);
        let ln_u = LN_2 - half + ln_cosh(p.field / t);
        let ln_v = LN_2 + half + ln_cosh(x);
        let ln_w = half + p.coupling.abs().ln() - eta.ln() + ln_two_sinh(x);
        LogWeights {
            ln_u,
            ln_v,
            ln_w,
            ln_z: log_add_exp(ln_u, ln_v),
        }
    }
}

pub fn derived_quantities(p: &ModelParams) -> Result<DerivedQuantities> {
    p.validate_thermal()?;
    let t = p.temperature;
    let eta = p.eta();
    let (epsilon, zeta) = epsilon_zeta(p.coupling, p.inhomogeneity);
    let x = eta / t;
    let sinh_over_eta = x.sinh() / eta;
    let ln_z = LogWeights::new(p).ln_z;
    Ok(DerivedQuantities {
        eta,
        epsilon,
        zeta,
        z: ln_z.exp(),
        log_z: ln_z,
        m: x.cosh(),
        n: p.inhomogeneity * sinh_over_eta,
        c: (p.anisotropy * p.coupling / (2.0 * t)).exp() * p.coupling * sinh_over_eta,
    })
}

/// `H` assembled from Pauli tensor products.
pub fn build_hamiltonian(p: &ModelParams) -> Result<Matrix4C> {
    p.validate_hamiltonian()?;
    let (id, sx, sy, sz) = (pauli(0), pauli(1), pauli(2), pauli(3));
    let exchange = kron2(&sx, &sx) + kron2(&sy, &sy) + kron2(&sz, &sz).scale(p.anisotropy);
    let h = exchange.scale(p.coupling)
        + kron2(&sz, &id).scale(p.field + p.inhomogeneity)
        + kron2(&id, &sz).scale(p.field - p.inhomogeneity);
    Ok(h.scale(0.5))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenPair {
    pub energy: f64,
    pub state: Vector4C,
}

/// `φ₁ … φ₄` in that order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem {
    pub pairs: [EigenPair; 4],
}

impl EigenSystem {
    pub fn energies(&self) -> [f64; 4] {
        self.pairs.map(|p| p.energy)
    }
}

fn basis(index: usize) -> Vector4C {
    let mut v = [C64::new(0.0, 0.0); 4];
    v[index] = C64::new(1.0, 0.0);
    v
}

/// `a|10⟩ + J|01⟩`, normalized.
fn middle_sector_state(a: f64, coupling: f64) -> Vector4C {
    let norm = a.hypot(coupling);
    let zero = C64::new(0.0, 0.0);
    [zero, C64::new(a / norm, 0.0), C64::new(coupling / norm, 0.0), zero]
}

/// ```text
/// φ₁ = |00⟩                         E₁ = ½(λJ − 2B)
/// φ₂ = |11⟩                         E₂ = ½(λJ + 2B)
/// φ₃ ∝ ε|10⟩ + J|01⟩                E₃ = −λJ/2 − η
/// φ₄ ∝ ζ|10⟩ + J|01⟩                E₄ = −λJ/2 + η
/// ```
pub fn analytic_eigensystem(p: &ModelParams) -> Result<EigenSystem> {
    p.validate_hamiltonian()?;
    let lj = p.anisotropy * p.coupling;
    let eta = p.eta();
    let (epsilon, zeta) = epsilon_zeta(p.coupling, p.inhomogeneity);
    Ok(EigenSystem {
        pairs: [
            EigenPair {
                energy: 0.5 * (lj - 2.0 * p.field),
                state: basis(3),
            },
            EigenPair {
                energy: 0.5 * (lj + 2.0 * p.field),
                state: basis(0),
            },
            EigenPair {
                energy: -0.5 * lj - eta,
                state: middle_sector_state(epsilon, p.coupling),
            },
            EigenPair {
                energy: -0.5 * lj + eta,
                state: middle_sector_state(zeta, p.coupling),
            },
        ],
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalState {
    pub rho: Matrix4C,
    /// Partition function; `inf` once it leaves the f64 range, see `log_z`.
    pub z: f64,
    pub log_z: f64,
    pub derived: DerivedQuantities,
}

/// `ρ(T)` entry by entry from the analytic Gibbs weights.
pub fn thermal_state_closed(p: &ModelParams) -> Result<ThermalState> {
    let derived = derived_quantities(p)?;
    let t = p.temperature;
    let eta = derived.eta;
    let x = eta / t;
    let half = p.anisotropy * p.coupling / (2.0 * t);
    let ln_z = derived.log_z;

    // (η ∓ b)/η without cancellation
    let minus = -derived.epsilon / eta;
    let plus = derived.zeta / eta;
    let decay = (-2.0 * x).exp();
    let sector = (half + x - ln_z).exp();

    let up_up = (-half - p.field / t - ln_z).exp();
    let down_down = (-half + p.field / t - ln_z).exp();
    let up_down = 0.5 * sector * (minus + plus * decay);
    let down_up = 0.5 * sector * (plus + minus * decay);
    let coherence = -0.5 * sector * (p.coupling / eta) * (-(-2.0 * x).exp_m1());

    let rho = Matrix4C::from_real([
        [up_up, 0.0, 0.0, 0.0],
        [0.0, up_down, coherence, 0.0],
        [0.0, coherence, down_up, 0.0],
        [0.0, 0.0, 0.0, down_down],
    ])?;
    Ok(ThermalState {
        rho,
        z: derived.z,
        log_z: ln_z,
        derived,
    })
}

/// `e^{−H/T}/tr e^{−H/T}` by spectral exponentiation of the Pauli-built `H`,
/// with the lowest eigenvalue shifted to zero first.
pub fn thermal_state_oracle(p: &ModelParams) -> Result<ThermalState> {
    let derived = derived_quantities(p)?;
    let h = build_hamiltonian(p)?;
    let eig = numkit::hermitian_eigendecompose(&h)?;
    let ground = eig.eigenvalues[0];
    let t = p.temperature;
    let boltzmann = eig.eigenvalues.map(|e| (-(e - ground) / t).exp());
    let sum: f64 = boltzmann.iter().sum();
    let rho = eig.reconstruct_with(boltzmann.map(|w| w / sum));
    let log_z = -ground / t + sum.ln();
    Ok(ThermalState {
        rho,
        z: log_z.exp(),
        log_z,
        derived,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundState {
    pub state: Vector4C,
    pub energy: f64,
    /// Which of `φ₁ … φ₄` (zero-based).
    pub index: usize,
    /// The two lowest levels lie within [`DEGENERACY_TOL`].
    pub degenerate: bool,
}

pub fn ground_state(p: &ModelParams) -> Result<GroundState> {
    let system = analytic_eigensystem(p)?;
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| system.pairs[a].energy.total_cmp(&system.pairs[b].energy));
    let lowest = system.pairs[order[0]];
    let next = system.pairs[order[1]];
    Ok(GroundState {
        state: lowest.state,
        energy: lowest.energy,
        index: order[0],
        degenerate: next.energy - lowest.energy <= DEGENERACY_TOL,
    })
}
