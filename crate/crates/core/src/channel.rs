//! Two-qubit teleportation through two copies of a shared resource state.
//!
//! The resource `ρ` enters only through its Bell-basis weights
//! `p_i = ⟨ψ_i|ρ|ψ_i⟩`, and the averaged output is
//!
//! ```text
//! ρ_out = Σ_ij p_i p_j (σ_i ⊗ σ_j) ρ_in (σ_i ⊗ σ_j)
//! ```
//!
//! with `σ₀ = I` paired with the singlet `ψ₀`, so a pure singlet resource is
//! the identity channel.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::numkit::{self, kron2, pauli, Matrix4C, Vector4C, C64};
use crate::spin_model::{LogWeights, ModelParams};

/// `cos θ|11⟩ + e^{iφ} sin θ|00⟩`, with `θ ∈ [0, π/2]` and `φ ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputState {
    theta: f64,
    phi: f64,
}

impl InputState {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(theta.is_finite() && (0.0..=FRAC_PI_2).contains(&theta)) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "must lie in [0, pi/2]",
            });
        }
        if !(phi.is_finite() && (0.0..2.0 * PI).contains(&phi)) {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: phi,
                reason: "must lie in [0, 2pi)",
            });
        }
        Ok(InputState { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn vector(&self) -> Vector4C {
        let zero = C64::new(0.0, 0.0);
        [
            C64::new(self.theta.cos(), 0.0),
            zero,
            zero,
            C64::from_polar(self.theta.sin(), self.phi),
        ]
    }

    /// `|φ_in⟩⟨φ_in|`: diagonal `(cos²θ, 0, 0, sin²θ)`, corners
    /// `½ sin 2θ e^{∓iφ}`.
    pub fn density(&self) -> Matrix4C {
        Matrix4C::outer(&self.vector())
    }
}

pub fn input_density(input: &InputState) -> Matrix4C {
    input.density()
}

/// The Bell states `ψ₀ … ψ₃` in the standard basis order.
pub fn bell_states() -> [Vector4C; 4] {
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    let o = C64::new(0.0, 0.0);
    [
        // (|01⟩ − |10⟩)/√2
        [o, -r, r, o],
        // (|00⟩ − |11⟩)/√2
        [-r, o, o, r],
        // (|00⟩ + |11⟩)/√2
        [r, o, o, r],
        // (|01⟩ + |10⟩)/√2
        [o, r, r, o],
    ]
}

/// The rank-one projectors `E^i = |ψ_i⟩⟨ψ_i|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellProjectors {
    pub projectors: [Matrix4C; 4],
}

impl BellProjectors {
    pub fn new() -> Self {
        BellProjectors {
            projectors: bell_states().map(|v| Matrix4C::outer(&v)),
        }
    }

    /// `tr[E^i ρ]` for each `i`.
    pub fn weights(&self, rho: &Matrix4C) -> [f64; 4] {
        self.projectors.map(|e| (&e * rho).trace().re)
    }
}

impl Default for BellProjectors {
    fn default() -> Self {
        Self::new()
    }
}

fn apply_weighted(weights: [f64; 4], rho_in: &Matrix4C) -> Matrix4C {
    let mut out = Matrix4C::zeros();
    for (i, &pi) in weights.iter().enumerate() {
        for (j, &pj) in weights.iter().enumerate() {
            let u = kron2(&pauli(i), &pauli(j));
            out = out + ((&u * rho_in) * u).scale(pi * pj);
        }
    }
    out
}

/// The averaged teleportation map for an arbitrary two-qubit input.
pub fn apply_channel_general(rho_channel: &Matrix4C, rho_in: &Matrix4C) -> Result<Matrix4C> {
    numkit::validate_density(rho_channel)?;
    numkit::validate_density(rho_in)?;
    let weights = BellProjectors::new().weights(rho_channel);
    Ok(apply_weighted(weights, rho_in))
}

/// Teleportation through the pure resource `|v⟩⟨v|`.
pub fn pure_channel_output(channel_state: &Vector4C, input: &InputState) -> Result<Matrix4C> {
    let norm = channel_state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > numkit::DENSITY_TOL {
        return Err(Error::NotNormalized { norm });
    }
    apply_channel_general(&Matrix4C::outer(channel_state), &input.density())
}

/// `a₁ … a₄` and `Z` as plain floats, plus the ratios `a_i/Z²` evaluated in
/// the log domain.
///
/// ```text
/// a₁ = 4 cosh(η/T) cosh(B/T)
/// a₂ = 4 e^{−λJ/T} cosh²(B/T)
/// a₃ = 4 e^{λJ/T} cosh²(η/T)
/// a₄ = 4 e^{λJ/T} J² sinh²(η/T)/η²
/// ```
///
/// The plain values overflow to `inf` at low temperature; the ratios never do.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub z: f64,
    pub log_z: f64,
    pub normalized: NormalizedCoefficients,
}

/// `a_i / Z²`. `a₂ + a₃ + 2a₁ = Z²` makes `a2 + a3 + 2·a1 = 1` here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizedCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl ChannelCoefficients {
    /// `(a₂ + a₃ + 2a₁)/Z² − 1` from the plain values, `None` once they
    /// overflow.
    pub fn trace_identity_defect(&self) -> Option<f64> {
        let lhs = self.a2 + self.a3 + 2.0 * self.a1;
        let rhs = self.z * self.z;
        (lhs.is_finite() && rhs.is_finite()).then(|| lhs / rhs - 1.0)
    }
}

pub fn channel_coefficients(p: &ModelParams) -> Result<ChannelCoefficients> {
    p.validate_thermal()?;
    let t = p.temperature;
    let eta = p.eta();
    let x = eta / t;
    let lj = p.anisotropy * p.coupling;
    let cosh_b = (p.field / t).cosh();
    let j_over_eta = p.coupling / eta;

    let logs = LogWeights::new(p);
    let u = (logs.ln_u - logs.ln_z).exp();
    let v = (logs.ln_v - logs.ln_z).exp();
    let w = (logs.ln_w - logs.ln_z).exp();

    Ok(ChannelCoefficients {
        a1: 4.0 * x.cosh() * cosh_b,
        a2: 4.0 * (-lj / t).exp() * cosh_b * cosh_b,
        a3: 4.0 * (lj / t).exp() * x.cosh().powi(2),
        a4: 4.0 * (lj / t).exp() * (j_over_eta * x.sinh()).powi(2),
        z: 2.0 * (-lj / (2.0 * t)).exp() * cosh_b + 2.0 * (lj / (2.0 * t)).exp() * x.cosh(),
        log_z: logs.ln_z,
        normalized: NormalizedCoefficients {
            a1: u * v,
            a2: u * u,
            a3: v * v,
            a4: w * w,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutputState {
    pub rho_out: Matrix4C,
    pub coeffs: ChannelCoefficients,
    pub input: InputState,
}

/// ```text
///          ⎛ a₂s² + a₃c²   0    0   ½a₄ sin2θ e^{−iφ} ⎞
/// ρ_out =  ⎜ 0             a₁   0   0                 ⎟ / Z²
///          ⎜ 0             0    a₁  0                 ⎟
///          ⎝ ½a₄ sin2θ e^{iφ}  0  0   a₂c² + a₃s²     ⎠
/// ```
pub fn output_state_closed(p: &ModelParams, input: &InputState) -> Result<OutputState> {
    let coeffs = channel_coefficients(p)?;
    let n = coeffs.normalized;
    let (s, c) = input.theta().sin_cos();
    let (s2, c2) = (s * s, c * c);
    let corner = 0.5 * n.a4 * (2.0 * input.theta()).sin();
    let zero = C64::new(0.0, 0.0);
    let re = |x: f64| C64::new(x, 0.0);
    let rho_out = Matrix4C::new([
        [
            re(n.a2 * s2 + n.a3 * c2),
            zero,
            zero,
            C64::from_polar(corner, -input.phi()),
        ],
        [zero, re(n.a1), zero, zero],
        [zero, zero, re(n.a1), zero],
        [
            C64::from_polar(corner, input.phi()),
            zero,
            zero,
            re(n.a2 * c2 + n.a3 * s2),
        ],
    ])?;
    Ok(OutputState {
        rho_out,
        coeffs,
        input: *input,
    })
}
