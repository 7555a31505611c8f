//! Where teleportation of entanglement switches on and off.
//!
//! At zero temperature `a₄C_in − 2a₁ > 0` reduces to the margin
//! `λJ + √(J² + b²) − |B| > 0`, which fixes the critical fields. At finite
//! temperature the largest root of `a₄(T) − 2a₁(T)` is located numerically.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spin_model::{finite, validate_couplings, LogWeights, ModelParams};

/// Lower end of the temperature bracket for [`max_teleportation_temperature`].
pub const T_MIN: f64 = 1e-4;
/// Upper end of the temperature bracket.
pub const T_MAX: f64 = 1e4;
/// Log-spaced scan points across the bracket.
pub const SCAN_POINTS: usize = 512;
/// Bisection stops once the bracket is this small relative to its lower end.
const ROOT_REL_TOL: f64 = 1e-13;

/// Best fidelity reachable with classical communication alone.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeasibilityReport {
    pub feasible_at_zero_t: bool,
    /// `λJ + √(J² + b²) − |B|`
    pub margin: f64,
    pub critical_field: Option<f64>,
    pub critical_inhomogeneity: Option<f64>,
}

pub fn feasibility_zero_t(p: &ModelParams) -> Result<FeasibilityReport> {
    p.validate_hamiltonian()?;
    let margin = p.anisotropy * p.coupling + p.eta() - p.field.abs();
    Ok(FeasibilityReport {
        feasible_at_zero_t: margin > 0.0,
        margin,
        critical_field: critical_uniform_field(p.coupling, p.anisotropy, p.inhomogeneity)?,
        critical_inhomogeneity: critical_inhomogeneous_field(p.coupling, p.anisotropy, p.field)?,
    })
}

/// `B_c = λJ + √(J² + b²)`, or `None` when that is not positive (no uniform
/// field admits teleportation at zero temperature).
pub fn critical_uniform_field(coupling: f64, anisotropy: f64, inhomogeneity: f64) -> Result<Option<f64>> {
    validate_couplings(coupling, anisotropy)?;
    finite("b", inhomogeneity)?;
    let bc = anisotropy * coupling + inhomogeneity.hypot(coupling);
    Ok((bc > 0.0).then_some(bc))
}

/// `b_c = √((|B| − λJ)² − J²)`.
///
/// `None` means the chain is already feasible at `b = 0`, so no threshold is
/// needed. When it is not, `|B| − λJ ≥ |J|` and the root is real.
pub fn critical_inhomogeneous_field(coupling: f64, anisotropy: f64, field: f64) -> Result<Option<f64>> {
    validate_couplings(coupling, anisotropy)?;
    finite("B", field)?;
    let lj = anisotropy * coupling;
    if lj + coupling.abs() - field.abs() > 0.0 {
        return Ok(None);
    }
    let excess = field.abs() - lj;
    let radicand = excess * excess - coupling * coupling;
    if radicand < -1e-12 * excess * excess {
        return Err(Error::Internal("infeasible at b = 0 but (|B| - lambda J)^2 < J^2"));
    }
    Ok(Some(radicand.max(0.0).sqrt()))
}

/// Low-temperature estimate of the largest admissible `|B|`:
/// `λJ + √(J² + b²) + T ln(C_in/2)`. Meaningful for `T` well below `η`.
pub fn low_t_critical_field(p: &ModelParams, input_concurrence: f64) -> Result<f64> {
    p.validate_thermal()?;
    if !(input_concurrence > 0.0 && input_concurrence <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "C_in",
            value: input_concurrence,
            reason: "input concurrence must lie in (0, 1]",
        });
    }
    Ok(p.anisotropy * p.coupling + p.eta() + p.temperature * (input_concurrence / 2.0).ln())
}

/// `(a₄ C_in − 2a₁)/Z²`; positive exactly where entanglement gets through.
pub fn teleportation_margin(p: &ModelParams, input_concurrence: f64) -> Result<f64> {
    p.validate_thermal()?;
    Ok(normalized_margin(p, input_concurrence))
}

fn normalized_margin(p: &ModelParams, input_concurrence: f64) -> f64 {
    let w = LogWeights::new(p);
    let a4 = (2.0 * (w.ln_w - w.ln_z)).exp();
    let a1 = (w.ln_u + w.ln_v - 2.0 * w.ln_z).exp();
    a4 * input_concurrence - 2.0 * a1
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MaxTemperature {
    /// Largest root of `a₄C_in − 2a₁` in the bracket.
    Found {
        value: f64,
        /// `|a₄ C_in − 2a₁|/Z²` at `value`.
        residual: f64,
        /// More than one sign change was seen in the scan.
        multimodal: bool,
    },
    /// `a₄C_in − 2a₁ ≤ 0` at every scanned temperature.
    Infeasible,
    /// Still positive at [`T_MAX`]; any root lies above the bracket.
    AboveRange,
}

impl MaxTemperature {
    pub fn value(&self) -> Option<f64> {
        match self {
            MaxTemperature::Found { value, .. } => Some(*value),
            _ => None,
        }
    }
}

/// Largest temperature at which a maximally entangled input keeps some
/// entanglement.
pub fn max_teleportation_temperature(
    coupling: f64,
    anisotropy: f64,
    field: f64,
    inhomogeneity: f64,
) -> Result<MaxTemperature> {
    max_teleportation_temperature_for(coupling, anisotropy, field, inhomogeneity, 1.0)
}

/// Same as [`max_teleportation_temperature`] for a given input concurrence.
///
/// The 512-point log-spaced scan over `[1e-4, 1e4]` runs in parallel; the
/// results are collected in index order, so the root is independent of
/// scheduling.
pub fn max_teleportation_temperature_for(
    coupling: f64,
    anisotropy: f64,
    field: f64,
    inhomogeneity: f64,
    input_concurrence: f64,
) -> Result<MaxTemperature> {
    let base = ModelParams::new(coupling, anisotropy, field, inhomogeneity, 1.0);
    base.validate_hamiltonian()?;
    if !(input_concurrence > 0.0 && input_concurrence <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "C_in",
            value: input_concurrence,
            reason: "input concurrence must lie in (0, 1]",
        });
    }
    let g = |t: f64| normalized_margin(&base.with_temperature(t), input_concurrence);

    let (log_lo, log_hi) = (T_MIN.ln(), T_MAX.ln());
    let step = (log_hi - log_lo) / (SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| {
            if i == SCAN_POINTS - 1 {
                T_MAX
            } else {
                (log_lo + step * i as f64).exp()
            }
        })
        .collect();
    let positive: Vec<bool> = grid.par_iter().map(|&t| g(t) > 0.0).collect();

    if positive[SCAN_POINTS - 1] {
        return Ok(MaxTemperature::AboveRange);
    }
    let crossings: Vec<usize> = (0..SCAN_POINTS - 1)
        .filter(|&i| positive[i] != positive[i + 1])
        .collect();
    let Some(&last) = crossings.last() else {
        return Ok(MaxTemperature::Infeasible);
    };

    // g > 0 at lo, g <= 0 at hi
    let (mut lo, mut hi) = (grid[last], grid[last + 1]);
    for _ in 0..200 {
        if hi - lo <= ROOT_REL_TOL * lo {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    Ok(MaxTemperature::Found {
        value,
        residual: g(value).abs(),
        multimodal: crossings.len() > 1,
    })
}

/// `F > 2/3`, strictly.
pub fn classical_threshold_check(fidelity: f64) -> bool {
    fidelity > CLASSICAL_FIDELITY
}
