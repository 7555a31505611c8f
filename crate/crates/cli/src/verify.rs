//! Closed forms against the matrix-level computations on a seeded random grid.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use xxz_teleport::channel::{apply_channel_general, channel_coefficients, output_state_closed, InputState};
use xxz_teleport::metrics::{concurrence_general, fidelity_closed, fidelity_general, output_concurrence_closed};
use xxz_teleport::numkit::Matrix4C;
use xxz_teleport::spin_model::{thermal_state_closed, thermal_state_oracle};
use xxz_teleport::{ModelParams, Result};

pub const THERMAL_TOL: f64 = 1e-10;
pub const CHANNEL_TOL: f64 = 1e-10;
pub const CONCURRENCE_TOL: f64 = 1e-10;
pub const FIDELITY_TOL: f64 = 1e-8;
pub const TRACE_IDENTITY_TOL: f64 = 1e-12;

const SUITES: [(&str, f64); 5] = [
    ("thermal", THERMAL_TOL),
    ("channel", CHANNEL_TOL),
    ("concurrence", CONCURRENCE_TOL),
    ("fidelity", FIDELITY_TOL),
    ("trace_identity", TRACE_IDENTITY_TOL),
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub points: usize,
    pub seed: u64,
    /// Relative error planted in the closed-form output coherence. Test hook.
    pub fault: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            points: 200,
            seed: 42,
            fault: 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub worst: Option<(ModelParams, InputState)>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub points: usize,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "points={} seed={}", self.points, self.seed);
        for s in &self.suites {
            let verdict = if s.passed() { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:<15} max_dev={:.3e} tol={:.0e} {verdict}",
                s.name, s.max_deviation, s.tolerance
            );
            if let (false, Some((p, input))) = (s.passed(), s.worst) {
                let _ = writeln!(
                    out,
                    "  at J={} lambda={} B={} b={} T={} theta={} phi={}",
                    p.coupling,
                    p.anisotropy,
                    p.field,
                    p.inhomogeneity,
                    p.temperature,
                    input.theta(),
                    input.phi()
                );
            }
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// The spin-model parameter ranges: `0 < |J| ≤ 3`, `0 < λ ≤ 3`,
/// `|B|, |b| ≤ 5`, `0.05 ≤ T ≤ 10`.
pub fn random_point(rng: &mut impl Rng) -> (ModelParams, InputState) {
    let mut j = 0.0;
    while j == 0.0 {
        j = rng.gen_range(-3.0..=3.0);
    }
    let lambda = 3.0 - rng.gen_range(0.0..3.0);
    let p = ModelParams::new(
        j,
        lambda,
        rng.gen_range(-5.0..=5.0),
        rng.gen_range(-5.0..=5.0),
        rng.gen_range(0.05..=10.0),
    );
    let input = InputState::new(rng.gen_range(0.0..=FRAC_PI_2), rng.gen_range(0.0..TAU))
        .expect("sampled inside the valid angle ranges");
    (p, input)
}

fn deviations(p: &ModelParams, input: &InputState, fault: f64) -> Result<[f64; 5]> {
    let closed = thermal_state_closed(p)?;
    let oracle = thermal_state_oracle(p)?;
    let thermal = closed.rho.max_abs_diff(&oracle.rho);

    let mut rho_out = output_state_closed(p, input)?.rho_out;
    if fault != 0.0 {
        let mut e = *rho_out.entries();
        e[0][3] *= 1.0 + fault;
        e[3][0] *= 1.0 + fault;
        rho_out = Matrix4C::new(e)?;
    }
    let general = apply_channel_general(&oracle.rho, &input.density())?;
    let channel = rho_out.max_abs_diff(&general);

    let concurrence = (output_concurrence_closed(p, input)? - concurrence_general(&general)?.value).abs();
    let fidelity = (fidelity_closed(p, input)?.value - fidelity_general(&input.density(), &general)?.value).abs();
    let trace = channel_coefficients(p)?.trace_identity_defect().map_or(0.0, f64::abs);
    Ok([thermal, channel, concurrence, fidelity, trace])
}

pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let grid: Vec<_> = (0..opts.points).map(|_| random_point(&mut rng)).collect();
    let devs: Vec<[f64; 5]> = grid
        .par_iter()
        .map(|(p, input)| deviations(p, input, opts.fault))
        .collect::<Result<_>>()?;

    let suites = SUITES
        .iter()
        .enumerate()
        .map(|(k, &(name, tolerance))| {
            let mut result = SuiteResult {
                name,
                tolerance,
                max_deviation: 0.0,
                worst: None,
            };
            for (point, d) in grid.iter().zip(&devs) {
                // NaN counts as a breach
                let dev = if d[k].is_nan() { f64::INFINITY } else { d[k] };
                if dev > result.max_deviation {
                    result.max_deviation = dev;
                    result.worst = Some(*point);
                }
            }
            result
        })
        .collect();
    Ok(VerifyReport {
        points: opts.points,
        seed: opts.seed,
        suites,
    })
}
