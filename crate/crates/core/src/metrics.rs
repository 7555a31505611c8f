//! Concurrence and fidelity, each as a general matrix computation and as the
//! closed form over the channel coefficients.

use crate::channel::{channel_coefficients, InputState};
use crate::error::{Error, Result};
use crate::numkit::{self, psd_sqrt, singular_values, spin_flip, Matrix4C, Vector4C};
use crate::spin_model::ModelParams;

/// Largest off-X magnitude accepted by [`concurrence_x_state`].
pub const X_SHAPE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceResult {
    pub value: f64,
    /// Square roots of the eigenvalues of `R = ρ(σy⊗σy)ρ*(σy⊗σy)`, descending.
    pub gammas: [f64; 4],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityResult {
    pub value: f64,
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Wootters concurrence of an arbitrary two-qubit density matrix.
///
/// `R` shares its spectrum with `√ρ ρ̃ √ρ = (√ρ √ρ̃)(√ρ √ρ̃)†`, so the `γ_i`
/// are the singular values of `√ρ √ρ̃` with `√ρ̃ = (σy⊗σy) √ρ* (σy⊗σy)`.
pub fn concurrence_general(rho: &Matrix4C) -> Result<ConcurrenceResult> {
    numkit::validate_density(rho)?;
    let root = psd_sqrt(rho)?;
    let flip = spin_flip();
    let root_tilde = (flip * root.conj()) * flip;
    let gammas = singular_values(&(root * root_tilde));
    let value = gammas[0] - gammas[1] - gammas[2] - gammas[3];
    Ok(ConcurrenceResult {
        value: clamp_unit(value),
        gammas,
    })
}

/// Concurrence of a state whose only nonzero entries sit on the diagonal and
/// the anti-diagonal:
///
/// ```text
/// C = 2 max(0, |ρ₁₄| − √(ρ₂₂ρ₃₃), |ρ₂₃| − √(ρ₁₁ρ₄₄))
/// ```
pub fn concurrence_x_state(rho: &Matrix4C) -> Result<ConcurrenceResult> {
    let max_off = rho.off_x_magnitude();
    if max_off > X_SHAPE_TOL {
        return Err(Error::NotXShaped { max_off });
    }
    let diag = |k: usize| rho[(k, k)].re.max(0.0);
    let outer_pop = (diag(0) * diag(3)).sqrt();
    let inner_pop = (diag(1) * diag(2)).sqrt();
    let outer_coh = rho[(0, 3)].norm();
    let inner_coh = rho[(1, 2)].norm();

    let mut gammas = [
        outer_pop + outer_coh,
        (outer_pop - outer_coh).abs(),
        inner_pop + inner_coh,
        (inner_pop - inner_coh).abs(),
    ];
    gammas.sort_by(|a, b| b.total_cmp(a));
    let value = 2.0 * (outer_coh - inner_pop).max(inner_coh - outer_pop).max(0.0);
    Ok(ConcurrenceResult {
        value: clamp_unit(value),
        gammas,
    })
}

/// `C_in = sin 2θ`
pub fn input_concurrence(input: &InputState) -> f64 {
    (2.0 * input.theta()).sin()
}

/// `C_out = max((a₄ C_in − 2a₁)/Z², 0)`
pub fn output_concurrence_closed(p: &ModelParams, input: &InputState) -> Result<f64> {
    let n = channel_coefficients(p)?.normalized;
    Ok(clamp_unit(n.a4 * input_concurrence(input) - 2.0 * n.a1))
}

/// `F = [tr √(√ρ_in ρ_out √ρ_in)]²`.
///
/// The trace norm of `√ρ_in ρ_out √ρ_in` under the root equals the sum of the
/// singular values of `√ρ_in √ρ_out`, which is how it is evaluated.
pub fn fidelity_general(rho_in: &Matrix4C, rho_out: &Matrix4C) -> Result<FidelityResult> {
    numkit::validate_density(rho_in)?;
    numkit::validate_density(rho_out)?;
    let a = psd_sqrt(rho_in)?;
    let b = psd_sqrt(rho_out)?;
    let nuclear: f64 = singular_values(&(a * b)).iter().sum();
    Ok(FidelityResult {
        value: clamp_unit(nuclear * nuclear),
    })
}

/// `⟨φ|ρ|φ⟩` for a pure reference state.
pub fn pure_state_fidelity(state: &Vector4C, rho: &Matrix4C) -> f64 {
    let image = rho.mul_vec(state);
    let overlap: num_complex::Complex64 = state.iter().zip(image.iter()).map(|(s, r)| s.conj() * r).sum();
    clamp_unit(overlap.re)
}

/// `F = [a₃ + ½(a₂ − a₃ + a₄) sin²2θ]/Z²`
pub fn fidelity_closed(p: &ModelParams, input: &InputState) -> Result<FidelityResult> {
    let n = channel_coefficients(p)?.normalized;
    let s = (2.0 * input.theta()).sin();
    Ok(FidelityResult {
        value: clamp_unit(n.a3 + 0.5 * (n.a2 - n.a3 + n.a4) * s * s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply_channel_general, bell_states, output_state_closed};
    use crate::spin_model::{thermal_state_closed, thermal_state_oracle};
    use crate::C64;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, FRAC_PI_8};

    fn state(theta: f64, phi: f64) -> InputState {
        InputState::new(theta, phi).unwrap()
    }

    /// `|⟨ψ|σy⊗σy|ψ*⟩|`
    fn pure_concurrence(v: &Vector4C) -> f64 {
        let flip = spin_flip();
        let vc = v.map(|z| z.conj());
        let fv = flip.mul_vec(&vc);
        let amp: C64 = v.iter().zip(fv.iter()).map(|(a, b)| a.conj() * b).sum();
        amp.norm()
    }

    #[test]
    fn singlet_and_product() {
        let singlet = Matrix4C::outer(&bell_states()[0]);
        let c = concurrence_general(&singlet).unwrap();
        assert!((c.value - 1.0).abs() < 1e-12);
        let down = Matrix4C::from_diagonal([0.0, 0.0, 0.0, 1.0]);
        assert_eq!(concurrence_general(&down).unwrap().value, 0.0);
    }

    #[test]
    fn input_family_concurrence() {
        for theta in [std::f64::consts::PI / 12.0, FRAC_PI_8, FRAC_PI_6] {
            let input = state(theta, 0.9);
            let c = concurrence_general(&input.density()).unwrap().value;
            assert!((c - (2.0 * theta).sin()).abs() < 1e-12);
            assert!((input_concurrence(&input) - (2.0 * theta).sin()).abs() < 1e-15);
        }
        assert_eq!(input_concurrence(&state(0.0, 0.0)), 0.0);
        assert!((input_concurrence(&state(FRAC_PI_4, 0.0)) - 1.0).abs() < 1e-15);
        assert!((input_concurrence(&state(FRAC_PI_6, 0.0)) - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn ground_state_concurrence_is_coupling_over_eta() {
        let p = ModelParams::new(1.0, 1.0, 0.0, 1.0, 1.0);
        let phi3 = crate::spin_model::analytic_eigensystem(&p).unwrap().pairs[2].state;
        let want = std::f64::consts::FRAC_1_SQRT_2;
        assert!((pure_concurrence(&phi3) - want).abs() < 1e-15);
        let c = concurrence_general(&Matrix4C::outer(&phi3)).unwrap().value;
        assert!((c - want).abs() < 1e-12);
    }

    #[test]
    fn x_state_fast_path() {
        let diag = Matrix4C::from_diagonal([0.1, 0.2, 0.3, 0.4]);
        assert_eq!(concurrence_x_state(&diag).unwrap().value, 0.0);

        let thermal = thermal_state_closed(&ModelParams::new(1.0, 1.0, 0.0, 0.0, 1.0))
            .unwrap()
            .rho;
        let fast = concurrence_x_state(&thermal).unwrap();
        let general = concurrence_general(&thermal).unwrap();
        assert!((fast.value - general.value).abs() < 1e-10);
        for (a, b) in fast.gammas.iter().zip(general.gammas.iter()) {
            assert!((a - b).abs() < 1e-10);
        }

        let not_x = Matrix4C::outer(&[
            C64::new(0.6, 0.0),
            C64::new(0.8, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ]);
        assert!(matches!(concurrence_x_state(&not_x), Err(Error::NotXShaped { .. })));
    }

    #[test]
    fn closed_output_concurrence_reference() {
        // oracle: Wootters concurrence of the general channel output
        let p = ModelParams::new(1.0, 1.0, 0.0, 0.0, 1.0);
        let input = state(FRAC_PI_4, 0.0);
        let closed = output_concurrence_closed(&p, &input).unwrap();
        let rho = thermal_state_oracle(&p).unwrap().rho;
        let out = apply_channel_general(&rho, &input.density()).unwrap();
        let general = concurrence_general(&out).unwrap().value;
        assert!((closed - general).abs() < 1e-10);
        assert!((closed - 0.06729960243278166).abs() < 1e-12);
    }

    #[test]
    fn ferromagnetic_isotropic_teleports_nothing() {
        for t in [0.01, 0.5, 2.0] {
            for big_b in [0.0, 0.5, 3.0] {
                let p = ModelParams::new(-1.0, 1.0, big_b, 0.0, t);
                assert_eq!(output_concurrence_closed(&p, &state(FRAC_PI_4, 0.0)).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn inhomogeneity_enables_ferromagnetic_teleportation() {
        // oracle: general channel + Wootters at T = 0.01; the zero-T limit of
        // a₄/Z² is J²/η² = 1/2 here
        let p = ModelParams::new(-1.0, 1.0, 0.0, 1.0, 0.01);
        let input = state(FRAC_PI_4, 0.0);
        let rho = thermal_state_oracle(&p).unwrap().rho;
        let out = apply_channel_general(&rho, &input.density()).unwrap();
        let general = concurrence_general(&out).unwrap().value;
        let closed = output_concurrence_closed(&p, &input).unwrap();
        assert!((closed - general).abs() < 1e-10);
        assert!((closed - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fidelity_basics() {
        let rho = thermal_state_closed(&ModelParams::new(0.7, 1.2, 0.3, -0.4, 0.9))
            .unwrap()
            .rho;
        assert!((fidelity_general(&rho, &rho).unwrap().value - 1.0).abs() < 1e-12);

        let up = Matrix4C::from_diagonal([1.0, 0.0, 0.0, 0.0]);
        let down = Matrix4C::from_diagonal([0.0, 0.0, 0.0, 1.0]);
        assert_eq!(fidelity_general(&up, &down).unwrap().value, 0.0);

        let input = state(0.4, 1.3);
        let out = output_state_closed(&ModelParams::new(1.0, 0.5, 0.2, 0.8, 0.3), &input)
            .unwrap()
            .rho_out;
        let pure = pure_state_fidelity(&input.vector(), &out);
        let general = fidelity_general(&input.density(), &out).unwrap().value;
        assert!((pure - general).abs() < 1e-9);
    }

    #[test]
    fn closed_fidelity_reference() {
        // oracle: Uhlmann fidelity on oracle-path states
        let p = ModelParams::new(1.0, 1.0, 0.0, 0.0, 1.0);
        let input = state(FRAC_PI_4, 0.0);
        let closed = fidelity_closed(&p, &input).unwrap().value;
        let rho = thermal_state_oracle(&p).unwrap().rho;
        let out = apply_channel_general(&rho, &input.density()).unwrap();
        let general = fidelity_general(&input.density(), &out).unwrap().value;
        assert!((closed - general).abs() < 1e-8);
        assert!((closed - 0.5336498012163907).abs() < 1e-12);
    }

    #[test]
    fn fidelity_limits() {
        let hot = ModelParams::new(1.0, 1.0, 1.0, 1.0, 1e4);
        for theta in [0.0, 0.3, FRAC_PI_4, 1.5] {
            let f = fidelity_closed(&hot, &state(theta, 0.0)).unwrap().value;
            assert!((f - 0.25).abs() < 1e-3);
        }
        let above = ModelParams::new(1.0, 1.0, 3.0, 0.0, 1e-3);
        let f = fidelity_closed(&above, &state(FRAC_PI_6, 0.0)).unwrap().value;
        assert!((f - 0.375).abs() < 1e-3);
    }

    #[test]
    fn rejects_non_density() {
        let bad = Matrix4C::from_diagonal([0.5, 0.5, 0.5, 0.5]);
        assert!(matches!(concurrence_general(&bad), Err(Error::InvalidDensity(_))));
        assert!(fidelity_general(&bad, &bad).is_err());
    }
}
