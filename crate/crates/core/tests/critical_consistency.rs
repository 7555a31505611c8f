//! The zero-temperature thresholds against the finite-temperature dynamics.

use std::f64::consts::FRAC_PI_4;

use xxz_teleport::channel::InputState;
use xxz_teleport::critical::{
    critical_inhomogeneous_field, critical_uniform_field, max_teleportation_temperature, teleportation_margin,
    MaxTemperature,
};
use xxz_teleport::metrics::output_concurrence_closed;
use xxz_teleport::ModelParams;

fn bell_like() -> InputState {
    InputState::new(FRAC_PI_4, 0.0).unwrap()
}

#[test]
fn uniform_field_threshold_shows_at_low_temperature() {
    let bc = critical_uniform_field(1.0, 1.0, 0.0).unwrap().unwrap();
    assert_eq!(bc, 2.0);
    let p = ModelParams::new(1.0, 1.0, 0.0, 0.0, 1e-3);
    assert!(output_concurrence_closed(&p.with_field(0.95 * bc), &bell_like()).unwrap() >= 0.99);
    assert!(output_concurrence_closed(&p.with_field(1.05 * bc), &bell_like()).unwrap() <= 1e-3);
}

#[test]
fn inhomogeneity_threshold_shows_at_low_temperature() {
    let bc = critical_inhomogeneous_field(-1.0, 2.0, 0.0).unwrap().unwrap();
    let p = ModelParams::new(-1.0, 2.0, 0.0, 0.0, 1e-3);
    assert!(output_concurrence_closed(&p.with_inhomogeneity(0.9 * bc), &bell_like()).unwrap() <= 1e-3);
    assert!(output_concurrence_closed(&p.with_inhomogeneity(1.1 * bc), &bell_like()).unwrap() > 0.0);
}

#[test]
fn output_concurrence_vanishes_past_max_temperature() {
    for (j, l, big_b, b) in [
        (1.0, 1.0, 0.0, 0.0),
        (1.0, 0.5, 0.8, 0.3),
        (-1.0, 1.0, 0.0, 1.0),
        (2.0, 1.5, -1.0, 2.0),
    ] {
        let MaxTemperature::Found { value, residual, .. } = max_teleportation_temperature(j, l, big_b, b).unwrap()
        else {
            panic!("no root for {j} {l} {big_b} {b}");
        };
        assert!(residual <= 1e-9);
        let p = ModelParams::new(j, l, big_b, b, value);
        assert!(teleportation_margin(&p, 1.0).unwrap().abs() <= 1e-9);
        let delta = 1e-3 * value;
        assert!(output_concurrence_closed(&p.with_temperature(value - delta), &bell_like()).unwrap() > 0.0);
        assert_eq!(
            output_concurrence_closed(&p.with_temperature(value + delta), &bell_like()).unwrap(),
            0.0
        );
    }
}

#[test]
fn max_temperature_is_order_independent() {
    let a = max_teleportation_temperature(1.3, 0.8, 0.4, -0.6).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| max_teleportation_temperature(1.3, 0.8, 0.4, -0.6).unwrap());
    assert_eq!(a, b);
}
