//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xxz_teleport::channel::{apply_channel_general, channel_coefficients, output_state_closed, InputState};
use xxz_teleport::critical::{
    critical_uniform_field, max_teleportation_temperature, teleportation_margin, MaxTemperature,
};
use xxz_teleport::metrics::{
    concurrence_general, fidelity_closed, fidelity_general, input_concurrence, output_concurrence_closed,
};
use xxz_teleport::spin_model::{thermal_state_closed, thermal_state_oracle};
use xxz_teleport::ModelParams;
use xxz_teleport_cli::verify::random_point;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn input(theta: f64, phi: f64) -> InputState {
    InputState::new(theta, phi).unwrap()
}

fn c_out(p: &ModelParams, theta: f64) -> f64 {
    output_concurrence_closed(p, &input(theta, 0.0)).unwrap()
}

fn fidelity(p: &ModelParams, theta: f64) -> f64 {
    fidelity_closed(p, &input(theta, 0.0)).unwrap().value
}

fn seeded_grid(seed: u64, n: usize) -> Vec<ModelParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_point(&mut rng).0).collect()
}

fn channel_grid() -> Vec<(ModelParams, InputState)> {
    let inputs = [input(FRAC_PI_6, 0.0), input(FRAC_PI_4, 1.0), input(1.2, 4.0)];
    seeded_grid(2, 100)
        .into_iter()
        .flat_map(|p| inputs.iter().map(move |i| (p, *i)))
        .collect()
}

fn thermal_oracle() -> Outcome {
    let start = Instant::now();
    let worst = seeded_grid(1, 200)
        .iter()
        .map(|p| {
            thermal_state_closed(p)
                .unwrap()
                .rho
                .max_abs_diff(&thermal_state_oracle(p).unwrap().rho)
        })
        .fold(0.0, f64::max);
    let elapsed = start.elapsed().as_secs_f64();
    check(
        worst <= 1e-10 && elapsed < 5.0,
        format!("max dev {worst:.2e} over 200 points in {elapsed:.3} s"),
    )
}

fn channel_oracle() -> Outcome {
    let worst = channel_grid()
        .iter()
        .map(|(p, i)| {
            let closed = output_state_closed(p, i).unwrap().rho_out;
            let rho = thermal_state_oracle(p).unwrap().rho;
            closed.max_abs_diff(&apply_channel_general(&rho, &i.density()).unwrap())
        })
        .fold(0.0, f64::max);
    check(worst <= 1e-10, format!("max dev {worst:.2e} over 300 cases"))
}

fn metrics_oracle() -> Outcome {
    let (mut dc, mut df) = (0.0f64, 0.0f64);
    for (p, i) in channel_grid() {
        let rho = thermal_state_oracle(&p).unwrap().rho;
        let out = apply_channel_general(&rho, &i.density()).unwrap();
        dc = dc.max((output_concurrence_closed(&p, &i).unwrap() - concurrence_general(&out).unwrap().value).abs());
        df = df
            .max((fidelity_closed(&p, &i).unwrap().value - fidelity_general(&i.density(), &out).unwrap().value).abs());
    }
    check(
        dc <= 1e-10 && df <= 1e-8,
        format!("concurrence dev {dc:.2e}, fidelity dev {df:.2e}"),
    )
}

fn trace_identity() -> Outcome {
    let mut points = seeded_grid(1, 200);
    points.extend(channel_grid().into_iter().map(|(p, _)| p));
    let mut worst = 0.0f64;
    for p in &points {
        match channel_coefficients(p).unwrap().trace_identity_defect() {
            Some(d) => worst = worst.max(d.abs()),
            None => return Err(format!("coefficients overflow at {p:?}")),
        }
    }
    check(
        worst <= 1e-12,
        format!("max relative defect {worst:.2e} over {} points", points.len()),
    )
}

fn perfect_regime() -> Outcome {
    let p = ModelParams::new(1.0, 1.0, 1.0, 0.0, 1e-3);
    let mut detail = Vec::new();
    let mut ok = true;
    for theta in [FRAC_PI_6, FRAC_PI_4] {
        let gap = (c_out(&p, theta) - input_concurrence(&input(theta, 0.0))).abs();
        let f = fidelity(&p, theta);
        ok &= gap <= 1e-4 && f >= 0.999;
        detail.push(format!("theta={theta:.4}: |C_out-C_in|={gap:.1e} F={f:.6}"));
    }
    check(ok, detail.join("; "))
}

fn above_critical() -> Outcome {
    let p = ModelParams::new(1.0, 1.0, 3.0, 0.0, 1e-3);
    let f = fidelity(&p, FRAC_PI_6);
    let c = c_out(&p, FRAC_PI_6);
    let bc = critical_uniform_field(1.0, 1.0, 0.0).unwrap();
    check(
        (f - 0.375).abs() <= 1e-3 && c <= 1e-6 && bc == Some(2.0),
        format!("F={f:.6} C_out={c:.1e} B_c={bc:?}"),
    )
}

fn ferromagnet_infeasible() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..10 {
        for k in 0..10 {
            let big_b = 5.0 * i as f64 / 9.0;
            let t = 0.01 + (5.0 - 0.01) * k as f64 / 9.0;
            worst = worst.max(c_out(&ModelParams::new(-1.0, 1.0, big_b, 0.0, t), FRAC_PI_4));
        }
    }
    let t_max = max_teleportation_temperature(-1.0, 1.0, 0.0, 0.0).unwrap();
    check(
        worst == 0.0 && t_max == MaxTemperature::Infeasible,
        format!("max C_out {worst:e} on 10x10 (B,T) grid, T_max {t_max:?}"),
    )
}

fn inhomogeneity_enabled() -> Outcome {
    let p = ModelParams::new(-1.0, 1.0, 0.0, 0.0, 0.01);
    let off = c_out(&p, FRAC_PI_4);
    let on = c_out(&p.with_inhomogeneity(1.0), FRAC_PI_4);
    let f = fidelity(&p.with_inhomogeneity(1.0), FRAC_PI_4);
    check(
        off <= 1e-6 && (on - 0.125).abs() <= 0.01 && f > 0.5 && f < 1.0,
        format!("C_out(b=0)={off:.1e} C_out(b=1)={on:.6} (expected 0.125) F(b=1)={f:.6}"),
    )
}

fn high_temperature() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let p = ModelParams::new(
            1.0,
            rng.gen_range(0.1..=2.0),
            rng.gen_range(-2.0..=2.0),
            rng.gen_range(-2.0..=2.0),
            1e4,
        );
        let theta = rng.gen_range(0.0..=std::f64::consts::FRAC_PI_2);
        worst = worst.max((fidelity(&p, theta) - 0.25).abs());
    }
    check(worst <= 1e-3, format!("max |F-0.25| = {worst:.2e}"))
}

fn max_temperature_root() -> Outcome {
    let MaxTemperature::Found { value, .. } = max_teleportation_temperature(1.0, 1.0, 0.0, 0.0).unwrap() else {
        return Err("no root found".into());
    };
    let p = ModelParams::new(1.0, 1.0, 0.0, 0.0, value);
    let residual = teleportation_margin(&p, 1.0).unwrap().abs();
    let below = c_out(&p.with_temperature(value * (1.0 - 1e-3)), FRAC_PI_4);
    let above = c_out(&p.with_temperature(value * (1.0 + 1e-3)), FRAC_PI_4);
    check(
        (value - 1.07).abs() <= 5e-3 && residual <= 1e-9 && below > 0.0 && above == 0.0,
        format!("T*={value:.9} residual={residual:.1e} C_out below={below:.2e} above={above:e}"),
    )
}

fn large_inhomogeneity() -> Outcome {
    let p = ModelParams::new(-1.0, 1.0, 0.0, 50.0, 1e-3);
    let c = c_out(&p, FRAC_PI_4);
    let channel = concurrence_general(&thermal_state_closed(&p).unwrap().rho)
        .unwrap()
        .value;
    check(
        c > 0.0 && channel <= 0.03,
        format!(
            "C_out={c:.3e} channel concurrence={channel:.5} (1/sqrt(2501)={:.5})",
            1.0 / 2501f64.sqrt()
        ),
    )
}

fn symmetries() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (p, i) = random_point(&mut rng);
        let base = (
            output_concurrence_closed(&p, &i).unwrap(),
            fidelity_closed(&p, &i).unwrap().value,
        );
        let shifted = input(i.theta(), rng.gen_range(0.0..std::f64::consts::TAU));
        for (q, j) in [
            (p.with_field(-p.field), i),
            (p.with_inhomogeneity(-p.inhomogeneity), i),
            (p, shifted),
        ] {
            worst = worst
                .max((output_concurrence_closed(&q, &j).unwrap() - base.0).abs())
                .max((fidelity_closed(&q, &j).unwrap().value - base.1).abs());
        }
    }
    check(worst <= 1e-12, format!("max deviation {worst:.2e} over 50 points"))
}

fn sweep_bytes(jobs: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_xxzport"))
        .args([
            "sweep",
            "--J",
            "1",
            "--lambda",
            "1",
            "--b",
            "0.5",
            "--x",
            "B",
            "--x-range",
            "0:4:41",
            "--y",
            "T",
            "--y-range",
            "0.02:2:30",
            "--jobs",
            jobs,
        ])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("sweep exited with {:?}", out.status.code()));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let first = sweep_bytes("8")?;
    let second = sweep_bytes("8")?;
    let serial = sweep_bytes("1")?;
    check(
        first == second && first == serial && !first.is_empty(),
        format!(
            "{} bytes, repeat equal: {}, jobs 1 vs 8 equal: {}",
            first.len(),
            first == second,
            first == serial
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("thermal state closed form vs spectral exponential", thermal_oracle),
        ("channel closed form vs Bell-basis application", channel_oracle),
        (
            "concurrence and fidelity closed forms vs matrix formulas",
            metrics_oracle,
        ),
        ("trace identity a2 + a3 + 2a1 = Z^2", trace_identity),
        ("zero-temperature perfect regime", perfect_regime),
        ("above-critical uniform field", above_critical),
        ("ferromagnetic infeasibility", ferromagnet_infeasible),
        ("inhomogeneity-enabled teleportation", inhomogeneity_enabled),
        ("high-temperature fidelity limit", high_temperature),
        ("maximum teleportation temperature", max_temperature_root),
        ("entanglement through a near-separable channel", large_inhomogeneity),
        ("field and phase symmetries", symmetries),
        ("sweep determinism", determinism),
    ];
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", n + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{}] {name}: {detail}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
