//! Everything about a single parameter point as `key=value` lines.

use std::fmt::Write as _;

use xxz_teleport::channel::channel_coefficients;
use xxz_teleport::critical::{feasibility_zero_t, max_teleportation_temperature};
use xxz_teleport::metrics::{fidelity_closed, input_concurrence, output_concurrence_closed};
use xxz_teleport::spin_model::analytic_eigensystem;

use crate::config::Settings;
use crate::error::Result;
use crate::format::{sci, sci_or_na};

pub fn point_report(s: &Settings) -> Result<String> {
    let p = s.params();
    let input = s.input()?;
    p.validate_thermal()?;

    let energies = analytic_eigensystem(&p)?.energies();
    let coeffs = channel_coefficients(&p)?;
    let feasibility = feasibility_zero_t(&p)?;
    let t_max = max_teleportation_temperature(p.coupling, p.anisotropy, p.field, p.inhomogeneity)?;

    let mut lines: Vec<(&str, String)> = Vec::new();
    for (k, e) in energies.iter().enumerate() {
        lines.push((["E1", "E2", "E3", "E4"][k], sci(*e)));
    }
    lines.extend([
        ("Z", sci(coeffs.log_z.exp())),
        ("log_Z", sci(coeffs.log_z)),
        ("a1", sci(coeffs.a1)),
        ("a2", sci(coeffs.a2)),
        ("a3", sci(coeffs.a3)),
        ("a4", sci(coeffs.a4)),
        ("C_in", sci(input_concurrence(&input))),
        ("C_out", sci(output_concurrence_closed(&p, &input)?)),
        ("F", sci(fidelity_closed(&p, &input)?.value)),
        ("margin", sci(feasibility.margin)),
        ("feasible_zero_T", u8::from(feasibility.feasible_at_zero_t).to_string()),
        ("B_c", sci_or_na(feasibility.critical_field)),
        ("b_c", sci_or_na(feasibility.critical_inhomogeneity)),
        ("T_max", sci_or_na(t_max.value())),
    ]);

    let mut out = String::new();
    for (key, value) in lines {
        let _ = writeln!(out, "{key}={value}");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(report: &str, key: &str) -> String {
        report
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{key}=")))
            .unwrap()
            .to_owned()
    }

    #[test]
    fn default_point() {
        let report = point_report(&Settings::default()).unwrap();
        let c_out: f64 = value(&report, "C_out").parse().unwrap();
        let f: f64 = value(&report, "F").parse().unwrap();
        assert!((c_out - 0.06729960243278166).abs() <= 1e-12);
        assert!((f - 0.5336498012163907).abs() <= 1e-12);
        assert_eq!(value(&report, "B_c"), "2.000000000000e+00");
    }

    #[test]
    fn ferromagnet_has_no_max_temperature() {
        let s = Settings {
            coupling: -1.0,
            temperature: 0.5,
            ..Settings::default()
        };
        let report = point_report(&s).unwrap();
        assert_eq!(value(&report, "C_out"), "0.000000000000e+00");
        assert_eq!(value(&report, "T_max"), "NA");
    }
}
