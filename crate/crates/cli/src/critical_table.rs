//! Critical fields and maximum temperature along a grid of `B` or `b`.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use xxz_teleport::critical::{critical_inhomogeneous_field, critical_uniform_field, max_teleportation_temperature};

use crate::config::Settings;
use crate::error::{CliError, Result};
use crate::format::{sci, sci_or_na};
use crate::sweep::Range;

pub const CRITICAL_HEADER: &str = "param,B_c,b_c,T_max";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridAxis {
    Field,
    Inhomogeneity,
}

impl FromStr for GridAxis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => Ok(GridAxis::Field),
            "b" => Ok(GridAxis::Inhomogeneity),
            other => Err(CliError::Usage(format!("--grid must be B or b, got {other:?}"))),
        }
    }
}

/// A comma list (`0,1,2`) or a range (`0:2:3`).
pub fn parse_values(s: &str) -> Result<Vec<f64>> {
    if s.contains(':') {
        return Ok(s.parse::<Range>()?.values());
    }
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("--values: {v:?} is not a number")))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalRow {
    pub param: f64,
    pub critical_field: Option<f64>,
    pub critical_inhomogeneity: Option<f64>,
    pub max_temperature: Option<f64>,
}

impl CriticalRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{}",
            sci(self.param),
            sci_or_na(self.critical_field),
            sci_or_na(self.critical_inhomogeneity),
            sci_or_na(self.max_temperature)
        )
    }
}

pub fn critical_rows(base: &Settings, axis: GridAxis, values: &[f64]) -> Result<Vec<CriticalRow>> {
    let point = |v: f64| {
        let mut s = base.clone();
        match axis {
            GridAxis::Field => s.field = v,
            GridAxis::Inhomogeneity => s.inhomogeneity = v,
        }
        s.params()
    };
    for &v in values {
        point(v).validate_hamiltonian()?;
    }
    values
        .par_iter()
        .map(|&v| {
            let p = point(v);
            Ok(CriticalRow {
                param: v,
                critical_field: critical_uniform_field(p.coupling, p.anisotropy, p.inhomogeneity)?,
                critical_inhomogeneity: critical_inhomogeneous_field(p.coupling, p.anisotropy, p.field)?,
                max_temperature: max_teleportation_temperature(p.coupling, p.anisotropy, p.field, p.inhomogeneity)?
                    .value(),
            })
        })
        .collect()
}

pub fn write_csv(rows: &[CriticalRow], out: &mut impl Write) -> std::io::Result<()> {
    let mut text = String::from(CRITICAL_HEADER);
    text.push('\n');
    for row in rows {
        text.push_str(&row.to_csv());
        text.push('\n');
    }
    out.write_all(text.as_bytes())?;
    out.flush()
}
