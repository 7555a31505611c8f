//! Two-parameter grids written as CSV.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use xxz_teleport::channel::channel_coefficients;
use xxz_teleport::critical::feasibility_zero_t;
use xxz_teleport::metrics::{fidelity_closed, input_concurrence, output_concurrence_closed};

use crate::config::Settings;
use crate::error::{CliError, Result};
use crate::format::sci;

pub const SWEEP_HEADER: &str = "x,y,C_in,C_out,F,Z,feasible";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    Field,
    Inhomogeneity,
    Temperature,
    Theta,
    Anisotropy,
    Coupling,
}

impl SweepParam {
    pub fn set(self, s: &mut Settings, value: f64) {
        match self {
            SweepParam::Field => s.field = value,
            SweepParam::Inhomogeneity => s.inhomogeneity = value,
            SweepParam::Temperature => s.temperature = value,
            SweepParam::Theta => s.theta = value,
            SweepParam::Anisotropy => s.anisotropy = value,
            SweepParam::Coupling => s.coupling = value,
        }
    }
}

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "B" => SweepParam::Field,
            "b" => SweepParam::Inhomogeneity,
            "T" => SweepParam::Temperature,
            "theta" => SweepParam::Theta,
            "lambda" => SweepParam::Anisotropy,
            "J" => SweepParam::Coupling,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown sweep parameter {other:?} (expected B, b, T, theta, lambda or J)"
                )))
            }
        })
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::Field => "B",
            SweepParam::Inhomogeneity => "b",
            SweepParam::Temperature => "T",
            SweepParam::Theta => "theta",
            SweepParam::Anisotropy => "lambda",
            SweepParam::Coupling => "J",
        })
    }
}

/// `start:stop:steps`, both ends included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last as f64)
                }
            })
            .collect()
    }
}

impl FromStr for Range {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Usage(format!("range {s:?}: expected start:stop:steps"));
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, steps] = parts[..] else {
            return Err(bad());
        };
        let start: f64 = start.trim().parse().map_err(|_| bad())?;
        let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
        let steps: usize = steps.trim().parse().map_err(|_| bad())?;
        if !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        if steps < 2 {
            return Err(CliError::Usage(format!("range {s:?}: need at least 2 steps")));
        }
        Ok(Range { start, stop, steps })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub x_param: SweepParam,
    pub x_range: Range,
    pub y_param: SweepParam,
    pub y_range: Range,
    /// Everything not swept.
    pub fixed: Settings,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub y: f64,
    pub c_in: f64,
    pub c_out: f64,
    pub fidelity: f64,
    pub z: f64,
    pub feasible: bool,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            sci(self.x),
            sci(self.y),
            sci(self.c_in),
            sci(self.c_out),
            sci(self.fidelity),
            sci(self.z),
            u8::from(self.feasible)
        )
    }
}

impl SweepSpec {
    pub fn new(
        x_param: SweepParam,
        x_range: Range,
        y_param: SweepParam,
        y_range: Range,
        fixed: Settings,
    ) -> Result<Self> {
        if x_param == y_param {
            return Err(CliError::Usage(format!("x and y both sweep {x_param}")));
        }
        Ok(SweepSpec {
            x_param,
            x_range,
            y_param,
            y_range,
            fixed,
        })
    }

    /// Grid settings in row-major order, x outer.
    pub fn points(&self) -> Vec<(f64, f64, Settings)> {
        let ys = self.y_range.values();
        self.x_range
            .values()
            .into_iter()
            .flat_map(|x| {
                ys.iter().map(move |&y| {
                    let mut s = self.fixed.clone();
                    self.x_param.set(&mut s, x);
                    self.y_param.set(&mut s, y);
                    (x, y, s)
                })
            })
            .collect()
    }

    /// Every point is checked before anything is computed, so a bad grid
    /// fails without partial output.
    pub fn validate(&self) -> Result<()> {
        for (x, y, s) in self.points() {
            s.params().validate_thermal().map_err(|e| at_point(self, x, y, e))?;
            s.input().map_err(|e| match e {
                CliError::Model(e) => at_point(self, x, y, e),
                other => other,
            })?;
        }
        Ok(())
    }

    /// Rows in grid order; the parallel map is collected by index.
    pub fn rows(&self) -> Result<Vec<SweepRow>> {
        self.validate()?;
        self.points()
            .into_par_iter()
            .map(|(x, y, s)| evaluate(x, y, &s))
            .collect()
    }
}

fn at_point(spec: &SweepSpec, x: f64, y: f64, e: xxz_teleport::Error) -> CliError {
    CliError::Usage(format!("{}={x}, {}={y}: {e}", spec.x_param, spec.y_param))
}

pub fn evaluate(x: f64, y: f64, s: &Settings) -> Result<SweepRow> {
    let p = s.params();
    let input = s.input()?;
    Ok(SweepRow {
        x,
        y,
        c_in: input_concurrence(&input),
        c_out: output_concurrence_closed(&p, &input)?,
        fidelity: fidelity_closed(&p, &input)?.value,
        z: channel_coefficients(&p)?.log_z.exp(),
        feasible: feasibility_zero_t(&p)?.feasible_at_zero_t,
    })
}

pub fn write_csv(rows: &[SweepRow], out: &mut impl Write) -> std::io::Result<()> {
    let mut text = String::with_capacity(rows.len() * 128 + SWEEP_HEADER.len() + 1);
    text.push_str(SWEEP_HEADER);
    text.push('\n');
    for row in rows {
        text.push_str(&row.to_csv());
        text.push('\n');
    }
    out.write_all(text.as_bytes())?;
    out.flush()
}
