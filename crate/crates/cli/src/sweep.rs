//! Parameter sweeps and the five named presets `fig1` to `fig5`.

use dkp_core::nu::{solve_energy, SolveOptions};
use dkp_core::{Branch, Mode, ModelParams, Param};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::table::{Point, SweepRow, SweepTable};
use crate::TOOL_VERSION;

/// Parameters a sweep may vary.
pub const SWEEPABLE: [Param; 5] = [Param::Alpha, Param::Omega, Param::A, Param::Delta1, Param::Delta2];

/// Points per preset sweep. Ranges are chosen so the unit value of the swept
/// parameter lands on a grid point.
pub const PRESET_STEPS: usize = 41;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: ModelParams,
    pub param: Param,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub levels: Vec<u32>,
    pub mode: Mode,
    pub branch: Branch,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let spec_err = |m: String| Err(CliError::Spec(m));
        if !SWEEPABLE.contains(&self.param) {
            let names: Vec<&str> = SWEEPABLE.iter().map(|p| p.name()).collect();
            return spec_err(format!(
                "cannot sweep `{}`; choose one of {}",
                self.param,
                names.join(", ")
            ));
        }
        if !(self.lo < self.hi) {
            return spec_err(format!("range needs lo < hi, got [{}, {}]", self.lo, self.hi));
        }
        if self.steps < 2 {
            return spec_err(format!("need at least 2 steps, got {}", self.steps));
        }
        if self.levels.is_empty() {
            return spec_err("no levels requested".into());
        }
        for end in [self.lo, self.hi] {
            self.base
                .with(self.param, end)
                .validate()
                .map_err(|e| CliError::Spec(format!("{} = {end} is outside the model: {e}", self.param)))?;
        }
        Ok(())
    }

    /// Evenly spaced values, hitting both ends exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| match i {
                0 => self.lo,
                _ if i + 1 == self.steps => self.hi,
                _ => self.lo + (self.hi - self.lo) * (i as f64 / last),
            })
            .collect()
    }
}

/// Solves every `(value, n)` point of one or more panels sharing a base
/// point, mode and branch. `jobs = None` uses every core.
pub fn run_sweep(panels: &[SweepSpec], jobs: Option<usize>) -> Result<SweepTable> {
    let first = panels
        .first()
        .ok_or_else(|| CliError::Spec("nothing to sweep".into()))?;
    for spec in panels {
        spec.validate()?;
        if spec.base != first.base || spec.mode != first.mode || spec.branch != first.branch {
            return Err(CliError::Spec(
                "panels of one table must share base, mode and branch".into(),
            ));
        }
    }
    let points: Vec<(&SweepSpec, f64, u32)> = panels
        .iter()
        .flat_map(|s| {
            s.values()
                .into_iter()
                .flat_map(move |v| s.levels.iter().map(move |&n| (s, v, n)))
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Spec(format!("cannot start worker pool: {e}")))?;
    let rows: Vec<SweepRow> = pool.install(|| {
        points
            .par_iter()
            .map(|&(spec, value, n)| solve_point(spec, value, n))
            .collect()
    });

    let mut table = SweepTable {
        version: TOOL_VERSION.to_string(),
        base: first.base,
        mode: first.mode,
        branch: first.branch,
        rows,
    };
    table.sort();
    Ok(table)
}

fn solve_point(spec: &SweepSpec, value: f64, n: u32) -> SweepRow {
    let params = spec.base.with(spec.param, value);
    let point = match solve_energy(&params, n, spec.mode, spec.branch, &SolveOptions::default()) {
        Ok(s) => Point::Solved {
            energy: s.energy,
            residual: s.residual,
        },
        Err(e) => Point::Gap {
            kind: e.kind().to_string(),
        },
    };
    SweepRow {
        param: spec.param,
        value,
        n,
        point,
    }
}

/// A named sweep: one or two panels around a shared base.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    /// Parameters each panel holds at one, written as a chained assignment
    /// such as `a=m=k=M=omega=delta1=delta2=1`.
    pub fixed: Vec<&'static str>,
    pub panels: Vec<SweepSpec>,
}

pub const PRESET_NAMES: [&str; 5] = ["fig1", "fig2", "fig3", "fig4", "fig5"];

pub fn preset(name: &str, mode: Mode, branch: Branch) -> Option<Preset> {
    let panel = |param, lo, hi, levels: &[u32]| SweepSpec {
        base: ModelParams::unit(),
        param,
        lo,
        hi,
        steps: PRESET_STEPS,
        levels: levels.to_vec(),
        mode,
        branch,
    };
    let all = [0, 1, 2, 3];
    let (fixed, panels) = match name {
        // E diverges as alpha -> 0, so the range starts at 0.2
        "fig1" => (
            vec!["a=m=k=M=omega=delta1=delta2=1"],
            vec![panel(Param::Alpha, 0.2, 1.0, &all)],
        ),
        "fig2" => (
            vec!["a=m=k=M=alpha=delta1=delta2=1"],
            vec![panel(Param::Omega, 0.2, 2.2, &all)],
        ),
        "fig3" => (
            vec!["omega=m=k=M=alpha=delta1=delta2=1"],
            vec![panel(Param::A, 0.0, 1.0, &all)],
        ),
        // omega is not listed for this panel pair; it is held at 1 like the rest
        "fig4" => (
            vec!["a=n=m=k=M=alpha=delta2=1", "a=n=m=k=M=alpha=delta1=1"],
            vec![
                panel(Param::Delta1, 0.4, 2.0, &[1]),
                panel(Param::Delta2, 0.0, 2.0, &[1]),
            ],
        ),
        "fig5" => (
            vec!["a=omega=m=k=M=alpha=delta2=1", "a=omega=m=k=M=alpha=delta1=1"],
            vec![
                panel(Param::Delta1, 0.4, 2.0, &all),
                panel(Param::Delta2, 0.0, 2.0, &all),
            ],
        ),
        _ => return None,
    };
    Some(Preset {
        name: PRESET_NAMES.iter().find(|&&p| p == name)?,
        fixed,
        panels,
    })
}
