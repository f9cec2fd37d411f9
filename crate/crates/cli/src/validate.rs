//! The `dkp validate` run: random parameter sets, oracle adjudication of the
//! two quantization modes, and a handful of structural checks.

use std::fmt::Write as _;

use dkp_core::nu::{limit_spectrum, solve_energy, SolveOptions};
use dkp_core::oracle::{
    adjudicate, evaluate_case, fd_eigenvalues, CaseOutcome, FdGrid, OracleConfig, OracleVerdict,
    ADJUDICATION_TOLERANCE, SEPARATION, SINGULAR_ORDER_CUTOFF,
};
use dkp_core::wavefunction::{count_nodes, node_grid, Convention, WavefunctionSpec};
use dkp_core::{Branch, Mode, ModelParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ValidateOptions {
    pub trials: usize,
    pub seed: u64,
    /// Levels `0..levels` are checked for every parameter set.
    pub levels: u32,
    pub branch: Branch,
    pub oracle: OracleConfig,
    pub jobs: Option<usize>,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            trials: 20,
            seed: 7,
            levels: 4,
            branch: Branch::Positive,
            oracle: OracleConfig::default(),
            jobs: None,
        }
    }
}

/// One draw from the validation distribution: `alpha` in [0.3, 1], `a` in
/// [0, 1], `delta1` in [0.5, 2], `delta2` in [0, 2], `m` in -2..=2, `k` in
/// [0, 1], `omega` in [0.5, 2], and `M = 1`.
pub fn random_params<R: Rng>(rng: &mut R) -> ModelParams {
    ModelParams {
        mass: 1.0,
        omega: rng.random_range(0.5..=2.0),
        k: rng.random_range(0.0..=1.0),
        m: rng.random_range(-2..=2),
        alpha: rng.random_range(0.3..=1.0),
        a: rng.random_range(0.0..=1.0),
        delta1: rng.random_range(0.5..=2.0),
        delta2: rng.random_range(0.0..=2.0),
    }
}

pub fn parameter_sets(seed: u64, trials: usize) -> Vec<ModelParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| random_params(&mut rng)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub options: ValidateOptions,
    pub outcomes: Vec<CaseOutcome>,
    /// Worst relative error of each mode, in [`Mode::ALL`] order.
    pub mode_errors: [f64; 2],
    pub verdict: std::result::Result<OracleVerdict, dkp_core::Error>,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_ok() && self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let o = &self.options;
        let _ = writeln!(
            s,
            "validate: {} parameter sets x {} levels, seed {}, {} branch",
            o.trials,
            o.levels,
            o.seed,
            o.branch.name()
        );
        let _ = writeln!(
            s,
            "oracle: finite differences on N = {} and {} interior points, Richardson extrapolated \
             (third refinement to {} where 2 chi < {SINGULAR_ORDER_CUTOFF})",
            o.oracle.interior,
            2 * o.oracle.interior + 1,
            4 * o.oracle.interior + 3
        );
        for (mode, err) in Mode::ALL.iter().zip(self.mode_errors) {
            let status = if err <= ADJUDICATION_TOLERANCE { "pass" } else { "fail" };
            let _ = writeln!(s, "mode {:<14} max relative error {:.3e}  {status}", mode.name(), err);
        }
        match &self.verdict {
            Ok(v) => {
                let _ = writeln!(s, "adjudicated mode: {}", v.adjudicated_mode.name());
            }
            Err(e) => {
                let _ = writeln!(s, "adjudicated mode: none ({e})");
            }
        }
        for c in &self.checks {
            let _ = writeln!(
                s,
                "check {:<22} {}  {}",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.detail
            );
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

pub fn run_validation(options: &ValidateOptions) -> Result<ValidationReport> {
    let sets = parameter_sets(options.seed, options.trials);
    let cases: Vec<(ModelParams, u32)> = sets
        .iter()
        .flat_map(|p| (0..options.levels).map(move |n| (*p, n)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Spec(format!("cannot start worker pool: {e}")))?;
    let outcomes = pool.install(|| {
        cases
            .par_iter()
            .map(|(p, n)| evaluate_case(p, *n, options.branch, &options.oracle))
            .collect::<dkp_core::Result<Vec<_>>>()
    })?;

    let mode_errors = Mode::ALL.map(|mode| outcomes.iter().map(|o| o.relative_error(mode)).fold(0.0, f64::max));
    let verdict = adjudicate(&outcomes);
    let mode = verdict.as_ref().map_or(Mode::NuStandard, |v| v.adjudicated_mode);

    let checks = pool.install(|| {
        vec![
            separation_check(&mode_errors, mode),
            flat_limit_check(),
            quartic_check(&sets, options, mode),
            node_check(&outcomes, mode, options.branch),
            fd_ordering_check(&outcomes, options),
        ]
    });
    Ok(ValidationReport {
        options: options.clone(),
        outcomes,
        mode_errors,
        verdict,
        checks,
    })
}

fn separation_check(errors: &[f64; 2], mode: Mode) -> Check {
    let other = Mode::ALL.iter().position(|&m| m != mode).unwrap_or(0);
    Check {
        name: "mode-separation",
        passed: errors[other] >= SEPARATION,
        detail: format!("losing mode misses by {:.3e} (need >= {SEPARATION:e})", errors[other]),
    }
}

fn flat_limit_check() -> Check {
    let flat = ModelParams {
        a: 0.0,
        delta2: 0.0,
        m: 0,
        k: 0.0,
        ..ModelParams::unit()
    };
    let worst = (0..3)
        .map(
            |n| match solve_energy(&flat, n, Mode::NuStandard, Branch::Positive, &SolveOptions::default()) {
                Ok(s) => (s.energy - limit_spectrum(1.0, 1.0, n)).abs(),
                Err(_) => f64::INFINITY,
            },
        )
        .fold(0.0, f64::max);
    Check {
        name: "flat-limit",
        passed: worst <= 1e-10,
        detail: format!("max |E - sqrt(M^2 + M omega (4n+2))| = {worst:.3e} for n = 0..2"),
    }
}

fn quartic_check(sets: &[ModelParams], options: &ValidateOptions, mode: Mode) -> Check {
    let worst = sets
        .par_iter()
        .flat_map_iter(|p| {
            (0..options.levels).map(move |n| {
                solve_energy(p, n, mode, options.branch, &SolveOptions::default())
                    .map_or(f64::INFINITY, |s| s.quartic_agreement)
            })
        })
        .reduce(|| 0.0, f64::max);
    Check {
        name: "quartic-vs-scan",
        passed: worst <= 1e-8,
        detail: format!("max distance to an accepted quartic root {worst:.3e}"),
    }
}

fn node_check(outcomes: &[CaseOutcome], mode: Mode, branch: Branch) -> Check {
    let bad: Vec<String> = outcomes
        .par_iter()
        .filter_map(|o| {
            let nodes = solve_energy(&o.params, o.n, mode, branch, &SolveOptions::default())
                .and_then(|s| WavefunctionSpec::new(&o.params, o.n, s.energy, Convention::ReducedConsistent))
                .map(|spec| count_nodes(&spec, &node_grid(&spec)));
            match nodes {
                Ok(c) if c == o.n as usize => None,
                Ok(c) => Some(format!("n={} has {c} nodes", o.n)),
                Err(e) => Some(format!("n={}: {e}", o.n)),
            }
        })
        .collect();
    Check {
        name: "node-count",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("all {} states have n nodes", outcomes.len())
        } else {
            bad.join("; ")
        },
    }
}

fn fd_ordering_check(outcomes: &[CaseOutcome], options: &ValidateOptions) -> Check {
    let levels = options.levels as usize;
    let failures = outcomes
        .par_iter()
        .filter(|o| {
            let chi = dkp_core::radial::centrifugal_strength(&o.params, o.oracle).sqrt();
            let ok = FdGrid::for_problem(o.params.confinement(), chi, options.oracle.interior)
                .and_then(|g| fd_eigenvalues(&o.params, o.oracle, &g, levels))
                .map(|ev| ev.len() == levels && ev.windows(2).all(|w| w[0] < w[1]));
            !matches!(ok, Ok(true))
        })
        .count();
    Check {
        name: "fd-levels-increasing",
        passed: failures == 0,
        detail: format!("{failures} of {} spectra out of order", outcomes.len()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_seeded_and_in_range() {
        let a = parameter_sets(7, 50);
        assert_eq!(a, parameter_sets(7, 50));
        assert_ne!(a, parameter_sets(8, 50));
        for p in &a {
            assert!(p.validate().is_ok());
            assert!((0.3..=1.0).contains(&p.alpha) && (0.5..=2.0).contains(&p.delta1));
            assert!((-2..=2).contains(&p.m) && p.mass == 1.0);
        }
    }

    #[test]
    fn flat_limit_passes() {
        assert!(flat_limit_check().passed);
    }
}
