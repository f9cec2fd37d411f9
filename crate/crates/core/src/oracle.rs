//! Finite-difference oracle for the reduced radial problem.
//!
//! With `u(r) = √r ζ(r)` the normal form becomes the half-line problem
//!
//! ```text
//! −u'' + [λ²r² + (χ² − 1/4)/r²] u = Λ u,   u(0) = u(r_max) = 0,
//! ```
//!
//! discretized by second-order central differences into a symmetric
//! tridiagonal matrix. Since `χ²` depends on the energy through `(aE + m)²`,
//! the energy is the root of `F(E) = Λ(E) − Λ_n^{FD}(χ²(E))`, with the FD
//! eigenvalue Richardson-extrapolated from two grids. Nothing here uses the
//! closed-form quantization condition.

use alloc::vec::Vec;

use libm::sqrt;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::nu::{default_e_max, energy_scan_grid, solve_energy, Branch, Mode, SolveOptions};
use crate::radial::{centrifugal_strength, energy_bundle};
use crate::roots::{bisect, Bracket};
use crate::tridiag::SymTridiagonal;

/// Uniform Dirichlet grid on `[0, r_max]` with `interior` unknowns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdGrid {
    pub r_max: f64,
    pub interior: usize,
}

pub const MIN_INTERIOR: usize = 500;

impl FdGrid {
    pub fn new(r_max: f64, interior: usize) -> Result<Self> {
        if interior < MIN_INTERIOR {
            return Err(Error::Grid("at least 500 interior points required"));
        }
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::Grid("r_max must be positive and finite"));
        }
        Ok(FdGrid { r_max, interior })
    }

    /// Default box `r_max = 10/√λ + 5√(χ/λ)`, covering the centrifugal
    /// core and the Gaussian tail.
    pub fn for_problem(lambda: f64, chi: f64, interior: usize) -> Result<Self> {
        Self::new(10.0 / sqrt(lambda) + 5.0 * sqrt(chi / lambda), interior)
    }

    pub fn step(&self) -> f64 {
        self.r_max / (self.interior + 1) as f64
    }

    /// Same box, exactly half the spacing.
    pub fn refined(&self) -> FdGrid {
        FdGrid {
            r_max: self.r_max,
            interior: 2 * self.interior + 1,
        }
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.step() * (i + 1) as f64
    }

    /// The box must hold the Gaussian decay length several times over.
    pub fn check_coverage(&self, lambda: f64) -> Result<()> {
        if self.r_max * sqrt(lambda) < 8.0 {
            Err(Error::Grid("r_max must be at least 8/sqrt(lambda)"))
        } else {
            Ok(())
        }
    }
}

/// `−d²/dr² + λ²r² + (χ² − 1/4)/r²` on the half line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedOperator {
    pub lambda: f64,
    pub chi_sq: f64,
}

impl ReducedOperator {
    pub fn at_energy(params: &ModelParams, energy: f64) -> Self {
        ReducedOperator {
            lambda: params.confinement(),
            chi_sq: centrifugal_strength(params, energy),
        }
    }

    pub fn matrix(&self, grid: &FdGrid) -> SymTridiagonal {
        let h = grid.step();
        let inv_h2 = 1.0 / (h * h);
        let centrifugal = self.chi_sq - 0.25;
        let diag = (0..grid.interior)
            .map(|i| {
                let r = grid.radius(i);
                2.0 * inv_h2 + self.lambda * self.lambda * r * r + centrifugal / (r * r)
            })
            .collect();
        SymTridiagonal::new(diag, alloc::vec![-inv_h2; grid.interior - 1])
    }

    /// The lowest `count` eigenvalues `Λ`, ascending.
    pub fn eigenvalues(&self, grid: &FdGrid, count: usize) -> Result<Vec<f64>> {
        grid.check_coverage(self.lambda)?;
        Ok(self.matrix(grid).lowest(count))
    }

    /// `(k+1)`-th eigenvalue, no coverage check.
    fn eigenvalue(&self, grid: &FdGrid, k: usize) -> f64 {
        self.matrix(grid).eigenvalue(k)
    }

    /// Eigenvector of `u` for the `(k+1)`-th eigenvalue on the interior nodes.
    pub fn eigenvector(&self, grid: &FdGrid, k: usize) -> Result<Vec<f64>> {
        grid.check_coverage(self.lambda)?;
        let t = self.matrix(grid);
        Ok(t.eigenvector(t.eigenvalue(k)))
    }
}

/// Lowest `count` FD eigenvalues with `χ²` frozen at `energy`.
pub fn fd_eigenvalues(params: &ModelParams, energy: f64, grid: &FdGrid, count: usize) -> Result<Vec<f64>> {
    params.require_spectrum()?;
    ReducedOperator::at_energy(params, energy).eigenvalues(grid, count)
}

/// Eliminates the `h²` error term from values on two grids.
pub fn richardson(h_coarse: f64, coarse: f64, h_fine: f64, fine: f64) -> f64 {
    let (c2, f2) = (h_coarse * h_coarse, h_fine * h_fine);
    (c2 * fine - f2 * coarse) / (c2 - f2)
}

/// Below this order the `h^{2χ}` term from the `r^{χ+1/2}` behaviour at the
/// origin outweighs `h²` and gets its own extrapolation level.
pub const SINGULAR_ORDER_CUTOFF: f64 = 1.8;

/// Eliminates `h²` and `h^order` from values on spacings `h`, `h/2`, `h/4`.
pub fn richardson_two_term(values: [f64; 3], order: f64) -> f64 {
    let s = libm::pow(2.0, order);
    let strip = |coarse: f64, fine: f64| (s * fine - coarse) / (s - 1.0);
    let (a, b) = (strip(values[0], values[1]), strip(values[1], values[2]));
    (4.0 * b - a) / 3.0
}

/// Number of sign changes among entries above `1e-10 · max|v|`.
pub fn sign_changes(v: &[f64]) -> usize {
    let max = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut last = 0.0;
    let mut changes = 0;
    for &x in v {
        if x.abs() <= 1e-10 * max {
            continue;
        }
        if last != 0.0 && x.signum() != last {
            changes += 1;
        }
        last = x.signum();
    }
    changes
}

/// Grid sizes for [`oracle_energy`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Interior points of the coarse production grid; the fine one is `2N + 1`.
    pub interior: usize,
    /// Interior points of the pilot grid used for bracketing.
    pub pilot_interior: usize,
    pub scan_ratio: f64,
    pub e_max: Option<f64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            interior: 4000,
            pilot_interior: 1000,
            scan_ratio: 1.05,
            e_max: None,
        }
    }
}

/// `F(E) = Λ(E) − Λ_n^{FD}(E)` on one grid.
fn mismatch(params: &ModelParams, n: u32, grid: &FdGrid, energy: f64) -> f64 {
    let op = ReducedOperator::at_energy(params, energy);
    energy_bundle(params, energy) - op.eigenvalue(grid, n as usize)
}

/// FD eigenvalue extrapolated from `grid` and `grid.refined()`, plus a third
/// refinement when the centrifugal order `2χ` is below the cutoff.
pub fn extrapolated_eigenvalue(op: &ReducedOperator, grid: &FdGrid, k: usize) -> f64 {
    let fine = grid.refined();
    let (coarse_val, fine_val) = (op.eigenvalue(grid, k), op.eigenvalue(&fine, k));
    let order = 2.0 * sqrt(op.chi_sq);
    if order < SINGULAR_ORDER_CUTOFF {
        let finest = op.eigenvalue(&fine.refined(), k);
        richardson_two_term([coarse_val, fine_val, finest], order)
    } else {
        richardson(grid.step(), coarse_val, fine.step(), fine_val)
    }
}

fn extrapolated_mismatch(params: &ModelParams, n: u32, grid: &FdGrid, energy: f64) -> f64 {
    let op = ReducedOperator::at_energy(params, energy);
    energy_bundle(params, energy) - extrapolated_eigenvalue(&op, grid, n as usize)
}

/// Expands a bracket around `guess` until `f` changes sign.
fn bracket_near<F: FnMut(f64) -> f64>(mut f: F, guess: f64) -> Option<Bracket> {
    let mut delta = 1e-3 * guess.abs().max(1e-3);
    for _ in 0..30 {
        let (lo, hi) = (guess - delta, guess + delta);
        let (f_lo, f_hi) = (f(lo), f(hi));
        if f_lo == 0.0 || f_hi == 0.0 || (f_lo < 0.0) != (f_hi < 0.0) {
            return Some(Bracket { lo, hi });
        }
        delta *= 4.0;
    }
    None
}

/// Root of `F` on a fixed grid, searched like the closed-form solver: the
/// outermost sign change of the requested sign on a geometric scan.
pub fn self_consistent_energy(params: &ModelParams, n: u32, branch: Branch, grid: &FdGrid) -> Result<f64> {
    let lambda = params.require_spectrum()?;
    grid.check_coverage(lambda)?;
    let e_max = default_e_max(params, n);
    let sign = branch.sign();
    let pilot =
        outermost_root(|e| mismatch(params, n, grid, e), sign, e_max, 1.05, 1e-8).ok_or(Error::NoRoot { n, e_max })?;
    refine_extrapolated(params, n, grid, pilot).ok_or(Error::NoRoot { n, e_max })
}

fn refine_extrapolated(params: &ModelParams, n: u32, grid: &FdGrid, guess: f64) -> Option<f64> {
    let f = |e| extrapolated_mismatch(params, n, grid, e);
    let bracket = bracket_near(f, guess)?;
    Some(bisect(f, bracket, 1e-14))
}

/// Walks the geometric grid inward from `sign · e_max` and bisects the first
/// sign change met.
fn outermost_root<F: FnMut(f64) -> f64>(mut f: F, sign: f64, e_max: f64, ratio: f64, rel_tol: f64) -> Option<f64> {
    let grid = energy_scan_grid(e_max, ratio);
    let mut iter = grid.iter().rev();
    let mut prev = *iter.next()?;
    let mut f_prev = f(sign * prev);
    for &x in iter {
        let fx = f(sign * x);
        if f_prev == 0.0 {
            return Some(sign * prev);
        }
        if (fx < 0.0) != (f_prev < 0.0) || fx == 0.0 {
            let b = if sign > 0.0 {
                Bracket { lo: x, hi: prev }
            } else {
                Bracket { lo: -prev, hi: -x }
            };
            let root = bisect(&mut f, b, rel_tol);
            return (sign * root > 0.0).then_some(root);
        }
        prev = x;
        f_prev = fx;
    }
    None
}

/// A certified energy from the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEnergy {
    pub energy: f64,
    /// Coarse production grid (the fine grid is its refinement).
    pub grid: FdGrid,
    /// Energy from the pilot bracketing step.
    pub pilot_energy: f64,
}

/// Full oracle solve: a pilot scan on a coarse box sized from `χ(0)` (and
/// wide enough for the frame-dragging term), then a production grid sized
/// from `χ` at the pilot energy, Richardson-extrapolated as in
/// [`extrapolated_eigenvalue`].
pub fn oracle_energy(params: &ModelParams, n: u32, branch: Branch, config: &OracleConfig) -> Result<OracleEnergy> {
    let lambda = params.require_spectrum()?;
    let e_max = config.e_max.unwrap_or_else(|| default_e_max(params, n));
    let no_root = Error::NoRoot { n, e_max };

    let chi0 = sqrt(centrifugal_strength(params, 0.0));
    let base = FdGrid::for_problem(lambda, chi0, config.pilot_interior)?;
    let drag = 3.0 * params.a / params.alpha + 10.0 / sqrt(lambda);
    let pilot_grid = FdGrid::new(base.r_max.max(drag), config.pilot_interior)?;
    let pilot = outermost_root(
        |e| mismatch(params, n, &pilot_grid, e),
        branch.sign(),
        e_max,
        config.scan_ratio,
        1e-8,
    )
    .ok_or(no_root.clone())?;

    let chi = sqrt(centrifugal_strength(params, pilot));
    let grid = FdGrid::for_problem(lambda, chi, config.interior)?;
    grid.check_coverage(lambda)?;
    let energy = refine_extrapolated(params, n, &grid, pilot).ok_or(no_root)?;
    Ok(OracleEnergy {
        energy,
        grid,
        pilot_energy: pilot,
    })
}

/// One comparison point of the adjudication.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseOutcome {
    pub params: ModelParams,
    pub n: u32,
    pub oracle: f64,
    /// Closed-form energy per mode, in [`Mode::ALL`] order; `None` if no root.
    pub closed_form: [Option<f64>; 2],
}

impl CaseOutcome {
    /// `|E_mode − E_oracle| / |E_oracle|`, infinite when the mode has no root.
    pub fn relative_error(&self, mode: Mode) -> f64 {
        let idx = Mode::ALL.iter().position(|&m| m == mode).unwrap_or(0);
        match self.closed_form[idx] {
            Some(e) => (e - self.oracle).abs() / self.oracle.abs(),
            None => f64::INFINITY,
        }
    }
}

pub fn evaluate_case(params: &ModelParams, n: u32, branch: Branch, config: &OracleConfig) -> Result<CaseOutcome> {
    let oracle = oracle_energy(params, n, branch, config)?.energy;
    let closed_form = Mode::ALL.map(|mode| {
        solve_energy(params, n, mode, branch, &SolveOptions::default())
            .ok()
            .map(|s| s.energy)
    });
    Ok(CaseOutcome {
        params: *params,
        n,
        oracle,
        closed_form,
    })
}

/// Agreement of one mode with the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAgreement {
    pub mode: Mode,
    pub max_relative_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleVerdict {
    pub agreement: [ModeAgreement; 2],
    pub adjudicated_mode: Mode,
    pub cases: usize,
    pub parameter_sets: usize,
}

impl OracleVerdict {
    pub fn error_of(&self, mode: Mode) -> f64 {
        self.agreement
            .iter()
            .find(|a| a.mode == mode)
            .map_or(f64::INFINITY, |a| a.max_relative_error)
    }
}

/// A mode passes when its worst relative error is at most this.
pub const ADJUDICATION_TOLERANCE: f64 = 1e-6;
/// The losing mode must miss by at least this for the verdict to count.
pub const SEPARATION: f64 = 1e-2;
pub const MIN_PARAMETER_SETS: usize = 10;

/// Picks the single mode whose closed form agrees with the oracle.
pub fn adjudicate(outcomes: &[CaseOutcome]) -> Result<OracleVerdict> {
    let mut distinct: Vec<ModelParams> = Vec::new();
    for o in outcomes {
        if !distinct.contains(&o.params) {
            distinct.push(o.params);
        }
    }
    if distinct.len() < MIN_PARAMETER_SETS {
        return Err(Error::Adjudication("at least 10 parameter sets are required"));
    }
    let agreement = Mode::ALL.map(|mode| ModeAgreement {
        mode,
        max_relative_error: outcomes.iter().map(|o| o.relative_error(mode)).fold(0.0, f64::max),
    });
    let passing: Vec<Mode> = agreement
        .iter()
        .filter(|a| a.max_relative_error <= ADJUDICATION_TOLERANCE)
        .map(|a| a.mode)
        .collect();
    let adjudicated_mode = match passing.as_slice() {
        [mode]
            if agreement
                .iter()
                .all(|a| a.mode == *mode || a.max_relative_error >= SEPARATION) =>
        {
            *mode
        }
        [_] => return Err(Error::Adjudication("the losing mode is too close to the oracle")),
        [] => return Err(Error::Adjudication("no mode matches the oracle")),
        _ => return Err(Error::Adjudication("both modes match the oracle")),
    };
    Ok(OracleVerdict {
        agreement,
        adjudicated_mode,
        cases: outcomes.len(),
        parameter_sets: distinct.len(),
    })
}

/// Sequential convenience wrapper around [`evaluate_case`] and [`adjudicate`].
pub fn adjudicate_cases(cases: &[(ModelParams, u32)], branch: Branch, config: &OracleConfig) -> Result<OracleVerdict> {
    let outcomes = cases
        .iter()
        .map(|(p, n)| evaluate_case(p, *n, branch, config))
        .collect::<Result<Vec<_>>>()?;
    adjudicate(&outcomes)
}
