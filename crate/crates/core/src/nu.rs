//! Parametric Nikiforov–Uvarov map and the energy quantization condition.
//!
//! In `ρ = r²` the normal form is of hypergeometric type and the parametric
//! NU recipe applies with `Ξ₁ = λ²/4`, `Ξ₂ = Λ/4`, `Ξ₃ = χ²/4`. Its
//! quantization identity, scaled by four, reads
//!
//! ```text
//! g(E) = 2(2n + 1)λ − Λ(E) + K λ χ(E) = 0
//! ```
//!
//! with `K = 2` for the standard recipe ([`Mode::NuStandard`]) and `K = 4`
//! for the condition in the form it was originally published
//! ([`Mode::PaperLiteral`]). Both are kept; the finite-difference oracle
//! decides which one the differential equation actually obeys.
//!
//! Energies are found by scanning `g` on a geometric grid and bisecting each
//! sign change. Independently, moving the `χ` term across and squaring gives
//! a quartic in `E` whose real roots, filtered by the pre-squaring sign
//! constraint `Λ − 2(2n + 1)λ ≥ 0`, must reproduce the scanned roots.

use alloc::vec::Vec;
use core::fmt;

use libm::sqrt;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::poly::Polynomial;
use crate::radial::{centrifugal_strength, energy_bundle, normal_form};
use crate::roots::{bisect, geometric_grid, sign_changes};

/// Which form of the quantization condition to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// `χ` term carries the factor 4 of the literal closed form.
    PaperLiteral,
    /// `χ` term carries the factor 2 of the standard parametric recipe.
    NuStandard,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::PaperLiteral, Mode::NuStandard];

    /// Factor `K` multiplying `λχ`.
    pub fn chi_factor(self) -> f64 {
        match self {
            Mode::PaperLiteral => 4.0,
            Mode::NuStandard => 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::PaperLiteral => "paper-literal",
            Mode::NuStandard => "nu-standard",
        }
    }

    pub fn from_name(name: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign of the energy root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Positive => 1.0,
            Branch::Negative => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Positive => "positive",
            Branch::Negative => "negative",
        }
    }

    pub fn from_name(name: &str) -> Option<Branch> {
        [Branch::Positive, Branch::Negative]
            .into_iter()
            .find(|b| b.name() == name)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parametric NU constants `Ξ₁..Ξ₃`, `c₁..c₁₃` at a given energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuParameters {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    /// `c[0]` is `c₁`.
    pub c: [f64; 13],
}

impl NuParameters {
    /// One-based access, `c(1)..=c(13)`.
    pub fn c(&self, i: usize) -> f64 {
        self.c[i - 1]
    }

    /// The general parametric-NU identity
    /// `c₂n − (2n+1)c₅ + (2n+1)(√c₉ + c₃√c₈) + n(n−1)c₃ + c₇ + 2c₃c₈ + 2√(c₈c₉)`,
    /// which vanishes on the spectrum.
    pub fn quantization(&self, n: u32) -> f64 {
        let n = f64::from(n);
        let c = |i| self.c(i);
        c(2) * n - (2.0 * n + 1.0) * c(5)
            + (2.0 * n + 1.0) * (sqrt(c(9)) + c(3) * sqrt(c(8)))
            + n * (n - 1.0) * c(3)
            + c(7)
            + 2.0 * c(3) * c(8)
            + 2.0 * sqrt(c(8) * c(9))
    }
}

pub fn nu_parameters(params: &ModelParams, energy: f64) -> Result<NuParameters> {
    let nf = normal_form(params, energy);
    let xi1 = 0.25 * nf.lambda_conf * nf.lambda_conf;
    if !(xi1 > 0.0) {
        return Err(Error::Degenerate { lambda: nf.lambda_conf });
    }
    let xi2 = 0.25 * nf.big_lambda;
    let xi3 = 0.25 * nf.chi_sq;
    let c = [
        1.0,
        0.0,
        0.0,
        0.0,
        0.0,
        xi1,
        -xi2,
        xi3,
        xi1,
        1.0 + 2.0 * sqrt(xi3),
        2.0 * sqrt(xi1),
        sqrt(xi3),
        -sqrt(xi1),
    ];
    Ok(NuParameters { xi1, xi2, xi3, c })
}

fn level_term(params: &ModelParams, n: u32) -> f64 {
    2.0 * (2.0 * f64::from(n) + 1.0) * params.confinement()
}

/// `g(E)` of the selected mode.
pub fn quantization_residual(params: &ModelParams, n: u32, energy: f64, mode: Mode) -> f64 {
    let lambda = params.confinement();
    let chi = sqrt(centrifugal_strength(params, energy));
    level_term(params, n) - energy_bundle(params, energy) + mode.chi_factor() * lambda * chi
}

/// Magnitude of the terms summed in `g`, for mixed tolerances.
fn residual_scale(params: &ModelParams, n: u32, energy: f64, mode: Mode) -> f64 {
    let lambda = params.confinement();
    let chi = sqrt(centrifugal_strength(params, energy));
    let bundle_terms = energy * energy
        + params.mass * params.mass
        + params.k * params.k
        + lambda * (2.0 + 1.0 / params.alpha + 2.0 * params.delta2 * params.mass * params.omega);
    1.0f64.max(level_term(params, n) + bundle_terms + mode.chi_factor() * lambda * chi)
}

/// `√(M² + Mω(4n + 2))`: the spectrum at `a = 0, Δ₁ = 1, Δ₂ = 0, α = 1,
/// m = k = 0` in the standard mode.
pub fn limit_spectrum(mass: f64, omega: f64, n: u32) -> f64 {
    sqrt(mass * mass + mass * omega * (4.0 * f64::from(n) + 2.0))
}

/// A real root of the squared condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticRoot {
    pub energy: f64,
    /// `Λ(E) − 2(2n+1)λ ≥ 0`, required before squaring.
    pub satisfies_sign: bool,
    /// `|g(E)|` of the unsquared condition.
    pub residual: f64,
    /// Sign constraint holds and `|g|` vanishes to tolerance.
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuarticReduction {
    /// `(Λ − 2(2n+1)λ)² − K²λ²χ²` as a monic quartic in `E`.
    pub polynomial: Polynomial,
    /// All real roots in ascending order.
    pub roots: Vec<QuarticRoot>,
}

impl QuarticReduction {
    pub fn accepted(&self) -> impl Iterator<Item = f64> + '_ {
        self.roots.iter().filter(|r| r.accepted).map(|r| r.energy)
    }
}

/// Squares the quantization condition into a quartic and classifies its
/// real roots.
pub fn quartic_reduction(params: &ModelParams, n: u32, mode: Mode) -> Result<QuarticReduction> {
    let lambda = params.require_spectrum()?;
    let ModelParams { a, m, alpha, .. } = *params;
    let m = f64::from(m);
    let alpha_sq = alpha * alpha;
    // Λ(E) − 2(2n+1)λ = E² + d, χ²(E) = b + (aE + m)²/α²
    let d = energy_bundle(params, 0.0) - level_term(params, n);
    let b = centrifugal_strength(params, 0.0) - m * m / alpha_sq;
    let kl_sq = mode.chi_factor() * mode.chi_factor() * lambda * lambda;
    let polynomial = Polynomial::new(alloc::vec![
        d * d - kl_sq * (b + m * m / alpha_sq),
        -2.0 * kl_sq * a * m / alpha_sq,
        2.0 * d - kl_sq * a * a / alpha_sq,
        0.0,
        1.0,
    ]);
    let roots = polynomial
        .real_roots()
        .into_iter()
        .map(|energy| {
            let satisfies_sign = energy_bundle(params, energy) - level_term(params, n) >= 0.0;
            let residual = quantization_residual(params, n, energy, mode).abs();
            let tol = 1e-9 * residual_scale(params, n, energy, mode);
            QuarticRoot {
                energy,
                satisfies_sign,
                residual,
                accepted: satisfies_sign && residual <= tol,
            }
        })
        .collect();
    Ok(QuarticReduction { polynomial, roots })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Scan limit for `|E|`; `None` uses [`default_e_max`].
    pub e_max: Option<f64>,
    /// Ratio of the geometric scan grid.
    pub ratio: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            e_max: None,
            ratio: 1.05,
        }
    }
}

/// `10³ · max(M, √(λ(2n + 3)))`.
pub fn default_e_max(params: &ModelParams, n: u32) -> f64 {
    let lambda = params.confinement();
    1e3 * params.mass.max(sqrt(lambda * (2.0 * f64::from(n) + 3.0)))
}

/// Scan grid for `|E|`, shared with the oracle so both solvers bracket the
/// same way.
pub(crate) fn energy_scan_grid(e_max: f64, ratio: f64) -> Vec<f64> {
    geometric_grid(e_max * 1e-9, e_max, ratio)
}

/// A solved energy level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySolution {
    pub n: u32,
    pub mode: Mode,
    pub branch: Branch,
    pub energy: f64,
    /// `|g(E)|` at the returned energy.
    pub residual: f64,
    /// Distance to the nearest accepted root of the quartic reduction.
    pub quartic_agreement: f64,
}

/// Solves `g(E) = 0` for the outermost root of the requested sign.
pub fn solve_energy(
    params: &ModelParams,
    n: u32,
    mode: Mode,
    branch: Branch,
    options: &SolveOptions,
) -> Result<EnergySolution> {
    params.require_spectrum()?;
    let e_max = options.e_max.unwrap_or_else(|| default_e_max(params, n));
    let sign = branch.sign();
    let g = |x: f64| quantization_residual(params, n, sign * x, mode);
    let grid = energy_scan_grid(e_max, options.ratio);

    let level = level_term(params, n);
    let root = sign_changes(&grid, g)
        .into_iter()
        .rev()
        .map(|bracket| sign * bisect(g, bracket, 0.0))
        .find(|&e| {
            sign * e > 0.0
                && energy_bundle(params, e) - level >= 0.0
                && quantization_residual(params, n, e, mode).abs() <= 1e-12 * residual_scale(params, n, e, mode)
        })
        .ok_or(Error::NoRoot { n, e_max })?;

    let quartic = quartic_reduction(params, n, mode)?;
    let quartic_agreement = quartic
        .accepted()
        .map(|q| (q - root).abs())
        .fold(f64::INFINITY, f64::min);

    Ok(EnergySolution {
        n,
        mode,
        branch,
        energy: root,
        residual: quantization_residual(params, n, root, mode).abs(),
        quartic_agreement,
    })
}

/// Every root of `g` of the requested sign found by the scan, ascending in `|E|`.
pub fn scan_roots(
    params: &ModelParams,
    n: u32,
    mode: Mode,
    branch: Branch,
    options: &SolveOptions,
) -> Result<Vec<f64>> {
    params.require_spectrum()?;
    let e_max = options.e_max.unwrap_or_else(|| default_e_max(params, n));
    let sign = branch.sign();
    let g = |x: f64| quantization_residual(params, n, sign * x, mode);
    let grid = energy_scan_grid(e_max, options.ratio);
    Ok(sign_changes(&grid, g)
        .into_iter()
        .map(|b| sign * bisect(g, b, 0.0))
        .filter(|&e| sign * e > 0.0)
        .collect())
}
