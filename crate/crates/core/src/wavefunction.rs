//! Radial wavefunctions `Φ₁(r)`.
//!
//! Two conventions are available. [`Convention::ReducedConsistent`] is the
//! solution of the reduced equation carried back through `Φ = r^{1/(2α)} ζ`:
//!
//! ```text
//! Φ₁(r) = r^{1/(2α)} (λr²)^{χ/2} e^{−λr²/2} L_n^{χ}(λr²)
//! ```
//!
//! [`Convention::PaperLiteral`] is the originally published expression
//! `r^Θ e^{−λr²/2} L_n^Θ(λr²)` with
//! `Θ = Δ₂²M²ω² + 1/(4α²) + (aE+m)²/α² + Δ₁Mω/α`, kept for comparison. The
//! residual check tells the two apart.

use core::fmt;

use libm::{exp, pow, sqrt};

use crate::error::{Error, Result};
use crate::model::{check_radius, ModelParams};
use crate::nu::EnergySolution;
use crate::quad::integrate;
use crate::radial::{centrifugal_strength, cornell_coefficients, prefactor};
use crate::special::laguerre_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    PaperLiteral,
    ReducedConsistent,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::PaperLiteral => "paper-literal",
            Convention::ReducedConsistent => "reduced-consistent",
        }
    }

    pub fn from_name(name: &str) -> Option<Convention> {
        [Convention::PaperLiteral, Convention::ReducedConsistent]
            .into_iter()
            .find(|c| c.name() == name)
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A bound state ready for evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSpec {
    pub params: ModelParams,
    pub n: u32,
    pub energy: f64,
    pub convention: Convention,
    /// Laguerre order: `χ` (reduced-consistent) or `Θ` (paper-literal).
    pub theta: f64,
    pub lambda_conf: f64,
    /// Overall factor applied to every value.
    pub scale: f64,
}

impl WavefunctionSpec {
    pub fn new(params: &ModelParams, n: u32, energy: f64, convention: Convention) -> Result<Self> {
        let lambda_conf = params.require_spectrum()?;
        let theta = match convention {
            Convention::ReducedConsistent => sqrt(centrifugal_strength(params, energy)),
            Convention::PaperLiteral => {
                let ModelParams {
                    mass,
                    omega,
                    m,
                    alpha,
                    a,
                    delta1,
                    delta2,
                    ..
                } = *params;
                let mw = mass * omega;
                let l = a * energy + f64::from(m);
                delta2 * delta2 * mw * mw + 1.0 / (4.0 * alpha * alpha) + l * l / (alpha * alpha) + delta1 * mw / alpha
            }
        };
        if !(theta > 0.0) {
            return Err(Error::Domain {
                field: "theta",
                value: theta,
                reason: "wavefunction exponent must be > 0",
            });
        }
        Ok(WavefunctionSpec {
            params: *params,
            n,
            energy,
            convention,
            theta,
            lambda_conf,
            scale: 1.0,
        })
    }

    pub fn from_solution(params: &ModelParams, solution: &EnergySolution, convention: Convention) -> Result<Self> {
        Self::new(params, solution.n, solution.energy, convention)
    }

    pub fn scaled(self, factor: f64) -> Self {
        WavefunctionSpec {
            scale: self.scale * factor,
            ..self
        }
    }

    /// `Φ₁(r)` for `r > 0`, without the domain check.
    pub fn value(&self, r: f64) -> f64 {
        let x = self.lambda_conf * r * r;
        let core = exp(-0.5 * x) * laguerre_unchecked(self.n, self.theta, x);
        let power = match self.convention {
            Convention::ReducedConsistent => prefactor(&self.params, r) * pow(x, 0.5 * self.theta),
            Convention::PaperLiteral => pow(r, self.theta),
        };
        self.scale * power * core
    }

    /// Total power of `r` near the origin.
    fn origin_exponent(&self) -> f64 {
        match self.convention {
            Convention::ReducedConsistent => 0.5 / self.params.alpha + self.theta,
            Convention::PaperLiteral => self.theta,
        }
    }

    /// Radius beyond which `|Φ₁|² r` is below `1e-14` of its bulk: the
    /// Gaussian `e^{−λr²}` has overtaken the polynomial growth with ample margin.
    pub fn default_r_max(&self) -> f64 {
        let growth = 2.0 * self.origin_exponent() + 4.0 * f64::from(self.n) + 1.0;
        sqrt((2.0 * growth + 80.0) / self.lambda_conf)
    }
}

pub fn radial_wavefunction(spec: &WavefunctionSpec, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(spec.value(r))
}

/// Evenly spaced radii `start, start + step, …` (`count` points).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl UniformGrid {
    /// `count` points from `start` to `end` inclusive.
    pub fn spanning(start: f64, end: f64, count: usize) -> Self {
        assert!(count >= 2 && end > start);
        UniformGrid {
            start,
            step: (end - start) / (count - 1) as f64,
            count,
        }
    }

    /// Points from `start` to (at most) `end` with spacing `step`.
    pub fn with_step(start: f64, end: f64, step: f64) -> Self {
        let count = libm::floor((end - start) / step) as usize + 1;
        UniformGrid { start, step, count }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.start + self.step * i as f64)
    }

    pub fn end(&self) -> f64 {
        self.start + self.step * (self.count - 1) as f64
    }
}

/// Grid used by [`residual_check`] in the tests and the CLI: spacing `h` from
/// a fixed inner radius `0.1/√λ` (the centrifugal core is left to the
/// analytic prefactor) out to [`WavefunctionSpec::default_r_max`].
pub fn residual_grid(spec: &WavefunctionSpec, h: f64) -> UniformGrid {
    let start = 0.1 / sqrt(spec.lambda_conf);
    UniformGrid::with_step(start, spec.default_r_max(), h)
}

/// `max |LΦ₁| / max |Φ₁|` over the grid, where `L` is the radial operator
/// with Cornell coupling and derivatives are fourth-order central differences
/// with the grid spacing. Points whose stencil would reach `r ≤ 0` are skipped.
pub fn residual_check(spec: &WavefunctionSpec, grid: &UniformGrid) -> f64 {
    let coeffs = cornell_coefficients(&spec.params);
    let h = grid.step;
    let mut max_residual = 0.0_f64;
    let mut max_value = 0.0_f64;
    for r in grid.points().filter(|&r| r - 2.0 * h > 0.0) {
        let [fm2, fm1, f0, fp1, fp2] = [-2.0, -1.0, 0.0, 1.0, 2.0].map(|k| spec.value(r + k * h));
        let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        max_residual = max_residual.max(coeffs.apply(r, spec.energy, f0, d1, d2).abs());
        max_value = max_value.max(f0.abs());
    }
    max_residual / max_value
}

/// `N` such that `∫₀^{r_max} |N Φ₁|² α r dr = 1`, with `α r dr` the spatial
/// measure of the conical metric.
pub fn normalize(spec: &WavefunctionSpec, r_max: f64) -> Result<f64> {
    check_radius(r_max)?;
    let alpha = spec.params.alpha;
    let q = integrate(
        |r| {
            let v = spec.value(r);
            alpha * r * v * v
        },
        0.0,
        r_max,
        1e-10,
        0.0,
    )?;
    if !(q.value > 0.0) {
        return Err(Error::Quadrature {
            estimate: q.value,
            error: q.error,
        });
    }
    Ok(1.0 / sqrt(q.value))
}

/// Weight `r^{1 − 1/α}` that makes the radial operator self-adjoint;
/// states solving the same equation are orthogonal with respect to it.
pub fn sturm_liouville_weight(alpha: f64, r: f64) -> f64 {
    pow(r, 1.0 - 1.0 / alpha)
}

/// Grid for [`count_nodes`]: `2000 + 400n` points on `[10⁻⁶ r_max, r_max]`,
/// several hundred points per node spacing for the states of interest.
pub fn node_grid(spec: &WavefunctionSpec) -> UniformGrid {
    let r_max = spec.default_r_max();
    UniformGrid::spanning(1e-6 * r_max, r_max, 2000 + 400 * spec.n as usize)
}

/// Strict sign changes of `Φ₁` between consecutive grid points. Points where
/// `Φ₁` underflows to zero are skipped. A grid that is too coarse undercounts.
pub fn count_nodes(spec: &WavefunctionSpec, grid: &UniformGrid) -> usize {
    let mut last_sign = 0.0;
    let mut nodes = 0;
    for r in grid.points().filter(|&r| r > 0.0) {
        let v = spec.value(r);
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        let sign = v.signum();
        if last_sign != 0.0 && sign != last_sign {
            nodes += 1;
        }
        last_sign = sign;
    }
    nodes
}
