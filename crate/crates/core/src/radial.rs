//! The radial equation for `Φ₁` and its reduction to a two-dimensional
//! oscillator normal form.
//!
//! For an arbitrary coupling `f(r)` the radial component obeys
//!
//! ```text
//! Φ'' + p(r) Φ' + q(r, E) Φ = 0,
//! p(r)    = (α − 1) / (rα),
//! q(r, E) = E² − M² − k² − M²ω² f² + Mω f / r − Mω f / (rα)
//!           − (aE + m)² / (r²α²) + Mω f'.
//! ```
//!
//! With the Cornell coupling and `Φ = r^{1/(2α)} ζ` the first-derivative term
//! becomes `ζ'/r` and the equation takes the normal form
//! `ζ'' + ζ'/r + (Λ − λ²r² − χ²/r²) ζ = 0`.

use libm::{pow, sqrt};

use crate::error::Result;
use crate::model::{check_radius, ModelParams};

/// Coefficients `p(r)` and `q(r, E)` of the radial equation for a coupling
/// `f` with derivative `f_prime`.
#[derive(Clone, Copy)]
pub struct RadialCoefficients<F, G> {
    params: ModelParams,
    f: F,
    f_prime: G,
}

impl<F, G> RadialCoefficients<F, G>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// First-derivative coefficient; identically zero in flat space.
    pub fn p(&self, r: f64) -> f64 {
        let alpha = self.params.alpha;
        (alpha - 1.0) / (r * alpha)
    }

    pub fn q(&self, r: f64, energy: f64) -> f64 {
        let ModelParams {
            mass,
            omega,
            k,
            m,
            alpha,
            a,
            ..
        } = self.params;
        let f = (self.f)(r);
        let mw = mass * omega;
        let l = a * energy + f64::from(m);
        energy * energy - mass * mass - k * k - mw * mw * f * f + mw * f / r
            - mw * f / (r * alpha)
            - l * l / (r * r * alpha * alpha)
            + mw * (self.f_prime)(r)
    }

    /// Applies the radial operator to a function given by its value and first
    /// two derivatives at `r`.
    pub fn apply(&self, r: f64, energy: f64, value: f64, d1: f64, d2: f64) -> f64 {
        d2 + self.p(r) * d1 + self.q(r, energy) * value
    }
}

/// Radial coefficients for a general coupling `f` with exact derivative `f_prime`.
pub fn phi_coefficients<F, G>(params: &ModelParams, f: F, f_prime: G) -> RadialCoefficients<F, G>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    RadialCoefficients {
        params: *params,
        f,
        f_prime,
    }
}

/// Radial coefficients for the Cornell coupling.
pub fn cornell_coefficients(
    params: &ModelParams,
) -> RadialCoefficients<impl Fn(f64) -> f64 + Copy, impl Fn(f64) -> f64 + Copy> {
    let p = *params;
    phi_coefficients(params, move |r| p.cornell_value(r), move |r| p.cornell_slope(r))
}

/// `q(r, E)` with the Cornell coupling already expanded into powers of `r`.
pub fn cornell_q_expanded(params: &ModelParams, r: f64, energy: f64) -> f64 {
    let ModelParams {
        mass,
        omega,
        k,
        m,
        alpha,
        a,
        delta1,
        delta2,
    } = *params;
    let mw = mass * omega;
    let l = a * energy + f64::from(m);
    let r2 = r * r;
    energy * energy
        - mass * mass
        - k * k
        - delta1 * delta1 * mw * mw * r2
        - delta2 * mw / (r2 * alpha)
        - delta1 * mw / alpha
        - l * l / (r2 * alpha * alpha)
        + 2.0 * delta1 * mw
        - 2.0 * delta1 * delta2 * mw * mw
        - delta2 * delta2 * mw * mw / r2
}

/// Difference between the general `q` evaluated with the Cornell coupling and
/// its expanded form. Zero up to rounding.
pub fn cornell_expansion_check(params: &ModelParams, r: f64, energy: f64) -> Result<f64> {
    check_radius(r)?;
    let general = cornell_coefficients(params).q(r, energy);
    Ok((general - cornell_q_expanded(params, r, energy)).abs())
}

/// Data of the reduced equation `ζ'' + ζ'/r + (Λ − λ²r² − χ²/r²) ζ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialNormalForm {
    /// Confinement scale `λ = Δ₁Mω`.
    pub lambda_conf: f64,
    /// Energy bundle `Λ(E)`.
    pub big_lambda: f64,
    /// Effective centrifugal strength `χ²(E)`; the root is taken later.
    pub chi_sq: f64,
    /// Exponent `s = 1/(2α)` of the prefactor `Φ = r^s ζ`.
    pub prefactor_exponent: f64,
}

impl RadialNormalForm {
    /// `χ = +√χ²`.
    pub fn chi(&self) -> f64 {
        sqrt(self.chi_sq)
    }
}

/// `Λ(E) = E² − M² − k² − Δ₁Mω/α + 2Δ₁Mω − 2Δ₁Δ₂M²ω²`.
pub fn energy_bundle(params: &ModelParams, energy: f64) -> f64 {
    let ModelParams {
        mass,
        omega,
        k,
        alpha,
        delta1,
        delta2,
        ..
    } = *params;
    let mw = mass * omega;
    energy * energy - mass * mass - k * k - delta1 * mw / alpha + 2.0 * delta1 * mw - 2.0 * delta1 * delta2 * mw * mw
}

/// `χ²(E) = Δ₂²M²ω² + 1/(4α²) + (aE + m)²/α² + Δ₂Mω/α`.
pub fn centrifugal_strength(params: &ModelParams, energy: f64) -> f64 {
    let ModelParams {
        mass,
        omega,
        m,
        alpha,
        a,
        delta2,
        ..
    } = *params;
    let mw = mass * omega;
    let l = a * energy + f64::from(m);
    delta2 * delta2 * mw * mw + 1.0 / (4.0 * alpha * alpha) + l * l / (alpha * alpha) + delta2 * mw / alpha
}

pub fn normal_form(params: &ModelParams, energy: f64) -> RadialNormalForm {
    RadialNormalForm {
        lambda_conf: params.confinement(),
        big_lambda: energy_bundle(params, energy),
        chi_sq: centrifugal_strength(params, energy),
        prefactor_exponent: 0.5 / params.alpha,
    }
}

/// `r^s` for the reduction prefactor.
pub(crate) fn prefactor(params: &ModelParams, r: f64) -> f64 {
    pow(r, 0.5 / params.alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use libm::{cos, exp, sin};
    use proptest::prelude::*;

    #[test]
    fn flat_space_has_no_first_derivative_term() {
        let c = cornell_coefficients(&ModelParams::unit());
        for r in [0.1, 1.0, 7.0] {
            assert_eq!(c.p(r), 0.0);
        }
    }

    #[test]
    fn free_radial_wave_with_zero_coupling() {
        let p = ModelParams {
            a: 0.0,
            m: 2,
            k: 0.5,
            ..ModelParams::unit()
        };
        let c = phi_coefficients(&p, |_| 0.0, |_| 0.0);
        let (r, e) = (1.7, 2.3);
        let expected = e * e - 1.0 - 0.25 - 4.0 / (r * r);
        assert_abs_diff_eq!(c.q(r, e), expected, epsilon = 1e-14);
    }

    #[test]
    fn unit_point_value_of_q() {
        // 4 − 1 − 1 − M²ω²f² (= 4) + Mωf/r (= 2) − Mωf/(rα) (= 2) − (aE+m)² (= 9) + Mωf' (= 0)
        let c = cornell_coefficients(&ModelParams::unit());
        assert_abs_diff_eq!(c.q(1.0, 2.0), -11.0, epsilon = 1e-14);
    }

    #[test]
    fn expansion_identity_examples() {
        let unit = ModelParams::unit();
        assert!(cornell_expansion_check(&unit, 1.0, 2.0).unwrap() <= 1e-14);
        let half = ModelParams { alpha: 0.5, ..unit };
        assert!(cornell_expansion_check(&half, 0.7, 1.3).unwrap() <= 1e-13);
        let no_inverse = ModelParams {
            delta2: 0.0,
            alpha: 0.8,
            ..unit
        };
        assert!(cornell_expansion_check(&no_inverse, 3.1, -0.4).unwrap() <= 1e-13);
        assert!(cornell_expansion_check(&unit, 0.0, 1.0).is_err());
    }

    #[test]
    fn normal_form_unit_point() {
        let nf = normal_form(&ModelParams::unit(), 2.0);
        assert_abs_diff_eq!(nf.big_lambda, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(nf.chi_sq, 11.25, epsilon = 1e-15);
        assert_eq!(nf.lambda_conf, 1.0);
        assert_eq!(nf.prefactor_exponent, 0.5);
    }

    #[test]
    fn normal_form_flat_oscillator_limit() {
        let p = ModelParams {
            a: 0.0,
            delta2: 0.0,
            m: 0,
            k: 0.0,
            ..ModelParams::unit()
        };
        for e in [-2.0, 0.0, 0.3, 5.0] {
            let nf = normal_form(&p, e);
            assert_abs_diff_eq!(nf.big_lambda, e * e, epsilon = 1e-13);
            assert_abs_diff_eq!(nf.chi_sq, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn chi_sq_is_parabola_with_vertex_at_minus_m_over_a() {
        let p = ModelParams {
            a: 0.7,
            m: -2,
            alpha: 0.6,
            ..ModelParams::unit()
        };
        let vertex = -f64::from(p.m) / p.a;
        let h = 0.3;
        let left = centrifugal_strength(&p, vertex - h);
        let mid = centrifugal_strength(&p, vertex);
        let right = centrifugal_strength(&p, vertex + h);
        assert_abs_diff_eq!(left, right, epsilon = 1e-12);
        let curvature = (left - 2.0 * mid + right) / (h * h);
        assert_abs_diff_eq!(curvature, 2.0 * p.a * p.a / (p.alpha * p.alpha), epsilon = 1e-9);
        assert!(mid < left);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn expansion_identity_holds_everywhere(
            mass in 0.1f64..3.0, omega in 0.0f64..3.0, k in -2.0f64..2.0, m in -4i32..=4,
            alpha in 0.05f64..=1.0, a in 0.0f64..2.0, d1 in 0.0f64..3.0, d2 in 0.0f64..3.0,
            r in 0.05f64..10.0, e in -10.0f64..10.0,
        ) {
            let p = ModelParams { mass, omega, k, m, alpha, a, delta1: d1, delta2: d2 };
            let c = cornell_coefficients(&p);
            let scale = c.q(r, e).abs() + cornell_q_expanded(&p, r, e).abs() + energy_scale(&p, r, e);
            prop_assert!(cornell_expansion_check(&p, r, e).unwrap() <= 1e-13 * scale);
        }

        /// Numerically applying `Φ = r^s ζ` to the radial operator leaves
        /// `ζ'' + ζ'/r − ζ/(4α²r²)` plus the unchanged `q ζ`.
        #[test]
        fn prefactor_substitution_generates_inverse_square_term(
            alpha in 0.2f64..=1.0, r in 0.2f64..5.0,
            d2 in 0.0f64..2.0, a in 0.0f64..1.0, m in -2i32..=2,
        ) {
            let p = ModelParams { alpha, a, m, delta2: d2, ..ModelParams::unit() };
            let c = cornell_coefficients(&p);
            let s = 0.5 / alpha;
            let zeta = |x: f64| exp(-0.3 * x) * (2.0 + sin(x));
            let dzeta = |x: f64| exp(-0.3 * x) * (cos(x) - 0.3 * (2.0 + sin(x)));
            let ddzeta = |x: f64| {
                exp(-0.3 * x) * (-sin(x) - 0.6 * cos(x) + 0.09 * (2.0 + sin(x)))
            };
            let phi = |x: f64| pow(x, s) * zeta(x);
            let h = 2e-3 * r;
            let d1 = (phi(r - 2.0 * h) - 8.0 * phi(r - h) + 8.0 * phi(r + h) - phi(r + 2.0 * h))
                / (12.0 * h);
            let d2v = (-phi(r - 2.0 * h) + 16.0 * phi(r - h) - 30.0 * phi(r)
                + 16.0 * phi(r + h) - phi(r + 2.0 * h)) / (12.0 * h * h);
            let lhs = (d2v + c.p(r) * d1) / pow(r, s);
            let rest = ddzeta(r) + dzeta(r) / r;
            let induced = (lhs - rest) * r * r / zeta(r);
            prop_assert!((induced + 1.0 / (4.0 * alpha * alpha)).abs() <= 1e-8,
                "induced {} expected {}", induced, -1.0 / (4.0 * alpha * alpha));
        }
    }

    fn energy_scale(p: &ModelParams, r: f64, e: f64) -> f64 {
        let mw = p.mass * p.omega;
        let l = p.a * e + f64::from(p.m);
        e * e
            + p.mass * p.mass
            + p.k * p.k
            + mw * mw * (p.delta1 * r + p.delta2 / r).powi(2)
            + mw * (p.delta1 + p.delta2 / (r * r)) / p.alpha
            + l * l / (r * r * p.alpha * p.alpha)
    }
}
