//! Physical parameters and the Cornell coupling.
//!
//! Natural units (ħ = c = 1) are used throughout. The background is the
//! spinning cosmic string with line element
//!
//! ```text
//! ds² = −(dt + a dφ)² + dr² + α² r² dφ² + dz²
//! ```
//!
//! where `α ∈ (0, 1]` sets the conical deficit (α = 1 is flat space) and
//! `a = 4GJ` measures the string's angular momentum. The metric itself is
//! never manipulated numerically; only `α` and `a` enter the radial problem.

use core::fmt;

use crate::error::{Error, Result};

/// All constants of the system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Particle mass `M > 0`.
    pub mass: f64,
    /// Oscillator frequency `ω ≥ 0`.
    pub omega: f64,
    /// Axial wave number.
    pub k: f64,
    /// Magnetic quantum number.
    pub m: i32,
    /// Angular deficit parameter `α ∈ (0, 1]`.
    pub alpha: f64,
    /// Spinning-string parameter `a = 4GJ ≥ 0`.
    pub a: f64,
    /// Linear Cornell strength `Δ₁ ≥ 0` (strictly positive for bound states).
    pub delta1: f64,
    /// Inverse Cornell strength `Δ₂ ≥ 0`.
    pub delta2: f64,
}

impl Default for ModelParams {
    /// The configuration-file defaults: every field 1 except `m = k = 0`.
    fn default() -> Self {
        ModelParams {
            k: 0.0,
            m: 0,
            ..ModelParams::unit()
        }
    }
}

impl ModelParams {
    /// Every parameter set to one, the base point of all the trend plots.
    pub const fn unit() -> Self {
        ModelParams {
            mass: 1.0,
            omega: 1.0,
            k: 1.0,
            m: 1,
            alpha: 1.0,
            a: 1.0,
            delta1: 1.0,
            delta2: 1.0,
        }
    }

    /// Checks the structural invariants and returns the parameters unchanged.
    pub fn validate(self) -> Result<Self> {
        fn finite(field: &'static str, value: f64) -> Result<()> {
            if value.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain {
                    field,
                    value,
                    reason: "must be finite",
                })
            }
        }
        finite("M", self.mass)?;
        finite("omega", self.omega)?;
        finite("k", self.k)?;
        finite("alpha", self.alpha)?;
        finite("a", self.a)?;
        finite("delta1", self.delta1)?;
        finite("delta2", self.delta2)?;

        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::Domain {
                field: "alpha",
                value: self.alpha,
                reason: "must lie in (0, 1]",
            });
        }
        if self.mass <= 0.0 {
            return Err(Error::Domain {
                field: "M",
                value: self.mass,
                reason: "must be > 0",
            });
        }
        let non_negative = [
            ("omega", self.omega),
            ("a", self.a),
            ("delta1", self.delta1),
            ("delta2", self.delta2),
        ];
        for (field, value) in non_negative {
            if value < 0.0 {
                return Err(Error::Domain {
                    field,
                    value,
                    reason: "must be >= 0",
                });
            }
        }
        Ok(self)
    }

    /// Confinement scale `λ = Δ₁Mω`.
    pub fn confinement(&self) -> f64 {
        self.delta1 * self.mass * self.omega
    }

    /// Validates the parameters and additionally requires `λ > 0`, which every
    /// spectrum computation needs. Returns `λ`.
    pub fn require_spectrum(&self) -> Result<f64> {
        self.validate()?;
        let lambda = self.confinement();
        if lambda > 0.0 {
            Ok(lambda)
        } else {
            Err(Error::Degenerate { lambda })
        }
    }

    /// Cornell coupling `f(r) = Δ₁ r + Δ₂ / r`.
    pub fn cornell_f(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(self.cornell_value(r))
    }

    /// `f'(r) = Δ₁ − Δ₂ / r²`.
    pub fn cornell_f_prime(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(self.cornell_slope(r))
    }

    pub(crate) fn cornell_value(&self, r: f64) -> f64 {
        self.delta1 * r + self.delta2 / r
    }

    pub(crate) fn cornell_slope(&self, r: f64) -> f64 {
        self.delta1 - self.delta2 / (r * r)
    }

    pub fn get(&self, param: Param) -> f64 {
        match param {
            Param::Mass => self.mass,
            Param::Omega => self.omega,
            Param::K => self.k,
            Param::M => f64::from(self.m),
            Param::Alpha => self.alpha,
            Param::A => self.a,
            Param::Delta1 => self.delta1,
            Param::Delta2 => self.delta2,
        }
    }

    /// Returns a copy with one parameter replaced. `m` is rounded to the
    /// nearest integer.
    pub fn with(mut self, param: Param, value: f64) -> Self {
        match param {
            Param::Mass => self.mass = value,
            Param::Omega => self.omega = value,
            Param::K => self.k = value,
            Param::M => self.m = libm::round(value) as i32,
            Param::Alpha => self.alpha = value,
            Param::A => self.a = value,
            Param::Delta1 => self.delta1 = value,
            Param::Delta2 => self.delta2 = value,
        }
        self
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            field: "r",
            value: r,
            reason: "radius must be > 0",
        })
    }
}

/// Names of the model parameters, as used in configuration files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Mass,
    Omega,
    K,
    M,
    Alpha,
    A,
    Delta1,
    Delta2,
}

impl Param {
    pub const ALL: [Param; 8] = [
        Param::Mass,
        Param::Omega,
        Param::K,
        Param::M,
        Param::Alpha,
        Param::A,
        Param::Delta1,
        Param::Delta2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Mass => "M",
            Param::Omega => "omega",
            Param::K => "k",
            Param::M => "m",
            Param::Alpha => "alpha",
            Param::A => "a",
            Param::Delta1 => "delta1",
            Param::Delta2 => "delta2",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Radial and magnetic quantum numbers of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub n: u32,
    pub m: i32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_params_are_valid() {
        let p = ModelParams::unit();
        assert_eq!(p.validate(), Ok(p));
        assert!(ModelParams::default().validate().is_ok());
    }

    #[test]
    fn alpha_bounds() {
        for alpha in [0.0, 1.5, -0.1, f64::NAN] {
            let p = ModelParams {
                alpha,
                ..ModelParams::unit()
            };
            match p.validate() {
                Err(Error::Domain { field, .. }) => assert_eq!(field, "alpha"),
                other => panic!("alpha = {alpha}: {other:?}"),
            }
        }
        let p = ModelParams {
            alpha: 1.0,
            ..ModelParams::unit()
        };
        assert!(p.validate().is_ok());
    }

    #[test]
    fn negative_strengths_rejected() {
        let p = ModelParams {
            delta2: -1.0,
            ..ModelParams::unit()
        };
        assert!(matches!(p.validate(), Err(Error::Domain { field: "delta2", .. })));
        let p = ModelParams {
            mass: 0.0,
            ..ModelParams::unit()
        };
        assert!(matches!(p.validate(), Err(Error::Domain { field: "M", .. })));
    }

    #[test]
    fn zero_linear_strength_is_representable_but_degenerate() {
        let p = ModelParams {
            delta1: 0.0,
            ..ModelParams::unit()
        };
        assert!(p.validate().is_ok());
        assert!(matches!(p.require_spectrum(), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn cornell_values() {
        let p = ModelParams::unit();
        assert_eq!(p.cornell_f(1.0), Ok(2.0));
        assert_eq!(p.cornell_f_prime(1.0), Ok(0.0));

        let p = ModelParams {
            delta1: 2.0,
            delta2: 0.5,
            ..ModelParams::unit()
        };
        assert_eq!(p.cornell_f(2.0), Ok(4.25));

        let zero = ModelParams {
            delta1: 0.0,
            delta2: 0.0,
            ..ModelParams::unit()
        };
        assert_eq!(zero.cornell_f(3.7), Ok(0.0));

        let linear = ModelParams {
            delta2: 0.0,
            ..ModelParams::unit()
        };
        assert_eq!(linear.cornell_f_prime(5.0), Ok(1.0));

        let inverse = ModelParams {
            delta1: 0.0,
            ..ModelParams::unit()
        };
        assert_eq!(inverse.cornell_f_prime(2.0), Ok(-0.25));

        assert!(p.cornell_f(0.0).is_err());
        assert!(p.cornell_f_prime(-1.0).is_err());
    }

    #[test]
    fn coupling_confines_at_both_ends() {
        let p = ModelParams::unit();
        assert!(p.cornell_f(1e-9).unwrap() > 1e8);
        assert!(p.cornell_f(1e9).unwrap() > 1e8);
    }

    #[test]
    fn param_names_round_trip() {
        for p in Param::ALL {
            assert_eq!(Param::from_name(p.name()), Some(p));
        }
        assert_eq!(Param::from_name("beta"), None);
    }

    proptest! {
        #[test]
        fn derivative_matches_central_difference(
            d1 in 0.0f64..3.0, d2 in 0.0f64..3.0, r in 0.5f64..5.0,
        ) {
            let p = ModelParams { delta1: d1, delta2: d2, ..ModelParams::unit() };
            let h = 1e-4;
            let fd = (p.cornell_value(r + h) - p.cornell_value(r - h)) / (2.0 * h);
            // third derivative of Δ₂/r is bounded by 6Δ₂/r⁴ ≤ 96Δ₂ on [0.5, 5];
            // a small rounding allowance covers the cancellation in the quotient
            let bound = 96.0 * d2 / 6.0 * h * h + 1e-10;
            prop_assert!((p.cornell_slope(r) - fd).abs() <= bound);
        }
    }
}
