//! Bound-state spectra of the spin-0 generalized DKP oscillator in a spinning
//! cosmic string background with a Cornell-type coupling `f(r) = Δ₁ r + Δ₂ / r`.
//!
//! The crate is `no_std` (it needs `alloc` for grids and root lists) and is
//! organized bottom-up:
//!
//! * [`model`] holds the physical parameters and the Cornell coupling.
//! * [`radial`] builds the radial equation and its reduced normal form
//!   `ζ'' + ζ'/r + (Λ − λ²r² − χ²/r²) ζ = 0`.
//! * [`nu`] maps the normal form onto Nikiforov–Uvarov parameters and solves
//!   the quantization condition for the energy, cross-checked against the
//!   squared (quartic) form of the same condition.
//! * [`wavefunction`] evaluates, normalizes and diagnoses the radial states.
//! * [`oracle`] is an independent finite-difference eigensolver used to
//!   certify the closed-form spectrum.
//!
//! ```
//! use dkp_core::model::ModelParams;
//! use dkp_core::nu::{solve_energy, Branch, Mode, SolveOptions};
//!
//! let params = ModelParams { a: 0.0, delta2: 0.0, m: 0, k: 0.0, ..ModelParams::unit() };
//! let sol = solve_energy(&params, 0, Mode::NuStandard, Branch::Positive, &SolveOptions::default())
//!     .unwrap();
//! assert!((sol.energy - 3f64.sqrt()).abs() < 1e-10);
//! ```

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is how domain checks reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod model;
pub mod nu;
pub mod oracle;
pub mod poly;
pub mod quad;
pub mod radial;
pub mod roots;
pub mod special;
pub mod tridiag;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{ModelParams, Param, QuantumNumbers};
pub use nu::{Branch, EnergySolution, Mode};
