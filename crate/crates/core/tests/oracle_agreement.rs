//! Closed form against the finite-difference oracle on hand-picked points,
//! including centrifugal strengths just above 1/2 where the eigenvalue error
//! carries a fractional power of the grid spacing.

use dkp_core::nu::{solve_energy, SolveOptions};
use dkp_core::oracle::{oracle_energy, FdGrid, OracleConfig, ReducedOperator};
use dkp_core::radial::centrifugal_strength;
use dkp_core::{Branch, Mode, ModelParams};

fn rel_err(p: &ModelParams, n: u32, mode: Mode) -> f64 {
    let closed = solve_energy(p, n, mode, Branch::Positive, &SolveOptions::default()).unwrap();
    let oracle = oracle_energy(p, n, Branch::Positive, &OracleConfig::default()).unwrap();
    (closed.energy - oracle.energy).abs() / oracle.energy.abs()
}

#[test]
fn agrees_near_half_integer_centrifugal_strength() {
    let sets = [
        ModelParams {
            alpha: 0.9,
            a: 0.1,
            m: 0,
            delta1: 0.5,
            omega: 0.5,
            delta2: 0.0,
            k: 0.0,
            mass: 1.0,
        },
        ModelParams {
            alpha: 0.95,
            a: 0.0,
            m: 0,
            delta1: 1.0,
            omega: 1.0,
            delta2: 0.05,
            k: 0.2,
            mass: 1.0,
        },
        ModelParams {
            alpha: 0.7,
            a: 0.0,
            m: 0,
            delta1: 0.5,
            omega: 0.5,
            delta2: 0.0,
            k: 0.0,
            mass: 1.0,
        },
    ];
    for p in &sets {
        let chi = centrifugal_strength(p, 1.0).sqrt();
        assert!(chi < 0.9, "meant to exercise small chi, got {chi}");
        for n in 0..2 {
            let err = rel_err(p, n, Mode::NuStandard);
            assert!(err < 1e-8, "{p:?} n={n}: {err:e}");
        }
    }
}

#[test]
fn paper_literal_misses_the_oracle() {
    let p = ModelParams::unit();
    for n in 0..3 {
        assert!(rel_err(&p, n, Mode::PaperLiteral) > 1e-2);
        assert!(rel_err(&p, n, Mode::NuStandard) < 1e-9);
    }
}

#[test]
fn trivial_kernel_error_ratio() {
    // r_max = 12 with 500 and 1001 interior points halves h exactly
    let op = ReducedOperator {
        lambda: 1.0,
        chi_sq: 0.25,
    };
    let coarse = FdGrid::new(12.0, 500).unwrap();
    let fine = coarse.refined();
    let ec = op.eigenvalues(&coarse, 3).unwrap();
    let ef = op.eigenvalues(&fine, 3).unwrap();
    for (k, exact) in [3.0, 7.0, 11.0].into_iter().enumerate() {
        let ratio = (ec[k] - exact) / (ef[k] - exact);
        assert!((ratio - 4.0).abs() < 0.2, "level {k}: ratio {ratio}");
    }
}
