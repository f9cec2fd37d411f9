//! Bracketing and bisection for scalar roots.

use alloc::vec::Vec;

/// A sign-change interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// Points `0, start, start·ratio, …` up to and including `end` (all > 0).
pub fn geometric_grid(start: f64, end: f64, ratio: f64) -> Vec<f64> {
    debug_assert!(start > 0.0 && end > start && ratio > 1.0);
    let mut points = Vec::new();
    points.push(0.0);
    let mut x = start;
    while x < end {
        points.push(x);
        x *= ratio;
    }
    points.push(end);
    points
}

/// All intervals between consecutive `points` on which `f` changes sign.
/// Exact zeros at a grid point produce a degenerate bracket `[x, x]`.
pub fn sign_changes<F: FnMut(f64) -> f64>(points: &[f64], mut f: F) -> Vec<Bracket> {
    let mut brackets = Vec::new();
    let mut iter = points.iter().copied();
    let Some(mut prev) = iter.next() else {
        return brackets;
    };
    let mut f_prev = f(prev);
    if f_prev == 0.0 {
        brackets.push(Bracket { lo: prev, hi: prev });
    }
    for x in iter {
        let fx = f(x);
        if fx == 0.0 {
            brackets.push(Bracket { lo: x, hi: x });
        } else if f_prev != 0.0 && (f_prev < 0.0) != (fx < 0.0) {
            let (lo, hi) = if prev < x { (prev, x) } else { (x, prev) };
            brackets.push(Bracket { lo, hi });
        }
        prev = x;
        f_prev = fx;
    }
    brackets
}

/// Bisects until the bracket collapses to adjacent floats (or `rel_tol`
/// relative width, if positive). Returns the endpoint with smaller `|f|`.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, bracket: Bracket, rel_tol: f64) -> f64 {
    let Bracket { mut lo, mut hi } = bracket;
    if lo == hi {
        return lo;
    }
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo == 0.0 {
        return lo;
    }
    if f_hi == 0.0 {
        return hi;
    }
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if rel_tol > 0.0 && (hi - lo) <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    if f_lo.abs() <= f_hi.abs() {
        lo
    } else {
        hi
    }
}
