//! Symmetric tridiagonal eigenproblems.
//!
//! Eigenvalues come from Sturm-sequence bisection, which isolates the `k`-th
//! eigenvalue exactly by counting; eigenvectors from inverse iteration.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off.len()` must be `diag.len() - 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty() && off.len() + 1 == diag.len());
        SymTridiagonal { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE / f64::EPSILON;
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            if q.abs() < tiny {
                q = -tiny;
            }
            let e = self.off[i - 1];
            q = self.diag[i] - x - e * e / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (zero-based), bisected to adjacent floats.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.dim());
        let (mut lo, gersh_hi) = self.bounds();
        // most callers want low eigenvalues; grow an upper bound from below
        let span = (gersh_hi - lo).max(1.0);
        let mut step = span * 1e-6;
        let mut hi = lo + step;
        while hi < gersh_hi && self.count_below(hi) <= k {
            lo = hi;
            step *= 2.0;
            hi = (hi + step).min(gersh_hi);
        }
        if hi >= gersh_hi {
            hi = gersh_hi + f64::EPSILON * span;
        }
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return mid;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// The lowest `count` eigenvalues in ascending order.
    pub fn lowest(&self, count: usize) -> Vec<f64> {
        (0..count.min(self.dim())).map(|k| self.eigenvalue(k)).collect()
    }

    /// Unit eigenvector for a converged eigenvalue, by inverse iteration with
    /// a partially pivoted tridiagonal LU.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.dim();
        let lu = PivotedLu::factor(self, eigenvalue);
        let mut v = vec![1.0 / libm::sqrt(n as f64); n];
        for _ in 0..3 {
            v = lu.solve(&v);
            let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
            for x in &mut v {
                *x /= norm;
            }
        }
        // fix the overall sign so the first significant entry is positive
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-8) {
            if *first < 0.0 {
                for x in &mut v {
                    *x = -*x;
                }
            }
        }
        v
    }
}

/// LU of `T − σI` with row interchanges; `U` has two superdiagonals.
struct PivotedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl PivotedLu {
    fn factor(t: &SymTridiagonal, shift: f64) -> Self {
        let n = t.dim();
        let tiny = f64::EPSILON * t.bounds().1.abs().max(1.0);
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut mult = vec![0.0; n];
        let mut swapped = vec![false; n];

        // current row i holds (d, e1, e2) in columns i, i+1, i+2
        let mut d = t.diag[0] - shift;
        let mut e1 = if n > 1 { t.off[0] } else { 0.0 };
        let mut e2 = 0.0;
        for i in 0..n {
            if i + 1 == n {
                u0[i] = if d.abs() < tiny { tiny } else { d };
                break;
            }
            let below_sub = t.off[i];
            let below_d = t.diag[i + 1] - shift;
            let below_e = if i + 2 < n { t.off[i + 1] } else { 0.0 };
            if below_sub.abs() > d.abs() {
                swapped[i] = true;
                u0[i] = below_sub;
                u1[i] = below_d;
                u2[i] = below_e;
                let l = d / below_sub;
                mult[i] = l;
                d = e1 - l * below_d;
                e1 = e2 - l * below_e;
            } else {
                let pivot = if d.abs() < tiny { tiny } else { d };
                u0[i] = pivot;
                u1[i] = e1;
                u2[i] = e2;
                let l = below_sub / pivot;
                mult[i] = l;
                d = below_d - l * e1;
                e1 = below_e - l * e2;
            }
            e2 = 0.0;
        }
        PivotedLu {
            u0,
            u1,
            u2,
            mult,
            swapped,
        }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = rhs.len();
        let mut y = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                y.swap(i, i + 1);
            }
            y[i + 1] -= self.mult[i] * y[i];
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = y[i];
            if i + 1 < n {
                s -= self.u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.u2[i] * x[i + 2];
            }
            x[i] = s / self.u0[i];
        }
        x
    }
}
