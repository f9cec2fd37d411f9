//! Real polynomials and their real roots.
//!
//! Roots are isolated recursively: the real critical points (roots of the
//! derivative) split the line into monotone pieces, and each piece that
//! changes sign holds exactly one root, which is then bisected.

use alloc::vec::Vec;

use crate::roots::{bisect, Bracket};

/// Polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Trailing zero high-order coefficients are dropped.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::new(alloc::vec![0.0]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        let lead = *self.coeffs.last().unwrap_or(&1.0);
        Polynomial::new(self.coeffs.iter().map(|c| c / lead).collect())
    }

    /// Cauchy bound: every root satisfies `|x| < 1 + max |cᵢ / c_lead|`.
    pub fn root_bound(&self) -> f64 {
        let lead = self.coeffs[self.degree()].abs();
        let max = self.coeffs[..self.degree()]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs() / lead));
        1.0 + max
    }

    fn magnitude(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x.abs() + c.abs())
    }

    /// Distinct real roots in ascending order. Even-multiplicity roots are
    /// reported when the polynomial vanishes at a critical point to rounding.
    pub fn real_roots(&self) -> Vec<f64> {
        match self.degree() {
            0 => Vec::new(),
            1 => alloc::vec![-self.coeffs[0] / self.coeffs[1]],
            _ => {
                let bound = self.root_bound();
                let mut knots = alloc::vec![-bound];
                knots.extend(self.derivative().real_roots().into_iter().filter(|x| x.abs() < bound));
                knots.push(bound);

                let mut roots: Vec<f64> = Vec::new();
                let push = |x: f64, roots: &mut Vec<f64>| {
                    let tol = 1e-9 * x.abs().max(1.0);
                    if roots.last().is_none_or(|&last| (x - last).abs() > tol) {
                        roots.push(x);
                    }
                };
                for (i, w) in knots.windows(2).enumerate() {
                    let (lo, hi) = (w[0], w[1]);
                    if i > 0 {
                        // touching root at an interior critical point
                        let v = self.eval(lo);
                        if v.abs() <= 64.0 * f64::EPSILON * self.magnitude(lo) {
                            push(lo, &mut roots);
                            continue;
                        }
                    }
                    let (f_lo, f_hi) = (self.eval(lo), self.eval(hi));
                    if f_lo == 0.0 {
                        push(lo, &mut roots);
                    } else if f_hi != 0.0 && (f_lo < 0.0) != (f_hi < 0.0) {
                        let x = bisect(|x| self.eval(x), Bracket { lo, hi }, 0.0);
                        push(x, &mut roots);
                    }
                }
                let last = knots[knots.len() - 1];
                if self.eval(last) == 0.0 {
                    push(last, &mut roots);
                }
                roots
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn from_roots(roots: &[f64]) -> Polynomial {
        let mut c = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= r * ci;
            }
            c = next;
        }
        Polynomial::new(c)
    }

    #[test]
    fn unit_quartic_roots() {
        let p = Polynomial::new(vec![12.0, -8.0, -14.0, 0.0, 1.0]);
        let roots = p.real_roots();
        assert_eq!(roots.len(), 4);
        let expected = [
            -3.217930818802872,
            -1.3802553291855142,
            0.6915859129094316,
            3.9066002350789524,
        ];
        for (r, e) in roots.iter().zip(expected) {
            assert!((r - e).abs() < 1e-12, "{r} vs {e}");
        }
    }

    #[test]
    fn no_real_roots() {
        let p = Polynomial::new(vec![1.0, 0.0, 1.0, 0.0, 1.0]);
        assert!(p.real_roots().is_empty());
    }

    #[test]
    fn double_root_is_found_once() {
        let p = from_roots(&[1.0, 1.0, -2.0, 3.0]);
        let roots = p.real_roots();
        assert_eq!(roots.len(), 3, "{roots:?}");
        assert!((roots[1] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn trailing_zeros_reduce_degree() {
        let p = Polynomial::new(vec![-4.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.real_roots(), vec![-2.0, 2.0]);
    }

    proptest! {
        #[test]
        fn recovers_distinct_roots(mut rs in proptest::collection::vec(-20.0f64..20.0, 1..5)) {
            rs.sort_by(f64::total_cmp);
            prop_assume!(rs.windows(2).all(|w| w[1] - w[0] > 1e-2));
            let p = from_roots(&rs);
            let found = p.real_roots();
            prop_assert_eq!(found.len(), rs.len());
            for (f, r) in found.iter().zip(&rs) {
                prop_assert!((f - r).abs() < 1e-6 * r.abs().max(1.0), "{} vs {}", f, r);
            }
        }
    }
}
