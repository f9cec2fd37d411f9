//! Special functions.

use crate::error::{Error, Result};

/// Generalized Laguerre polynomial `L_n^{(order)}(x)` by the upward
/// three-term recurrence
/// `(k+1) L_{k+1} = (2k + 1 + order − x) L_k − (k + order) L_{k−1}`.
pub fn laguerre(n: u32, order: f64, x: f64) -> Result<f64> {
    if !(order > -1.0) {
        return Err(Error::Domain {
            field: "order",
            value: order,
            reason: "Laguerre order must be > -1",
        });
    }
    Ok(laguerre_unchecked(n, order, x))
}

pub(crate) fn laguerre_unchecked(n: u32, order: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = 1.0 + order - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + order - x) * curr - (k + order) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}
