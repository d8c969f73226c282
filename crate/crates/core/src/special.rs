//! Scalar special functions behind the closed-form matrix elements.
//!
//! Gamma ratios are always reduced to Pochhammer products, so nothing here
//! evaluates a Gamma function.

use crate::error::{Error, Result};

/// Discrete-series weight `k` together with `h = (2k − 1)/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfWeight {
    pub k: f64,
    pub h: f64,
}

impl HalfWeight {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.5) || !k.is_finite() {
            return Err(Error::InvalidWeight(k));
        }
        Ok(HalfWeight {
            k,
            h: (2.0 * k - 1.0) / 4.0,
        })
    }
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n−1)`.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).map(|j| x + j as f64).product()
}

pub fn factorial(n: usize) -> f64 {
    pochhammer(1.0, n)
}

/// Generalized Laguerre polynomial `L_n^(s)(x)`.
///
/// Evaluated with the three-term recurrence in `n`; the alternating power
/// series loses most of its digits to cancellation once `n x` is large.
pub fn laguerre(n: usize, s: usize, x: f64) -> f64 {
    let s = s as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + s - x;
    for m in 1..n {
        let m = m as f64;
        let next = ((2.0 * m + s + 1.0 - x) * cur - (m + s) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `₂F₁(−n, b; c; x)`, a polynomial of degree `n` in `x`.
pub fn hyp2f1_terminating(n: usize, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..n {
        let jf = j as f64;
        if c + jf == 0.0 {
            return Err(Error::DegenerateHypergeometric { j });
        }
        term *= (jf - n as f64) * (b + jf) / ((c + jf) * (jf + 1.0)) * x;
        sum += term;
    }
    Ok(sum)
}

/// `λ_kc = [c! (2h)_c]^(−1/2)` with `2h = k − 1/2`.
pub fn lambda_coeff(k: f64, c: usize) -> Result<f64> {
    let hw = HalfWeight::new(k)?;
    Ok((factorial(c) * pochhammer(2.0 * hw.h, c)).powf(-0.5))
}
