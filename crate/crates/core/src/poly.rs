//! Finite polynomials in two formal variables, used for the holomorphic
//! models of the representations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

/// Coefficient field for [`BivarPoly`].
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + fmt::Debug
    + fmt::Display
{
    fn from_ratio(num: i64, den: i64) -> Self;
    fn mul_coeff(&self, other: &Self) -> Self;
    fn to_c64(&self) -> Complex64;
}

impl Coeff for Complex64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn mul_coeff(&self, other: &Self) -> Self {
        self * other
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

/// Exact rational coefficients.
pub type Rational = Ratio<i128>;

impl Coeff for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num as i128, den as i128)
    }
    fn mul_coeff(&self, other: &Self) -> Self {
        self * other
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

/// Which pair of variables a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vars {
    /// `(α, w)`: the coherent-state model of the oscillator representation.
    AlphaW,
    /// `(z, ζ)`: the model of the discrete series.
    ZZeta,
}

impl Vars {
    pub fn name(self) -> &'static str {
        match self {
            Vars::AlphaW => "(alpha, w)",
            Vars::ZZeta => "(z, zeta)",
        }
    }
}

/// Sparse polynomial `Σ c_ij x^i y^j`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct BivarPoly<C> {
    vars: Vars,
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coeff> BivarPoly<C> {
    pub fn zero(vars: Vars) -> Self {
        BivarPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(vars: Vars, i: u32, j: u32, c: C) -> Self {
        let mut p = BivarPoly::zero(vars);
        p.add_term(i, j, c);
        p
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        BivarPoly::monomial(vars, 0, 0, c)
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &C)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: C) {
        let slot = self.terms.entry((i, j)).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = BivarPoly::zero(self.vars);
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v.mul_coeff(c));
        }
        out
    }

    /// Multiplies by `x^di y^dj`.
    pub fn shift(&self, di: u32, dj: u32) -> Self {
        BivarPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), v)| ((i + di, j + dj), v.clone()))
                .collect(),
        }
    }

    /// `∂/∂x` (first variable).
    pub fn d_first(&self) -> Self {
        let mut out = BivarPoly::zero(self.vars);
        for (&(i, j), v) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, v.mul_coeff(&C::from_ratio(i as i64, 1)));
            }
        }
        out
    }

    /// `∂/∂y` (second variable).
    pub fn d_second(&self) -> Self {
        let mut out = BivarPoly::zero(self.vars);
        for (&(i, j), v) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, v.mul_coeff(&C::from_ratio(j as i64, 1)));
            }
        }
        out
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(i, j), v)| v.to_c64() * x.powu(i) * y.powu(j))
            .sum()
    }

    pub fn to_complex(&self) -> BivarPoly<Complex64> {
        let mut out = BivarPoly::zero(self.vars);
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v.to_c64());
        }
        out
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|v| v.to_c64().norm())
            .fold(0.0, f64::max)
    }
}

fn merge<C: Coeff>(lhs: &BivarPoly<C>, rhs: &BivarPoly<C>, sign: bool) -> BivarPoly<C> {
    assert_eq!(lhs.vars, rhs.vars, "polynomials in different variables");
    let mut out = lhs.clone();
    for (&(i, j), v) in &rhs.terms {
        out.add_term(i, j, if sign { v.clone() } else { -v.clone() });
    }
    out
}

impl<C: Coeff> Add<&BivarPoly<C>> for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn add(self, rhs: &BivarPoly<C>) -> BivarPoly<C> {
        merge(self, rhs, true)
    }
}

impl<C: Coeff> Add for BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn add(self, rhs: BivarPoly<C>) -> BivarPoly<C> {
        merge(&self, &rhs, true)
    }
}

impl<C: Coeff> Sub<&BivarPoly<C>> for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn sub(self, rhs: &BivarPoly<C>) -> BivarPoly<C> {
        merge(self, rhs, false)
    }
}

impl<C: Coeff> Sub for BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn sub(self, rhs: BivarPoly<C>) -> BivarPoly<C> {
        merge(&self, &rhs, false)
    }
}

impl<C: Coeff> fmt::Display for BivarPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = match self.vars {
            Vars::AlphaW => ("alpha", "w"),
            Vars::ZZeta => ("z", "zeta"),
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let power = |v: &str, e: u32| match e {
            0 => String::new(),
            1 => format!(" {v}"),
            _ => format!(" {v}^{e}"),
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), v)| format!("({v}){}{}", power(x, i), power(y, j)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
