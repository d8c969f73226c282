//! Schrödinger–Weil representation on the truncated Fock basis and its
//! holomorphic model in the variables `(α, w)`.
//!
//! Position and momentum use the normalized quadratures
//! `q = √(ħ/2)(a + a†)`, `p = −i√(ħ/2)(a − a†)` with `ħ = 1/(2μ²)`. The
//! differential-operator realization on `L²(ℝ)`,
//!
//! ```text
//! P = d/dq,  Q = 2iμq,  R = iμ,  F = iμq²,  G = (i/4μ) d²/dq²,  H = q d/dq + 1/2
//! ```
//!
//! is not discretized; [`realize_algebra`](crate::generators::realize_algebra)
//! gives the same algebra elements in the Fock basis. The two position
//! operators agree only when `|μ| = 1`, which is the default profile.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::generators::{Generator, LadderSet};
use crate::operator::{
    Basis, BasisKind, BasisLabel, BasisTag, StateVector, TruncatedOperator, C64,
};
use crate::poly::{BivarPoly, Coeff, Rational, Vars};
use crate::special::factorial;

/// Index data: `μ = 2πm`, `σ = sign μ`, `ħ = (2μ²)⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SWIndex {
    pub m: f64,
    pub mu: f64,
    pub sigma: f64,
    pub hbar: f64,
}

impl SWIndex {
    pub fn new(m: f64) -> Result<Self> {
        if m == 0.0 || !m.is_finite() {
            return Err(Error::InvalidIndex(m));
        }
        let mu = 2.0 * PI * m;
        Ok(SWIndex {
            m,
            mu,
            sigma: mu.signum(),
            hbar: 1.0 / (2.0 * mu * mu),
        })
    }

    /// `m = 1/(2π)`, so `μ = 1` and `ħ = 1/2`.
    pub fn unit() -> Self {
        SWIndex::new(1.0 / (2.0 * PI)).expect("nonzero index")
    }
}

/// Annihilation and creation matrices on `φ_0..φ_cutoff`.
pub fn build_ladder(cutoff: usize) -> (TruncatedOperator, TruncatedOperator) {
    ladder_on(&BasisTag::sw(cutoff))
}

fn ladder_on(basis: &Basis) -> (TruncatedOperator, TruncatedOperator) {
    let a = TruncatedOperator::from_action(basis, Some(-1), |label| match label {
        BasisLabel::Number(n) if n > 0 => {
            Some((BasisLabel::Number(n - 1), C64::new((n as f64).sqrt(), 0.0)))
        }
        _ => None,
    });
    let a_dag = a.adjoint();
    (a, a_dag)
}

#[derive(Debug, Clone)]
pub struct SWGenerators {
    pub idx: SWIndex,
    pub a: TruncatedOperator,
    pub a_dag: TruncatedOperator,
    pub k0: TruncatedOperator,
    pub k_plus: TruncatedOperator,
    pub k_minus: TruncatedOperator,
    pub w0: TruncatedOperator,
    pub w_plus: TruncatedOperator,
    pub w_minus: TruncatedOperator,
    pub q: TruncatedOperator,
    pub p: TruncatedOperator,
    pub number: TruncatedOperator,
}

impl SWGenerators {
    pub fn cutoff(&self) -> usize {
        match self.a.basis().kind() {
            BasisKind::Sw { cutoff } => cutoff,
            BasisKind::Ds { .. } => {
                unreachable!("oscillator generators on a discrete-series basis")
            }
        }
    }
}

impl LadderSet for SWGenerators {
    fn basis(&self) -> &Basis {
        self.a.basis()
    }
    fn a(&self) -> &TruncatedOperator {
        &self.a
    }
    fn a_dag(&self) -> &TruncatedOperator {
        &self.a_dag
    }
    fn k0(&self) -> &TruncatedOperator {
        &self.k0
    }
    fn k_plus(&self) -> &TruncatedOperator {
        &self.k_plus
    }
    fn k_minus(&self) -> &TruncatedOperator {
        &self.k_minus
    }
}

pub fn build_sw_generators(cutoff: usize, idx: SWIndex) -> Result<SWGenerators> {
    if cutoff < 2 {
        return Err(Error::CutoffTooSmall {
            required: 2,
            got: cutoff,
        });
    }
    let basis = BasisTag::sw(cutoff);
    let (a, a_dag) = ladder_on(&basis);
    let half = C64::new(0.5, 0.0);
    let quarter = C64::new(0.25, 0.0);

    let number = (&a_dag * &a).with_grade_shift(Some(0));
    let k_minus = (&a * &a).scale(half);
    let k_plus = (&a_dag * &a_dag).scale(half);
    let k0 = number.scale(half).plus_identity(quarter);

    let w0 = (&k0 - &number.scale(half)).plus_identity(-quarter);
    let w_minus = &k_minus - &(&a * &a).scale(half);
    let w_plus = &k_plus - &(&a_dag * &a_dag).scale(half);

    let c = (idx.hbar / 2.0).sqrt();
    let q = (&a + &a_dag) * c;
    let p = (&a - &a_dag) * C64::new(0.0, -c);

    Ok(SWGenerators {
        idx,
        a,
        a_dag,
        k0,
        k_plus,
        k_minus,
        w0,
        w_plus,
        w_minus,
        q,
        p,
        number,
    })
}

/// `f_n(α, w) = √(n!) Σ_j α^(n−2j) (w/2)^j / ((n−2j)! j!)`.
pub fn f_poly(n: usize) -> BivarPoly<C64> {
    let root = factorial(n).sqrt();
    let mut out = BivarPoly::zero(Vars::AlphaW);
    for j in 0..=n / 2 {
        let denom = factorial(n - 2 * j) * factorial(j) * 2f64.powi(j as i32);
        out.add_term((n - 2 * j) as u32, j as u32, C64::new(root / denom, 0.0));
    }
    out
}

/// `f_n / √(n!)` with exact rational coefficients (valid for `n <= 33`).
pub fn f_poly_rational(n: usize) -> BivarPoly<Rational> {
    let fact = |m: usize| (1..=m as i128).product::<i128>();
    let mut out = BivarPoly::zero(Vars::AlphaW);
    for j in 0..=n / 2 {
        let denom = fact(n - 2 * j) * fact(j) * (1i128 << j);
        out.add_term((n - 2 * j) as u32, j as u32, Rational::new(1, denom));
    }
    out
}

/// `|exp(αz + wz²/2) − Σ_{n<terms} zⁿ f_n(α,w)/√(n!)|`.
pub fn generating_residual(z: C64, alpha: C64, w: C64, terms: usize) -> Result<f64> {
    if w.norm() >= 1.0 {
        return Err(Error::OutsideUnitDisk(w.norm()));
    }
    let exact = (alpha * z + w * z * z * 0.5).exp();
    let partial: C64 = (0..terms)
        .map(|n| z.powu(n as u32) * f_poly(n).eval(alpha, w) / factorial(n).sqrt())
        .sum();
    Ok((exact - partial).norm())
}

fn require_vars<C: Coeff>(f: &BivarPoly<C>, vars: Vars) -> Result<()> {
    if f.vars() != vars {
        return Err(Error::VariableMismatch {
            expected: vars.name(),
            got: f.vars().name(),
        });
    }
    Ok(())
}

/// `∂²f/∂α² − 2 ∂f/∂w`.
pub fn heat_pde_residual<C: Coeff>(f: &BivarPoly<C>) -> Result<BivarPoly<C>> {
    require_vars(f, Vars::AlphaW)?;
    Ok(&f.d_first().d_first() - &f.d_second().scale(&C::from_ratio(2, 1)))
}

/// Differential operators of the coherent-state model:
///
/// ```text
/// a  = ∂/∂α            a† = α + w ∂/∂α
/// K₋ = ∂/∂w            K₀ = 1/4 + (α/2) ∂/∂α + w ∂/∂w
/// K₊ = α²/2 + w/2 + αw ∂/∂α + w² ∂/∂w
/// ```
pub fn pi0_apply<C: Coeff>(x: Generator, f: &BivarPoly<C>) -> Result<BivarPoly<C>> {
    require_vars(f, Vars::AlphaW)?;
    let half = C::from_ratio(1, 2);
    Ok(match x {
        Generator::A => f.d_first(),
        Generator::ADag => &f.shift(1, 0) + &f.d_first().shift(0, 1),
        Generator::KMinus => f.d_second(),
        Generator::K0 => {
            let base = f.scale(&C::from_ratio(1, 4));
            let alpha = f.d_first().shift(1, 0).scale(&half);
            let w = f.d_second().shift(0, 1);
            &(&base + &alpha) + &w
        }
        Generator::KPlus => {
            let quad = &f.shift(2, 0).scale(&half) + &f.shift(0, 1).scale(&half);
            let mixed = f.d_first().shift(1, 1);
            let w = f.d_second().shift(0, 2);
            &(&quad + &mixed) + &w
        }
    })
}

/// `T₀(φ)(α, w) = Σ cₙ fₙ(α, w)` for `φ = Σ cₙ φₙ`.
pub fn t0_transform(state: &StateVector) -> Result<BivarPoly<C64>> {
    if !matches!(state.basis().kind(), BasisKind::Sw { .. }) {
        return Err(Error::BasisMismatch);
    }
    let mut out = BivarPoly::zero(Vars::AlphaW);
    for (n, c) in state.coeffs().iter().enumerate() {
        if *c != C64::new(0.0, 0.0) {
            out = &out + &f_poly(n).scale(c);
        }
    }
    Ok(out)
}

/// Expands a polynomial in the basis `{f_m}` by matching the `α^m w⁰`
/// coefficients, returning `(coefficients, relative residual)`.
fn expand_in_f_basis(g: &BivarPoly<C64>, max_degree: usize) -> (Vec<C64>, f64) {
    let mut coeffs = vec![C64::new(0.0, 0.0); max_degree + 1];
    let mut rebuilt = BivarPoly::zero(Vars::AlphaW);
    for (m, slot) in coeffs.iter_mut().enumerate() {
        let lead = g.coeff(m as u32, 0);
        if lead != C64::new(0.0, 0.0) {
            *slot = lead * factorial(m).sqrt();
            rebuilt = &rebuilt + &f_poly(m).scale(slot);
        }
    }
    let residual = (g - &rebuilt).max_abs() / g.max_abs().max(1.0);
    (coeffs, residual)
}

/// Matrix of `π̂₀(X)` over `{f_0..f_N}` against the Fock matrices, on the
/// columns whose image stays inside the window. Returns the maximal deviation
/// (including the expansion residual).
pub fn intertwine_check_sw(cutoff: usize) -> Result<f64> {
    if cutoff < 4 {
        return Err(Error::CutoffTooSmall {
            required: 4,
            got: cutoff,
        });
    }
    let gens = build_sw_generators(cutoff, SWIndex::unit())?;
    let mut worst = 0.0f64;
    for x in Generator::ALL {
        worst = worst.max(intertwine_deviation_sw(&gens, x)?);
    }
    Ok(worst)
}

pub(crate) fn intertwine_deviation_sw(gens: &SWGenerators, x: Generator) -> Result<f64> {
    let cutoff = gens.cutoff();
    let fock = gens.get(x);
    let mut worst = 0.0f64;
    for n in 0..=cutoff - 2 {
        let image = pi0_apply(x, &f_poly(n))?;
        let (column, residual) = expand_in_f_basis(&image, cutoff);
        worst = worst.max(residual);
        for (m, c) in column.iter().enumerate() {
            worst = worst.max((c - fock.entries()[[m, n]]).norm());
        }
    }
    Ok(worst)
}
