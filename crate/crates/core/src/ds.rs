//! Positive discrete series `π_k` on the two-index basis `φ_(n',n)`.
//!
//! In the holomorphic model the basis vectors are the normalized monomials
//! `f_(n'n)(z, ζ) = D_(n'n) z^n' ζ^n`, `D_(n'n) = (n! n'!)^(−1/2) ((k − 1/2)_n)^(1/2)`,
//! and the generators act by
//!
//! ```text
//! a  = ∂/∂z          a† = z
//! K₀ = k/2 + (z/2) ∂/∂z + ζ ∂/∂ζ
//! K₋ = ½ ∂²/∂z² + ∂/∂ζ
//! K₊ = z²/2 + (k − 1/2) ζ + ζ² ∂/∂ζ
//! ```

use crate::error::{Error, Result};
use crate::generators::{Generator, LadderSet};
use crate::operator::{Basis, BasisKind, BasisLabel, BasisTag, TruncatedOperator, C64};
use crate::poly::{BivarPoly, Vars};
use crate::special::{factorial, pochhammer, HalfWeight};

/// Weight `k > 1/2` of the discrete series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DSWeight {
    k: f64,
}

impl DSWeight {
    pub fn new(k: f64) -> Result<Self> {
        HalfWeight::new(k)?;
        Ok(DSWeight { k })
    }

    pub fn k(self) -> f64 {
        self.k
    }

    /// Lowest `W₀` eigenvalue `h = (2k − 1)/4`.
    pub fn h(self) -> f64 {
        (2.0 * self.k - 1.0) / 4.0
    }

    /// Whether the weight lies in the range `k > 3/2` where the model space
    /// carries a normalizable Gaussian measure.
    pub fn has_measure(self) -> bool {
        self.k > 1.5
    }

    /// `(k − 1/2)(k − 5/2)/4`.
    pub fn casimir_value(self) -> f64 {
        (self.k - 0.5) * (self.k - 2.5) / 4.0
    }
}

#[derive(Debug, Clone)]
pub struct DSGenerators {
    pub weight: DSWeight,
    pub a: TruncatedOperator,
    pub a_dag: TruncatedOperator,
    pub k0: TruncatedOperator,
    pub k_plus: TruncatedOperator,
    pub k_minus: TruncatedOperator,
    pub w0: TruncatedOperator,
    pub w_plus: TruncatedOperator,
    pub w_minus: TruncatedOperator,
}

impl DSGenerators {
    pub fn level(&self) -> usize {
        match self.a.basis().kind() {
            BasisKind::Ds { level, .. } => level,
            BasisKind::Sw { .. } => {
                unreachable!("discrete-series generators on an oscillator basis")
            }
        }
    }
}

impl LadderSet for DSGenerators {
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

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn build_ds_generators(weight: DSWeight, level: usize) -> Result<DSGenerators> {
    if level < 2 {
        return Err(Error::CutoffTooSmall {
            required: 2,
            got: level,
        });
    }
    let k = weight.k();
    let basis = BasisTag::ds(k, level);

    let a = TruncatedOperator::from_action(&basis, Some(-1), |label| match label {
        BasisLabel::Pair { n_prime, n } if n_prime > 0 => Some((
            BasisLabel::Pair {
                n_prime: n_prime - 1,
                n,
            },
            real((n_prime as f64).sqrt()),
        )),
        _ => None,
    });
    let k_minus = TruncatedOperator::from_action(&basis, Some(-2), |label| {
        let mut image = Vec::with_capacity(2);
        if let BasisLabel::Pair { n_prime, n } = label {
            if n_prime >= 2 {
                let amp = ((n_prime * (n_prime - 1)) as f64).sqrt() / 2.0;
                image.push((
                    BasisLabel::Pair {
                        n_prime: n_prime - 2,
                        n,
                    },
                    real(amp),
                ));
            }
            if n >= 1 {
                let nf = n as f64;
                image.push((
                    BasisLabel::Pair { n_prime, n: n - 1 },
                    real((nf * (k - 1.5 + nf)).sqrt()),
                ));
            }
        }
        image
    });
    let k0 = TruncatedOperator::diagonal(&basis, |label| match label {
        BasisLabel::Pair { n_prime, n } => real(k / 2.0 + n_prime as f64 / 2.0 + n as f64),
        BasisLabel::Number(_) => unreachable!(),
    });
    let a_dag = a.adjoint();
    let k_plus = k_minus.adjoint();

    let half = real(0.5);
    let number = (&a_dag * &a).with_grade_shift(Some(0));
    let w0 = (&k0 - &number.scale(half)).plus_identity(real(-0.25));
    let w_minus = &k_minus - &(&a * &a).scale(half);
    let w_plus = &k_plus - &(&a_dag * &a_dag).scale(half);

    Ok(DSGenerators {
        weight,
        a,
        a_dag,
        k0,
        k_plus,
        k_minus,
        w0,
        w_plus,
        w_minus,
    })
}

#[derive(Debug, Clone)]
pub struct CasimirReport {
    pub operator: TruncatedOperator,
    pub expected: f64,
    /// Largest deviation from `expected · I` on grades `<= 2D − 2`.
    pub deviation: f64,
}

/// `C = W₀² − (W₊W₋ + W₋W₊)/2` against `(k − 1/2)(k − 5/2)/4`.
pub fn ds_casimir(weight: DSWeight, level: usize) -> Result<CasimirReport> {
    if level < 3 {
        return Err(Error::CutoffTooSmall {
            required: 3,
            got: level,
        });
    }
    let g = build_ds_generators(weight, level)?;
    let sym = &(&g.w_plus * &g.w_minus) + &(&g.w_minus * &g.w_plus);
    let operator = &(&g.w0 * &g.w0) - &sym.scale(real(0.5));
    let expected = weight.casimir_value();
    let deviation = operator.scalar_deviation_within(real(expected), 2 * level - 2);
    Ok(CasimirReport {
        operator,
        expected,
        deviation,
    })
}

/// `D_(n'n) = (n! n'!)^(−1/2) ((k − 1/2)_n)^(1/2)`.
pub fn ds_norm(weight: DSWeight, n_prime: usize, n: usize) -> f64 {
    (pochhammer(weight.k() - 0.5, n) / (factorial(n) * factorial(n_prime))).sqrt()
}

pub fn ds_poly(weight: DSWeight, n_prime: usize, n: usize) -> BivarPoly<C64> {
    BivarPoly::monomial(
        Vars::ZZeta,
        n_prime as u32,
        n as u32,
        real(ds_norm(weight, n_prime, n)),
    )
}

pub fn sigma_k_apply(weight: DSWeight, x: Generator, f: &BivarPoly<C64>) -> Result<BivarPoly<C64>> {
    if f.vars() != Vars::ZZeta {
        return Err(Error::VariableMismatch {
            expected: Vars::ZZeta.name(),
            got: f.vars().name(),
        });
    }
    let k = weight.k();
    let half = real(0.5);
    Ok(match x {
        Generator::A => f.d_first(),
        Generator::ADag => f.shift(1, 0),
        Generator::K0 => {
            let base = f.scale(&real(k / 2.0));
            &(&base + &f.d_first().shift(1, 0).scale(&half)) + &f.d_second().shift(0, 1)
        }
        Generator::KMinus => &f.d_first().d_first().scale(&half) + &f.d_second(),
        Generator::KPlus => {
            let quad = &f.shift(2, 0).scale(&half) + &f.shift(0, 1).scale(&real(k - 0.5));
            &quad + &f.d_second().shift(0, 2)
        }
    })
}

/// Matrix of `σ_k(X)` over the normalized monomials against the generator
/// matrices, on columns of grade `<= 2D − 2`.
pub fn intertwine_check_ds(weight: DSWeight, level: usize) -> Result<f64> {
    let gens = build_ds_generators(weight, level)?;
    let mut worst = 0.0f64;
    for x in Generator::ALL {
        worst = worst.max(intertwine_deviation_ds(&gens, x)?);
    }
    Ok(worst)
}

pub(crate) fn intertwine_deviation_ds(gens: &DSGenerators, x: Generator) -> Result<f64> {
    let basis = gens.basis();
    let matrix = gens.get(x);
    let weight = gens.weight;
    let mut worst = 0.0f64;
    for (col, label) in basis.labels().iter().enumerate() {
        if label.grade() + 2 > basis.max_grade() {
            continue;
        }
        let BasisLabel::Pair { n_prime, n } = *label else {
            unreachable!()
        };
        let image = sigma_k_apply(weight, x, &ds_poly(weight, n_prime, n))?;
        let mut column = vec![C64::new(0.0, 0.0); basis.dim()];
        for ((i, j), c) in image.terms() {
            let target = BasisLabel::Pair {
                n_prime: i as usize,
                n: j as usize,
            };
            let row = basis.require(target)?;
            column[row] = c / ds_norm(weight, i as usize, j as usize);
        }
        for (row, c) in column.iter().enumerate() {
            worst = worst.max((c - matrix.entries()[[row, col]]).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{commutator, StateVector};

    const WEIGHTS: [f64; 4] = [1.7, 2.5, 3.0, 4.25];

    fn gens(k: f64, level: usize) -> DSGenerators {
        build_ds_generators(DSWeight::new(k).unwrap(), level).unwrap()
    }

    fn pair(n_prime: usize, n: usize) -> BasisLabel {
        BasisLabel::Pair { n_prime, n }
    }

    #[test]
    fn weight_validation() {
        assert_eq!(DSWeight::new(0.5).unwrap_err(), Error::InvalidWeight(0.5));
        assert!(DSWeight::new(0.51).is_ok());
        assert!(!DSWeight::new(1.2).unwrap().has_measure());
        assert_eq!(DSWeight::new(2.5).unwrap().casimir_value(), 0.0);
        assert_eq!(DSWeight::new(3.0).unwrap().casimir_value(), 0.3125);
    }

    #[test]
    fn lowest_weight_vector() {
        let k = 3.0;
        let g = gens(k, 4);
        let vac = StateVector::basis_state(g.basis(), pair(0, 0)).unwrap();
        assert_eq!(vac.apply(&g.a).unwrap().norm_sqr(), 0.0);
        assert_eq!(vac.apply(&g.k_minus).unwrap().norm_sqr(), 0.0);
        let two_k0 = vac.apply(&g.k0.scale(real(2.0))).unwrap();
        assert_eq!(two_k0.coeff(pair(0, 0)), real(k));
    }

    #[test]
    fn documented_entries() {
        let k = 1.7;
        let g = gens(k, 4);
        assert!((g.k_minus.element(pair(0, 0), pair(0, 1)).re - (k - 0.5f64).sqrt()).abs() < 1e-15);
        assert!((g.a.element(pair(1, 0), pair(2, 0)).re - 2f64.sqrt()).abs() < 1e-15);
        assert!((g.a_dag.element(pair(3, 1), pair(2, 1)).re - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn spectrum_of_two_k0() {
        let k = 4.25;
        let g = gens(k, 5);
        for (i, label) in g.basis().labels().iter().enumerate() {
            assert_eq!(g.k0.entries()[[i, i]].re * 2.0, k + label.grade() as f64);
        }
    }

    #[test]
    fn algebra_relations_on_interior() {
        let level = 10;
        let interior = 2 * level - 2;
        let one = real(1.0);
        let zero = real(0.0);
        for k in WEIGHTS {
            let g = gens(k, level);
            let c = |x: &TruncatedOperator, y: &TruncatedOperator| commutator(x, y).unwrap();
            let within = |x: &TruncatedOperator, y: &TruncatedOperator| {
                x.max_abs_diff_within(y, interior).unwrap()
            };
            assert!(c(&g.a, &g.a_dag).scalar_deviation_within(one, interior) < 1e-12);
            assert!(within(&c(&g.k0, &g.k_plus), &g.k_plus) < 1e-12);
            assert!(within(&c(&g.k0, &g.k_minus), &(-&g.k_minus)) < 1e-12);
            assert!(within(&c(&g.k_minus, &g.k_plus), &g.k0.scale(real(2.0))) < 1e-12);
            assert!(within(&c(&g.a, &g.k_plus), &g.a_dag) < 1e-12);
            assert!(c(&g.k_minus, &g.a).scalar_deviation_within(zero, interior) < 1e-12);
            for w in [&g.w0, &g.w_plus, &g.w_minus] {
                assert!(c(&g.a, w).scalar_deviation_within(zero, interior) < 1e-12);
                assert!(c(&g.a_dag, w).scalar_deviation_within(zero, interior) < 1e-12);
            }
            assert!(within(&c(&g.w0, &g.w_plus), &g.w_plus) < 1e-12);
            assert!(within(&c(&g.w0, &g.w_minus), &(-&g.w_minus)) < 1e-12);
            assert!(within(&c(&g.w_minus, &g.w_plus), &g.w0.scale(real(2.0))) < 1e-12);
        }
    }

    #[test]
    fn casimir_is_scalar() {
        for k in WEIGHTS {
            let report = ds_casimir(DSWeight::new(k).unwrap(), 10).unwrap();
            assert!(report.deviation < 1e-10, "k={k}: {}", report.deviation);
        }
        let zero = ds_casimir(DSWeight::new(2.5).unwrap(), 10).unwrap();
        assert_eq!(zero.expected, 0.0);
        assert!(zero.deviation < 1e-12);
        assert!(ds_casimir(DSWeight::new(3.0).unwrap(), 2).is_err());
    }

    #[test]
    fn monomials() {
        let w = DSWeight::new(3.0).unwrap();
        assert_eq!(
            ds_poly(w, 0, 0),
            BivarPoly::constant(Vars::ZZeta, real(1.0))
        );
        assert_eq!(
            ds_poly(w, 1, 0),
            BivarPoly::monomial(Vars::ZZeta, 1, 0, real(1.0))
        );
        let p = ds_poly(w, 0, 1);
        assert!((p.coeff(0, 1).re - 2.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn model_action_examples() {
        let w = DSWeight::new(3.0).unwrap();
        let one = ds_poly(w, 0, 0);
        assert_eq!(
            sigma_k_apply(w, Generator::K0, &one).unwrap(),
            one.scale(&real(1.5))
        );
        let kp = sigma_k_apply(w, Generator::KPlus, &one).unwrap();
        assert_eq!(kp.coeff(2, 0), real(0.5));
        assert_eq!(kp.coeff(0, 1), real(2.5));
        let wrong = BivarPoly::<C64>::zero(Vars::AlphaW);
        assert!(sigma_k_apply(w, Generator::A, &wrong).is_err());
    }

    #[test]
    fn model_intertwines_matrices() {
        for k in WEIGHTS {
            let d = intertwine_check_ds(DSWeight::new(k).unwrap(), 8).unwrap();
            assert!(d < 1e-12, "k={k}: {d}");
        }
    }
}
