//! Quadrature covariances, the squeezing disk and Mandel's `Q` for the states
//! `T(α, w) φ`.
//!
//! With `n₀ = n + 1/2`, `r = (1 − |w|²)^(−1/2)` and `u± = r² |1 ± w|²`:
//!
//! ```text
//! σ_qq = n₀ ħ u₊     σ_pp = n₀ ħ u₋     σ_pq = 2 n₀ ħ r² Im w
//! ```
//!
//! For a discrete-series vector `φ_(n',n)` only the oscillator index `n'`
//! enters, because `q` and `p` commute with the `W` generators.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::LadderSet;
use crate::operator::{BasisLabel, C64};
use crate::squeeze::{
    expectation_with, squeezed_state, transformed_generators, NormalWord, SqueezeParams,
    TransformedGenerators, LEAKAGE_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceTriple {
    pub sigma_qq: f64,
    pub sigma_pp: f64,
    pub sigma_pq: f64,
    pub hbar: f64,
    pub n0: f64,
}

impl CovarianceTriple {
    /// `σ_qq σ_pp − σ_pq²`.
    pub fn determinant(&self) -> f64 {
        self.sigma_qq * self.sigma_pp - self.sigma_pq * self.sigma_pq
    }

    /// `σ_qq σ_pp − σ_pq² − n₀² ħ²`, zero for the closed forms.
    pub fn product_check(&self) -> f64 {
        self.determinant() - self.n0 * self.n0 * self.hbar * self.hbar
    }

    /// Slack in the Schrödinger inequality `σ_qq σ_pp >= σ_pq² + ħ²/4`.
    pub fn schrodinger_slack(&self) -> f64 {
        self.determinant() - self.hbar * self.hbar / 4.0
    }

    pub fn max_abs_diff(&self, other: &CovarianceTriple) -> f64 {
        (self.sigma_qq - other.sigma_qq)
            .abs()
            .max((self.sigma_pp - other.sigma_pp).abs())
            .max((self.sigma_pq - other.sigma_pq).abs())
    }
}

fn check_disk(w: C64) -> Result<()> {
    if !(w.norm() < 1.0) {
        return Err(Error::OutsideUnitDisk(w.norm()));
    }
    Ok(())
}

/// `(u₊, u₋, r²)`.
fn u_pair(w: C64) -> (f64, f64, f64) {
    let r2 = 1.0 / (1.0 - w.norm_sqr());
    let one = Complex64::new(1.0, 0.0);
    (r2 * (one + w).norm_sqr(), r2 * (one - w).norm_sqr(), r2)
}

pub fn covariance_closed(n: usize, w: C64, hbar: f64) -> Result<CovarianceTriple> {
    check_disk(w)?;
    let n0 = n as f64 + 0.5;
    let (u_plus, u_minus, r2) = u_pair(w);
    Ok(CovarianceTriple {
        sigma_qq: n0 * hbar * u_plus,
        sigma_pp: n0 * hbar * u_minus,
        sigma_pq: 2.0 * n0 * hbar * r2 * w.im,
        hbar,
        n0,
    })
}

/// Oscillator index carried by a basis label.
pub fn oscillator_index(label: BasisLabel) -> usize {
    match label {
        BasisLabel::Number(n) => n,
        BasisLabel::Pair { n_prime, .. } => n_prime,
    }
}

/// Covariances of `T(α, w) φ_label` from the truncated matrices
/// `q = √(ħ/2)(a + a†)`, `p = −i√(ħ/2)(a − a†)`.
pub fn covariance_numeric<L: LadderSet + ?Sized>(
    params: &SqueezeParams,
    gens: &L,
    label: BasisLabel,
    hbar: f64,
) -> Result<CovarianceTriple> {
    let psi = squeezed_state(params, gens, label)?;
    if psi.leakage() > LEAKAGE_BUDGET {
        return Err(Error::Leakage {
            leakage: psi.leakage(),
            budget: LEAKAGE_BUDGET,
        });
    }
    let c = (hbar / 2.0).sqrt();
    let q = (gens.a() + gens.a_dag()) * c;
    let p = (gens.a() - gens.a_dag()) * C64::new(0.0, -c);
    let q_psi = psi.apply(&q)?;
    let p_psi = psi.apply(&p)?;

    let mean_q = psi.inner(&q_psi)?.re;
    let mean_p = psi.inner(&p_psi)?.re;
    let qq = q_psi.norm_sqr();
    let pp = p_psi.norm_sqr();
    // ⟨qp + pq⟩ = 2 Re⟨qψ|pψ⟩ for Hermitian q, p
    let sym = 2.0 * q_psi.inner(&p_psi)?.re;
    Ok(CovarianceTriple {
        sigma_qq: qq - mean_q * mean_q,
        sigma_pp: pp - mean_p * mean_p,
        sigma_pq: sym / 2.0 - mean_q * mean_p,
        hbar,
        n0: oscillator_index(label) as f64 + 0.5,
    })
}

/// The open disk `|(2n₀ + 1) w + 2n₀| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeDisk {
    pub center: C64,
    pub radius: f64,
}

impl SqueezeDisk {
    pub fn contains(&self, w: C64) -> bool {
        (w - self.center).norm() < self.radius
    }

    /// `count` equally spaced points on the boundary circle.
    pub fn boundary(&self, count: usize) -> Vec<C64> {
        (0..count)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / count as f64;
                self.center + Complex64::from_polar(self.radius, theta)
            })
            .collect()
    }
}

pub fn squeezing_disk(n: usize) -> SqueezeDisk {
    let n0 = n as f64 + 0.5;
    SqueezeDisk {
        center: C64::new(-2.0 * n0 / (2.0 * n0 + 1.0), 0.0),
        radius: 1.0 / (2.0 * n0 + 1.0),
    }
}

/// `2 n₀ u₊`, which is `σ_qq / (ħ/2)`.
pub fn squeeze_ratio(n: usize, w: C64) -> Result<f64> {
    check_disk(w)?;
    Ok((2 * n + 1) as f64 * u_pair(w).0)
}

/// `2 n₀ u₊ < 1`.
pub fn is_squeezed(n: usize, w: C64) -> Result<bool> {
    Ok(squeeze_ratio(n, w)? < 1.0)
}

/// `⟨N⟩ = r² (n + |w|² (n + 1)) + |α|²`.
pub fn mean_number(alpha: C64, w: C64, n: usize) -> Result<f64> {
    check_disk(w)?;
    let r2 = 1.0 / (1.0 - w.norm_sqr());
    let nf = n as f64;
    Ok(r2 * (nf + w.norm_sqr() * (nf + 1.0)) + alpha.norm_sqr())
}

/// Mandel's `Q = ⟨(ΔN)²⟩/⟨N⟩ − 1` in closed form.
pub fn mandel_q_closed(alpha: C64, w: C64, n: usize) -> Result<f64> {
    if mean_number(alpha, w, n)? == 0.0 {
        return Err(Error::VacuumMandel);
    }
    let n0 = n as f64 + 0.5;
    let x = w.norm_sqr();
    let mix = (alpha * w.conj() + alpha.conj()).norm_sqr();
    let num = (4.0 * n0 * n0 + 3.0) * x + 4.0 * n0 * mix * (1.0 - x);
    let den = 2.0 * n0 * (1.0 - x * x) + (2.0 * alpha.norm_sqr() - 1.0) * (1.0 - x).powi(2);
    Ok(num / den - 1.0)
}

const NUMBER: NormalWord = NormalWord {
    a_dag: 1,
    k_plus: 0,
    k_zero: 0,
    k_minus: 0,
    a: 1,
};

const NUMBER_PAIR: NormalWord = NormalWord {
    a_dag: 2,
    k_plus: 0,
    k_zero: 0,
    k_minus: 0,
    a: 2,
};

/// `Q` from `⟨N⟩ = ⟨â†â⟩` and `⟨N²⟩ = ⟨â†²â²⟩ + ⟨â†â⟩` on the basis vector.
pub fn mandel_q_numeric<L: LadderSet + ?Sized>(
    params: &SqueezeParams,
    gens: &L,
    label: BasisLabel,
) -> Result<f64> {
    let transformed = transformed_generators(params, gens);
    mandel_q_with(&transformed, gens, label)
}

pub fn mandel_q_with<L: LadderSet + ?Sized>(
    transformed: &TransformedGenerators,
    gens: &L,
    label: BasisLabel,
) -> Result<f64> {
    let mean = expectation_with(&NUMBER, transformed, gens, label)?.re;
    if mean == 0.0 {
        return Err(Error::VacuumMandel);
    }
    let second = expectation_with(&NUMBER_PAIR, transformed, gens, label)?.re + mean;
    Ok((second - mean * mean) / mean - 1.0)
}

/// `|w|` at which `Q(0, w, n)` vanishes:
/// `|w|² = (√(16n₀⁴ + 24n₀² − 3) − 4n₀² − 1) / (2(2n₀ + 1))`.
pub fn mandel_zero_radius(n: usize) -> Result<f64> {
    let n0 = n as f64 + 0.5;
    let disc = 16.0 * n0.powi(4) + 24.0 * n0 * n0 - 3.0;
    if disc < 0.0 {
        return Err(Error::NoZeroLocus { n });
    }
    let x = (disc.sqrt() - 4.0 * n0 * n0 - 1.0) / (2.0 * (2.0 * n0 + 1.0));
    if x < 0.0 {
        return Err(Error::NoZeroLocus { n });
    }
    Ok(x.sqrt())
}

/// `Q(0, ·, n)` at the zero radius and on either side of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroLocusCheck {
    pub n: usize,
    pub radius: f64,
    pub q_at_radius: f64,
    pub q_inside: f64,
    pub q_outside: f64,
}

impl ZeroLocusCheck {
    pub fn sign_change(&self) -> bool {
        self.q_inside * self.q_outside < 0.0
    }
}

pub fn check_zero_locus(n: usize, delta: f64) -> Result<ZeroLocusCheck> {
    let radius = mandel_zero_radius(n)?;
    let q = |rho: f64| mandel_q_closed(C64::new(0.0, 0.0), C64::new(rho, 0.0), n);
    Ok(ZeroLocusCheck {
        n,
        radius,
        q_at_radius: q(radius)?,
        q_inside: q((radius - delta).max(0.0))?,
        q_outside: q(radius + delta)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ds::{build_ds_generators, DSWeight};
    use crate::sw::{build_sw_generators, SWIndex};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn closed_covariance_examples() {
        let hbar = 0.5;
        let t = covariance_closed(0, c(0.0, 0.0), hbar).unwrap();
        assert_eq!(
            (t.sigma_qq, t.sigma_pp, t.sigma_pq),
            (hbar / 2.0, hbar / 2.0, 0.0)
        );
        assert_eq!(
            covariance_closed(2, c(0.4, 0.0), hbar).unwrap().sigma_pq,
            0.0
        );
        for w in [c(0.3, 0.2), c(-0.7, 0.1), c(0.0, -0.9)] {
            let t = covariance_closed(0, w, hbar).unwrap();
            assert!(t.schrodinger_slack().abs() < 1e-12);
        }
        assert!(covariance_closed(0, c(1.0, 0.0), hbar).is_err());
    }

    #[test]
    fn disk_examples() {
        assert_eq!(
            squeezing_disk(0),
            SqueezeDisk {
                center: c(-0.5, 0.0),
                radius: 0.5
            }
        );
        assert_eq!(
            squeezing_disk(1),
            SqueezeDisk {
                center: c(-0.75, 0.0),
                radius: 0.25
            }
        );
        for n in 0..6 {
            assert!(!squeezing_disk(n).contains(c(0.0, 0.0)));
            assert!(!is_squeezed(n, c(0.0, 0.0)).unwrap());
        }
        assert!(is_squeezed(0, c(-0.5, 0.0)).unwrap());
        assert!(!is_squeezed(0, c(0.3, 0.0)).unwrap());
    }

    #[test]
    fn boundary_has_unit_ratio() {
        for n in 0..4 {
            for w in squeezing_disk(n).boundary(64) {
                if w.norm() < 1.0 - 1e-9 {
                    assert!(
                        (squeeze_ratio(n, w).unwrap() - 1.0).abs() < 1e-10,
                        "n={n} w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn predicate_matches_disk_on_grid() {
        for n in 0..4 {
            for i in 0..32 {
                for j in 0..32 {
                    let w = c(
                        -1.0 + (i as f64 + 0.5) / 16.0,
                        -1.0 + (j as f64 + 0.5) / 16.0,
                    );
                    if w.norm() >= 1.0 {
                        continue;
                    }
                    let sq = is_squeezed(n, w).unwrap();
                    assert_eq!(sq, squeezing_disk(n).contains(w), "n={n} w={w}");
                    let t = covariance_closed(n, w, 0.5).unwrap();
                    assert_eq!(sq, t.sigma_qq < 0.25);
                }
            }
        }
    }

    #[test]
    fn numeric_covariance_matches_closed() {
        let idx = SWIndex::unit();
        let g = build_sw_generators(128, idx).unwrap();
        for (alpha, w) in [
            (c(1.0, 1.0), c(0.0, 0.0)),
            (c(-2.0, 0.0), c(0.6, 0.0)),
            (c(0.3, 1.2), c(-0.2, 0.5)),
        ] {
            let p = SqueezeParams::new(alpha, w).unwrap();
            for n in 0..=3 {
                let closed = covariance_closed(n, w, idx.hbar).unwrap();
                let numeric = covariance_numeric(&p, &g, BasisLabel::Number(n), idx.hbar).unwrap();
                assert!(
                    closed.max_abs_diff(&numeric) < 1e-8,
                    "n={n} {closed:?} {numeric:?}"
                );
            }
        }
    }

    #[test]
    fn imaginary_w_balances_quadratures() {
        let t = covariance_closed(1, c(0.0, 0.45), 0.5).unwrap();
        assert!((t.sigma_qq - t.sigma_pp).abs() < 1e-15);
    }

    #[test]
    fn discrete_series_uses_oscillator_index() {
        let idx = SWIndex::unit();
        let g = build_ds_generators(DSWeight::new(3.0).unwrap(), 24).unwrap();
        let p = SqueezeParams::new(c(0.5, -0.3), c(0.2, -0.3)).unwrap();
        for (n_prime, n) in [(0, 0), (1, 0), (0, 2), (2, 1)] {
            let label = BasisLabel::Pair { n_prime, n };
            let numeric = covariance_numeric(&p, &g, label, idx.hbar).unwrap();
            let closed = covariance_closed(n_prime, p.w, idx.hbar).unwrap();
            assert!(closed.max_abs_diff(&numeric) < 1e-8, "({n_prime},{n})");
        }
    }

    #[test]
    fn mandel_examples() {
        assert!(mandel_q_closed(c(1.3, -0.4), c(0.0, 0.0), 0).unwrap().abs() < 1e-15);
        let s = 0.5f64.sqrt();
        for n in 1..5 {
            assert!(mandel_q_closed(c(0.0, s), c(0.0, 0.0), n).unwrap().abs() < 1e-15);
        }
        let q = mandel_q_closed(c(0.0, 0.0), c(0.5, 0.0), 0).unwrap();
        assert!((q - 5.0 / 3.0).abs() < 1e-14);
        assert_eq!(
            mandel_q_closed(c(0.0, 0.0), c(0.0, 0.0), 0),
            Err(Error::VacuumMandel)
        );
    }

    #[test]
    fn mandel_numeric_examples() {
        let g = build_sw_generators(32, SWIndex::unit()).unwrap();
        let coherent = SqueezeParams::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(
            mandel_q_numeric(&coherent, &g, BasisLabel::Number(0))
                .unwrap()
                .abs()
                < 1e-10
        );
        let number = SqueezeParams::new(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let q = mandel_q_numeric(&number, &g, BasisLabel::Number(2)).unwrap();
        assert!((q + 1.0).abs() < 1e-14);
        assert_eq!(
            mandel_q_numeric(&number, &g, BasisLabel::Number(0)),
            Err(Error::VacuumMandel)
        );
    }

    #[test]
    fn mandel_numeric_matches_closed() {
        let g = build_sw_generators(128, SWIndex::unit()).unwrap();
        for alpha in [c(2.0, 0.0), c(-0.7, 1.1), c(0.0, 0.3)] {
            for w in [c(0.6, 0.0), c(-0.25, 0.4), c(0.0, 0.0)] {
                let p = SqueezeParams::new(alpha, w).unwrap();
                for n in 0..=3 {
                    let closed = mandel_q_closed(alpha, w, n).unwrap();
                    let numeric = mandel_q_numeric(&p, &g, BasisLabel::Number(n)).unwrap();
                    assert!((closed - numeric).abs() < 1e-6, "a={alpha} w={w} n={n}");
                }
            }
        }
    }

    #[test]
    fn zero_radius_values() {
        assert_eq!(mandel_zero_radius(0).unwrap(), 0.0);
        for n in 1..=3 {
            let check = check_zero_locus(n, 1e-3).unwrap();
            assert!(check.radius > 0.0 && check.radius < 1.0);
            assert!(
                check.q_at_radius.abs() < 1e-10,
                "n={n}: {}",
                check.q_at_radius
            );
            assert!(check.sign_change());
        }
        // the radius collapses onto the vacuum for n = 0
        assert_eq!(check_zero_locus(0, 1e-3), Err(Error::VacuumMandel));
    }

    proptest! {
        #[test]
        fn uncertainty_identity(n in 0usize..6, rho in 0.0f64..0.9, theta in 0.0f64..6.3) {
            let t = covariance_closed(n, Complex64::from_polar(rho, theta), 0.5).unwrap();
            let scale = t.sigma_qq * t.sigma_pp;
            prop_assert!(t.product_check().abs() <= 1e-12 * scale.max(1.0));
        }

        #[test]
        fn mandel_phase_covariance(
            n in 0usize..4, ar in -2.0f64..2.0, ai in -2.0f64..2.0,
            rho in 0.0f64..0.6, phi in 0.0f64..6.3, theta in 0.0f64..6.3,
        ) {
            let alpha = c(ar, ai);
            let w = Complex64::from_polar(rho, phi);
            let rot = Complex64::from_polar(1.0, theta);
            if let Ok(q) = mandel_q_closed(alpha, w, n) {
                let turned = mandel_q_closed(alpha * rot, w * rot * rot, n).unwrap();
                prop_assert!((q - turned).abs() <= 1e-12 * q.abs().max(1.0));
            }
        }

        #[test]
        fn mandel_without_squeezing(n in 0usize..6, ar in -2.0f64..2.0, ai in -2.0f64..2.0) {
            let alpha = c(ar, ai);
            let x = alpha.norm_sqr();
            prop_assume!(n > 0 || x > 0.0);
            let q = mandel_q_closed(alpha, c(0.0, 0.0), n).unwrap();
            let nf = n as f64;
            prop_assert!((q - nf * (2.0 * x - 1.0) / (nf + x)).abs() < 1e-12);
        }
    }
}
