//! Displacement and squeeze operators, `T(α, w) = D(α) S(w)`, their closed
//! matrix elements, the transformed generators `T⁻¹ X T`, and an expectation
//! engine for normally ordered words.
//!
//! Every unitary is assembled from its disentangled factors
//!
//! ```text
//! D(α) = e^(−|α|²/2) exp(α a†) exp(−ᾱ a)
//! S(w) = exp(w K₊) exp(η K₀) exp(−w̄ K₋),   η = ln(1 − |w|²)
//! ```
//!
//! whose graded exponentials are entrywise exact on the truncated basis.

use crate::ds::{DSGenerators, DSWeight};
use crate::error::{Error, Result};
use crate::generators::LadderSet;
use crate::operator::{BasisLabel, StateVector, TruncatedOperator, C64};
use crate::special::{factorial, hyp2f1_terminating, laguerre, lambda_coeff};

/// Truncation leakage tolerated before any numeric comparison is trusted.
pub const LEAKAGE_BUDGET: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    pub alpha: C64,
    pub w: C64,
    /// `(1 − |w|²)^(−1/2)`
    pub r: f64,
    /// `ln(1 − |w|²)`
    pub eta: f64,
}

impl SqueezeParams {
    pub fn new(alpha: C64, w: C64) -> Result<Self> {
        check_disk(w)?;
        let one_minus = 1.0 - w.norm_sqr();
        Ok(SqueezeParams {
            alpha,
            w,
            r: one_minus.powf(-0.5),
            eta: one_minus.ln(),
        })
    }
}

fn check_disk(w: C64) -> Result<()> {
    if !(w.norm() < 1.0) {
        return Err(Error::OutsideUnitDisk(w.norm()));
    }
    Ok(())
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn displacement<L: LadderSet + ?Sized>(alpha: C64, gens: &L) -> Result<TruncatedOperator> {
    let raise = gens.a_dag().graded_exp(alpha)?;
    let lower = gens.a().graded_exp(-alpha.conj())?;
    Ok(raise
        .dot(&lower)?
        .scale(real((-alpha.norm_sqr() / 2.0).exp())))
}

fn disentangled(
    w: C64,
    plus: &TruncatedOperator,
    zero: &TruncatedOperator,
    minus: &TruncatedOperator,
) -> Result<TruncatedOperator> {
    check_disk(w)?;
    let eta = (1.0 - w.norm_sqr()).ln();
    let left = plus.graded_exp(w)?;
    let middle = zero.exp_diag(real(eta))?;
    let right = minus.graded_exp(-w.conj())?;
    left.dot(&middle)?.dot(&right)
}

pub fn squeeze<L: LadderSet + ?Sized>(w: C64, gens: &L) -> Result<TruncatedOperator> {
    disentangled(w, gens.k_plus(), gens.k0(), gens.k_minus())
}

/// The same disentangled product built from `W₊, W₀, W₋`, i.e. the squeeze
/// acting only on the `su(1,1)` factor of the discrete series.
pub fn squeeze_w_sector(w: C64, gens: &DSGenerators) -> Result<TruncatedOperator> {
    disentangled(w, &gens.w_plus, &gens.w0, &gens.w_minus)
}

pub fn squeezed_op<L: LadderSet + ?Sized>(
    params: &SqueezeParams,
    gens: &L,
) -> Result<TruncatedOperator> {
    displacement(params.alpha, gens)?.dot(&squeeze(params.w, gens)?)
}

/// `T(α, w) φ_label`; the returned leakage is `1 − ‖T φ‖²`.
pub fn squeezed_state<L: LadderSet + ?Sized>(
    params: &SqueezeParams,
    gens: &L,
    label: BasisLabel,
) -> Result<StateVector> {
    let start = StateVector::basis_state(gens.basis(), label)?;
    start.apply(&squeezed_op(params, gens)?)
}

/// Closed `⟨φ_(0,n')| S |φ_(0,n)⟩` for `n' >= n`:
/// `(λ_n / (λ_n' s!)) w^s (1 − |w|²)^h ₂F₁(−n, s + n + 2h; s + 1; |w|²)`, `s = n' − n`.
pub fn squeeze_me_closed(weight: DSWeight, n: usize, n_prime: usize, w: C64) -> Result<C64> {
    if n_prime < n {
        return Err(Error::IndexOrder { n, n_prime });
    }
    check_disk(w)?;
    let h = weight.h();
    let s = n_prime - n;
    let x = w.norm_sqr();
    let prefactor =
        lambda_coeff(weight.k(), n)? / (lambda_coeff(weight.k(), n_prime)? * factorial(s));
    let f = hyp2f1_terminating(n, s as f64 + n as f64 + 2.0 * h, s as f64 + 1.0, x)?;
    Ok(w.powu(s as u32) * (prefactor * (1.0 - x).powf(h) * f))
}

/// `⟨m| D(α) |n⟩` through the Laguerre form; `m < n` goes through
/// `⟨m|D(α)|n⟩ = conj(⟨n|D(−α)|m⟩)`.
pub fn displacement_me_closed(m: usize, n: usize, alpha: C64) -> C64 {
    if m < n {
        return displacement_me_closed(n, m, -alpha).conj();
    }
    let s = m - n;
    let ratio: f64 = (n + 1..=m).map(|j| 1.0 / j as f64).product();
    let x = alpha.norm_sqr();
    alpha.powu(s as u32) * (ratio.sqrt() * (-x / 2.0).exp() * laguerre(n, s, x))
}

/// `T⁻¹ X T` for `X ∈ {a, a†, K₀, K₊, K₋}`.
#[derive(Debug, Clone)]
pub struct TransformedGenerators {
    pub a_hat: TruncatedOperator,
    pub a_dag_hat: TruncatedOperator,
    pub k0_hat: TruncatedOperator,
    pub kp_hat: TruncatedOperator,
    pub km_hat: TruncatedOperator,
}

pub fn transformed_generators<L: LadderSet + ?Sized>(
    params: &SqueezeParams,
    gens: &L,
) -> TransformedGenerators {
    let SqueezeParams { alpha, w, r, .. } = *params;
    let r2 = real(r * r);
    let a = gens.a();
    let a_dag = gens.a_dag();

    let mix = a + &(a_dag * w);
    let a_hat = (&mix * r).plus_identity(alpha);

    let quad = &(gens.k_minus() + &(gens.k0() * (w * 2.0))) + &(gens.k_plus() * (w * w));
    let km_hat = (&(&quad * r2) + &(&mix * (alpha * r))).plus_identity(alpha * alpha * 0.5);

    let central = &(&(gens.k_minus() * w.conj()) + &(gens.k0() * (1.0 + w.norm_sqr())))
        + &(gens.k_plus() * w);
    let x = (a_dag + &(a * w.conj())) * alpha;
    let hermitian_part = (&x + &x.adjoint()) * (0.5 * r);
    let k0_hat = (&(&central * r2) + &hermitian_part).plus_identity(real(alpha.norm_sqr() / 2.0));

    TransformedGenerators {
        a_dag_hat: a_hat.adjoint(),
        kp_hat: km_hat.adjoint(),
        a_hat,
        k0_hat,
        km_hat,
    }
}

/// Squared norm that each column of `op` carries above grade `max_grade`.
///
/// `op` should be built on a basis larger than the one being assessed; since
/// the factored unitaries are entrywise exact, these tails are what a
/// truncation at `max_grade` discards.
pub fn column_tails(op: &TruncatedOperator, max_grade: usize) -> Vec<f64> {
    let basis = op.basis();
    (0..basis.dim())
        .map(|col| {
            (0..basis.dim())
                .filter(|&row| basis.grade(row) > max_grade)
                .map(|row| op.entries()[[row, col]].norm_sqr())
                .sum()
        })
        .collect()
}

/// Largest grade `g <= max_grade` such that every column of grade `<= g`
/// loses at most `budget` when cut at `max_grade`; `None` if grade 0 already
/// leaks more.
pub fn leakage_interior(op: &TruncatedOperator, max_grade: usize, budget: f64) -> Option<usize> {
    let basis = op.basis();
    let tails = column_tails(op, max_grade);
    let mut worst_at = vec![0.0f64; max_grade + 1];
    for (col, tail) in tails.iter().enumerate() {
        let g = basis.grade(col);
        if g <= max_grade {
            worst_at[g] = worst_at[g].max(*tail);
        }
    }
    worst_at
        .iter()
        .take_while(|t| **t <= budget)
        .count()
        .checked_sub(1)
}

/// `S(−w) D(−α) X D(α) S(w)` computed with truncated matrices.
pub fn conjugate_by_inverse<L: LadderSet + ?Sized>(
    params: &SqueezeParams,
    gens: &L,
    x: &TruncatedOperator,
) -> Result<TruncatedOperator> {
    let t = squeezed_op(params, gens)?;
    let t_inv = squeeze(-params.w, gens)?.dot(&displacement(-params.alpha, gens)?)?;
    t_inv.dot(x)?.dot(&t)
}

/// Exponents of the normally ordered word `a†ⁿ K₊^m K₀^s K₋^m' a^n'`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormalWord {
    pub a_dag: u32,
    pub k_plus: u32,
    pub k_zero: u32,
    pub k_minus: u32,
    pub a: u32,
}

impl NormalWord {
    pub fn identity() -> Self {
        NormalWord::default()
    }

    /// Largest grade increase the transformed word can produce.
    pub fn raise(&self) -> usize {
        (self.a_dag + self.a + 2 * (self.k_plus + self.k_zero + self.k_minus)) as usize
    }

    fn factors(&self) -> [(u32, usize); 5] {
        // rightmost factor first
        [
            (self.a, 0),
            (self.k_minus, 1),
            (self.k_zero, 2),
            (self.k_plus, 3),
            (self.a_dag, 4),
        ]
    }
}

fn apply_word(
    word: &NormalWord,
    ops: [&TruncatedOperator; 5],
    state: &StateVector,
) -> Result<StateVector> {
    let mut v = state.clone();
    for (power, slot) in word.factors() {
        for _ in 0..power {
            v = v.apply(ops[slot])?;
        }
    }
    Ok(v)
}

/// `⟨φ| Â |φ⟩` with `Â` the word in transformed generators, which equals
/// `⟨Tφ| A |Tφ⟩`. Exact as long as the word cannot push the state past the
/// top grade.
pub fn expectation_poly<L: LadderSet + ?Sized>(
    word: &NormalWord,
    params: &SqueezeParams,
    gens: &L,
    label: BasisLabel,
) -> Result<C64> {
    let transformed = transformed_generators(params, gens);
    expectation_with(word, &transformed, gens, label)
}

pub fn expectation_with<L: LadderSet + ?Sized>(
    word: &NormalWord,
    transformed: &TransformedGenerators,
    gens: &L,
    label: BasisLabel,
) -> Result<C64> {
    let basis = gens.basis();
    let required = label.grade() + word.raise();
    if required > basis.max_grade() {
        return Err(Error::CutoffBudget {
            required,
            max_grade: basis.max_grade(),
        });
    }
    let state = StateVector::basis_state(basis, label)?;
    let ops = [
        &transformed.a_hat,
        &transformed.km_hat,
        &transformed.k0_hat,
        &transformed.kp_hat,
        &transformed.a_dag_hat,
    ];
    let image = apply_word(word, ops, &state)?;
    Ok(image.coeff(label))
}

/// `⟨Tφ| A |Tφ⟩` with the untransformed word, together with the leakage of
/// `Tφ`.
pub fn expectation_direct<L: LadderSet + ?Sized>(
    word: &NormalWord,
    params: &SqueezeParams,
    gens: &L,
    label: BasisLabel,
) -> Result<(C64, f64)> {
    let psi = squeezed_state(params, gens, label)?;
    let ops = [
        gens.a(),
        gens.k_minus(),
        gens.k0(),
        gens.k_plus(),
        gens.a_dag(),
    ];
    let image = apply_word(word, ops, &psi)?;
    Ok((psi.inner(&image)?, psi.leakage()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ds::build_ds_generators;
    use crate::sw::{build_sw_generators, SWGenerators, SWIndex};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sw(cutoff: usize) -> SWGenerators {
        build_sw_generators(cutoff, SWIndex::unit()).unwrap()
    }

    fn pair(n_prime: usize, n: usize) -> BasisLabel {
        BasisLabel::Pair { n_prime, n }
    }

    #[test]
    fn params() {
        let p = SqueezeParams::new(c(1.0, 0.0), c(0.6, 0.0)).unwrap();
        assert!((p.r - 1.25).abs() < 1e-15);
        assert!((p.eta - 0.64f64.ln()).abs() < 1e-15);
        assert!(matches!(
            SqueezeParams::new(c(0.0, 0.0), c(0.0, 1.0)),
            Err(Error::OutsideUnitDisk(_))
        ));
    }

    #[test]
    fn trivial_parameters_give_identity() {
        let g = sw(10);
        let id = TruncatedOperator::identity(g.basis());
        assert_eq!(
            displacement(c(0.0, 0.0), &g)
                .unwrap()
                .max_abs_diff(&id)
                .unwrap(),
            0.0
        );
        assert_eq!(
            squeeze(c(0.0, 0.0), &g).unwrap().max_abs_diff(&id).unwrap(),
            0.0
        );
        let p = SqueezeParams::new(c(0.3, 0.2), c(0.0, 0.0)).unwrap();
        let d = displacement(p.alpha, &g).unwrap();
        assert_eq!(squeezed_op(&p, &g).unwrap().max_abs_diff(&d).unwrap(), 0.0);
    }

    #[test]
    fn vacuum_elements() {
        let g = sw(12);
        let alpha = c(0.8, -1.1);
        let d = displacement(alpha, &g).unwrap();
        let v = d.element(BasisLabel::Number(0), BasisLabel::Number(0));
        assert!((v.re - (-alpha.norm_sqr() / 2.0).exp()).abs() < 1e-15);
        let w = c(0.3, 0.4);
        let s = squeeze(w, &g).unwrap();
        let v = s.element(BasisLabel::Number(0), BasisLabel::Number(0));
        assert!((v - c(0.75f64.powf(0.25), 0.0)).norm() < 1e-15);
    }

    fn interior_for<F>(build: F, cutoff: usize) -> usize
    where
        F: Fn(&SWGenerators) -> TruncatedOperator,
    {
        leakage_interior(&build(&sw(2 * cutoff)), cutoff, LEAKAGE_BUDGET).unwrap()
    }

    #[test]
    fn leakage_interior_examples() {
        let g = sw(20);
        let id = TruncatedOperator::identity(g.basis());
        assert_eq!(leakage_interior(&id, 7, 0.0), Some(7));
        assert_eq!(column_tails(&id, 7)[..8].iter().sum::<f64>(), 0.0);
        let shift = &g.a_dag * &g.a_dag;
        assert_eq!(leakage_interior(&shift, 7, 1e-12), Some(5));
        assert_eq!(leakage_interior(&(&g.a_dag * 2.0), 0, 1.0), None);
    }

    #[test]
    fn displacement_matches_dense_exponential() {
        let g = sw(64);
        for alpha in [c(2.0, 0.0), c(-1.2, 1.6), c(0.3, -0.5)] {
            let interior = interior_for(|big| displacement(alpha, big).unwrap(), 64);
            assert!(interior >= 20, "{interior}");
            let gen = &(&g.a_dag * alpha) - &(&g.a * alpha.conj());
            let oracle = gen.expm_dense(c(1.0, 0.0)).unwrap();
            let d = displacement(alpha, &g).unwrap();
            let dev = d.max_abs_diff_within(&oracle, interior).unwrap();
            assert!(dev < 1e-9, "alpha={alpha}: {dev}");
        }
    }

    #[test]
    fn unitarity_interior() {
        let g = sw(64);
        let id = TruncatedOperator::identity(g.basis());
        for w in [c(0.6, 0.0), c(-0.3, 0.5), c(0.0, -0.6)] {
            let interior = interior_for(|big| squeeze(w, big).unwrap(), 64);
            let s = squeeze(w, &g).unwrap();
            let dev = (&s.adjoint() * &s)
                .max_abs_diff_within(&id, interior)
                .unwrap();
            assert!(dev < 1e-8, "w={w}: {dev}");
            let dev = (&s * &s.adjoint())
                .max_abs_diff_within(&id, interior)
                .unwrap();
            assert!(dev < 1e-8, "w={w}: {dev}");
            // no truncation enters the entries themselves
            let inv = squeeze(-w, &g).unwrap();
            assert!(s.adjoint().max_abs_diff_within(&inv, 32).unwrap() < 1e-9);
        }
        for alpha in [c(2.0, 0.0), c(1.2, -1.6)] {
            let interior = interior_for(|big| displacement(alpha, big).unwrap(), 64);
            let d = displacement(alpha, &g).unwrap();
            let dev = (&d.adjoint() * &d)
                .max_abs_diff_within(&id, interior)
                .unwrap();
            assert!(dev < 1e-8, "alpha={alpha}: {dev}");
        }
    }

    #[test]
    fn squeezed_vacuum_leakage() {
        let g = sw(128);
        let p = SqueezeParams::new(c(2.0, 0.0), c(0.0, 0.6)).unwrap();
        let psi = squeezed_state(&p, &g, BasisLabel::Number(0)).unwrap();
        assert!(psi.leakage() < LEAKAGE_BUDGET, "{}", psi.leakage());
    }

    #[test]
    fn closed_squeeze_examples() {
        let weight = DSWeight::new(3.0).unwrap();
        let h = weight.h();
        let w = c(0.3, -0.2);
        let x = w.norm_sqr();
        let v = squeeze_me_closed(weight, 0, 0, w).unwrap();
        assert!((v - c((1.0 - x).powf(h), 0.0)).norm() < 1e-15);
        let v = squeeze_me_closed(weight, 0, 2, w).unwrap();
        let expected = w * w * ((h * (2.0 * h + 1.0)).sqrt() * (1.0 - x).powf(h));
        assert!((v - expected).norm() < 1e-15);
        assert_eq!(
            squeeze_me_closed(weight, 2, 1, w).unwrap_err(),
            Error::IndexOrder { n: 2, n_prime: 1 }
        );
    }

    #[test]
    fn closed_squeeze_matches_w_sector() {
        for k in [2.0, 3.0, 4.25] {
            let weight = DSWeight::new(k).unwrap();
            let g = build_ds_generators(weight, 14).unwrap();
            for w in [c(0.3, 0.0), c(-0.2, 0.45), c(0.0, -0.6)] {
                let sw_sector = squeeze_w_sector(w, &g).unwrap();
                let full = squeeze(w, &g).unwrap();
                let metaplectic = (1.0 - w.norm_sqr()).powf(0.25);
                for n in 0..=6 {
                    for n_prime in n..=6 {
                        let closed = squeeze_me_closed(weight, n, n_prime, w).unwrap();
                        let oracle = sw_sector.element(pair(0, n_prime), pair(0, n));
                        assert!((closed - oracle).norm() < 1e-12, "k={k} n={n} n'={n_prime}");
                        let whole = full.element(pair(0, n_prime), pair(0, n));
                        assert!((closed * metaplectic - whole).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_displacement_examples() {
        let alpha = c(0.7, 0.4);
        let e = (-alpha.norm_sqr() / 2.0).exp();
        assert!((displacement_me_closed(0, 0, alpha) - c(e, 0.0)).norm() < 1e-15);
        assert!((displacement_me_closed(1, 0, alpha) - alpha * e).norm() < 1e-15);
        assert!((displacement_me_closed(0, 1, alpha) + alpha.conj() * e).norm() < 1e-15);
    }

    #[test]
    fn closed_displacement_matches_matrix() {
        let g = sw(40);
        for alpha in [c(1.0, 0.0), c(-1.3, 1.1), c(0.2, -1.9)] {
            let d = displacement(alpha, &g).unwrap();
            for m in 0..=10 {
                for n in 0..=10 {
                    let closed = displacement_me_closed(m, n, alpha);
                    let entry = d.element(BasisLabel::Number(m), BasisLabel::Number(n));
                    assert!((closed - entry).norm() < 1e-10, "<{m}|D|{n}>");
                }
            }
        }
    }

    #[test]
    fn transformed_trivial_cases() {
        let g = sw(10);
        let p = SqueezeParams::new(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let t = transformed_generators(&p, &g);
        assert_eq!(t.a_hat.max_abs_diff(&g.a).unwrap(), 0.0);
        assert_eq!(t.k0_hat.max_abs_diff(&g.k0).unwrap(), 0.0);
        let alpha = c(0.5, -0.25);
        let p = SqueezeParams::new(alpha, c(0.0, 0.0)).unwrap();
        let t = transformed_generators(&p, &g);
        assert_eq!(
            t.a_hat.max_abs_diff(&g.a.plus_identity(alpha)).unwrap(),
            0.0
        );
    }

    fn conjugation_deviation<L: LadderSet>(g: &L, p: &SqueezeParams, interior: usize) -> f64 {
        let t = transformed_generators(p, g);
        let pairs = [
            (g.a(), &t.a_hat),
            (g.a_dag(), &t.a_dag_hat),
            (g.k0(), &t.k0_hat),
            (g.k_plus(), &t.kp_hat),
            (g.k_minus(), &t.km_hat),
        ];
        pairs
            .iter()
            .map(|(x, closed)| {
                let oracle = conjugate_by_inverse(p, g, x).unwrap();
                closed.max_abs_diff_within(&oracle, interior).unwrap()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn transformed_match_conjugation() {
        let g = sw(96);
        for (alpha, w) in [(c(1.5, 0.0), c(0.5, 0.0)), (c(-0.6, 1.2), c(0.1, -0.45))] {
            let p = SqueezeParams::new(alpha, w).unwrap();
            let tails = interior_for(|big| squeezed_op(&p, big).unwrap(), 96);
            let interior = tails.saturating_sub(2);
            assert!(interior >= 4, "{interior}");
            let dev = conjugation_deviation(&g, &p, interior);
            assert!(dev < 1e-8, "{dev}");
        }
        let weight = DSWeight::new(2.5).unwrap();
        let ds = build_ds_generators(weight, 14).unwrap();
        let p = SqueezeParams::new(c(0.4, 0.3), c(-0.2, 0.25)).unwrap();
        let big = build_ds_generators(weight, 28).unwrap();
        let tails = leakage_interior(&squeezed_op(&p, &big).unwrap(), 28, LEAKAGE_BUDGET).unwrap();
        let dev = conjugation_deviation(&ds, &p, tails.saturating_sub(2));
        assert!(dev < 1e-8, "{dev}");
    }

    #[test]
    fn engine_examples() {
        let g = sw(16);
        let alpha = c(0.6, -0.8);
        let w = c(0.2, 0.3);
        let p = SqueezeParams::new(alpha, w).unwrap();
        let vac = BasisLabel::Number(0);
        let one = expectation_poly(&NormalWord::identity(), &p, &g, vac).unwrap();
        assert!((one - c(1.0, 0.0)).norm() < 1e-15);
        let number = NormalWord {
            a_dag: 1,
            a: 1,
            ..NormalWord::default()
        };
        let n = expectation_poly(&number, &p, &g, vac).unwrap();
        let expected = p.r * p.r * w.norm_sqr() + alpha.norm_sqr();
        assert!((n - c(expected, 0.0)).norm() < 1e-14);
        let p0 = SqueezeParams::new(c(0.0, 0.0), w).unwrap();
        let k0 = NormalWord {
            k_zero: 1,
            ..NormalWord::default()
        };
        let v = expectation_poly(&k0, &p0, &g, vac).unwrap();
        assert!((v.re - p0.r * p0.r * (1.0 + w.norm_sqr()) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn engine_budget() {
        let g = sw(6);
        let p = SqueezeParams::new(c(0.1, 0.0), c(0.1, 0.0)).unwrap();
        let word = NormalWord {
            k_plus: 1,
            k_minus: 1,
            ..NormalWord::default()
        };
        assert_eq!(
            expectation_poly(&word, &p, &g, BasisLabel::Number(3)).unwrap_err(),
            Error::CutoffBudget {
                required: 7,
                max_grade: 6
            }
        );
    }

    #[test]
    fn engine_matches_direct_sandwich() {
        let g = sw(96);
        let p = SqueezeParams::new(c(0.7, -0.4), c(-0.3, 0.25)).unwrap();
        let mut words = Vec::new();
        for e in 0..3u32 {
            for slot in 0..5 {
                let mut word = NormalWord::default();
                match slot {
                    0 => word.a_dag = e,
                    1 => word.k_plus = e,
                    2 => word.k_zero = e,
                    3 => word.k_minus = e,
                    _ => word.a = e,
                }
                words.push(word);
            }
        }
        words.push(NormalWord {
            a_dag: 2,
            k_plus: 1,
            k_zero: 1,
            k_minus: 1,
            a: 2,
        });
        for n in 0..=3 {
            let label = BasisLabel::Number(n);
            for word in &words {
                let engine = expectation_poly(word, &p, &g, label).unwrap();
                let (direct, leakage) = expectation_direct(word, &p, &g, label).unwrap();
                assert!(leakage < LEAKAGE_BUDGET);
                let scale = direct.norm().max(1.0);
                assert!((engine - direct).norm() < 1e-8 * scale, "{word:?} n={n}");
            }
        }
    }
}
