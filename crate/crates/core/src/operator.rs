//! Dense complex operators over graded, truncated bases.
//!
//! Every basis used in this crate is graded: a number state `φ_n` has grade
//! `n`, a discrete-series vector `φ_(n',n)` has grade `n' + 2n`. Raising and
//! lowering generators shift the grade by a fixed amount, so their truncated
//! exponentials are finite series whose retained entries coincide with the
//! entries of the untruncated operator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use ndarray::{Array1, Array2, Zip};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Label of a basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// Number state `φ_n` of the oscillator basis.
    Number(usize),
    /// Discrete-series vector `φ_(n',n) ∝ (a†)^n' (W₊)^n φ₀`.
    Pair { n_prime: usize, n: usize },
}

impl BasisLabel {
    pub fn grade(&self) -> usize {
        match *self {
            BasisLabel::Number(n) => n,
            BasisLabel::Pair { n_prime, n } => n_prime + 2 * n,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Number(n) => write!(f, "|{n}>"),
            BasisLabel::Pair { n_prime, n } => write!(f, "|{n_prime},{n}>"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum BasisKind {
    /// Oscillator (Schrödinger–Weil) basis `n = 0..=cutoff`.
    Sw { cutoff: usize },
    /// Discrete-series basis with weight `k`, pairs with `n' + 2n <= 2 * level`.
    Ds { k: f64, level: usize },
}

impl PartialEq for BasisKind {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (BasisKind::Sw { cutoff: a }, BasisKind::Sw { cutoff: b }) => a == b,
            (BasisKind::Ds { k: k1, level: l1 }, BasisKind::Ds { k: k2, level: l2 }) => {
                k1.to_bits() == k2.to_bits() && l1 == l2
            }
            _ => false,
        }
    }
}

/// An ordered, duplicate-free list of basis labels.
#[derive(Debug)]
pub struct BasisTag {
    kind: BasisKind,
    labels: Vec<BasisLabel>,
}

pub type Basis = Arc<BasisTag>;

impl PartialEq for BasisTag {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl BasisTag {
    pub fn sw(cutoff: usize) -> Basis {
        Arc::new(BasisTag {
            kind: BasisKind::Sw { cutoff },
            labels: (0..=cutoff).map(BasisLabel::Number).collect(),
        })
    }

    /// Pairs ordered by grade, then by ascending `n'`.
    pub fn ds(k: f64, level: usize) -> Basis {
        let mut labels = Vec::new();
        for grade in 0..=2 * level {
            for n_prime in (grade % 2..=grade).step_by(2) {
                labels.push(BasisLabel::Pair {
                    n_prime,
                    n: (grade - n_prime) / 2,
                });
            }
        }
        Arc::new(BasisTag {
            kind: BasisKind::Ds { k, level },
            labels,
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> BasisLabel {
        self.labels[index]
    }

    pub fn grade(&self, index: usize) -> usize {
        self.labels[index].grade()
    }

    pub fn max_grade(&self) -> usize {
        match self.kind {
            BasisKind::Sw { cutoff } => cutoff,
            BasisKind::Ds { level, .. } => 2 * level,
        }
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        match (self.kind, label) {
            (BasisKind::Sw { cutoff }, BasisLabel::Number(n)) => (n <= cutoff).then_some(n),
            (BasisKind::Ds { level, .. }, BasisLabel::Pair { n_prime, n }) => {
                let grade = n_prime + 2 * n;
                if grade > 2 * level {
                    return None;
                }
                // grades g < grade contribute floor(g/2) + 1 labels each
                let half = grade / 2;
                let offset = if grade % 2 == 0 {
                    half * (half + 1)
                } else {
                    (half + 1) * (half + 1)
                };
                Some(offset + (n_prime - grade % 2) / 2)
            }
            _ => None,
        }
    }

    pub fn require(&self, label: BasisLabel) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::LabelOutOfBasis(label.to_string()))
    }
}

fn same_basis(a: &Basis, b: &Basis) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Dense complex matrix over a truncated basis.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    basis: Basis,
    entries: Array2<C64>,
    grade_shift: Option<i64>,
}

impl TruncatedOperator {
    pub fn new(basis: Basis, entries: Array2<C64>, grade_shift: Option<i64>) -> Result<Self> {
        let dim = basis.dim();
        if entries.dim() != (dim, dim) {
            return Err(Error::BasisMismatch);
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        if let Some(shift) = grade_shift {
            for ((row, col), z) in entries.indexed_iter() {
                if *z != C64::new(0.0, 0.0)
                    && basis.grade(row) as i64 - basis.grade(col) as i64 != shift
                {
                    return Err(Error::InvalidConfig(format!(
                        "entry ({row},{col}) violates declared grade shift {shift}"
                    )));
                }
            }
        }
        Ok(TruncatedOperator {
            basis,
            entries,
            grade_shift,
        })
    }

    /// Builds an operator column by column: `image(label)` lists the
    /// `(target, amplitude)` pairs of the untruncated action on `label`.
    /// Targets outside the basis are dropped.
    pub fn from_action<F, I>(basis: &Basis, grade_shift: Option<i64>, image: F) -> Self
    where
        F: Fn(BasisLabel) -> I,
        I: IntoIterator<Item = (BasisLabel, C64)>,
    {
        let dim = basis.dim();
        let mut entries = Array2::zeros((dim, dim));
        for (col, &label) in basis.labels().iter().enumerate() {
            for (target, amp) in image(label) {
                if let Some(row) = basis.index_of(target) {
                    entries[[row, col]] += amp;
                }
            }
        }
        TruncatedOperator {
            basis: basis.clone(),
            entries,
            grade_shift,
        }
    }

    pub fn identity(basis: &Basis) -> Self {
        TruncatedOperator {
            basis: basis.clone(),
            entries: Array2::eye(basis.dim()),
            grade_shift: Some(0),
        }
    }

    pub fn zeros(basis: &Basis) -> Self {
        TruncatedOperator {
            basis: basis.clone(),
            entries: Array2::zeros((basis.dim(), basis.dim())),
            grade_shift: None,
        }
    }

    pub fn diagonal<F: Fn(BasisLabel) -> C64>(basis: &Basis, f: F) -> Self {
        let mut entries = Array2::zeros((basis.dim(), basis.dim()));
        for (i, &label) in basis.labels().iter().enumerate() {
            entries[[i, i]] = f(label);
        }
        TruncatedOperator {
            basis: basis.clone(),
            entries,
            grade_shift: Some(0),
        }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    pub fn grade_shift(&self) -> Option<i64> {
        self.grade_shift
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Matrix element `<row|A|col>`; zero when either label is outside the basis.
    pub fn element(&self, row: BasisLabel, col: BasisLabel) -> C64 {
        match (self.basis.index_of(row), self.basis.index_of(col)) {
            (Some(i), Some(j)) => self.entries[[i, j]],
            _ => C64::new(0.0, 0.0),
        }
    }

    pub fn with_grade_shift(mut self, grade_shift: Option<i64>) -> Self {
        self.grade_shift = grade_shift;
        self
    }

    pub fn dot(&self, other: &TruncatedOperator) -> Result<TruncatedOperator> {
        if !same_basis(&self.basis, &other.basis) {
            return Err(Error::BasisMismatch);
        }
        let grade_shift = match (self.grade_shift, other.grade_shift) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(TruncatedOperator {
            basis: self.basis.clone(),
            entries: self.entries.dot(&other.entries),
            grade_shift,
        })
    }

    pub fn pow(&self, exponent: u32) -> TruncatedOperator {
        let mut out = TruncatedOperator::identity(&self.basis);
        for _ in 0..exponent {
            out = out.dot(self).expect("same basis");
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> TruncatedOperator {
        TruncatedOperator {
            basis: self.basis.clone(),
            entries: self.entries.t().mapv(|z| z.conj()),
            grade_shift: self.grade_shift.map(|s| -s),
        }
    }

    pub fn scale(&self, factor: C64) -> TruncatedOperator {
        TruncatedOperator {
            basis: self.basis.clone(),
            entries: self.entries.mapv(|z| z * factor),
            grade_shift: self.grade_shift,
        }
    }

    /// `self + c·I`.
    pub fn plus_identity(&self, c: C64) -> TruncatedOperator {
        let mut out = self.clone();
        for i in 0..self.dim() {
            out.entries[[i, i]] += c;
        }
        if c != C64::new(0.0, 0.0) && self.grade_shift != Some(0) {
            out.grade_shift = None;
        }
        out
    }

    fn combine(&self, other: &TruncatedOperator, sign: f64) -> TruncatedOperator {
        assert!(
            same_basis(&self.basis, &other.basis),
            "operator arithmetic across different bases"
        );
        let grade_shift = if self.grade_shift == other.grade_shift {
            self.grade_shift
        } else {
            None
        };
        let mut entries = self.entries.clone();
        Zip::from(&mut entries)
            .and(&other.entries)
            .for_each(|x, &y| *x += y * sign);
        TruncatedOperator {
            basis: self.basis.clone(),
            entries,
            grade_shift,
        }
    }

    /// `exp(t·A)` for a strictly grade-changing (hence nilpotent) operator.
    ///
    /// The series is summed until a power vanishes identically, so the result
    /// is exact up to floating point: a raising chain from `col` to `row`
    /// only visits grades between the two.
    pub fn graded_exp(&self, t: C64) -> Result<TruncatedOperator> {
        match self.grade_shift {
            Some(s) if s != 0 => {}
            _ => return Err(Error::NotGraded),
        }
        let dim = self.dim();
        let zero = C64::new(0.0, 0.0);
        let nonzeros: Vec<(usize, usize, C64)> = self
            .entries
            .indexed_iter()
            .filter(|(_, z)| **z != zero)
            .map(|((r, c), z)| (r, c, *z))
            .collect();

        let mut result = Array2::<C64>::eye(dim);
        let mut term = Array2::<C64>::eye(dim);
        for j in 1..=dim + 1 {
            let factor = t / j as f64;
            let mut next = Array2::<C64>::zeros((dim, dim));
            for &(r, c, v) in &nonzeros {
                let coef = v * factor;
                let src = term.column(r).to_owned();
                let mut dst = next.column_mut(c);
                Zip::from(&mut dst)
                    .and(&src)
                    .for_each(|d, &s| *d += s * coef);
            }
            term = next;
            if term.iter().all(|z| *z == zero) {
                break;
            }
            result += &term;
        }
        TruncatedOperator::new(self.basis.clone(), result, None)
    }

    /// `exp(t·A)` for a diagonal operator.
    pub fn exp_diag(&self, t: C64) -> Result<TruncatedOperator> {
        let zero = C64::new(0.0, 0.0);
        if self
            .entries
            .indexed_iter()
            .any(|((r, c), z)| r != c && *z != zero)
        {
            return Err(Error::NotDiagonal);
        }
        let mut entries = Array2::zeros((self.dim(), self.dim()));
        for i in 0..self.dim() {
            entries[[i, i]] = (self.entries[[i, i]] * t).exp();
        }
        TruncatedOperator::new(self.basis.clone(), entries, Some(0))
    }

    /// General matrix exponential by scaling and squaring a Taylor series.
    pub fn expm_dense(&self, t: C64) -> Result<TruncatedOperator> {
        let scaled = self.entries.mapv(|z| z * t);
        if scaled
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let dim = self.dim();
        let norm = one_norm(&scaled);
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as i32
        } else {
            0
        };
        let x = scaled.mapv(|z| z / 2f64.powi(squarings));

        let mut sum = Array2::<C64>::eye(dim);
        let mut term = Array2::<C64>::eye(dim);
        for j in 1..=40 {
            term = term.dot(&x).mapv(|z| z / j as f64);
            sum += &term;
            if one_norm(&term) <= 1e-18 * one_norm(&sum) {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.dot(&sum);
        }
        TruncatedOperator::new(self.basis.clone(), sum, None)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &TruncatedOperator) -> Result<f64> {
        self.max_abs_diff_within(other, usize::MAX)
    }

    /// Largest entry difference over rows and columns of grade `<= max_grade`.
    pub fn max_abs_diff_within(&self, other: &TruncatedOperator, max_grade: usize) -> Result<f64> {
        if !same_basis(&self.basis, &other.basis) {
            return Err(Error::BasisMismatch);
        }
        let mut worst = 0.0f64;
        for ((r, c), z) in self.entries.indexed_iter() {
            if self.basis.grade(r) <= max_grade && self.basis.grade(c) <= max_grade {
                worst = worst.max((*z - other.entries[[r, c]]).norm());
            }
        }
        Ok(worst)
    }

    /// Largest deviation from `c·I` over the interior block of grade `<= max_grade`.
    pub fn scalar_deviation_within(&self, c: C64, max_grade: usize) -> f64 {
        self.max_abs_diff_within(
            &TruncatedOperator::identity(&self.basis).scale(c),
            max_grade,
        )
        .expect("same basis")
    }
}

fn one_norm(m: &Array2<C64>) -> f64 {
    m.columns()
        .into_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `AB − BA`.
pub fn commutator(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<TruncatedOperator> {
    let ab = a.dot(b)?;
    let ba = b.dot(a)?;
    Ok(ab.combine(&ba, -1.0))
}

// Arithmetic panics on basis mismatch, like ndarray does on shape mismatch.

impl Add<&TruncatedOperator> for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn add(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        self.combine(rhs, 1.0)
    }
}

impl Add<&TruncatedOperator> for TruncatedOperator {
    type Output = TruncatedOperator;
    fn add(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        self.combine(rhs, 1.0)
    }
}

impl Add<TruncatedOperator> for TruncatedOperator {
    type Output = TruncatedOperator;
    fn add(self, rhs: TruncatedOperator) -> TruncatedOperator {
        self.combine(&rhs, 1.0)
    }
}

impl Sub<&TruncatedOperator> for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn sub(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        self.combine(rhs, -1.0)
    }
}

impl Sub<&TruncatedOperator> for TruncatedOperator {
    type Output = TruncatedOperator;
    fn sub(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        self.combine(rhs, -1.0)
    }
}

impl Sub<TruncatedOperator> for TruncatedOperator {
    type Output = TruncatedOperator;
    fn sub(self, rhs: TruncatedOperator) -> TruncatedOperator {
        self.combine(&rhs, -1.0)
    }
}

impl Mul<&TruncatedOperator> for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn mul(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        self.dot(rhs)
            .expect("operator product across different bases")
    }
}

impl Mul<C64> for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn mul(self, rhs: C64) -> TruncatedOperator {
        self.scale(rhs)
    }
}

impl Mul<C64> for TruncatedOperator {
    type Output = TruncatedOperator;
    fn mul(self, rhs: C64) -> TruncatedOperator {
        self.scale(rhs)
    }
}

impl Mul<f64> for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn mul(self, rhs: f64) -> TruncatedOperator {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Mul<f64> for TruncatedOperator {
    type Output = TruncatedOperator;
    fn mul(self, rhs: f64) -> TruncatedOperator {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Neg for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn neg(self) -> TruncatedOperator {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Complex coefficient vector over a truncated basis.
///
/// `leakage` bounds the squared norm lost to truncation along the way.
#[derive(Debug, Clone)]
pub struct StateVector {
    basis: Basis,
    coeffs: Array1<C64>,
    leakage: f64,
}

impl StateVector {
    pub fn new(basis: Basis, coeffs: Array1<C64>, leakage: f64) -> Result<Self> {
        if coeffs.len() != basis.dim() {
            return Err(Error::BasisMismatch);
        }
        if !(leakage >= 0.0) {
            return Err(Error::InvalidConfig(format!("negative leakage {leakage}")));
        }
        Ok(StateVector {
            basis,
            coeffs,
            leakage,
        })
    }

    pub fn basis_state(basis: &Basis, label: BasisLabel) -> Result<Self> {
        let idx = basis.require(label)?;
        let mut coeffs = Array1::zeros(basis.dim());
        coeffs[idx] = C64::new(1.0, 0.0);
        Ok(StateVector {
            basis: basis.clone(),
            coeffs,
            leakage: 0.0,
        })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn coeffs(&self) -> &Array1<C64> {
        &self.coeffs
    }

    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn coeff(&self, label: BasisLabel) -> C64 {
        self.basis
            .index_of(label)
            .map_or(C64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Applies a (truncated) unitary. The squared norm that disappears is
    /// added to the leakage.
    pub fn apply(&self, op: &TruncatedOperator) -> Result<StateVector> {
        if !same_basis(&self.basis, op.basis()) {
            return Err(Error::BasisMismatch);
        }
        let coeffs = op.entries().dot(&self.coeffs);
        let before = self.norm_sqr();
        let after: f64 = coeffs.iter().map(|z| z.norm_sqr()).sum();
        Ok(StateVector {
            basis: self.basis.clone(),
            coeffs,
            leakage: self.leakage + (before - after).max(0.0),
        })
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if !same_basis(&self.basis, &other.basis) {
            return Err(Error::BasisMismatch);
        }
        Ok(self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `<ψ|A|ψ>`.
    pub fn expectation(&self, op: &TruncatedOperator) -> Result<C64> {
        if !same_basis(&self.basis, op.basis()) {
            return Err(Error::BasisMismatch);
        }
        let image = op.entries().dot(&self.coeffs);
        Ok(self
            .coeffs
            .iter()
            .zip(image.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}
