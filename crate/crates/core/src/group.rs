//! The Jacobi group as 4×4 real matrices, its Lie algebra, and its action on
//! `ℂ × ℍ` with automorphy factor.
//!
//! Group multiplication is the matrix product of the embedding; there is no
//! separate composition formula.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Mat4<T> = [[T; 4]; 4];

const DET_TOL: f64 = 1e-12;

fn mat4_mul<T>(a: &Mat4<T>, b: &Mat4<T>) -> Mat4<T>
where
    T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
{
    let mut out = [[T::default(); 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = (0..4).fold(T::default(), |acc, l| acc + a[i][l] * b[l][j]);
        }
    }
    out
}

fn mat4_sub<T>(a: &Mat4<T>, b: &Mat4<T>) -> Mat4<T>
where
    T: Copy + Default + std::ops::Sub<Output = T>,
{
    let mut out = [[T::default(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i][j] - b[i][j];
        }
    }
    out
}

/// `g = ((λ, μ, κ), M)` with `M = [[a, b], [c, d]] ∈ SL(2, ℝ)`.
///
/// `mu_h` is the Heisenberg coordinate, not the index-dependent `μ = 2πm`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub lambda: f64,
    pub mu_h: f64,
    pub kappa: f64,
    pub m: [[f64; 2]; 2],
}

impl GroupElement {
    pub fn new(lambda: f64, mu_h: f64, kappa: f64, m: [[f64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if (det - 1.0).abs() > DET_TOL || !det.is_finite() {
            return Err(Error::Determinant(det));
        }
        Ok(GroupElement {
            lambda,
            mu_h,
            kappa,
            m,
        })
    }

    pub fn identity() -> Self {
        GroupElement {
            lambda: 0.0,
            mu_h: 0.0,
            kappa: 0.0,
            m: [[1.0, 0.0], [0.0, 1.0]],
        }
    }

    /// Central element `(0, 0, κ)`.
    pub fn central(kappa: f64) -> Self {
        GroupElement {
            kappa,
            ..GroupElement::identity()
        }
    }

    pub fn embed(&self) -> Mat4<f64> {
        let [[a, b], [c, d]] = self.m;
        let (l, mu) = (self.lambda, self.mu_h);
        [
            [a, 0.0, b, a * mu - b * l],
            [l, 1.0, mu, self.kappa],
            [c, 0.0, d, c * mu - d * l],
            [0.0, 0.0, 0.0, 1.0],
        ]
    }

    /// Reads an element back from its embedding, checking the shape.
    pub fn from_matrix(g: &Mat4<f64>) -> Result<Self> {
        let m = [[g[0][0], g[0][2]], [g[2][0], g[2][2]]];
        let el = GroupElement::new(g[1][0], g[1][2], g[1][3], m)?;
        let scale = g.iter().flatten().fold(1.0f64, |acc, x| acc.max(x.abs()));
        let back = el.embed();
        for i in 0..4 {
            for j in 0..4 {
                if (back[i][j] - g[i][j]).abs() > 1e-12 * scale {
                    return Err(Error::NotJacobiMatrix);
                }
            }
        }
        Ok(el)
    }

    /// `self ∘ other`, i.e. the element whose embedding is `embed(self) · embed(other)`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        GroupElement::from_matrix(&mat4_mul(&self.embed(), &other.embed()))
    }

    pub fn inverse(&self) -> GroupElement {
        let [[a, b], [c, d]] = self.m;
        GroupElement {
            lambda: c * self.mu_h - d * self.lambda,
            mu_h: b * self.lambda - a * self.mu_h,
            kappa: -self.kappa,
            m: [[d, -b], [-c, a]],
        }
    }
}

/// Basis of the Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraGenerator {
    P,
    Q,
    R,
    F,
    G,
    H,
}

impl AlgebraGenerator {
    pub const ALL: [AlgebraGenerator; 6] = [
        AlgebraGenerator::P,
        AlgebraGenerator::Q,
        AlgebraGenerator::R,
        AlgebraGenerator::F,
        AlgebraGenerator::G,
        AlgebraGenerator::H,
    ];

    fn position(self) -> usize {
        self as usize
    }

    /// Integer matrix from the Kronecker-delta definitions (1-based indices).
    pub fn matrix(self) -> Mat4<i64> {
        let mut m = [[0i64; 4]; 4];
        let mut set = |i: usize, j: usize, v: i64| m[i - 1][j - 1] += v;
        match self {
            AlgebraGenerator::F => set(1, 3, 1),
            AlgebraGenerator::G => set(3, 1, 1),
            AlgebraGenerator::H => {
                set(1, 1, 1);
                set(3, 3, -1);
            }
            AlgebraGenerator::P => {
                set(2, 1, 1);
                set(3, 4, -1);
            }
            AlgebraGenerator::Q => {
                set(1, 4, 1);
                set(2, 3, 1);
            }
            AlgebraGenerator::R => set(2, 4, 1),
        }
        m
    }
}

impl fmt::Display for AlgebraGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Real linear combination of `P, Q, R, F, G, H`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AlgebraElement {
    pub coefficients: [f64; 6],
}

impl AlgebraElement {
    pub fn basis(generator: AlgebraGenerator) -> Self {
        let mut coefficients = [0.0; 6];
        coefficients[generator.position()] = 1.0;
        AlgebraElement { coefficients }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        AlgebraElement {
            coefficients: self.coefficients.map(|c| c * factor),
        }
    }

    pub fn coefficient(&self, generator: AlgebraGenerator) -> f64 {
        self.coefficients[generator.position()]
    }

    pub fn matrix(&self) -> Mat4<f64> {
        let mut out = [[0.0; 4]; 4];
        for g in AlgebraGenerator::ALL {
            let c = self.coefficient(g);
            let m = g.matrix();
            for i in 0..4 {
                for j in 0..4 {
                    out[i][j] += c * m[i][j] as f64;
                }
            }
        }
        out
    }

    /// Coefficients of `[self, other]`, using the structure constants.
    pub fn bracket(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::default();
        for x in AlgebraGenerator::ALL {
            for y in AlgebraGenerator::ALL {
                let cxy = self.coefficient(x) * other.coefficient(y);
                if cxy == 0.0 {
                    continue;
                }
                for (z, c) in expected_bracket(x, y) {
                    out.coefficients[z.position()] += cxy * c as f64;
                }
            }
        }
        out
    }
}

pub fn algebra_basis() -> [AlgebraElement; 6] {
    AlgebraGenerator::ALL.map(AlgebraElement::basis)
}

/// Structure constants: `[P,Q]=2R, [F,G]=H, [H,F]=2F, [G,H]=2G, [P,F]=Q,
/// [Q,G]=P, [P,H]=P, [H,Q]=Q`, all others zero.
pub fn expected_bracket(x: AlgebraGenerator, y: AlgebraGenerator) -> Vec<(AlgebraGenerator, i64)> {
    use AlgebraGenerator::*;
    let table: [(AlgebraGenerator, AlgebraGenerator, AlgebraGenerator, i64); 8] = [
        (P, Q, R, 2),
        (F, G, H, 1),
        (H, F, F, 2),
        (G, H, G, 2),
        (P, F, Q, 1),
        (Q, G, P, 1),
        (P, H, P, 1),
        (H, Q, Q, 1),
    ];
    for (a, b, z, c) in table {
        if (a, b) == (x, y) {
            return vec![(z, c)];
        }
        if (b, a) == (x, y) {
            return vec![(z, -c)];
        }
    }
    Vec::new()
}

#[derive(Debug, Clone)]
pub struct BracketCheck {
    pub left: AlgebraGenerator,
    pub right: AlgebraGenerator,
    pub deviation: i64,
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub pairs: Vec<BracketCheck>,
    pub max_deviation: i64,
}

/// Evaluates all 15 brackets of the basis matrices in integer arithmetic.
pub fn check_structure_constants() -> StructureReport {
    let mut pairs = Vec::new();
    for (i, &x) in AlgebraGenerator::ALL.iter().enumerate() {
        for &y in &AlgebraGenerator::ALL[i + 1..] {
            let (mx, my) = (x.matrix(), y.matrix());
            let comm = mat4_sub(&mat4_mul(&mx, &my), &mat4_mul(&my, &mx));
            let mut expected = [[0i64; 4]; 4];
            for (z, c) in expected_bracket(x, y) {
                let mz = z.matrix();
                for r in 0..4 {
                    for s in 0..4 {
                        expected[r][s] += c * mz[r][s];
                    }
                }
            }
            let deviation = mat4_sub(&comm, &expected)
                .iter()
                .flatten()
                .map(|v| v.abs())
                .max()
                .unwrap_or(0);
            pairs.push(BracketCheck {
                left: x,
                right: y,
                deviation,
            });
        }
    }
    let max_deviation = pairs.iter().map(|p| p.deviation).max().unwrap_or(0);
    StructureReport {
        pairs,
        max_deviation,
    }
}

/// A point `(z, τ)` of `ℂ × ℍ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCH {
    pub z: Complex64,
    pub tau: Complex64,
}

impl PointCH {
    pub fn new(z: Complex64, tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::NotInUpperHalfPlane(tau.im));
        }
        Ok(PointCH { z, tau })
    }
}

/// Action `(z, τ) ↦ (z_g, τ_g)` together with the automorphy factor
/// `(cτ+d)^(−k) exp(2πi m (κ + θ))`.
///
/// Non-integer `k` uses the principal branch of the power. The action is a
/// left action: `g₁·(g₂·p) = (g₁∘g₂)·p`.
pub fn jacobi_action(
    g: &GroupElement,
    p: &PointCH,
    m: f64,
    k: f64,
) -> Result<(PointCH, Complex64)> {
    if !(p.tau.im > 0.0) {
        return Err(Error::NotInUpperHalfPlane(p.tau.im));
    }
    let [[a, b], [c, d]] = g.m;
    let j = p.tau * c + d;
    let z_g = (p.z + p.tau * g.lambda + g.mu_h) / j;
    let tau_g = (p.tau * a + b) / j;
    let theta = p.z * g.lambda + (z_g * g.lambda - z_g * z_g * c) * j;
    let phase = Complex64::new(0.0, 2.0 * PI * m) * (theta + g.kappa);
    let factor = j.powf(-k) * phase.exp();
    Ok((PointCH { z: z_g, tau: tau_g }, factor))
}
