//! Names for the complexified generators and the bundle interface shared by
//! the oscillator and discrete-series realizations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{AlgebraElement, AlgebraGenerator};
use crate::operator::{Basis, TruncatedOperator, C64};
use crate::sw::SWIndex;

/// `a, a†, K₀, K₊, K₋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    A,
    ADag,
    K0,
    KPlus,
    KMinus,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::A,
        Generator::ADag,
        Generator::K0,
        Generator::KPlus,
        Generator::KMinus,
    ];
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Generator::A),
            "a_dag" | "a+" | "a†" => Ok(Generator::ADag),
            "K0" | "k0" => Ok(Generator::K0),
            "K+" | "k_plus" | "K_plus" => Ok(Generator::KPlus),
            "K-" | "k_minus" | "K_minus" => Ok(Generator::KMinus),
            other => Err(Error::UnknownGenerator(other.to_string())),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::A => "a",
            Generator::ADag => "a_dag",
            Generator::K0 => "K0",
            Generator::KPlus => "K+",
            Generator::KMinus => "K-",
        };
        f.write_str(s)
    }
}

/// A truncated realization of `a, a†, K₀, K₊, K₋` on some graded basis.
pub trait LadderSet {
    fn basis(&self) -> &Basis;
    fn a(&self) -> &TruncatedOperator;
    fn a_dag(&self) -> &TruncatedOperator;
    fn k0(&self) -> &TruncatedOperator;
    fn k_plus(&self) -> &TruncatedOperator;
    fn k_minus(&self) -> &TruncatedOperator;

    fn get(&self, generator: Generator) -> &TruncatedOperator {
        match generator {
            Generator::A => self.a(),
            Generator::ADag => self.a_dag(),
            Generator::K0 => self.k0(),
            Generator::KPlus => self.k_plus(),
            Generator::KMinus => self.k_minus(),
        }
    }

    /// Largest raise in grade any single generator can produce.
    fn max_raise(&self) -> usize {
        2
    }
}

/// `π̂(X)` for a real algebra element, obtained by inverting
/// `a = (P − iσQ)/(2√|μ|)`, `a† = −(P + iσQ)/(2√|μ|)`,
/// `K± = ∓H/2 − iσ(F+G)/2`, `K₀ = iσ(G−F)/2` and `R = iμ`.
pub fn realize_algebra<L: LadderSet + ?Sized>(
    gens: &L,
    idx: &SWIndex,
    x: &AlgebraElement,
) -> TruncatedOperator {
    let i_sigma = C64::new(0.0, idx.sigma);
    let root = idx.mu.abs().sqrt();
    let k_sum = gens.k_plus() + gens.k_minus();

    let p = (gens.a() - gens.a_dag()) * root;
    let q = (gens.a() + gens.a_dag()) * (i_sigma * root);
    let r = TruncatedOperator::identity(gens.basis()).scale(C64::new(0.0, idx.mu));
    let h = gens.k_minus() - gens.k_plus();
    let f = (&k_sum * (i_sigma * 0.5)) + &(gens.k0() * i_sigma);
    let g = (&k_sum * (i_sigma * 0.5)) - &(gens.k0() * i_sigma);

    let mut out = TruncatedOperator::zeros(gens.basis());
    for (gen, op) in [
        (AlgebraGenerator::P, &p),
        (AlgebraGenerator::Q, &q),
        (AlgebraGenerator::R, &r),
        (AlgebraGenerator::F, &f),
        (AlgebraGenerator::G, &g),
        (AlgebraGenerator::H, &h),
    ] {
        let c = x.coefficient(gen);
        if c != 0.0 {
            out = out + &(op * c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("K+".parse::<Generator>().unwrap(), Generator::KPlus);
        assert_eq!("a_dag".parse::<Generator>().unwrap(), Generator::ADag);
        assert!(matches!(
            "W+".parse::<Generator>(),
            Err(Error::UnknownGenerator(_))
        ));
        for g in Generator::ALL {
            assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
        }
    }
}
