//! Generators conjugated by T(α, w) = D(α) S(w): closed linear combinations
//! against explicit conjugation, and expectation values from normal-ordered
//! words.
//!
//!     cargo run --release --example transformed_generators

use jacobi_core::squeeze::{
    conjugate_by_inverse, expectation_direct, expectation_with, leakage_interior, squeezed_op,
    transformed_generators, NormalWord, SqueezeParams, LEAKAGE_BUDGET,
};
use jacobi_core::sw::{build_sw_generators, SWIndex};
use jacobi_core::{BasisLabel, C64};

fn main() -> jacobi_core::Result<()> {
    let n = 96;
    let g = build_sw_generators(n, SWIndex::unit())?;
    let big = build_sw_generators(2 * n, SWIndex::unit())?;
    let params = SqueezeParams::new(C64::new(1.0, 0.4), C64::new(-0.3, 0.3))?;
    println!(
        "alpha = {}, w = {}, r = {:.6}",
        params.alpha, params.w, params.r
    );

    let tail = leakage_interior(&squeezed_op(&params, &big)?, n, LEAKAGE_BUDGET).unwrap_or(2);
    let interior = tail.saturating_sub(2);
    let t = transformed_generators(&params, &g);
    for (name, x, closed) in [
        ("a", &g.a, &t.a_hat),
        ("a+", &g.a_dag, &t.a_dag_hat),
        ("K0", &g.k0, &t.k0_hat),
        ("K+", &g.k_plus, &t.kp_hat),
        ("K-", &g.k_minus, &t.km_hat),
    ] {
        let oracle = conjugate_by_inverse(&params, &g, x)?;
        println!(
            "{name:>3}: closed vs conjugation on grades <= {interior}: {:e}",
            closed.max_abs_diff_within(&oracle, interior)?
        );
    }

    // ⟨a†² K₀ a⟩ in T φ_2, two ways
    let word = NormalWord {
        a_dag: 2,
        k_plus: 0,
        k_zero: 1,
        k_minus: 0,
        a: 1,
    };
    let label = BasisLabel::Number(2);
    let engine = expectation_with(&word, &t, &g, label)?;
    let (direct, leakage) = expectation_direct(&word, &params, &g, label)?;
    println!("<a+^2 K0 a>: engine {engine:.12}, direct {direct:.12} (leakage {leakage:.1e})");
    Ok(())
}
