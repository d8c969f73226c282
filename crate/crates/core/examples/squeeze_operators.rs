//! Displacement and squeeze operators in factored form, with their
//! truncation tails and the dense exponential as a cross-check.
//!
//!     cargo run --release --example squeeze_operators

use jacobi_core::generators::LadderSet;
use jacobi_core::squeeze::{column_tails, displacement, leakage_interior, squeeze, LEAKAGE_BUDGET};
use jacobi_core::sw::{build_sw_generators, SWIndex};
use jacobi_core::{TruncatedOperator, C64};

fn main() -> jacobi_core::Result<()> {
    let n = 64;
    let g = build_sw_generators(n, SWIndex::unit())?;
    let big = build_sw_generators(2 * n, SWIndex::unit())?;
    let id = TruncatedOperator::identity(g.basis());

    for w in [
        C64::new(0.2, 0.0),
        C64::new(0.0, 0.4),
        C64::from_polar(0.6, 1.0),
    ] {
        let s = squeeze(w, &g)?;
        let reference = squeeze(w, &big)?;
        let tails = column_tails(&reference, n);
        let interior = leakage_interior(&reference, n, LEAKAGE_BUDGET);
        println!(
            "S({w:.3}): tail at grade 0/16/32 = {:.1e}/{:.1e}/{:.1e}, interior {interior:?}",
            tails[0], tails[16], tails[32]
        );
        if let Some(i) = interior {
            println!(
                "  |S†S − I| on interior: {:e}",
                (&s.adjoint() * &s).max_abs_diff_within(&id, i)?
            );
        }
        println!(
            "  |S(w)† − S(−w)| on grades <= 32: {:e}",
            s.adjoint().max_abs_diff_within(&squeeze(-w, &g)?, 32)?
        );
    }

    let alpha = C64::new(1.2, -0.9);
    let d = displacement(alpha, &g)?;
    let interior = leakage_interior(&displacement(alpha, &big)?, n, LEAKAGE_BUDGET).unwrap_or(0);
    let dense = (&(&g.a_dag * alpha) - &(&g.a * alpha.conj())).expm_dense(C64::new(1.0, 0.0))?;
    println!(
        "D({alpha}): interior grade {interior}, factored vs dense exp {:e}",
        d.max_abs_diff_within(&dense, interior)?
    );
    Ok(())
}
