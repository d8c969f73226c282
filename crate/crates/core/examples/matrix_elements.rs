//! Closed-form matrix elements against the truncated matrices: Laguerre
//! elements of D(α) and hypergeometric elements of the discrete-series
//! squeeze.
//!
//!     cargo run --example matrix_elements

use jacobi_core::ds::{build_ds_generators, DSWeight};
use jacobi_core::squeeze::{
    displacement, displacement_me_closed, squeeze, squeeze_me_closed, squeeze_w_sector,
};
use jacobi_core::sw::{build_sw_generators, SWIndex};
use jacobi_core::{BasisLabel, C64};

fn main() -> jacobi_core::Result<()> {
    let alpha = C64::new(0.8, 0.5);
    let g = build_sw_generators(48, SWIndex::unit())?;
    let d = displacement(alpha, &g)?;
    println!("<m|D(alpha)|n>, alpha = {alpha}");
    for (m, n) in [(0, 0), (3, 1), (1, 3), (6, 6)] {
        let closed = displacement_me_closed(m, n, alpha);
        let matrix = d.element(BasisLabel::Number(m), BasisLabel::Number(n));
        println!("  ({m},{n}) closed {closed:.12}  matrix {matrix:.12}");
    }

    let w = C64::new(0.3, -0.25);
    let weight = DSWeight::new(3.0)?;
    let ds = build_ds_generators(weight, 8)?;
    let sector = squeeze_w_sector(w, &ds)?;
    let full = squeeze(w, &ds)?;
    let factor = (1.0 - w.norm_sqr()).powf(0.25);
    println!("<phi_(0,n')|S|phi_(0,n)>, k = 3, w = {w}");
    for (n, n_prime) in [(0, 0), (0, 2), (1, 4), (3, 6)] {
        let closed = squeeze_me_closed(weight, n, n_prime, w)?;
        let row = BasisLabel::Pair {
            n_prime: 0,
            n: n_prime,
        };
        let col = BasisLabel::Pair { n_prime: 0, n };
        let sw = sector.element(row, col);
        let fl = full.element(row, col);
        println!(
            "  ({n},{n_prime}) closed {closed:.10}  W-sector {sw:.10}  full/(1-|w|^2)^(1/4) {:.10}",
            fl / factor
        );
    }
    Ok(())
}
