//! Quadrature covariances of displaced squeezed number states and the disk of
//! w where the position variance drops below the vacuum value.
//!
//!     cargo run --release --example uncertainty

use jacobi_core::observables::{
    covariance_closed, covariance_numeric, is_squeezed, squeezing_disk,
};
use jacobi_core::squeeze::SqueezeParams;
use jacobi_core::sw::{build_sw_generators, SWIndex};
use jacobi_core::{BasisLabel, C64};

fn main() -> jacobi_core::Result<()> {
    let idx = SWIndex::unit();
    let g = build_sw_generators(96, idx)?;
    let params = SqueezeParams::new(C64::new(0.7, -0.2), C64::new(-0.35, 0.15))?;
    println!(
        "{:>2} {:>12} {:>12} {:>12} {:>10} {:>9}",
        "n", "sigma_qq", "sigma_pp", "sigma_pq", "|diff|", "squeezed"
    );
    for n in 0..4 {
        let closed = covariance_closed(n, params.w, idx.hbar)?;
        let numeric = covariance_numeric(&params, &g, BasisLabel::Number(n), idx.hbar)?;
        println!(
            "{n:>2} {:>12.8} {:>12.8} {:>12.8} {:>10.1e} {:>9}",
            closed.sigma_qq,
            closed.sigma_pp,
            closed.sigma_pq,
            closed.max_abs_diff(&numeric),
            is_squeezed(n, params.w)?
        );
    }
    let vac = covariance_closed(0, params.w, idx.hbar)?;
    println!(
        "vacuum: sigma_qq sigma_pp − sigma_pq² − hbar²/4 = {:e}",
        vac.schrodinger_slack()
    );

    for n in 0..4 {
        let d = squeezing_disk(n);
        println!(
            "n = {n}: squeezed for |w − ({:.4})| < {:.4}",
            d.center.re, d.radius
        );
    }
    Ok(())
}
