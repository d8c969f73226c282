//! Mandel's Q for T(α, w) φ_n: closed form, normal-ordering engine, and the
//! circle |w| where Q(0, w, n) changes sign.
//!
//!     cargo run --release --example mandel

use jacobi_core::observables::{check_zero_locus, mandel_q_closed, mandel_q_with};
use jacobi_core::squeeze::{transformed_generators, SqueezeParams};
use jacobi_core::sw::{build_sw_generators, SWIndex};
use jacobi_core::{BasisLabel, C64};

fn main() -> jacobi_core::Result<()> {
    let g = build_sw_generators(128, SWIndex::unit())?;
    let alpha = C64::new(1.0, 0.0);
    println!("alpha = {alpha}");
    println!("{:>6} {:>3} {:>14} {:>14}", "|w|", "n", "closed", "engine");
    for rho in [0.0, 0.2, 0.4, 0.6] {
        let w = C64::new(rho, 0.0);
        let t = transformed_generators(&SqueezeParams::new(alpha, w)?, &g);
        for n in 0..4 {
            let closed = mandel_q_closed(alpha, w, n)?;
            let engine = mandel_q_with(&t, &g, BasisLabel::Number(n))?;
            println!("{rho:>6.2} {n:>3} {closed:>14.10} {engine:>14.10}");
        }
    }

    println!("Q(alpha, 0) at |alpha| = 1/sqrt2:");
    for n in 0..4 {
        println!(
            "  n = {n}: {:e}",
            mandel_q_closed(C64::new(0.5f64.sqrt(), 0.0), C64::new(0.0, 0.0), n)?
        );
    }

    for n in 0..4 {
        match check_zero_locus(n, 1e-3) {
            Ok(z) => println!(
                "n = {n}: Q(0, w) = 0 at |w| = {:.10}; Q inside {:+.3e}, outside {:+.3e}",
                z.radius, z.q_inside, z.q_outside
            ),
            Err(e) => println!("n = {n}: {e}"),
        }
    }
    Ok(())
}
