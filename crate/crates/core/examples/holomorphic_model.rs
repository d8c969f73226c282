//! The holomorphic model on C × D: basis polynomials from the generating
//! function, the heat equation they satisfy, and the differential operators
//! that reproduce the Fock matrices.
//!
//!     cargo run --example holomorphic_model

use jacobi_core::generators::Generator;
use jacobi_core::sw::{
    f_poly, f_poly_rational, generating_residual, heat_pde_residual, intertwine_check_sw, pi0_apply,
};
use jacobi_core::C64;

fn main() -> jacobi_core::Result<()> {
    for n in 0..5 {
        println!("f_{n}(alpha, w) = {}", f_poly_rational(n));
    }
    let heat = (0..=20)
        .filter(|&n| heat_pde_residual(&f_poly_rational(n)).map_or(true, |r| !r.is_zero()))
        .count();
    println!("heat equation violated by {heat} of f_0..f_20");

    let z = C64::new(0.6, -0.3);
    let alpha = C64::new(-0.4, 0.8);
    let w = C64::new(0.2, 0.35);
    for terms in [5, 10, 20, 40] {
        println!(
            "generating function residual, {terms} terms: {:e}",
            generating_residual(z, alpha, w, terms)?
        );
    }

    // K₊ raises by two: K₊ f_3 = √(4·5)/2 f_5
    let raised = pi0_apply(Generator::KPlus, &f_poly(3))?;
    println!("K+ f_3 = {raised}");
    println!(
        "matrix vs differential operators (N=16): {:e}",
        intertwine_check_sw(16)?
    );
    Ok(())
}
