//! Discrete-series representations with lowest weight k: relations, the
//! Casimir value and the polynomial model.
//!
//!     cargo run --example discrete_series [k]

use jacobi_core::ds::{build_ds_generators, ds_casimir, ds_poly, intertwine_check_ds, DSWeight};
use jacobi_core::generators::LadderSet;
use jacobi_core::verify::ladder_relations;
use jacobi_core::BasisLabel;

fn main() -> jacobi_core::Result<()> {
    let k: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3.0);
    let weight = DSWeight::new(k)?;
    let level = 10;
    let g = build_ds_generators(weight, level)?;
    println!(
        "k = {k}, h = {}, {} basis vectors up to grade {}",
        weight.h(),
        g.basis().dim(),
        2 * level
    );
    for label in g.basis().labels().iter().take(8) {
        println!("  {label}  grade {}", label.grade());
    }

    println!(
        "relations on grades <= {}: {:e}",
        2 * level - 2,
        ladder_relations(&g, 2 * level - 2)?
    );
    let c = ds_casimir(weight, level)?;
    println!(
        "Casimir: expected {}, deviation {:e}",
        c.expected, c.deviation
    );

    // W₀ is diagonal with eigenvalue h + n
    let w0 = g.w0.element(
        BasisLabel::Pair { n_prime: 3, n: 2 },
        BasisLabel::Pair { n_prime: 3, n: 2 },
    );
    println!("W0 on phi_(3,2) = {:.6}", w0.re);

    println!("phi_(1,2) = {}", ds_poly(weight, 1, 2));
    println!(
        "matrix vs differential operators (D=8): {:e}",
        intertwine_check_ds(weight, 8)?
    );
    Ok(())
}
