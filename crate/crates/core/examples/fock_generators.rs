//! Truncated oscillator matrices for the Schrödinger–Weil representation and
//! the canonical relations they satisfy away from the cutoff.
//!
//!     cargo run --example fock_generators

use jacobi_core::generators::realize_algebra;
use jacobi_core::group::{algebra_basis, AlgebraElement};
use jacobi_core::operator::commutator;
use jacobi_core::sw::{build_sw_generators, SWIndex};
use jacobi_core::verify::ladder_relations;
use jacobi_core::BasisLabel;

fn main() -> jacobi_core::Result<()> {
    let idx = SWIndex::unit();
    let g = build_sw_generators(24, idx)?;
    println!("m = {:.6}, mu = {}, hbar = {}", idx.m, idx.mu, idx.hbar);
    println!(
        "boson and su(1,1) relations on grades <= 22: {:e}",
        ladder_relations(&g, 22)?
    );

    // [q, p] = iħ except in the last row, where the truncation shows up
    let qp = commutator(&g.q, &g.p)?;
    for n in [0, 10, 23, 24] {
        let label = BasisLabel::Number(n);
        println!("[q,p]_({n},{n}) = {:.6}", qp.element(label, label));
    }

    // the realization respects brackets: π([X,Y]) = [π(X), π(Y)]
    let basis = algebra_basis();
    let mut worst = 0.0f64;
    for x in &basis {
        for y in &basis {
            let lhs = realize_algebra(&g, &idx, &x.bracket(y));
            let rhs = commutator(&realize_algebra(&g, &idx, x), &realize_algebra(&g, &idx, y))?;
            worst = worst.max(lhs.max_abs_diff_within(&rhs, 20)?);
        }
    }
    println!("bracket homomorphism deviation: {worst:e}");

    let h: AlgebraElement = basis[3].scaled(1.0);
    let image = realize_algebra(&g, &idx, &h);
    println!(
        "pi(H) on phi_2: <phi_4|.|phi_2> = {:.6}",
        image.element(BasisLabel::Number(4), BasisLabel::Number(2))
    );
    Ok(())
}
