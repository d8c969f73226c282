//! Brackets of the six Lie algebra basis matrices and the action of the
//! Jacobi group on C × H.
//!
//!     cargo run --example structure_constants

use jacobi_core::group::{check_structure_constants, jacobi_action, GroupElement, PointCH};
use jacobi_core::C64;

fn main() -> jacobi_core::Result<()> {
    let report = check_structure_constants();
    for b in &report.pairs {
        println!("[{:?}, {:?}]  deviation {}", b.left, b.right, b.deviation);
    }
    println!("max deviation: {}", report.max_deviation);

    let g1 = GroupElement::new(0.3, -0.2, 0.1, [[2.0, 1.0], [1.0, 1.0]])?;
    let g2 = GroupElement::new(-0.5, 0.4, 0.0, [[1.0, 0.0], [0.5, 1.0]])?;
    let p = PointCH::new(C64::new(0.2, 0.1), C64::new(-0.3, 1.2))?;
    let (m, k) = (1.0, 3.0);

    let (p2, j2) = jacobi_action(&g2, &p, m, k)?;
    let (p12, j1) = jacobi_action(&g1, &p2, m, k)?;
    let (direct, j12) = jacobi_action(&g1.compose(&g2)?, &p, m, k)?;
    println!("g1·(g2·p) = ({:.12}, {:.12})", p12.z, p12.tau);
    println!("(g1g2)·p  = ({:.12}, {:.12})", direct.z, direct.tau);
    println!(
        "cocycle: |J(g1g2) − J(g1)J(g2)| = {:e}",
        (j12 - j1 * j2).norm()
    );
    Ok(())
}
