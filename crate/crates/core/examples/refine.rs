//! Maximal convex refinements: of `T_d^n` in one piece, and of a coarse
//! subdivision of `T_4^2` into two cells.
//!
//! `cargo run --example refine`

use patchwork::lattice::{is_primitive, standard_simplex, LatticePoint, LatticePolytope, LatticeSubdivision};
use patchwork::regularity::maximal_convex_refinement;

fn main() -> patchwork::Result<()> {
    for (n, d) in [(2, 4), (3, 2), (3, 4)] {
        let r = maximal_convex_refinement(&LatticeSubdivision::trivial(standard_simplex(n, d)?));
        println!("T_{d}^{n}: {} simplices, primitive: {}", r.triangulation.cells().len(), is_primitive(&r.triangulation));
    }
    let p = |x: i64, y: i64| LatticePoint::new([x, y]);
    let coarse = LatticeSubdivision::new(
        standard_simplex(2, 4)?,
        vec![
            LatticePolytope::new([p(0, 0), p(4, 0), p(0, 2), p(2, 2)])?,
            LatticePolytope::new([p(0, 2), p(2, 2), p(0, 4)])?,
        ],
    )?;
    let r = maximal_convex_refinement(&coarse);
    println!("two-cell subdivision: {} triangles, refines the input: {}", r.triangulation.cells().len(), r.triangulation.subdivision().refines(&coarse));
    for (pt, h) in r.heights.iter().take(4) {
        println!("  height at {} = {h}", pt.key());
    }
    Ok(())
}
