//! Builds the Harnack T-curve of degree `d` and prints its topology and the
//! restriction table.
//!
//! `cargo run --example harnack_curve -- 6`

use patchwork::lattice::LatticePoint;
use patchwork::patchwork::{PatchworkComplex, SignDistribution};
use patchwork::regularity::convex_triangulation;
use patchwork::restrictions::check_all;
use patchwork::topology::analyze;

fn main() -> patchwork::Result<()> {
    let d: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let t = convex_triangulation(2, d)?;
    // -1 at points with both coordinates even
    let sigma = SignDistribution::from_fn(&t, |p: &LatticePoint| if p.coords().iter().all(|x| x % 2 == 0) { -1 } else { 1 });
    let curve = PatchworkComplex::build(&t, &sigma)?;
    let r = analyze(&curve)?;
    println!("degree {d}: {} pieces, {} components (b = {})", curve.piece_count(), r.component_count(), r.b_complex);
    if let Some(o) = &r.ovals {
        println!("p = {}, n = {}, one-sided {}, depths {:?}", o.p, o.n, o.one_sided, o.depth_histogram);
    }
    for e in check_all(&r)?.entries {
        println!("  {:<18} {:?} {}", e.name, e.status, e.detail);
    }
    Ok(())
}
