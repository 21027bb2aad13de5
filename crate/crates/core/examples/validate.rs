//! Validates a few subdivisions of `T_2^2`: a good one, overlapping cells, and
//! a missing triangle.
//!
//! `cargo run --example validate`

use patchwork::lattice::{is_maximal, standard_simplex, validate_subdivision, LatticePoint, LatticePolytope};

fn tri(pts: [[i64; 2]; 3]) -> LatticePolytope {
    LatticePolytope::new(pts.map(LatticePoint::new)).expect("triangle")
}

fn main() -> patchwork::Result<()> {
    let target = standard_simplex(2, 2)?;
    let good = vec![
        tri([[0, 0], [1, 0], [0, 1]]),
        tri([[1, 0], [2, 0], [1, 1]]),
        tri([[0, 1], [1, 1], [0, 2]]),
        tri([[1, 0], [1, 1], [0, 1]]),
    ];
    let overlapping = vec![tri([[0, 0], [2, 0], [0, 2]]), tri([[0, 0], [1, 0], [0, 1]])];
    let gap = good[..3].to_vec();
    for (name, cells) in [("four triangles", good), ("overlapping", overlapping), ("missing middle", gap)] {
        let report = validate_subdivision(&cells, &target)?;
        println!("{name:>15}: {}", report.summary());
        if report.is_valid() {
            let s = patchwork::lattice::LatticeSubdivision::new(target.clone(), cells)?;
            println!("{:>15}  maximal: {}", "", is_maximal(&s));
        }
    }
    Ok(())
}
