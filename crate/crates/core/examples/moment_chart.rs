//! Samples the moment map of `T_d^2` on a log-uniform grid and prints how the
//! image fills the simplex.
//!
//! `cargo run --example moment_chart -- 3 9`

use patchwork::lattice::standard_simplex;
use patchwork::patchwork::moment_render;

fn main() -> patchwork::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let d = args.next().flatten().unwrap_or(3) as i64;
    let grid = args.next().flatten().unwrap_or(9);
    let img = moment_render(&standard_simplex(2, d)?, grid)?;
    for row in img.samples.chunks(grid) {
        let cells: Vec<String> = row.iter().map(|s| format!("({:.2},{:.2})", s.mu[0], s.mu[1])).collect();
        println!("{}", cells.join(" "));
    }
    let worst = img.samples.iter().map(|s| s.mu[0] + s.mu[1]).fold(0.0, f64::max);
    println!("max x + y over the samples: {worst:.4} (the image stays inside T_{d})");
    Ok(())
}
