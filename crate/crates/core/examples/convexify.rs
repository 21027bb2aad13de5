//! Turns a random maximal triangulation of `T_d^2` into the cone from the
//! origin by star moves, printing the growth of the star.
//!
//! `cargo run --example convexify -- 5 7`

use patchwork::regularity::{check_regularity, convexify_star_moves, random_maximal_triangulation};

fn main() -> patchwork::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let d = args.next().flatten().unwrap_or(5) as i64;
    let seed = args.next().flatten().unwrap_or(7);
    let t = random_maximal_triangulation(d, 60, seed)?;
    println!("start: {} triangles, convex: {}", t.cells().len(), check_regularity(t.subdivision())?.is_regular());
    let trace = convexify_star_moves(&t)?;
    println!("initial star area {}/2 of {}/2", trace.initial_star_area2, d * d);
    for m in &trace.moves {
        println!("  move {:?}: -{} +{} triangles, star {}/2", m.kind, m.removed.len(), m.inserted.len(), m.star_area2);
    }
    let f = &trace.final_triangulation;
    println!("final: {} triangles, convex: {}", f.cells().len(), check_regularity(f.subdivision())?.is_regular());
    Ok(())
}
