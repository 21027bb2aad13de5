//! Builds a T-surface of degree `d` with random signs and writes it as an OBJ
//! mesh in the octahedron model, with the antipodal identifications beside it.
//!
//! `cargo run --example surface_mesh -- 2 surface.obj`

use patchwork::interface::{obj, to_json};
use patchwork::patchwork::{OrthantComplex, PatchworkComplex};
use patchwork::regularity::convex_triangulation;
use patchwork::topology::analyze;
use rand::{Rng, SeedableRng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let g = OrthantComplex::new(&convex_triangulation(3, d)?)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let signs = (0..g.base_vertices().len()).map(|_| if rng.gen() { 1 } else { -1 }).collect();
    let surface = PatchworkComplex::from_base_signs(g, signs)?;
    let r = analyze(&surface)?;
    let chis: Vec<i64> = r.components.iter().map(|c| c.chi).collect();
    println!("degree {d}: {} components, chi {:?}, b_total {} of {}", r.component_count(), chis, r.b_total, r.b_complex);
    let (mesh, sidecar) = obj(&surface).expect("a surface");
    match args.next() {
        Some(path) => {
            std::fs::write(&path, &mesh)?;
            let side = std::path::Path::new(&path).with_extension("json");
            std::fs::write(&side, to_json(&sidecar))?;
            println!("wrote {path} and {}", side.display());
        }
        None => println!("{} vertices, {} faces, {} identified pairs", sidecar.vertices, sidecar.faces, sidecar.identifications.len()),
    }
    Ok(())
}
