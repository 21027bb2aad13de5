//! Regenerates the packaged example documents in `data/`. Every document is
//! reproducible: fixed triangulations, fixed sign rules, fixed search seeds.
//!
//! `cargo run --release --example write_corpus -- [output dir]`

use std::path::PathBuf;

use patchwork::interface::PatchworkDocument;
use patchwork::lattice::LatticePoint;
use patchwork::patchwork::{OrthantComplex, PatchworkComplex, SignDistribution};
use patchwork::regularity::{convex_triangulation, pinwheel};
use patchwork::search::{run, Mode, Objective, SearchTask, DEFAULT_BUDGET};
use patchwork::topology::analyze;

/// `-1` where every coordinate is even.
fn harnack_signs(p: &LatticePoint) -> i8 {
    if p.coords().iter().all(|x| x % 2 == 0) {
        -1
    } else {
        1
    }
}

pub fn documents() -> patchwork::Result<Vec<(&'static str, PatchworkDocument)>> {
    let mut out = Vec::new();

    let line = convex_triangulation(2, 1)?;
    out.push(("d1-line", PatchworkDocument::from_parts(&line, SignDistribution::constant(&line, 1)).with_metadata("title", "Line, all signs +")));

    let cubic = convex_triangulation(2, 3)?;
    let best = run(&SearchTask::new(cubic.clone(), Mode::Exhaustive, Objective::MaxComponents))?.best.remove(0);
    out.push((
        "d3-mcurve",
        PatchworkDocument::from_parts(&cubic, best.signs)
            .with_metadata("title", "Cubic M-curve from exhaustive search")
            .with_metadata("classIndex", best.index),
    ));

    let sextic = convex_triangulation(2, 6)?;
    out.push((
        "harnack-sextic",
        PatchworkDocument::from_parts(&sextic, SignDistribution::from_fn(&sextic, harnack_signs)).with_metadata("title", "Harnack sextic"),
    ));

    let seed = 42;
    let best = run(&SearchTask::new(sextic.clone(), Mode::HillClimb { seed, budget: DEFAULT_BUDGET }, Objective::MaxComponents))?.best.remove(0);
    out.push((
        "d6-search-best",
        PatchworkDocument::from_parts(&sextic, best.signs)
            .with_metadata("title", "Best sextic from hill climbing")
            .with_metadata("seed", seed)
            .with_metadata("budget", DEFAULT_BUDGET),
    ));

    let pin = pinwheel();
    out.push((
        "pinwheel-nonregular",
        PatchworkDocument::from_parts(&pin, SignDistribution::from_fn(&pin, harnack_signs)).with_metadata("title", "Non-convex pinwheel triangulation"),
    ));

    // first quadric sign class, in class order, whose real part is a torus
    let quadric = convex_triangulation(3, 2)?;
    let g = OrthantComplex::new(&quadric)?;
    let k = g.base_vertices().len();
    let torus = (0..1u64 << (k - 1))
        .map(|bits| (0..k).map(|i| if i > 0 && bits >> (i - 1) & 1 == 1 { -1 } else { 1 }).collect::<Vec<i8>>())
        .find_map(|s| {
            let p = PatchworkComplex::from_base_signs(g.clone(), s).ok()?;
            let r = analyze(&p).ok()?;
            (r.component_count() == 1 && r.chi == 0).then(|| p.signed().distribution())
        })
        .expect("a quadric with a torus exists");
    out.push(("d2-hyperboloid", PatchworkDocument::from_parts(&quadric, torus).with_metadata("title", "Quadric surface with a torus")));

    let mut bad = PatchworkDocument::from_parts(&line, SignDistribution::default());
    bad.degree = 2;
    bad.cells = vec![vec![vec![0, 0], vec![2, 0], vec![0, 2]], vec![vec![0, 0], vec![1, 0], vec![0, 1]]];
    out.push(("bad-overlap", bad.with_metadata("title", "Overlapping cells (invalid)")));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> patchwork::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    std::fs::create_dir_all(&dir)?;
    for (id, doc) in documents()? {
        let path = dir.join(format!("{id}.json"));
        std::fs::write(&path, doc.to_json())?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
