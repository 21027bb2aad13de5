//! Audits sign distributions on the convex triangulation of `T_d^2`:
//! exhaustively for small degrees, by sampling and hill climbing for larger ones.
//!
//! `cargo run --release --example search_audit -- 6`

use std::time::Instant;

use patchwork::regularity::convex_triangulation;
use patchwork::search::{run, Mode, Objective, SearchTask, DEFAULT_BUDGET};

fn main() -> patchwork::Result<()> {
    let d: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let t = convex_triangulation(2, d)?;
    let modes = if d <= 4 {
        vec![Mode::Exhaustive]
    } else {
        vec![Mode::Random { seed: 42, samples: 100_000 }, Mode::HillClimb { seed: 42, budget: DEFAULT_BUDGET }]
    };
    for mode in modes {
        let start = Instant::now();
        let r = run(&SearchTask::new(t.clone(), mode, Objective::MaxComponents))?;
        println!("{mode:?}: {:.2?}", start.elapsed());
        println!("  visited {}, anomalies {}", r.stats.visited, r.anomalies.len());
        println!("  components {:?}", r.stats.components);
        println!("  p - n mod 8 {:?}", r.stats.p_minus_n_mod8);
        println!("  M-curves {}, (M-1)-curves {}", r.stats.m_curves, r.stats.m1_curves);
        if let Some(b) = r.best.first() {
            let o = b.report.ovals.as_ref().expect("curve");
            println!("  best: {} components, p = {}, n = {}", b.report.component_count(), o.p, o.n);
        }
    }
    Ok(())
}
