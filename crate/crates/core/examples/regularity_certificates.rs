//! Exact convexity decisions: a lifting witness for the convex triangulation
//! of `T_3^2` and a Farkas certificate for the pinwheel.
//!
//! `cargo run --example regularity_certificates`

use patchwork::exact;
use patchwork::regularity::{check_regularity, convex_triangulation, pinwheel, verify_certificate, verify_witness, Regularity};

fn main() -> patchwork::Result<()> {
    for (name, t) in [("convex T_3^2", convex_triangulation(2, 3)?), ("pinwheel", pinwheel())] {
        let s = t.subdivision();
        match check_regularity(s)? {
            Regularity::Regular { witness } => {
                println!("{name}: regular, witness verifies: {}", verify_witness(s, &witness));
                for (p, h) in &witness.heights {
                    println!("  h{} = {}", p.key(), exact::to_string(h));
                }
            }
            Regularity::Nonregular { certificate } => {
                println!("{name}: not regular, certificate verifies: {}", verify_certificate(s, &certificate));
                for term in &certificate.terms {
                    println!("  {} x {:?}", exact::to_string(&term.multiplier), term.constraint);
                }
            }
        }
    }
    Ok(())
}
