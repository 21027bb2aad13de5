//! Draws the chart of a T-curve in the square model as SVG.
//!
//! `cargo run --example svg_chart -- harnack.svg`

use patchwork::interface::{example, svg};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = example("harnack-sextic").expect("packaged");
    let (_, curve) = doc.complex()?;
    let text = svg(&curve).expect("a curve");
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, &text)?;
            println!("wrote {path} ({} bytes)", text.len());
        }
        None => print!("{text}"),
    }
    Ok(())
}
