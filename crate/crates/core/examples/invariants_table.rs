//! Prints chi, signature, total Betti number and the Hodge table of complex
//! hypersurfaces of degree `1..=d` in `CP^2` and `CP^3`.
//!
//! `cargo run --example invariants_table -- 6`

use patchwork::invariants::complex_invariants;

fn main() -> patchwork::Result<()> {
    let top: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    for n in 2..=3 {
        println!("CP^{n}");
        for d in 1..=top {
            let inv = complex_invariants(n, d)?;
            let sign = inv.sign.as_ref().map_or("-".to_string(), |s| s.to_string());
            let hodge: Vec<String> = inv.hodge.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
            println!("  d = {d:>2}: chi {:>6} sign {:>6} b {:>6}  hodge [{}]", inv.chi, sign, inv.b_total, hodge.join(" | "));
        }
    }
    Ok(())
}
