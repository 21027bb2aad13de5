//! Calls the JSON API in-process, exactly as the HTTP service does.
//!
//! `cargo run --example api_dispatch`

use patchwork::interface::{example, handle};

fn main() {
    let cubic = example("d3-mcurve").expect("packaged").to_json();
    let requests = [
        ("GET", "/api/v1/examples", String::new()),
        ("GET", "/api/v1/invariants?n=3&d=4", String::new()),
        ("POST", "/api/v1/analyze", cubic.clone()),
        ("POST", "/api/v1/regularity?op=check", cubic),
        ("POST", "/api/v1/analyze", "{\"dim\": 2}".to_string()),
    ];
    for (method, target, body) in requests {
        let r = handle(method, target, body.as_bytes());
        let first: String = r.body.lines().take(6).collect::<Vec<_>>().join("\n");
        println!("{method} {target} -> {}\n{first}\n...", r.status);
    }
}
