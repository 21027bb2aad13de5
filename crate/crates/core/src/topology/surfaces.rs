//! Surfaces in `RP^3`: components, Euler characteristics, Betti numbers.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{piece_components, Component, TopologyReport};
use crate::patchwork::PatchworkComplex;

fn det3(a: [i128; 3], b: [i128; 3], c: [i128; 3]) -> i128 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Intersection parity with a generic line through the origin, in total and
/// per component. Polygons are fanned into triangles; a line touching an edge
/// of a triangle is rejected and resampled.
pub(crate) fn line_parity(p: &PatchworkComplex, seed: u64) -> (u8, Vec<u8>) {
    let g = p.geometry();
    let (comp, count) = piece_components(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mid = |e| {
        let m = g.doubled_midpoint(e);
        [m[0] as i128, m[1] as i128, m[2] as i128]
    };
    'sample: loop {
        let mut u = [0i128; 3];
        for x in &mut u {
            *x = rng.gen_range(1_000_003..9_999_991) * if rng.gen() { 1 } else { -1 };
        }
        let mut parity = vec![0u8; count];
        for &(cell, c) in &comp {
            let piece = p.piece(cell).expect("piece");
            let a = mid(piece[0]);
            for w in piece[1..].windows(2) {
                let (b, cc) = (mid(w[0]), mid(w[1]));
                let s = [det3(u, a, b).signum(), det3(u, b, cc).signum(), det3(u, cc, a).signum()];
                if s.contains(&0) {
                    continue 'sample;
                }
                if s[0] == s[1] && s[1] == s[2] {
                    parity[c] ^= 1;
                }
            }
        }
        return (parity.iter().fold(0, |acc, x| acc ^ x), parity);
    }
}

pub(crate) fn analyze_surface(p: &PatchworkComplex, line_seed: u64, b_complex: i64) -> TopologyReport {
    let g = p.geometry();
    let mut anomalies = Vec::new();
    let (comp, count) = piece_components(p);
    let node = |e| g.projective_edge(g.edge_index(e).expect("piece node is an edge"));

    let mut nodes = vec![usize::MAX; g.edges().len()];
    let mut sides: HashMap<(usize, usize), u32> = HashMap::new();
    let mut chi = vec![0i64; count];
    let mut pieces_in = vec![0usize; count];
    for &(cell, c) in &comp {
        let piece = p.piece(cell).expect("piece");
        pieces_in[c] += 1;
        chi[c] += 1;
        for (k, &e) in piece.iter().enumerate() {
            let a = node(e);
            if nodes[a] == usize::MAX {
                nodes[a] = c;
                chi[c] += 1;
            }
            let b = node(piece[(k + 1) % piece.len()]);
            let side = if a < b { (a, b) } else { (b, a) };
            let seen = sides.entry(side).or_insert(0);
            if *seen == 0 {
                chi[c] -= 1;
            }
            *seen += 1;
        }
    }
    if let Some((side, n)) = sides.iter().find(|(_, &n)| n != 2) {
        anomalies.push(format!("polygon side {side:?} is shared by {n} pieces"));
    }

    let (mod2, _) = line_parity(p, line_seed);
    let components: Vec<Component> =
        (0..count).map(|c| Component { id: c, pieces: pieces_in[c], chi: chi[c], one_sided: None }).collect();
    let total_chi: i64 = chi.iter().sum();
    let b_total: i64 = chi.iter().map(|x| 4 - x).sum();
    TopologyReport {
        dim: 3,
        degree: p.degree(),
        components,
        ovals: None,
        regions: Vec::new(),
        chi: total_chi,
        b_total,
        b_complex,
        a_defect: (b_complex - b_total).div_euclid(2),
        principal: None,
        flags: None,
        mod2_degree: mod2,
        line_seed,
        non_primitive: false,
        anomalies,
    }
}
