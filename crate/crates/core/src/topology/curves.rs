//! Curves in `RP^2`: ovals, the one-sided component, nesting, regions.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{piece_components, CharacteristicFlags, Component, TopologyReport, UnionFind};
use crate::patchwork::PatchworkComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Oval {
    pub component: usize,
    /// The innermost oval containing this one.
    pub parent: Option<usize>,
    /// Number of ovals containing this one.
    pub depth: usize,
    pub even: bool,
    /// Euler characteristic of the region bounded by the oval from outside.
    pub characteristic: i64,
    /// The region inside the oval adjacent to it.
    pub interior: usize,
    pub exterior: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OvalSummary {
    pub p: usize,
    pub n: usize,
    /// `depthHistogram[k]` ovals lie inside exactly `k` others.
    pub depth_histogram: Vec<usize>,
    pub forest: Vec<Oval>,
    pub one_sided: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Region {
    pub id: usize,
    pub chi: i64,
    /// Rank of `H_1(region) -> H_1(RP^2)` over Z/2.
    pub rank: u8,
    /// Curve components on the boundary.
    pub boundary: Vec<usize>,
    /// Every inner bounding oval contains an odd number of ovals.
    pub even: bool,
    pub principal: bool,
}

/// Intersection parities with a generic line through the origin: per
/// component, and in total. The line is resampled until it avoids all nodes.
pub(crate) fn line_parities(p: &PatchworkComplex, seed: u64) -> (Vec<u8>, u8) {
    let g = p.geometry();
    let (comp, count) = piece_components(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'sample: loop {
        let u: [i64; 2] = [rng.gen_range(1_000_003..9_999_991) * if rng.gen() { 1 } else { -1 }, rng.gen_range(1_000_003..9_999_991)];
        let side = |e| {
            let m = g.doubled_midpoint(e);
            (u[0] as i128 * m[1] as i128 - u[1] as i128 * m[0] as i128).signum()
        };
        let mut parity = vec![0u8; count];
        for &(cell, c) in &comp {
            let piece = p.piece(cell).expect("piece");
            let (a, b) = (side(piece[0]), side(piece[1]));
            if a == 0 || b == 0 {
                continue 'sample;
            }
            if a != b {
                parity[c] ^= 1;
            }
        }
        let total = parity.iter().fold(0, |acc, x| acc ^ x);
        return (parity, total);
    }
}

pub(crate) fn analyze_curve(p: &PatchworkComplex, line_seed: u64, b_complex: i64) -> TopologyReport {
    let g = p.geometry();
    let d = p.degree();
    let mut anomalies = Vec::new();
    let (comp, count) = piece_components(p);

    // every projective node has degree 2
    let mut degree = vec![0u8; g.edges().len()];
    for (_, piece) in p.pieces() {
        for &e in piece {
            let k = g.projective_edge(g.edge_index(e).expect("edge"));
            degree[k] = degree[k].saturating_add(1);
        }
    }
    if let Some(k) = degree.iter().position(|&x| x != 0 && x != 2) {
        anomalies.push(format!("node {:?} has degree {}", g.edges()[k], degree[k]));
    }

    // regions: monochromatic vertices, edges and cells, with the antipodal
    // identification carrying twist 1 so that odd cycles detect rank 1
    let signs = p.signed().signs();
    let npts = g.points().len();
    let mut uf = UnionFind::new(npts);
    let mut twisted = vec![false; npts];
    let mut odd_cycles = Vec::new();
    for (i, anti) in (0..npts).map(|i| (i, g.antipode(i as u32))) {
        if let Some(a) = anti {
            if !uf.union(i, a as usize, 1) {
                odd_cycles.push(i);
            }
        }
    }
    for &(a, b) in g.edges() {
        if signs[a as usize] == signs[b as usize] && !uf.union(a as usize, b as usize, 0) {
            odd_cycles.push(a as usize);
        }
    }
    for v in odd_cycles {
        twisted[uf.find(v).0] = true;
    }
    let mut region_of_root = vec![usize::MAX; npts];
    let mut region_root = Vec::new();
    for i in 0..npts {
        let r = uf.find(i).0;
        if region_of_root[r] == usize::MAX {
            region_of_root[r] = region_root.len();
            region_root.push(r);
        }
    }
    let region = |uf: &mut UnionFind, v: u32| region_of_root[uf.find(v as usize).0];
    let nreg = region_root.len();
    // doubled Euler characteristic: boundary vertices and edges count half
    let mut chi2 = vec![0i64; nreg];
    for i in 0..npts {
        let r = region(&mut uf, i as u32);
        chi2[r] += if g.on_boundary(i as u32) { 1 } else { 2 };
    }
    for &(a, b) in g.edges() {
        if signs[a as usize] == signs[b as usize] {
            let r = region(&mut uf, a);
            chi2[r] -= if g.antipodal_edge((a, b)).is_some() { 1 } else { 2 };
        }
    }
    for c in g.cells() {
        let s0 = signs[c.vertices[0] as usize];
        if c.vertices.iter().all(|&v| signs[v as usize] == s0) {
            let r = region(&mut uf, c.vertices[0]);
            chi2[r] += 2;
        }
    }
    if chi2.iter().any(|x| x % 2 != 0) {
        anomalies.push("region Euler characteristic is not an integer".into());
    }
    let region_chi: Vec<i64> = chi2.iter().map(|x| x / 2).collect();
    if region_chi.iter().sum::<i64>() != 1 {
        anomalies.push(format!("region Euler characteristics sum to {}", region_chi.iter().sum::<i64>()));
    }

    // sides of each component, from one piece: a + vertex and a - vertex of its cell
    let mut sides = vec![None; count];
    let mut pieces_in = vec![0usize; count];
    for &(cell, c) in &comp {
        pieces_in[c] += 1;
        if sides[c].is_none() {
            let vs = &g.cells()[cell].vertices;
            let plus = *vs.iter().find(|&&v| signs[v as usize] > 0).expect("mixed cell");
            let minus = *vs.iter().find(|&&v| signs[v as usize] < 0).expect("mixed cell");
            sides[c] = Some((region(&mut uf, plus), region(&mut uf, minus)));
        }
    }
    let sides: Vec<(usize, usize)> = sides.into_iter().map(|s| s.expect("component has a piece")).collect();

    let (line, mod2) = line_parities(p, line_seed);
    let mut components = Vec::with_capacity(count);
    for c in 0..count {
        let one_sided = sides[c].0 == sides[c].1;
        if one_sided != (line[c] == 1) {
            anomalies.push(format!("component {c}: side test and line parity disagree"));
        }
        components.push(Component { id: c, pieces: pieces_in[c], chi: 0, one_sided: Some(one_sided) });
    }
    let one_sided: Vec<usize> = (0..count).filter(|&c| components[c].one_sided == Some(true)).collect();
    if one_sided.len() as i64 != d % 2 {
        anomalies.push(format!("{} one-sided components in degree {d}", one_sided.len()));
    }

    // nesting: regions are the nodes of a tree whose edges are the ovals
    let ovals: Vec<usize> = (0..count).filter(|c| !one_sided.contains(c)).collect();
    let rank: Vec<u8> = region_root.iter().map(|&r| twisted[r] as u8).collect();
    let root = match one_sided.first() {
        Some(&j) => Some(sides[j].0),
        None => {
            let ranked: Vec<usize> = (0..nreg).filter(|&r| rank[r] == 1).collect();
            if ranked.len() != 1 {
                anomalies.push(format!("{} non-orientable regions in even degree", ranked.len()));
            }
            ranked.first().copied()
        }
    };
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nreg];
    for (k, &c) in ovals.iter().enumerate() {
        let (a, b) = sides[c];
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    let mut region_depth = vec![usize::MAX; nreg];
    let mut parent_oval: Vec<Option<usize>> = vec![None; nreg];
    let mut oval_outer = vec![usize::MAX; ovals.len()];
    if let Some(root) = root {
        region_depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(r) = queue.pop_front() {
            for &(s, k) in &adj[r] {
                if region_depth[s] == usize::MAX {
                    region_depth[s] = region_depth[r] + 1;
                    parent_oval[s] = Some(k);
                    oval_outer[k] = r;
                    queue.push_back(s);
                }
            }
        }
    }
    if nreg != ovals.len() + 1 || region_depth.contains(&usize::MAX) {
        anomalies.push(format!("{nreg} regions for {} ovals do not form a tree", ovals.len()));
    }

    let mut forest = Vec::with_capacity(ovals.len());
    let mut children = vec![0i64; nreg];
    for k in 0..ovals.len() {
        if oval_outer[k] != usize::MAX {
            children[oval_outer[k]] += 1;
        }
    }
    for (k, &c) in ovals.iter().enumerate() {
        let outer = oval_outer[k];
        let (a, b) = sides[c];
        let inner = if outer == a { b } else { a };
        let depth = if outer == usize::MAX { 0 } else { region_depth[outer] };
        let characteristic = region_chi[inner];
        if characteristic != 1 - children[inner] {
            anomalies.push(format!("oval {k}: characteristic {characteristic} against {} inner ovals", children[inner]));
        }
        forest.push(Oval {
            component: c,
            parent: if outer == usize::MAX { None } else { parent_oval[outer] },
            depth,
            even: depth % 2 == 0,
            characteristic,
            interior: inner,
            exterior: if outer == usize::MAX { inner } else { outer },
        });
    }
    // ovals inside each oval, for the even-region flags
    let mut inside = vec![0usize; forest.len()];
    for o in &forest {
        let mut cur = o.parent;
        while let Some(q) = cur {
            inside[q] += 1;
            cur = forest[q].parent;
        }
    }
    let mut flags = CharacteristicFlags::default();
    let (mut pe, mut no) = (0, 0);
    let mut hist = Vec::new();
    for o in &forest {
        if hist.len() <= o.depth {
            hist.resize(o.depth + 1, 0);
        }
        hist[o.depth] += 1;
        let ch = o.characteristic.signum();
        if o.even {
            pe += 1;
            match ch {
                1 => flags.p_plus += 1,
                -1 => flags.p_minus += 1,
                _ => flags.p_zero += 1,
            }
        } else {
            no += 1;
            match ch {
                1 => flags.n_plus += 1,
                -1 => flags.n_minus += 1,
                _ => flags.n_zero += 1,
            }
        }
    }

    let mut boundary = vec![Vec::new(); nreg];
    for c in 0..count {
        let (a, b) = sides[c];
        boundary[a].push(c);
        if b != a {
            boundary[b].push(c);
        }
    }
    let regions: Vec<Region> = (0..nreg)
        .map(|r| {
            let max_boundary_rank = boundary[r].iter().map(|c| one_sided.contains(c) as u8).max().unwrap_or(0);
            let even = (0..forest.len()).filter(|&k| oval_outer[k] == r).all(|k| inside[k] % 2 == 1);
            Region {
                id: r,
                chi: region_chi[r],
                rank: rank[r],
                boundary: boundary[r].clone(),
                even,
                principal: rank[r] > max_boundary_rank,
            }
        })
        .collect();
    let principals: Vec<usize> = regions.iter().filter(|r| r.principal).map(|r| r.id).collect();
    if principals.len() > 1 {
        anomalies.push(format!("{} principal regions", principals.len()));
    }

    let b_total = 2 * count as i64;
    TopologyReport {
        dim: 2,
        degree: d,
        components,
        ovals: Some(OvalSummary { p: pe, n: no, depth_histogram: hist, forest, one_sided: one_sided.len() }),
        regions,
        chi: 0,
        b_total,
        b_complex,
        a_defect: (b_complex - b_total).div_euclid(2),
        principal: principals.first().copied(),
        flags: Some(flags),
        mod2_degree: mod2,
        line_seed,
        non_primitive: false,
        anomalies,
    }
}
