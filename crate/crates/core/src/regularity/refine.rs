//! Lower-hull refinement with perturbed paraboloid heights.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::planar;
use crate::lattice::{geometry, standard_simplex, LatticePoint, LatticePolytope, LatticeSubdivision, Triangulation};
use crate::{Error, Result};

/// A maximal triangulation together with the integer heights whose lower
/// hull, cell by cell, produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Refinement {
    pub triangulation: Triangulation,
    #[serde(serialize_with = "serialize_heights")]
    pub heights: BTreeMap<LatticePoint, i64>,
}

fn serialize_heights<S: serde::Serializer>(m: &BTreeMap<LatticePoint, i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k.key(), v)))
}

const SCALE: i64 = 1 << 32;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// `2^32 f(p)` plus a small deterministic perturbation that breaks ties
/// without changing any strict configuration. In the plane `f` is the
/// paraboloid `|p|^2`. From dimension 3 on, where generic lifts can produce
/// empty tetrahedra of volume above one, `f` is `sum (u_i - u_j)^2` over the
/// partial sums `u_0 = 0, u_k = x_1 + ... + x_k`: it bends across every wall
/// `u_i - u_j` integral, so its cells are unimodular alcoves.
fn height(p: &LatticePoint, salt: u64) -> i64 {
    let c = p.coords();
    let base: i64 = if c.len() < 3 {
        c.iter().map(|x| x * x).sum()
    } else {
        let u: Vec<i64> = std::iter::once(0).chain(c.iter().scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        }))
        .collect();
        (0..u.len()).flat_map(|i| (i + 1..u.len()).map(move |j| (i, j))).map(|(i, j)| (u[i] - u[j]).pow(2)).sum()
    };
    let h = c.iter().fold(salt, |acc, &x| splitmix(acc ^ (x as u64)));
    SCALE * base + (h % 256) as i64
}

/// The simplices of the lower hull of the lifted points, or `None` if the hull
/// has a non-simplicial facet.
fn lower_simplices(points: &[LatticePoint], h: &[i64]) -> Option<Vec<Vec<usize>>> {
    let n = points[0].dim();
    let diff = |a: usize, b: usize| -> Vec<i128> {
        let mut r: Vec<i128> = (0..n).map(|k| (points[a].coords()[k] - points[b].coords()[k]) as i128).collect();
        r.push((h[a] - h[b]) as i128);
        r
    };
    let mut out = Vec::new();
    for s in (0..points.len()).combinations(n + 1) {
        let base: Vec<Vec<i128>> = (1..=n).map(|k| diff(s[k], s[0])).collect();
        let d = geometry::det(base.iter().map(|r| r[..n].to_vec()).collect());
        if d == 0 {
            continue;
        }
        let mut tie = false;
        let mut lower = true;
        for qi in 0..points.len() {
            if s.contains(&qi) {
                continue;
            }
            let mut m = base.clone();
            m.push(diff(qi, s[0]));
            let o = geometry::det(m).signum() * d.signum();
            if o < 0 {
                lower = false;
                break;
            }
            tie |= o == 0;
        }
        if lower {
            if tie {
                return None;
            }
            out.push(s);
        }
    }
    Some(out)
}

/// Triangulates every cell by the lower hull of its lattice points lifted to
/// a (perturbed) paraboloid. The heights are global, so the pieces agree on
/// shared faces and the result is a maximal triangulation refining `s`.
pub fn maximal_convex_refinement(s: &LatticeSubdivision) -> Refinement {
    let points = s.target().lattice_points();
    'salt: for salt in 0u64.. {
        let heights: BTreeMap<LatticePoint, i64> = points.iter().map(|p| (p.clone(), height(p, salt))).collect();
        let mut cells = BTreeSet::new();
        for c in s.cells() {
            let local: Vec<LatticePoint> = points.iter().filter(|p| c.contains(p)).cloned().collect();
            let h: Vec<i64> = local.iter().map(|p| heights[p]).collect();
            let Some(simplices) = lower_simplices(&local, &h) else { continue 'salt };
            for simplex in simplices {
                let vs: Vec<LatticePoint> = simplex.iter().map(|&i| local[i].clone()).collect();
                cells.insert(vs);
            }
        }
        let cells: Vec<LatticePolytope> =
            cells.into_iter().map(|vs| LatticePolytope::new(vs).expect("lattice simplex")).collect();
        return Refinement { triangulation: Triangulation::new_unchecked(s.target().clone(), cells), heights };
    }
    unreachable!("some salt breaks all ties")
}

/// The maximal convex triangulation of `T_d^n` used as the fixed triangulation
/// throughout.
pub fn convex_triangulation(n: i64, d: i64) -> Result<Triangulation> {
    let t = standard_simplex(n, d)?;
    Ok(maximal_convex_refinement(&LatticeSubdivision::trivial(t)).triangulation)
}

/// A maximal (hence primitive) triangulation of `T_d^2` obtained from the
/// convex one by random diagonal flips; flips keep primitivity, not convexity.
pub fn random_maximal_triangulation(d: i64, flips: usize, seed: u64) -> Result<Triangulation> {
    let start = convex_triangulation(2, d)?;
    let mut tris = planar::from_triangulation(&start).ok_or_else(|| Error::Anomaly("planar triangulation".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < flips && attempts < 50 * flips.max(1) {
        attempts += 1;
        let t = *tris.iter().nth(rng.gen_range(0..tris.len())).expect("nonempty");
        let k = rng.gen_range(0..3);
        let (a, b) = (t[k], t[(k + 1) % 3]);
        if planar::try_flip(&mut tris, &t, a, b) {
            done += 1;
        }
    }
    Ok(planar::to_triangulation(start.target(), &tris))
}
