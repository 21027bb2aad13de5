//! Growing the star of the origin until it covers `T_d^2`.
//!
//! The link of `O` is walked counterclockwise from the x-axis to the y-axis as
//! `P_1, ..., P_r`; `T_i` is the triangle outside the star on edge `P_i P_{i+1}`
//! and `Q_i` its third vertex. Each step applies the first available move:
//!
//! * case i: `Q_i` strictly inside the angle `P_i O P_{i+1}`; flip the edge.
//! * case ii: `T_i = T_{i+1}`; the degree-3 vertex `P_{i+1}` disappears.
//! * case iii: every `T_i` is left (`Q_i` on or beyond the ray `OP_i`) or right
//!   (on or beyond `OP_{i+1}`); the first left triangle lies on the x-axis or on
//!   the ray through `P_i`, and the vertex it hides is removed. With no left
//!   triangle the mirror situation on the y-axis applies.

use std::collections::BTreeSet;

use serde::Serialize;

use super::planar::{self, area2, cross, tri, Tri, P};
use super::check_regularity;
use crate::lattice::{is_maximal, LatticePoint, LatticeSubdivision, Triangulation};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    #[serde(rename = "i")]
    Flip,
    #[serde(rename = "ii")]
    RemoveInner,
    #[serde(rename = "iii")]
    RemoveHidden,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StarMove {
    pub kind: MoveKind,
    pub removed: Vec<[LatticePoint; 3]>,
    pub inserted: Vec<[LatticePoint; 3]>,
    /// Twice the area of the star of `O` after the move.
    pub star_area2: i64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StarMoveTrace {
    pub degree: i64,
    /// Twice the area of the initial star.
    pub initial_star_area2: i64,
    pub moves: Vec<StarMove>,
    /// The final triangulation, the cone from `O` over the hypotenuse.
    #[serde(rename = "final")]
    pub final_triangulation: Triangulation,
}

const O: P = [0, 0];

fn lattice_tri(t: &Tri) -> [LatticePoint; 3] {
    t.map(planar::to_point)
}

fn star_area2(tris: &BTreeSet<Tri>) -> i64 {
    tris.iter().filter(|t| t.contains(&O)).map(area2).sum()
}

/// The link `P_1..P_r` of `O`, ordered by angle.
fn link(tris: &BTreeSet<Tri>) -> Result<Vec<P>> {
    let mut edges: Vec<(P, P)> = tris
        .iter()
        .filter(|t| t.contains(&O))
        .map(|t| {
            let mut e = t.iter().copied().filter(|&p| p != O);
            let (a, b) = (e.next().expect("vertex"), e.next().expect("vertex"));
            if cross(O, a, b) > 0 {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort_by(|x, y| cross(O, y.0, x.0).cmp(&0));
    let mut out = vec![edges[0].0];
    for (a, b) in &edges {
        if out.last() != Some(a) {
            return Err(Error::Anomaly("the star of the origin is not a fan".into()));
        }
        out.push(*b);
    }
    Ok(out)
}

struct Plan {
    kind: MoveKind,
    removed: Vec<Tri>,
    inserted: Vec<Tri>,
}

fn plan(tris: &BTreeSet<Tri>) -> Result<Plan> {
    let p = link(tris)?;
    let r = p.len();
    // q[i] is the apex outside the star on edge p[i] p[i+1]
    let q: Vec<Option<P>> = (0..r - 1).map(|i| planar::opposite(tris, p[i], p[i + 1], &tri(O, p[i], p[i + 1]))).collect();
    let star = |i: usize| tri(O, p[i], p[i + 1]);
    let outer = |i: usize| tri(p[i], p[i + 1], q[i].expect("apex"));

    for i in 0..r - 1 {
        if let Some(qi) = q[i] {
            if cross(O, p[i], qi) > 0 && cross(O, qi, p[i + 1]) > 0 {
                return Ok(Plan {
                    kind: MoveKind::Flip,
                    removed: vec![star(i), outer(i)],
                    inserted: vec![tri(O, p[i], qi), tri(O, qi, p[i + 1])],
                });
            }
        }
    }
    for i in 0..r.saturating_sub(2) {
        if q[i] == Some(p[i + 2]) {
            return Ok(Plan {
                kind: MoveKind::RemoveInner,
                removed: vec![star(i), star(i + 1), outer(i)],
                inserted: vec![tri(O, p[i], p[i + 2])],
            });
        }
    }
    let left = |i: usize| q[i].is_some_and(|qi| cross(O, p[i], qi) <= 0);
    let right = |i: usize| q[i].is_some_and(|qi| cross(O, qi, p[i + 1]) <= 0);
    let on_ray = |a: P, b: P| cross(O, a, b) == 0 && a[0] * b[0] + a[1] * b[1] > 0;
    let stuck = || Error::Anomaly(format!("no star move applies around the link {p:?}"));

    if let Some(i) = (0..r - 1).find(|&i| left(i)) {
        let qi = q[i].expect("apex");
        if i == 0 {
            // Q on the x-axis beyond P_1
            if !on_ray(p[0], qi) {
                return Err(stuck());
            }
            return Ok(Plan {
                kind: MoveKind::RemoveHidden,
                removed: vec![star(0), outer(0)],
                inserted: vec![tri(O, qi, p[1])],
            });
        }
        // T_{i-1} is right with the same apex, P_i lies on the segment O Q
        if !(right(i - 1) && q[i - 1] == Some(qi) && on_ray(p[i], qi)) {
            return Err(stuck());
        }
        return Ok(Plan {
            kind: MoveKind::RemoveHidden,
            removed: vec![star(i - 1), star(i), outer(i - 1), outer(i)],
            inserted: vec![tri(O, p[i - 1], qi), tri(O, qi, p[i + 1])],
        });
    }
    if let Some(i) = (0..r - 1).rev().find(|&i| right(i)) {
        let qi = q[i].expect("apex");
        if i == r - 2 && on_ray(p[r - 1], qi) {
            return Ok(Plan {
                kind: MoveKind::RemoveHidden,
                removed: vec![star(i), outer(i)],
                inserted: vec![tri(O, p[i], qi)],
            });
        }
    }
    Err(stuck())
}

/// Every patch of a move admits a convex lift: the removed triangles of each
/// inserted triangle, or both triangulations of a flipped quadrilateral.
fn patches_regular(plan: &Plan) -> Result<bool> {
    let regular = |target: &[P], cells: &[Tri]| -> Result<bool> {
        let s = LatticeSubdivision::new(planar::polytope(target), cells.iter().map(|t| planar::polytope(t)).collect())?;
        Ok(check_regularity(&s)?.is_regular())
    };
    match plan.kind {
        MoveKind::Flip => {
            let quad: Vec<P> = plan.removed.iter().flatten().copied().collect();
            Ok(regular(&quad, &plan.removed)? && regular(&quad, &plan.inserted)?)
        }
        _ => {
            for x in &plan.inserted {
                let inside: Vec<Tri> = plan
                    .removed
                    .iter()
                    .filter(|t| {
                        t.iter().all(|&v| (0..3).all(|k| cross(x[k], x[(k + 1) % 3], v) * cross(x[k], x[(k + 1) % 3], x[(k + 2) % 3]) >= 0))
                    })
                    .copied()
                    .collect();
                if !regular(x, &inside)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Transforms a maximal triangulation of `T_d^2` into the cone from the
/// origin, growing the star of `O` at every step. Each move is checked: areas
/// are preserved, the star grows, and every local patch is regular.
pub fn convexify_star_moves(t: &Triangulation) -> Result<StarMoveTrace> {
    let d = match (t.dim(), t.standard_degree()) {
        (2, Some(d)) => d,
        _ => return Err(Error::InvalidArgument("star moves need a triangulation of T_d^2".into())),
    };
    let mut tris = planar::from_triangulation(t).expect("planar triangulation");
    let full = d * d;
    let initial = star_area2(&tris);
    if initial < full && !is_maximal(t.subdivision()) {
        return Err(Error::InvalidArgument("star moves need a maximal triangulation".into()));
    }
    let mut moves = Vec::new();
    let mut area = initial;
    while area < full {
        let plan = plan(&tris)?;
        let before: i64 = plan.removed.iter().map(area2).sum();
        let after: i64 = plan.inserted.iter().map(area2).sum();
        if before != after || !plan.removed.iter().all(|x| tris.contains(x)) {
            return Err(Error::Anomaly(format!("{:?} move does not retile its patch", plan.kind)));
        }
        if !patches_regular(&plan)? {
            return Err(Error::Anomaly(format!("{:?} move has a non-convex patch", plan.kind)));
        }
        for x in &plan.removed {
            tris.remove(x);
        }
        tris.extend(plan.inserted.iter().copied());
        let next = star_area2(&tris);
        if next <= area {
            return Err(Error::Anomaly("star move did not grow the star".into()));
        }
        area = next;
        moves.push(StarMove {
            kind: plan.kind,
            removed: plan.removed.iter().map(lattice_tri).collect(),
            inserted: plan.inserted.iter().map(lattice_tri).collect(),
            star_area2: area,
        });
    }
    Ok(StarMoveTrace {
        degree: d,
        initial_star_area2: initial,
        moves,
        final_triangulation: planar::to_triangulation(t.target(), &tris),
    })
}
