//! Planar triangulations as plain triangle sets, for flips and star moves.

use std::collections::BTreeSet;

use crate::lattice::{LatticePoint, LatticePolytope, Triangulation};

pub(crate) type P = [i64; 2];
pub(crate) type Tri = [P; 3];

pub(crate) fn tri(a: P, b: P, c: P) -> Tri {
    let mut t = [a, b, c];
    t.sort();
    t
}

/// Twice the signed area of `o, a, b`.
pub(crate) fn cross(o: P, a: P, b: P) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

pub(crate) fn area2(t: &Tri) -> i64 {
    cross(t[0], t[1], t[2]).abs()
}

pub(crate) fn to_point(p: P) -> LatticePoint {
    LatticePoint::new(p)
}

pub(crate) fn polytope(pts: &[P]) -> LatticePolytope {
    LatticePolytope::new(pts.iter().map(|&p| to_point(p))).expect("planar lattice points")
}

pub(crate) fn from_triangulation(t: &Triangulation) -> Option<BTreeSet<Tri>> {
    if t.dim() != 2 {
        return None;
    }
    t.cells()
        .iter()
        .map(|c| {
            let v = c.vertices();
            let p = |k: usize| [v[k].coords()[0], v[k].coords()[1]];
            (v.len() == 3).then(|| tri(p(0), p(1), p(2)))
        })
        .collect()
}

pub(crate) fn to_triangulation(target: &LatticePolytope, tris: &BTreeSet<Tri>) -> Triangulation {
    Triangulation::new_unchecked(target.clone(), tris.iter().map(|t| polytope(t)).collect())
}

/// The third vertex of the triangle other than `not` sharing edge `a b`.
pub(crate) fn opposite(tris: &BTreeSet<Tri>, a: P, b: P, not: &Tri) -> Option<P> {
    tris.iter()
        .find(|t| *t != not && t.contains(&a) && t.contains(&b))
        .map(|t| *t.iter().find(|&&p| p != a && p != b).expect("triangle has three vertices"))
}

/// Flips the edge `a b` if its two triangles form a strictly convex quadrilateral.
pub(crate) fn try_flip(tris: &mut BTreeSet<Tri>, t: &Tri, a: P, b: P) -> bool {
    let c = *t.iter().find(|&&p| p != a && p != b).expect("edge of t");
    let Some(e) = opposite(tris, a, b, t) else { return false };
    let (sa, sb) = (cross(c, e, a).signum(), cross(c, e, b).signum());
    if sa == 0 || sa != -sb {
        return false;
    }
    tris.remove(t);
    tris.remove(&tri(a, b, e));
    tris.insert(tri(c, e, a));
    tris.insert(tri(c, e, b));
    true
}
