//! Convexity (regularity) of lattice subdivisions.
//!
//! A subdivision is regular when some height function on its vertices has a
//! lower convex hull whose linearity domains are exactly the cells. The
//! decision is an exact feasibility LP; both outcomes come with a proof object
//! that can be replayed independently of the solver.

pub(crate) mod lp;
mod planar;
mod refine;
mod star;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{self, q, Q};
use crate::lattice::{geometry, LatticePoint, LatticePolytope, LatticeSubdivision, Triangulation};
use crate::Result;
use lp::{Feasibility, Row, RowKind};

pub use refine::{convex_triangulation, maximal_convex_refinement, random_maximal_triangulation, Refinement};
pub use star::{convexify_star_moves, MoveKind, StarMove, StarMoveTrace};

/// An affine function `x -> linear . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFunctional {
    #[serde(with = "exact::vec")]
    pub linear: Vec<Q>,
    #[serde(with = "exact")]
    pub constant: Q,
}

impl AffineFunctional {
    pub fn eval(&self, p: &LatticePoint) -> Q {
        self.linear.iter().zip(p.coords()).map(|(a, &x)| a * q(x)).sum::<Q>() + &self.constant
    }
}

/// Heights on the vertices plus the affine functional of every cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingWitness {
    #[serde(with = "height_map")]
    pub heights: BTreeMap<LatticePoint, Q>,
    pub functionals: Vec<AffineFunctional>,
}

/// One row of the regularity LP, referenced by the data that generates it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Constraint {
    /// `aff_cell(vertex) - h(vertex) <= -1` for a vertex outside the cell.
    Separation { cell: usize, vertex: LatticePoint },
    /// `aff_cell(vertex) - h(vertex) = 0` for a vertex of a non-simplex cell.
    Coplanar { cell: usize, vertex: LatticePoint },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTerm {
    pub constraint: Constraint,
    #[serde(with = "exact")]
    pub multiplier: Q,
}

/// A Farkas combination of LP rows: the coefficients of every height cancel
/// while the right-hand sides sum to a negative number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonRegularityCertificate {
    pub terms: Vec<CertificateTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Regularity {
    Regular { witness: LiftingWitness },
    Nonregular { certificate: NonRegularityCertificate },
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular { .. })
    }
}

mod height_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<LatticePoint, Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k.key(), exact::to_string(v))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<LatticePoint, Q>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let p = LatticePoint::parse_key(&k).map_err(serde::de::Error::custom)?;
                let h = exact::parse(&v).ok_or_else(|| serde::de::Error::custom(format!("bad rational {v:?}")))?;
                Ok((p, h))
            })
            .collect()
    }
}

/// First `n + 1` affinely independent vertices of a full-dimensional cell.
fn cell_basis(c: &LatticePolytope) -> Vec<usize> {
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..c.vertices().len() {
        let mut trial = basis.clone();
        trial.push(i);
        let pts: Vec<&[i64]> = trial.iter().map(|&k| c.vertices()[k].coords()).collect();
        if geometry::affine_rank(&pts) + 1 == trial.len() {
            basis = trial;
            if basis.len() == c.ambient_dim() + 1 {
                break;
            }
        }
    }
    basis
}

/// Barycentric coordinates of `w` with respect to affinely independent points.
fn barycentric(basis: &[&LatticePoint], w: &LatticePoint) -> Vec<Q> {
    let n = w.dim();
    let mut a = vec![vec![Q::zero(); n + 1]; n + 1];
    for (j, v) in basis.iter().enumerate() {
        for k in 0..n {
            a[k][j] = q(v.coords()[k]);
        }
        a[n][j] = Q::one();
    }
    let mut b: Vec<Q> = w.coords().iter().map(|&x| q(x)).collect();
    b.push(Q::one());
    exact::solve_linear(a, b).expect("cell basis is affinely independent")
}

/// Coefficients over all vertices of `aff_cell(w) - h(w)`.
fn interpolation_row(
    s: &LatticeSubdivision,
    index: &BTreeMap<&LatticePoint, usize>,
    cell: usize,
    w: &LatticePoint,
) -> Vec<Q> {
    let c = &s.cells()[cell];
    let basis: Vec<&LatticePoint> = cell_basis(c).into_iter().map(|k| &c.vertices()[k]).collect();
    let mut row = vec![Q::zero(); index.len()];
    for (v, l) in basis.iter().zip(barycentric(&basis, w)) {
        row[index[v]] += l;
    }
    row[index[w]] -= Q::one();
    row
}

/// The rows of the regularity LP, before gauge fixing.
fn constraint_rows(s: &LatticeSubdivision) -> Vec<(Constraint, Row)> {
    let index: BTreeMap<&LatticePoint, usize> = s.vertex_set().iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rows = Vec::new();
    for (ci, c) in s.cells().iter().enumerate() {
        let basis = cell_basis(c);
        for (k, v) in c.vertices().iter().enumerate() {
            if !basis.contains(&k) {
                let coeffs = interpolation_row(s, &index, ci, v);
                rows.push((
                    Constraint::Coplanar { cell: ci, vertex: v.clone() },
                    Row { coeffs, kind: RowKind::Eq, rhs: Q::zero() },
                ));
            }
        }
    }
    // strict convexity across each interior facet; with coplanar cells this is
    // equivalent to the separation of every cell from every outside vertex.
    // One side of each facet suffices since both functionals agree on it.
    for (facet, a, b) in s.interior_facets() {
        let w = s.cells()[b].vertices().iter().find(|v| !facet.contains(v)).expect("facet of a full cell");
        let coeffs = interpolation_row(s, &index, a, w);
        rows.push((
            Constraint::Separation { cell: a, vertex: w.clone() },
            Row { coeffs, kind: RowKind::Le, rhs: -Q::one() },
        ));
    }
    rows
}

/// Decides regularity by exact LP.
pub fn check_regularity(s: &LatticeSubdivision) -> Result<Regularity> {
    let vertices: Vec<LatticePoint> = s.vertex_set().iter().cloned().collect();
    let rows = constraint_rows(s);
    // gauge: heights vanish on the basis of cell 0
    let c0 = &s.cells()[0];
    let pinned: BTreeSet<usize> = cell_basis(c0)
        .into_iter()
        .map(|k| vertices.binary_search(&c0.vertices()[k]).expect("cell vertex"))
        .collect();
    let free: Vec<usize> = (0..vertices.len()).filter(|i| !pinned.contains(i)).collect();
    let reduced: Vec<Row> = rows
        .iter()
        .map(|(_, r)| Row { coeffs: free.iter().map(|&i| r.coeffs[i].clone()).collect(), kind: r.kind, rhs: r.rhs.clone() })
        .collect();
    match lp::solve(&reduced, free.len()) {
        Feasibility::Feasible(x) => {
            let mut h = vec![Q::zero(); vertices.len()];
            for (&i, xi) in free.iter().zip(x) {
                h[i] = xi;
            }
            let heights: BTreeMap<LatticePoint, Q> = vertices.into_iter().zip(h).collect();
            let functionals = s.cells().iter().map(|c| interpolate(c, &heights)).collect();
            Ok(Regularity::Regular { witness: LiftingWitness { heights, functionals } })
        }
        Feasibility::Infeasible(y) => {
            debug_assert!(lp::is_farkas(&reduced, free.len(), &y));
            let terms = rows
                .into_iter()
                .zip(y)
                .filter(|(_, m)| !m.is_zero())
                .map(|((constraint, _), multiplier)| CertificateTerm { constraint, multiplier })
                .collect();
            Ok(Regularity::Nonregular { certificate: NonRegularityCertificate { terms } })
        }
    }
}

/// The affine functional through the lifted basis vertices of a cell.
fn interpolate(c: &LatticePolytope, heights: &BTreeMap<LatticePoint, Q>) -> AffineFunctional {
    let n = c.ambient_dim();
    let basis = cell_basis(c);
    let a: Vec<Vec<Q>> = basis
        .iter()
        .map(|&k| {
            let mut r: Vec<Q> = c.vertices()[k].coords().iter().map(|&x| q(x)).collect();
            r.push(Q::one());
            r
        })
        .collect();
    let b: Vec<Q> = basis.iter().map(|&k| heights[&c.vertices()[k]].clone()).collect();
    let mut sol = exact::solve_linear(a, b).expect("cell basis is affinely independent");
    let constant = sol.pop().expect("n + 1 unknowns");
    debug_assert_eq!(sol.len(), n);
    AffineFunctional { linear: sol, constant }
}

/// Builds a witness from heights alone; `None` if some height is missing.
pub fn witness_from_heights(s: &LatticeSubdivision, heights: BTreeMap<LatticePoint, Q>) -> Option<LiftingWitness> {
    if !s.vertex_set().iter().all(|v| heights.contains_key(v)) {
        return None;
    }
    let functionals = s.cells().iter().map(|c| interpolate(c, &heights)).collect();
    Some(LiftingWitness { heights, functionals })
}

/// Each functional interpolates its cell and lies strictly below every other vertex.
pub fn verify_witness(s: &LatticeSubdivision, w: &LiftingWitness) -> bool {
    if w.functionals.len() != s.cells().len() || !s.vertex_set().iter().all(|v| w.heights.contains_key(v)) {
        return false;
    }
    let n = s.dim();
    s.cells().iter().zip(&w.functionals).all(|(c, f)| {
        f.linear.len() == n
            && s.vertex_set().iter().all(|v| {
                let (fv, hv) = (f.eval(v), &w.heights[v]);
                if c.vertices().contains(v) {
                    fv == *hv
                } else {
                    fv < *hv
                }
            })
    })
}

/// Rebuilds every referenced row and checks the Farkas conditions.
pub fn verify_certificate(s: &LatticeSubdivision, c: &NonRegularityCertificate) -> bool {
    let index: BTreeMap<&LatticePoint, usize> = s.vertex_set().iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut combo = vec![Q::zero(); index.len()];
    let mut rhs = Q::zero();
    for t in &c.terms {
        let (cell, vertex, inequality) = match &t.constraint {
            Constraint::Separation { cell, vertex } => (*cell, vertex, true),
            Constraint::Coplanar { cell, vertex } => (*cell, vertex, false),
        };
        let Some(cp) = s.cells().get(cell) else { return false };
        if !index.contains_key(vertex) || cp.vertices().contains(vertex) == inequality {
            return false;
        }
        if inequality {
            if t.multiplier.is_negative() {
                return false;
            }
            rhs -= &t.multiplier;
        }
        for (acc, x) in combo.iter_mut().zip(interpolation_row(s, &index, cell, vertex)) {
            *acc += x * &t.multiplier;
        }
    }
    combo.iter().all(Zero::is_zero) && rhs.is_negative()
}

/// The classical non-regular "pinwheel" triangulation of `(0,0),(4,0),(0,4)`
/// around the inner triangle `(1,1),(2,1),(1,2)`.
pub fn pinwheel() -> Triangulation {
    let p = |x: i64, y: i64| LatticePoint::new([x, y]);
    let (a, b, c) = (p(0, 0), p(4, 0), p(0, 4));
    let (x, y, z) = (p(1, 1), p(2, 1), p(1, 2));
    let cells = vec![
        vec![a.clone(), b.clone(), y.clone()],
        vec![a.clone(), y.clone(), x.clone()],
        vec![b.clone(), c.clone(), z.clone()],
        vec![b.clone(), z.clone(), y.clone()],
        vec![c.clone(), a.clone(), x.clone()],
        vec![c.clone(), x.clone(), z.clone()],
        vec![x, y, z],
    ];
    let target = LatticePolytope::new([a, b, c]).expect("triangle");
    Triangulation::from_cells(target, cells).expect("pinwheel is a valid triangulation")
}
