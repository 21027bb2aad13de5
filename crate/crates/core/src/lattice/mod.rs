//! Lattice points, lattice polytopes and their subdivisions.
//!
//! All predicates are exact. Polytopes are stored by their extreme points in
//! lexicographic order, so two polytopes compare equal exactly when they are
//! the same point set.

pub(crate) mod geometry;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use geometry::Facet;

/// A point of `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        LatticePoint(coords.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `l1` norm; equals the degree of the monomial for points of `T_d^n`.
    pub fn norm1(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    /// Comma-separated key, e.g. `"1,2"`, used in JSON sign maps.
    pub fn key(&self) -> String {
        self.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse_key(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(LatticePoint)
            .map_err(|_| Error::InvalidArgument(format!("bad lattice point key {s:?}")))
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(c: [i64; N]) -> Self {
        LatticePoint(c.to_vec())
    }
}

/// A convex lattice polytope, stored by its vertices (extreme points).
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<LatticePoint>", into = "Vec<LatticePoint>")]
pub struct LatticePolytope {
    vertices: Vec<LatticePoint>,
    dim: usize,
    #[serde(skip)]
    facets: Vec<Facet>,
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.vertices).finish()
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl TryFrom<Vec<LatticePoint>> for LatticePolytope {
    type Error = Error;
    fn try_from(points: Vec<LatticePoint>) -> Result<Self> {
        LatticePolytope::new(points)
    }
}

impl From<LatticePolytope> for Vec<LatticePoint> {
    fn from(p: LatticePolytope) -> Self {
        p.vertices
    }
}

impl LatticePolytope {
    /// Convex hull of the given points. Non-extreme points are dropped.
    pub fn new(points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let set: BTreeSet<LatticePoint> = points.into_iter().collect();
        let Some(first) = set.iter().next() else {
            return invalid("a polytope needs at least one point");
        };
        let n = first.dim();
        if n == 0 || set.iter().any(|p| p.dim() != n) {
            return invalid("points of a polytope must share a positive dimension");
        }
        let raw: Vec<Vec<i64>> = set.iter().map(|p| p.0.clone()).collect();
        let extreme = geometry::extreme_points(&raw);
        let vertices: Vec<LatticePoint> = extreme.iter().map(|&i| LatticePoint(raw[i].clone())).collect();
        let coords: Vec<&[i64]> = vertices.iter().map(|v| v.coords()).collect();
        let dim = geometry::affine_rank(&coords);
        let facets = if dim == n {
            let vs: Vec<Vec<i64>> = vertices.iter().map(|v| v.0.clone()).collect();
            geometry::facets(&vs)
        } else {
            Vec::new()
        };
        Ok(LatticePolytope { vertices, dim, facets })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    pub(crate) fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Vertex sets of the facets of a full-dimensional polytope.
    pub fn facet_vertex_sets(&self) -> Vec<Vec<LatticePoint>> {
        self.facets
            .iter()
            .map(|f| f.members.iter().map(|&i| self.vertices[i].clone()).collect())
            .collect()
    }

    /// Whether `p` lies in the polytope (only for full-dimensional polytopes).
    pub fn contains(&self, p: &LatticePoint) -> bool {
        debug_assert!(self.is_full_dimensional());
        self.facets.iter().all(|f| f.satisfied(p.coords()))
    }

    /// Whether `p` lies on the boundary of a full-dimensional polytope.
    pub fn on_boundary(&self, p: &LatticePoint) -> bool {
        self.contains(p) && self.facets.iter().any(|f| f.contains(p.coords()))
    }

    /// `n!` times the Euclidean volume; an integer for lattice polytopes.
    pub fn normalized_volume(&self) -> i128 {
        if !self.is_full_dimensional() {
            return 0;
        }
        let vs: Vec<Vec<i64>> = self.vertices.iter().map(|v| v.0.clone()).collect();
        geometry::pulling_triangulation(&vs)
            .iter()
            .map(|s| {
                let refs: Vec<&[i64]> = s.iter().map(|&i| vs[i].as_slice()).collect();
                geometry::orientation(&refs).abs()
            })
            .sum()
    }

    /// All lattice points of a full-dimensional polytope, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let n = self.ambient_dim();
        let lo: Vec<i64> = (0..n).map(|k| self.vertices.iter().map(|v| v.0[k]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..n).map(|k| self.vertices.iter().map(|v| v.0[k]).max().unwrap()).collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let p = LatticePoint(cur.clone());
            if self.contains(&p) {
                out.push(p);
            }
            // odometer, last coordinate fastest keeps lexicographic order
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = lo[k];
            }
        }
    }

    /// Bounding box as `(min, max)` per coordinate.
    fn bbox(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.ambient_dim();
        (
            (0..n).map(|k| self.vertices.iter().map(|v| v.0[k]).min().unwrap()).collect(),
            (0..n).map(|k| self.vertices.iter().map(|v| v.0[k]).max().unwrap()).collect(),
        )
    }
}

/// The simplex with vertices `0, d e_1, ..., d e_n`.
pub fn standard_simplex(n: i64, d: i64) -> Result<LatticePolytope> {
    if n < 1 || d < 1 {
        return invalid(format!("standard simplex needs n >= 1 and d >= 1, got n={n}, d={d}"));
    }
    let n = n as usize;
    let mut pts = vec![LatticePoint(vec![0; n])];
    for k in 0..n {
        let mut p = vec![0; n];
        p[k] = d;
        pts.push(LatticePoint(p));
    }
    LatticePolytope::new(pts)
}

/// One problem found by [`validate_subdivision`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// A cell has a vertex outside the target polytope.
    OutsideTarget { cell: usize },
    /// Two cells overlap in a full-dimensional region.
    Overlap { cells: [usize; 2] },
    /// Two cells meet, but not in a common face.
    NonFaceIntersection { cells: [usize; 2] },
    /// The cells do not cover the target (normalized volumes).
    Gap { covered: i128, target: i128 },
    /// The cells' total volume exceeds the target.
    Excess { covered: i128, target: i128 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        match self.violations.as_slice() {
            [] => "valid".to_string(),
            [v] => format!("{v:?}"),
            [v, rest @ ..] => format!("{v:?} and {} more", rest.len()),
        }
    }
}

/// Checks that `cells` form a polyhedral subdivision of `target`: every cell
/// lies in the target, volumes add up, and any two cells meet in a common
/// face or not at all.
pub fn validate_subdivision(cells: &[LatticePolytope], target: &LatticePolytope) -> Result<ValidationReport> {
    let n = target.ambient_dim();
    if !target.is_full_dimensional() {
        return invalid("the target polytope must be full-dimensional");
    }
    for (i, c) in cells.iter().enumerate() {
        if c.ambient_dim() != n || c.dim() != n {
            return invalid(format!("cell {i} has dimension {} but the target has dimension {n}", c.dim()));
        }
    }
    let mut violations = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        if !c.vertices().iter().all(|v| target.contains(v)) {
            violations.push(Violation::OutsideTarget { cell: i });
        }
    }
    let boxes: Vec<_> = cells.iter().map(LatticePolytope::bbox).collect();
    let raw: Vec<Vec<Vec<i64>>> =
        cells.iter().map(|c| c.vertices().iter().map(|v| v.0.clone()).collect()).collect();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let (lo_a, hi_a) = &boxes[i];
            let (lo_b, hi_b) = &boxes[j];
            if (0..n).any(|k| hi_a[k] < lo_b[k] || hi_b[k] < lo_a[k]) {
                continue;
            }
            let w = geometry::intersection_vertices(cells[i].facets(), cells[j].facets(), n);
            if w.is_empty() {
                continue;
            }
            if geometry::rational_affine_rank(&w) == n {
                violations.push(Violation::Overlap { cells: [i, j] });
            } else if !geometry::spans_face(&raw[i], cells[i].facets(), &w)
                || !geometry::spans_face(&raw[j], cells[j].facets(), &w)
            {
                violations.push(Violation::NonFaceIntersection { cells: [i, j] });
            }
        }
    }
    let covered: i128 = cells.iter().map(LatticePolytope::normalized_volume).sum();
    let total = target.normalized_volume();
    if covered < total {
        violations.push(Violation::Gap { covered, target: total });
    } else if covered > total {
        violations.push(Violation::Excess { covered, target: total });
    }
    Ok(ValidationReport { violations })
}

/// A polyhedral subdivision of a full-dimensional lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSubdivision {
    target: LatticePolytope,
    cells: Vec<LatticePolytope>,
    #[serde(skip)]
    vertex_set: BTreeSet<LatticePoint>,
}

impl LatticeSubdivision {
    /// Validates and builds a subdivision.
    pub fn new(target: LatticePolytope, cells: Vec<LatticePolytope>) -> Result<Self> {
        let report = validate_subdivision(&cells, &target)?;
        if !report.is_valid() {
            return Err(Error::InvalidSubdivision(report));
        }
        Ok(Self::new_unchecked(target, cells))
    }

    pub(crate) fn new_unchecked(target: LatticePolytope, cells: Vec<LatticePolytope>) -> Self {
        let vertex_set = cells.iter().flat_map(|c| c.vertices().iter().cloned()).collect();
        LatticeSubdivision { target, cells, vertex_set }
    }

    /// The subdivision consisting of the target alone.
    pub fn trivial(target: LatticePolytope) -> Self {
        Self::new_unchecked(target.clone(), vec![target])
    }

    pub fn target(&self) -> &LatticePolytope {
        &self.target
    }

    pub fn cells(&self) -> &[LatticePolytope] {
        &self.cells
    }

    pub fn vertex_set(&self) -> &BTreeSet<LatticePoint> {
        &self.vertex_set
    }

    pub fn dim(&self) -> usize {
        self.target.ambient_dim()
    }

    /// Interior facets: vertex sets shared by exactly two cells, with the
    /// indices of those cells.
    pub fn interior_facets(&self) -> Vec<(Vec<LatticePoint>, usize, usize)> {
        let mut by_facet: BTreeMap<Vec<LatticePoint>, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.cells.iter().enumerate() {
            for f in c.facet_vertex_sets() {
                by_facet.entry(f).or_default().push(i);
            }
        }
        by_facet
            .into_iter()
            .filter_map(|(f, cs)| (cs.len() == 2).then(|| (f, cs[0], cs[1])))
            .collect()
    }

    /// Whether every cell of `self` lies inside some cell of `coarse`.
    pub fn refines(&self, coarse: &LatticeSubdivision) -> bool {
        self.cells
            .iter()
            .all(|c| coarse.cells.iter().any(|big| c.vertices().iter().all(|v| big.contains(v))))
    }
}

/// A subdivision all of whose cells are simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Triangulation(LatticeSubdivision);

impl Triangulation {
    pub fn new(s: LatticeSubdivision) -> Result<Self> {
        if let Some(i) = s.cells.iter().position(|c| !c.is_simplex()) {
            return invalid(format!("cell {i} is not a simplex"));
        }
        Ok(Triangulation(s))
    }

    /// Validates and builds a triangulation from raw vertex lists.
    pub fn from_cells(target: LatticePolytope, cells: Vec<Vec<LatticePoint>>) -> Result<Self> {
        let n = target.ambient_dim();
        let cells = cells
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                if c.len() != n + 1 {
                    return invalid(format!("cell {i} has {} vertices, a simplex needs {}", c.len(), n + 1));
                }
                LatticePolytope::new(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(LatticeSubdivision::new(target, cells)?)
    }

    pub(crate) fn new_unchecked(target: LatticePolytope, cells: Vec<LatticePolytope>) -> Self {
        Triangulation(LatticeSubdivision::new_unchecked(target, cells))
    }

    pub fn subdivision(&self) -> &LatticeSubdivision {
        &self.0
    }

    pub fn cells(&self) -> &[LatticePolytope] {
        self.0.cells()
    }

    pub fn target(&self) -> &LatticePolytope {
        self.0.target()
    }

    pub fn vertex_set(&self) -> &BTreeSet<LatticePoint> {
        self.0.vertex_set()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// The degree `d` if the target is the standard simplex `T_d^n`.
    pub fn standard_degree(&self) -> Option<i64> {
        let n = self.dim() as i64;
        let t = self.target();
        let d = t.vertices().iter().map(LatticePoint::norm1).max()?;
        (standard_simplex(n, d).ok().as_ref() == Some(t)).then_some(d)
    }
}

/// Every simplex has normalized volume 1 (Euclidean volume `1/n!`).
pub fn is_primitive(t: &Triangulation) -> bool {
    t.cells().iter().all(|c| c.normalized_volume() == 1)
}

/// A subdivision is maximal when all its cells are simplices and every
/// lattice point of the target is a vertex. In dimension 3 this is weaker than
/// [`is_primitive`]: empty tetrahedra need not be unimodular.
pub fn is_maximal(s: &LatticeSubdivision) -> bool {
    s.cells().iter().all(LatticePolytope::is_simplex)
        && s.target().lattice_points().iter().all(|p| s.vertex_set().contains(p))
}
