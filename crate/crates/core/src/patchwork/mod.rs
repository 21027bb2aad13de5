//! The combinatorial hypersurface of a signed triangulation of `T_d^n`.
//!
//! The triangulation is reflected into all `2^n` orthants of the cross-polytope
//! `|x_1| + ... + |x_n| <= d`, the signs are extended by
//! `sigma(eps * i) = prod eps_k^(i_k) sigma(i)`, and every simplex with both
//! signs contributes the convex hull of the midpoints of its sign-changing
//! edges. In the projective model antipodal boundary points are identified.

mod moment;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{invalid, Result};
use crate::lattice::{LatticePoint, Triangulation};

pub use moment::{moment_map, moment_render, MomentImage, MomentSample};

/// Signs `+1` / `-1` on the vertices of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SignDistribution(BTreeMap<LatticePoint, i8>);

impl SignDistribution {
    pub fn new(signs: BTreeMap<LatticePoint, i8>) -> Result<Self> {
        if let Some((p, s)) = signs.iter().find(|(_, &s)| s != 1 && s != -1) {
            return invalid(format!("sign at {p:?} is {s}, expected +1 or -1"));
        }
        Ok(SignDistribution(signs))
    }

    pub fn from_fn(t: &Triangulation, f: impl Fn(&LatticePoint) -> i8) -> Self {
        SignDistribution(t.vertex_set().iter().map(|v| (v.clone(), if f(v) >= 0 { 1 } else { -1 })).collect())
    }

    pub fn constant(t: &Triangulation, s: i8) -> Self {
        Self::from_fn(t, |_| s)
    }

    pub fn get(&self, p: &LatticePoint) -> Option<i8> {
        self.0.get(p).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, i8)> {
        self.0.iter().map(|(p, &s)| (p, s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        SignDistribution(self.0.iter().map(|(p, &s)| (p.clone(), -s)).collect())
    }

    pub fn flip(&mut self, p: &LatticePoint) {
        if let Some(s) = self.0.get_mut(p) {
            *s = -*s;
        }
    }
}

impl Serialize for SignDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(p, v)| (p.key(), v)))
    }
}

impl<'de> Deserialize<'de> for SignDistribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, i8>::deserialize(d)?;
        let map = raw
            .into_iter()
            .map(|(k, v)| LatticePoint::parse_key(&k).map(|p| (p, v)))
            .collect::<Result<BTreeMap<_, _>>>()
            .map_err(serde::de::Error::custom)?;
        SignDistribution::new(map).map_err(serde::de::Error::custom)
    }
}

pub type PointId = u32;
/// A sign-changing edge, endpoints sorted; the node of the hypersurface at its midpoint.
pub type Edge = (PointId, PointId);
/// The nodes of one piece in cyclic order: 2 for a segment, 3 or 4 for a polygon.
pub type Piece = SmallVec<[Edge; 4]>;

fn edge(a: PointId, b: PointId) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthantCell {
    /// Bit `k` set means the cell lies in `x_k <= 0`.
    pub orthant: u8,
    /// Index of the cell of the base triangulation.
    pub base: usize,
    /// Sorted point ids.
    pub vertices: SmallVec<[PointId; 4]>,
}

/// The sign-independent part: all reflected copies of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthantComplex {
    dim: usize,
    degree: i64,
    points: Vec<LatticePoint>,
    base_vertices: Vec<LatticePoint>,
    /// Base vertex of each point (the point with absolute coordinates).
    base_of: Vec<u32>,
    /// Whether the sign at the point is the opposite of its base vertex sign.
    twisted: Vec<bool>,
    copies: Vec<Vec<PointId>>,
    cells: Vec<OrthantCell>,
    cells_of_point: Vec<Vec<u32>>,
    antipode: Vec<Option<PointId>>,
    edges: Vec<Edge>,
    /// Index of the smaller of each edge and its antipode.
    edge_canon: Vec<u32>,
    non_primitive: bool,
}

impl OrthantComplex {
    /// Reflects a triangulation of `T_d^n`, `n` in `{2, 3}`.
    pub fn new(t: &Triangulation) -> Result<Arc<Self>> {
        let n = t.dim();
        if !(2..=3).contains(&n) {
            return invalid(format!("patchworking is implemented for n = 2 and n = 3, got n = {n}"));
        }
        let Some(d) = t.standard_degree() else {
            return invalid("the triangulation must cover a standard simplex T_d^n");
        };
        let base_vertices: Vec<LatticePoint> = t.vertex_set().iter().cloned().collect();
        let reflect = |p: &LatticePoint, mask: u8| -> LatticePoint {
            LatticePoint::new(
                p.coords().iter().enumerate().map(|(k, &x)| if mask >> k & 1 == 1 { -x } else { x }).collect::<Vec<_>>(),
            )
        };
        let masks = 0..(1u8 << n);
        let point_set: BTreeSet<LatticePoint> =
            masks.clone().flat_map(|m| base_vertices.iter().map(move |p| reflect(p, m))).collect();
        let points: Vec<LatticePoint> = point_set.into_iter().collect();
        let id_of: BTreeMap<&LatticePoint, PointId> = points.iter().enumerate().map(|(i, p)| (p, i as PointId)).collect();
        let base_id: BTreeMap<&LatticePoint, u32> =
            base_vertices.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();

        let mut base_of = Vec::with_capacity(points.len());
        let mut twisted = Vec::with_capacity(points.len());
        let mut copies = vec![Vec::new(); base_vertices.len()];
        let mut antipode = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            let abs = LatticePoint::new(p.coords().iter().map(|x| x.abs()).collect::<Vec<_>>());
            let b = base_id[&abs];
            base_of.push(b);
            copies[b as usize].push(i as PointId);
            let odd: i64 = p.coords().iter().filter(|&&x| x < 0).map(|x| -x).sum();
            twisted.push(odd % 2 == 1);
            antipode.push((p.norm1() == d).then(|| {
                let neg = LatticePoint::new(p.coords().iter().map(|x| -x).collect::<Vec<_>>());
                id_of[&neg]
            }));
        }

        let mut cells = Vec::new();
        let mut cells_of_point = vec![Vec::new(); points.len()];
        for m in masks {
            for (ci, c) in t.cells().iter().enumerate() {
                let mut vs: SmallVec<[PointId; 4]> = c.vertices().iter().map(|v| id_of[&reflect(v, m)]).collect();
                vs.sort_unstable();
                for &v in &vs {
                    cells_of_point[v as usize].push(cells.len() as u32);
                }
                cells.push(OrthantCell { orthant: m, base: ci, vertices: vs });
            }
        }
        let mut edge_set = BTreeSet::new();
        for c in &cells {
            for (i, &a) in c.vertices.iter().enumerate() {
                for &b in &c.vertices[i + 1..] {
                    edge_set.insert((a, b));
                }
            }
        }
        let edges: Vec<Edge> = edge_set.into_iter().collect();
        let edge_canon = (0..edges.len())
            .map(|i| {
                let (a, b) = edges[i];
                match (antipode[a as usize], antipode[b as usize]) {
                    (Some(x), Some(y)) => {
                        let j = edges.binary_search(&edge(x, y)).expect("antipodal edge exists") as u32;
                        j.min(i as u32)
                    }
                    _ => i as u32,
                }
            })
            .collect();
        let non_primitive = !crate::lattice::is_primitive(t);
        Ok(Arc::new(OrthantComplex {
            dim: n,
            degree: d,
            points,
            base_vertices,
            base_of,
            twisted,
            copies,
            cells,
            cells_of_point,
            antipode,
            edges,
            edge_canon,
            non_primitive,
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, id: PointId) -> &LatticePoint {
        &self.points[id as usize]
    }

    pub fn base_vertices(&self) -> &[LatticePoint] {
        &self.base_vertices
    }

    pub fn base_index(&self, p: &LatticePoint) -> Option<usize> {
        self.base_vertices.binary_search(p).ok()
    }

    pub fn cells(&self) -> &[OrthantCell] {
        &self.cells
    }

    pub fn cells_of_point(&self, id: PointId) -> &[u32] {
        &self.cells_of_point[id as usize]
    }

    pub fn copies(&self, base: usize) -> &[PointId] {
        &self.copies[base]
    }

    /// The antipodal point, for points on the boundary `|x|_1 = d`.
    pub fn antipode(&self, id: PointId) -> Option<PointId> {
        self.antipode[id as usize]
    }

    pub fn on_boundary(&self, id: PointId) -> bool {
        self.antipode[id as usize].is_some()
    }

    /// Whether some simplex of the base triangulation is not primitive; the
    /// midpoint rule is then a combinatorial model only.
    pub fn non_primitive(&self) -> bool {
        self.non_primitive
    }

    /// All edges of all cells, sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// Index of the edge representing `edges()[i]` in the projective model.
    pub fn projective_edge(&self, i: usize) -> usize {
        self.edge_canon[i] as usize
    }

    /// The antipodal edge of a boundary edge.
    pub fn antipodal_edge(&self, e: Edge) -> Option<Edge> {
        Some(edge(self.antipode(e.0)?, self.antipode(e.1)?))
    }

    /// Twice the midpoint of an edge, as integer coordinates.
    pub fn doubled_midpoint(&self, e: Edge) -> Vec<i64> {
        let (a, b) = (self.point(e.0).coords(), self.point(e.1).coords());
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
}

/// A triangulation reflected into all orthants with extended signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedOrthantComplex {
    geometry: Arc<OrthantComplex>,
    base: Vec<i8>,
    signs: Vec<i8>,
}

impl SignedOrthantComplex {
    /// Base signs are given in the order of [`OrthantComplex::base_vertices`].
    pub fn from_base_signs(geometry: Arc<OrthantComplex>, base: Vec<i8>) -> Result<Self> {
        if base.len() != geometry.base_vertices.len() || base.iter().any(|&s| s != 1 && s != -1) {
            return invalid("one sign +1 or -1 is needed per vertex");
        }
        let signs = (0..geometry.points.len())
            .map(|i| {
                let s = base[geometry.base_of[i] as usize];
                if geometry.twisted[i] {
                    -s
                } else {
                    s
                }
            })
            .collect();
        Ok(SignedOrthantComplex { geometry, base, signs })
    }

    pub fn new(geometry: Arc<OrthantComplex>, sigma: &SignDistribution) -> Result<Self> {
        let base = geometry
            .base_vertices
            .iter()
            .map(|v| sigma.get(v).ok_or_else(|| crate::Error::InvalidArgument(format!("missing sign at vertex {v:?}"))))
            .collect::<Result<Vec<i8>>>()?;
        if sigma.len() != base.len() {
            let extra = sigma.iter().find(|(p, _)| geometry.base_index(p).is_none()).map(|(p, _)| p.clone());
            return invalid(format!("sign given at {extra:?}, which is not a vertex of the triangulation"));
        }
        Self::from_base_signs(geometry, base)
    }

    pub fn geometry(&self) -> &Arc<OrthantComplex> {
        &self.geometry
    }

    pub fn sign(&self, id: PointId) -> i8 {
        self.signs[id as usize]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn base_signs(&self) -> &[i8] {
        &self.base
    }

    /// The extended sign at any reflected vertex.
    pub fn sign_at(&self, p: &LatticePoint) -> Option<i8> {
        self.geometry.points.binary_search(p).ok().map(|i| self.signs[i])
    }

    pub fn distribution(&self) -> SignDistribution {
        SignDistribution(self.geometry.base_vertices.iter().cloned().zip(self.base.iter().copied()).collect())
    }

    fn flip_base(&mut self, b: usize) {
        self.base[b] = -self.base[b];
        for &c in &self.geometry.copies[b] {
            self.signs[c as usize] = -self.signs[c as usize];
        }
    }
}

/// Reflects `t` into all orthants and extends `sigma`.
pub fn extend_signs(t: &Triangulation, sigma: &SignDistribution) -> Result<SignedOrthantComplex> {
    SignedOrthantComplex::new(OrthantComplex::new(t)?, sigma)
}

fn piece_of(cell: &OrthantCell, signs: &[i8]) -> Option<Piece> {
    let vs = &cell.vertices;
    let (plus, minus): (SmallVec<[PointId; 4]>, SmallVec<[PointId; 4]>) =
        vs.iter().copied().partition(|&v| signs[v as usize] > 0);
    if plus.is_empty() || minus.is_empty() {
        return None;
    }
    let (lone, rest) = match (plus.len(), minus.len()) {
        (1, _) => (plus[0], minus),
        (_, 1) => (minus[0], plus),
        _ => {
            // 2-2 split of a tetrahedron: a quadrilateral in cyclic order
            let (a, b, c, e) = (plus[0], plus[1], minus[0], minus[1]);
            return Some(smallvec::smallvec![edge(a, c), edge(a, e), edge(b, e), edge(b, c)]);
        }
    };
    Some(rest.iter().map(|&v| edge(lone, v)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Affine,
    Projective,
}

/// The glued piecewise-linear hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchworkComplex {
    signed: SignedOrthantComplex,
    pieces: Vec<Option<Piece>>,
    model: Model,
}

/// Cuts every mixed simplex by its midpoint piece (affine model).
pub fn extract_hypersurface(c: &SignedOrthantComplex) -> PatchworkComplex {
    let pieces = c.geometry.cells.iter().map(|cell| piece_of(cell, &c.signs)).collect();
    PatchworkComplex { signed: c.clone(), pieces, model: Model::Affine }
}

/// Identifies antipodal boundary points.
pub fn projectivize(p: &PatchworkComplex) -> PatchworkComplex {
    PatchworkComplex { model: Model::Projective, ..p.clone() }
}

impl PatchworkComplex {
    /// Builds the projective hypersurface of `(t, sigma)` in one step.
    pub fn build(t: &Triangulation, sigma: &SignDistribution) -> Result<Self> {
        Ok(projectivize(&extract_hypersurface(&extend_signs(t, sigma)?)))
    }

    pub fn from_base_signs(geometry: Arc<OrthantComplex>, base: Vec<i8>) -> Result<Self> {
        Ok(projectivize(&extract_hypersurface(&SignedOrthantComplex::from_base_signs(geometry, base)?)))
    }

    pub fn geometry(&self) -> &OrthantComplex {
        &self.signed.geometry
    }

    pub fn geometry_arc(&self) -> &Arc<OrthantComplex> {
        &self.signed.geometry
    }

    pub fn signed(&self) -> &SignedOrthantComplex {
        &self.signed
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn dim(&self) -> usize {
        self.signed.geometry.dim
    }

    pub fn degree(&self) -> i64 {
        self.signed.geometry.degree
    }

    /// Pieces with the index of the cell containing them.
    pub fn pieces(&self) -> impl Iterator<Item = (usize, &Piece)> {
        self.pieces.iter().enumerate().filter_map(|(i, p)| p.as_ref().map(|p| (i, p)))
    }

    pub fn piece(&self, cell: usize) -> Option<&Piece> {
        self.pieces[cell].as_ref()
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.iter().all(Option::is_none)
    }

    /// The node an edge midpoint represents: in the projective model boundary
    /// nodes are replaced by the smaller of the edge and its antipode.
    pub fn node_key(&self, e: Edge) -> Edge {
        match (self.model, self.geometry().antipodal_edge(e)) {
            (Model::Projective, Some(a)) => a.min(e),
            _ => e,
        }
    }

    /// Flips the sign of a base vertex. Only the pieces of cells incident to a
    /// copy of that vertex are recomputed.
    pub fn flip(&mut self, base_vertex: usize) {
        self.signed.flip_base(base_vertex);
        let geometry = self.signed.geometry.clone();
        for &copy in geometry.copies(base_vertex) {
            for &c in geometry.cells_of_point(copy) {
                self.pieces[c as usize] = piece_of(&geometry.cells[c as usize], &self.signed.signs);
            }
        }
    }

    pub fn flip_point(&mut self, p: &LatticePoint) -> Result<()> {
        match self.geometry().base_index(p) {
            Some(b) => {
                self.flip(b);
                Ok(())
            }
            None => invalid(format!("{p:?} is not a vertex of the triangulation")),
        }
    }
}
