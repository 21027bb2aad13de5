//! Exact integer geometry for small dimensions: determinants, ranks, facets of
//! convex hulls, pulling triangulations and polytope intersections.
//!
//! Everything here works on plain `i64` coordinate vectors and uses `i128`
//! intermediates. Dimensions are at most 4 (a lifted 3-dimensional
//! configuration), so brute-force enumeration of supporting hyperplanes is fine.

use itertools::Itertools;
use num_integer::Integer;

/// Fraction-free Gaussian elimination (Bareiss). `m` is consumed as scratch.
pub(crate) fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Rank of an integer matrix given by rows.
pub(crate) fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| g.gcd(&x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn diffs(points: &[&[i64]]) -> Vec<Vec<i128>> {
    let base = points[0];
    points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| (*a - *b) as i128).collect())
        .collect()
}

/// Affine dimension of a point set (`-1` is never returned; the empty set has rank 0).
pub(crate) fn affine_rank(points: &[&[i64]]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    rank(&diffs(points))
}

/// Orientation determinant of `k+1` points in `R^k`.
pub(crate) fn orientation(points: &[&[i64]]) -> i128 {
    det(diffs(points))
}

/// Normal vector of the hyperplane spanned by `k-1` difference vectors in `R^k`,
/// via cofactor expansion, reduced by its content. The zero vector means the
/// vectors are dependent.
pub(crate) fn normal(vectors: &[Vec<i128>], k: usize) -> Vec<i128> {
    let mut n: Vec<i128> = (0..k)
        .map(|j| {
            let mut m: Vec<Vec<i128>> = vectors.to_vec();
            let mut e = vec![0i128; k];
            e[j] = 1;
            m.push(e);
            det(m)
        })
        .collect();
    let g = n.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        n.iter_mut().for_each(|x| *x /= g);
    }
    n
}

pub(crate) fn dot(a: &[i128], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * *y as i128).sum()
}

/// A supporting hyperplane `normal · x <= offset` of a full-dimensional point
/// set, together with the indices of the points it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Facet {
    pub normal: Vec<i128>,
    pub offset: i128,
    pub members: Vec<usize>,
}

impl Facet {
    pub fn contains(&self, p: &[i64]) -> bool {
        dot(&self.normal, p) == self.offset
    }

    pub fn satisfied(&self, p: &[i64]) -> bool {
        dot(&self.normal, p) <= self.offset
    }
}

/// Facets of the convex hull of a full-dimensional point set in `R^k`.
pub(crate) fn facets(points: &[Vec<i64>]) -> Vec<Facet> {
    let k = points[0].len();
    let mut out: Vec<Facet> = Vec::new();
    for subset in (0..points.len()).combinations(k) {
        let base = &points[subset[0]];
        let vecs: Vec<Vec<i128>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| (*a - *b) as i128).collect())
            .collect();
        let mut nrm = normal(&vecs, k);
        if nrm.iter().all(|&x| x == 0) {
            continue;
        }
        let mut off = dot(&nrm, base);
        let vals: Vec<i128> = points.iter().map(|p| dot(&nrm, p)).collect();
        if vals.iter().all(|&v| v <= off) {
        } else if vals.iter().all(|&v| v >= off) {
            nrm.iter_mut().for_each(|x| *x = -*x);
            off = -off;
        } else {
            continue;
        }
        if out.iter().any(|f| f.normal == nrm && f.offset == off) {
            continue;
        }
        let members = (0..points.len()).filter(|&i| dot(&nrm, &points[i]) == off).collect();
        out.push(Facet { normal: nrm, offset: off, members });
    }
    out
}

/// Maps a point set isomorphically onto integer coordinates of its affine span
/// by keeping a subset of coordinates. Returns the projected points and the
/// affine dimension.
pub(crate) fn project_to_span(points: &[Vec<i64>]) -> (Vec<Vec<i64>>, usize) {
    let refs: Vec<&[i64]> = points.iter().map(Vec::as_slice).collect();
    let k = affine_rank(&refs);
    let n = points[0].len();
    if k == n {
        return (points.to_vec(), k);
    }
    let d = diffs(&refs);
    let coords = (0..n)
        .combinations(k)
        .find(|cs| {
            let sub: Vec<Vec<i128>> = d.iter().map(|r| cs.iter().map(|&c| r[c]).collect()).collect();
            rank(&sub) == k
        })
        .unwrap_or_default();
    let projected = points.iter().map(|p| coords.iter().map(|&c| p[c]).collect()).collect();
    (projected, k)
}

/// Indices of the extreme points of a point set.
pub(crate) fn extreme_points(points: &[Vec<i64>]) -> Vec<usize> {
    let (local, k) = project_to_span(points);
    if k == 0 {
        return vec![0];
    }
    let fs = facets(&local);
    (0..local.len())
        .filter(|&i| {
            let normals: Vec<Vec<i128>> =
                fs.iter().filter(|f| f.members.contains(&i)).map(|f| f.normal.clone()).collect();
            rank(&normals) == k
        })
        .collect()
}

/// Pulling triangulation of the convex hull of `vertices` (all of which must be
/// extreme points), using only those vertices. Simplices are index lists.
pub(crate) fn pulling_triangulation(vertices: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let (local, k) = project_to_span(vertices);
    if vertices.len() == k + 1 {
        return vec![(0..vertices.len()).collect()];
    }
    let mut out = Vec::new();
    for f in facets(&local) {
        if f.members.contains(&0) {
            continue;
        }
        let sub: Vec<Vec<i64>> = f.members.iter().map(|&i| vertices[i].clone()).collect();
        for simplex in pulling_triangulation(&sub) {
            let mut s: Vec<usize> = simplex.iter().map(|&i| f.members[i]).collect();
            s.insert(0, 0);
            out.push(s);
        }
    }
    out
}

/// A rational point with a common positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct RatPoint {
    pub num: Vec<i128>,
    pub den: i128,
}

impl RatPoint {
    fn normalized(mut num: Vec<i128>, mut den: i128) -> Self {
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = num.iter().fold(den, |g, &x| g.gcd(&x));
        if g > 1 {
            num.iter_mut().for_each(|x| *x /= g);
            den /= g;
        }
        RatPoint { num, den }
    }

    pub fn from_lattice(p: &[i64]) -> Self {
        RatPoint { num: p.iter().map(|&x| x as i128).collect(), den: 1 }
    }

    fn side(&self, f: &Facet) -> std::cmp::Ordering {
        let lhs: i128 = f.normal.iter().zip(&self.num).map(|(a, b)| a * b).sum();
        lhs.cmp(&(f.offset * self.den))
    }
}

/// Vertices of the intersection of two full-dimensional polytopes given by
/// their facet inequalities.
pub(crate) fn intersection_vertices(a: &[Facet], b: &[Facet], k: usize) -> Vec<RatPoint> {
    let all: Vec<&Facet> = a.iter().chain(b).collect();
    let mut out: Vec<RatPoint> = Vec::new();
    for subset in (0..all.len()).combinations(k) {
        let m: Vec<Vec<i128>> = subset.iter().map(|&i| all[i].normal.clone()).collect();
        let dm = det(m.clone());
        if dm == 0 {
            continue;
        }
        let num: Vec<i128> = (0..k)
            .map(|c| {
                let mut mc = m.clone();
                for (r, &i) in subset.iter().enumerate() {
                    mc[r][c] = all[i].offset;
                }
                det(mc)
            })
            .collect();
        let p = RatPoint::normalized(num, dm);
        if all.iter().all(|f| p.side(f) != std::cmp::Ordering::Greater) && !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Affine rank of a set of rational points.
pub(crate) fn rational_affine_rank(points: &[RatPoint]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.num.iter().zip(&base.num).map(|(x, y)| x * base.den - y * p.den).collect())
        .collect();
    rank(&rows)
}

/// Whether `w` (the vertex set of `P ∩ Q`) spans a face of the polytope with
/// the given vertices and facets: the smallest face containing `w` must have
/// exactly `w` as its vertex set.
pub(crate) fn spans_face(vertices: &[Vec<i64>], fs: &[Facet], w: &[RatPoint]) -> bool {
    let tight: Vec<&Facet> = fs
        .iter()
        .filter(|f| w.iter().all(|p| p.side(f) == std::cmp::Ordering::Equal))
        .collect();
    let mut face: Vec<RatPoint> = vertices
        .iter()
        .filter(|v| tight.iter().all(|f| f.contains(v)))
        .map(|v| RatPoint::from_lattice(v))
        .collect();
    face.sort();
    face == w
}
