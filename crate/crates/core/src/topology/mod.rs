//! Topology of the projective hypersurface: components, ovals and their
//! nesting, complement regions, Euler characteristics and Betti numbers.
//!
//! Internal consistency checks never abort the analysis; failures are listed
//! in [`TopologyReport::anomalies`]. On a correct build that list is empty.

mod curves;
mod surfaces;

use serde::Serialize;

use crate::invariants::complex_invariants;
use crate::patchwork::{projectivize, Model, PatchworkComplex};
use crate::Result;

pub use curves::{OvalSummary, Oval, Region};

/// Seed of the generic lines used for intersection numbers.
pub const DEFAULT_LINE_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Component {
    pub id: usize,
    /// Number of pieces (segments or polygons).
    pub pieces: usize,
    pub chi: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_sided: Option<bool>,
}

/// Counts of even (`p`) and odd (`n`) ovals by the sign of their characteristic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacteristicFlags {
    pub p_plus: usize,
    pub p_minus: usize,
    pub p_zero: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TopologyReport {
    pub dim: usize,
    pub degree: i64,
    pub components: Vec<Component>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ovals: Option<OvalSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<Region>,
    /// Euler characteristic of the real part.
    pub chi: i64,
    /// Total mod-2 Betti number of the real part.
    pub b_total: i64,
    /// Total Betti number of a nonsingular complex hypersurface of the same degree.
    pub b_complex: i64,
    /// `(b_complex - b_total) / 2`; zero for M-hypersurfaces.
    pub a_defect: i64,
    pub principal: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<CharacteristicFlags>,
    pub mod2_degree: u8,
    pub line_seed: u64,
    /// Set when some simplex is not primitive.
    pub non_primitive: bool,
    pub anomalies: Vec<String>,
}

impl TopologyReport {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_m(&self) -> bool {
        self.a_defect == 0
    }

    /// `p - n` for curves.
    pub fn p_minus_n(&self) -> Option<i64> {
        self.ovals.as_ref().map(|o| o.p as i64 - o.n as i64)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
    /// Parity of the path to the parent.
    parity: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), parity: vec![0; n] }
    }

    /// Root and parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] as usize != cur {
            path.push(cur);
            cur = self.parent[cur] as usize;
        }
        let root = cur;
        // compress, accumulating parities from the top
        let mut acc = 0;
        for &v in path.iter().rev() {
            acc ^= self.parity[v];
            self.parity[v] = acc;
            self.parent[v] = root as u32;
        }
        (root, if path.is_empty() { 0 } else { self.parity[x] })
    }

    /// Joins with the relation `parity(a) ^ parity(b) = twist`; returns false
    /// if `a` and `b` were already joined with the opposite parity.
    pub fn union(&mut self, a: usize, b: usize, twist: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == twist;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        self.parity[hi] = pa ^ pb ^ twist;
        true
    }
}

/// Full topological analysis of a hypersurface (any model; the affine model is
/// projectivized first).
pub fn analyze(p: &PatchworkComplex) -> Result<TopologyReport> {
    analyze_with_seed(p, DEFAULT_LINE_SEED)
}

pub fn analyze_with_seed(p: &PatchworkComplex, line_seed: u64) -> Result<TopologyReport> {
    let owned;
    let p = if p.model() == Model::Affine {
        owned = projectivize(p);
        &owned
    } else {
        p
    };
    let inv = complex_invariants(p.dim() as u32, p.degree() as u32)?;
    let b_complex = inv.b_total_i64();
    let mut report = match p.dim() {
        2 => curves::analyze_curve(p, line_seed, b_complex),
        _ => surfaces::analyze_surface(p, line_seed, b_complex),
    };
    report.non_primitive = p.geometry().non_primitive();
    if report.mod2_degree as i64 != p.degree().rem_euclid(2) {
        report.anomalies.push(format!("mod-2 degree {} differs from the degree parity", report.mod2_degree));
    }
    if (b_complex - report.b_total) % 2 != 0 || report.b_total > b_complex {
        report.anomalies.push(format!("Smith relation fails: b_total {} against {b_complex}", report.b_total));
    }
    Ok(report)
}

/// Connected components as lists of cell indices (cells carrying the pieces).
pub fn components(p: &PatchworkComplex) -> Vec<Vec<usize>> {
    let p = projectivize(p);
    let (comp, count) = piece_components(&p);
    let mut out = vec![Vec::new(); count];
    for (cell, c) in comp {
        out[c].push(cell);
    }
    out
}

/// Z/2 intersection number with a generic projective line.
pub fn mod2_degree(p: &PatchworkComplex) -> u8 {
    match p.dim() {
        2 => curves::line_parities(p, DEFAULT_LINE_SEED).1,
        _ => surfaces::line_parity(p, DEFAULT_LINE_SEED).0,
    }
}

/// Union-find over projective nodes; returns `(cell, component)` for every
/// piece, components numbered by first appearance in cell order.
pub(crate) fn piece_components(p: &PatchworkComplex) -> (Vec<(usize, usize)>, usize) {
    let g = p.geometry();
    let mut uf = UnionFind::new(g.edges().len());
    let node = |e| g.projective_edge(g.edge_index(e).expect("piece node is an edge"));
    for (_, piece) in p.pieces() {
        let first = node(piece[0]);
        for &e in &piece[1..] {
            uf.union(first, node(e), 0);
        }
    }
    let mut label = vec![usize::MAX; g.edges().len()];
    let mut count = 0;
    let mut out = Vec::with_capacity(p.piece_count());
    for (cell, piece) in p.pieces() {
        let r = uf.find(node(piece[0])).0;
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        out.push((cell, label[r]));
    }
    (out, count)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::invariants::harnack_bound;
    use crate::patchwork::OrthantComplex;
    use crate::regularity::{convex_triangulation, random_maximal_triangulation};

    fn with_bits(g: &Arc<OrthantComplex>, bits: u64) -> PatchworkComplex {
        let signs = (0..g.base_vertices().len()).map(|k| if bits >> k & 1 == 1 { -1 } else { 1 }).collect();
        PatchworkComplex::from_base_signs(g.clone(), signs).unwrap()
    }

    fn harnack(g: &Arc<OrthantComplex>) -> PatchworkComplex {
        let signs = g.base_vertices().iter().map(|p| if p.coords().iter().all(|x| x % 2 == 0) { -1 } else { 1 }).collect();
        PatchworkComplex::from_base_signs(g.clone(), signs).unwrap()
    }

    #[test]
    fn line_is_one_pseudoline() {
        let g = OrthantComplex::new(&convex_triangulation(2, 1).unwrap()).unwrap();
        for bits in 0..8 {
            let r = analyze(&with_bits(&g, bits)).unwrap();
            assert!(r.anomalies.is_empty(), "{:?}", r.anomalies);
            assert_eq!(r.component_count(), 1);
            assert_eq!(r.components[0].one_sided, Some(true));
            assert_eq!(r.mod2_degree, 1);
            assert_eq!(r.ovals.as_ref().unwrap().forest.len(), 0);
            assert_eq!(r.regions.len(), 1);
            assert_eq!(r.regions[0].chi, 1);
            assert!(r.is_m());
        }
    }

    #[test]
    fn conics_exhaustively() {
        let g = OrthantComplex::new(&convex_triangulation(2, 2).unwrap()).unwrap();
        let mut nonempty = 0;
        for bits in 0..64 {
            let r = analyze(&with_bits(&g, bits)).unwrap();
            assert!(r.anomalies.is_empty(), "{bits}: {:?}", r.anomalies);
            assert!(r.component_count() <= 1);
            assert_eq!(r.mod2_degree, 0);
            assert!(r.components.iter().all(|c| c.one_sided == Some(false)));
            assert!(r.regions.iter().filter(|x| x.principal).count() <= 1);
            if r.component_count() == 1 {
                nonempty += 1;
                assert_eq!(r.principal.is_some(), true);
                let o = &r.ovals.as_ref().unwrap().forest[0];
                assert_eq!((o.depth, o.characteristic), (0, 1));
            }
        }
        assert!(nonempty > 0);
    }

    #[test]
    fn cubics_have_one_pseudoline() {
        let g = OrthantComplex::new(&convex_triangulation(2, 3).unwrap()).unwrap();
        for bits in (0..1024).step_by(7) {
            let r = analyze(&with_bits(&g, bits)).unwrap();
            assert!(r.anomalies.is_empty(), "{bits}: {:?}", r.anomalies);
            assert_eq!(r.ovals.as_ref().unwrap().one_sided, 1);
            assert_eq!(r.mod2_degree, 1);
            assert!(r.component_count() <= 2);
        }
    }

    #[test]
    fn harnack_distribution_gives_m_curves() {
        for d in 1..=8 {
            let g = OrthantComplex::new(&convex_triangulation(2, d).unwrap()).unwrap();
            let r = analyze(&harnack(&g)).unwrap();
            assert!(r.anomalies.is_empty(), "{d}: {:?}", r.anomalies);
            assert_eq!(r.component_count() as u64, harnack_bound(d as u32), "d = {d}");
            assert!(r.is_m());
            if d == 6 {
                let o = r.ovals.as_ref().unwrap();
                assert_eq!((o.p, o.n), (10, 1));
            }
        }
    }

    #[test]
    fn random_curves_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..=7 {
            let t = random_maximal_triangulation(d, 40, d as u64).unwrap();
            let g = OrthantComplex::new(&t).unwrap();
            for _ in 0..30 {
                let r = analyze(&with_bits(&g, rng.gen())).unwrap();
                assert!(r.anomalies.is_empty(), "{d}: {:?}", r.anomalies);
                assert!(r.component_count() as u64 <= harnack_bound(d as u32));
                assert_eq!(r.regions.iter().map(|x| x.chi).sum::<i64>(), 1);
            }
        }
    }

    #[test]
    fn quadric_surfaces_exhaustively() {
        let g = OrthantComplex::new(&convex_triangulation(3, 2).unwrap()).unwrap();
        for bits in 0..1024 {
            let r = analyze(&with_bits(&g, bits)).unwrap();
            assert!(r.anomalies.is_empty(), "{bits}: {:?}", r.anomalies);
            assert_eq!(r.mod2_degree, 0);
            assert!(r.b_total <= 4);
            assert!(r.components.iter().all(|c| c.chi % 2 == 0));
        }
    }

    #[test]
    fn planes_and_cubic_surfaces() {
        let g = OrthantComplex::new(&convex_triangulation(3, 1).unwrap()).unwrap();
        for bits in 0..16 {
            let r = analyze(&with_bits(&g, bits)).unwrap();
            assert!(r.anomalies.is_empty(), "{:?}", r.anomalies);
            assert_eq!((r.component_count(), r.chi, r.mod2_degree), (1, 1, 1));
        }
        let g = OrthantComplex::new(&convex_triangulation(3, 3).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let r = analyze(&with_bits(&g, rng.gen())).unwrap();
            assert!(r.anomalies.is_empty(), "{:?}", r.anomalies);
            assert_eq!(r.mod2_degree, 1);
            assert!(r.b_total <= 9);
        }
    }

    #[test]
    fn parity_union_find() {
        let mut uf = UnionFind::new(4);
        assert!(uf.union(0, 1, 1));
        assert!(uf.union(1, 2, 1));
        assert!(uf.union(0, 2, 0));
        assert!(!uf.union(2, 0, 1));
        assert_eq!(uf.find(2).0, uf.find(0).0);
        assert_ne!(uf.find(3).0, uf.find(0).0);
    }
}
