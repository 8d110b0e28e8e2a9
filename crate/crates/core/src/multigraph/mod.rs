//! Configuration-model multigraphs in half-edge form.
//!
//! Every vertex owns a contiguous block of half-edges. An edge is a matched
//! pair of half-edges; a loop is a pair whose halves share an owner, so it is
//! one edge but two incidences. Color and traversal state never live here:
//! walks keep their own per-trial arrays indexed by edge id.

mod diagnostics;
pub mod families;
mod io;
pub(crate) mod pairing;

pub use diagnostics::{
    count_short_cycles, diagnostics, is_connected, is_simple, neighborhood_sizes,
    neighborhood_sizes_filtered, GraphDiagnostics, MAX_OMEGA,
};
pub use io::{read_edge_list, write_edge_list};
pub use pairing::{sample_pairing, Pairing};

use rand::Rng;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    offsets: Vec<usize>,
    owner: Vec<usize>,
    mate: Vec<usize>,
    edge_of: Vec<usize>,
    edges: Vec<(usize, usize)>,
    regular: Option<usize>,
}

impl Multigraph {
    /// Builds a graph from per-vertex degrees and a half-edge involution.
    /// Half-edges of vertex `v` are `offsets[v]..offsets[v+1]`.
    pub(crate) fn from_half_edges(degrees: &[usize], mate: Vec<usize>) -> Self {
        Self::assemble(degrees, mate, None)
    }

    fn assemble(degrees: &[usize], mate: Vec<usize>, order: Option<Vec<(usize, usize)>>) -> Self {
        let n = degrees.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut owner = Vec::with_capacity(mate.len());
        offsets.push(0);
        for (v, &deg) in degrees.iter().enumerate() {
            owner.extend(std::iter::repeat_n(v, deg));
            offsets.push(owner.len());
        }
        debug_assert_eq!(owner.len(), mate.len());
        let edges = order.unwrap_or_else(|| {
            (0..mate.len())
                .filter(|&h| h < mate[h])
                .map(|h| (h, mate[h]))
                .collect()
        });
        let mut edge_of = vec![usize::MAX; mate.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            edge_of[a] = e;
            edge_of[b] = e;
        }
        let regular = match degrees.first() {
            Some(&d0) if degrees.iter().all(|&d| d == d0) => Some(d0),
            _ => None,
        };
        Multigraph {
            offsets,
            owner,
            mate,
            edge_of,
            edges,
            regular,
        }
    }

    /// Builds a graph from an explicit edge list; `(v, v)` is a loop.
    /// Half-edges are assigned per vertex in order of appearance and edge ids
    /// follow the input order.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut degrees = vec![0usize; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) out of range for n = {n}"));
            }
            degrees[u] += 1;
            degrees[v] += 1;
        }
        let mut next: Vec<usize> = Vec::with_capacity(n);
        let mut acc = 0;
        for &d in &degrees {
            next.push(acc);
            acc += d;
        }
        let mut mate = vec![0usize; acc];
        let mut order = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            let a = next[u];
            next[u] += 1;
            let b = next[v];
            next[v] += 1;
            mate[a] = b;
            mate[b] = a;
            order.push((a.min(b), a.max(b)));
        }
        Ok(Self::assemble(&degrees, mate, Some(order)))
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.mate.len()
    }

    /// Common degree when every vertex has the same number of half-edges.
    pub fn regular_degree(&self) -> Option<usize> {
        self.regular
    }

    /// Number of half-edges at `v`; a loop contributes two.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn half_edges(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    #[inline]
    pub fn owner(&self, h: usize) -> usize {
        self.owner[h]
    }

    #[inline]
    pub fn mate(&self, h: usize) -> usize {
        self.mate[h]
    }

    #[inline]
    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// Vertex reached by leaving through half-edge `h`.
    #[inline]
    pub fn head(&self, h: usize) -> usize {
        self.owner[self.mate[h]]
    }

    /// Half-edge pair of edge `e`, lower index first.
    #[inline]
    pub fn edge_half_edges(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    #[inline]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (a, b) = self.edges[e];
        (self.owner[a], self.owner[b])
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.half_edges(v).map(move |h| self.head(h))
    }

    /// Stationary mass of `v` for the simple walk: degree / total degree.
    pub fn stationary(&self, v: usize) -> f64 {
        self.degree(v) as f64 / self.num_half_edges() as f64
    }
}

/// Realizes a pairing as a multigraph whose half-edges are the configuration
/// points themselves, so edge ids follow the lower point of each pair.
pub fn realize(pairing: &Pairing) -> Multigraph {
    let degrees = vec![pairing.d(); pairing.n()];
    Multigraph::from_half_edges(&degrees, pairing.as_slice().to_vec())
}

/// What to do with a disconnected configuration sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DisconnectedMode {
    /// Return the sample and report it as disconnected.
    #[default]
    Flag,
    /// Draw again until connected.
    Resample,
}

#[derive(Debug, Clone)]
pub struct SampledGraph {
    pub graph: Multigraph,
    pub connected: bool,
    /// Number of pairings drawn, including the returned one.
    pub attempts: usize,
}

/// Samples a configuration multigraph, optionally conditioning on connectivity.
pub fn sample_graph<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    mode: DisconnectedMode,
    rng: &mut R,
) -> Result<SampledGraph> {
    if mode == DisconnectedMode::Resample && d < 2 && n > 2 {
        return invalid("d = 1 graphs on more than two vertices are never connected");
    }
    let mut attempts = 0;
    loop {
        attempts += 1;
        let graph = realize(&sample_pairing(n, d, rng)?);
        let connected = is_connected(&graph);
        if connected || mode == DisconnectedMode::Flag {
            return Ok(SampledGraph {
                graph,
                connected,
                attempts,
            });
        }
    }
}

/// Vertex subset helper: membership mask of `set` over `n` vertices.
pub fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in set {
        mask[v] = true;
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::rng_from_seed;

    #[test]
    fn triple_edge_from_identity_matching() {
        // point i of vertex 0 paired with point i of vertex 1
        let p = Pairing::new(vec![3, 4, 5, 0, 1, 2], 2, 3).unwrap();
        let g = realize(&p);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 3);
        for e in 0..3 {
            assert_eq!(g.endpoints(e), (0, 1));
        }
    }

    #[test]
    fn loop_keeps_degree() {
        // vertex 0 points 0,1 paired together; point 2 with vertex 1
        let p = Pairing::new(vec![1, 0, 3, 2, 5, 4], 2, 3).unwrap();
        let g = realize(&p);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 3);
        let loops = (0..g.num_edges()).filter(|&e| g.is_loop(e)).count();
        assert_eq!(loops, 2);
        assert_eq!(g.num_edges(), 3);
    }

    #[test]
    fn realize_edge_count_and_degrees() {
        let mut rng = rng_from_seed(9);
        for &(n, d) in &[(10, 3), (11, 4), (50, 3), (7, 2)] {
            let g = realize(&sample_pairing(n, d, &mut rng).unwrap());
            assert_eq!(g.num_edges(), d * n / 2);
            assert!((0..n).all(|v| g.degree(v) == d));
            assert_eq!(g.regular_degree(), Some(d));
        }
    }

    #[test]
    fn from_edges_matches_structure() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.degree(2), 3);
        assert_eq!(g.regular_degree(), None);
        assert!(g.is_loop(2));
        assert!(Multigraph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn resample_returns_connected() {
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let s = sample_graph(20, 3, DisconnectedMode::Resample, &mut rng).unwrap();
            assert!(s.connected);
            assert!(is_connected(&s.graph));
        }
    }
}
