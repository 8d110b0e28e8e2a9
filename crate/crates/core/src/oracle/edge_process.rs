//! Exact expected cover times of the biased walk on a fixed small graph.
//!
//! The walk state is `(blue mask, vertex)`. A discovery step adds one edge
//! to the mask, so states are layered by mask size and each layer can be
//! solved on its own: entry mass flows in from the previous layer, the walk
//! wanders over blue edges until it reaches a vertex with a red incidence,
//! and leaves along a red edge into the next layer.

use std::collections::{BTreeMap, HashMap, VecDeque};

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

use crate::error::{invalid, Error, Result};
use crate::multigraph::{is_connected, Multigraph};

/// Most edges the layered solver accepts.
pub const MAX_ORACLE_EDGES: usize = 16;
/// Most edges solved in exact rational arithmetic by [`exact_edge_process`].
pub const MAX_RATIONAL_EDGES: usize = 12;
/// Most edges accepted by the global-solve cross-check.
pub const MAX_GLOBAL_EDGES: usize = 8;

/// Arithmetic the layered solver can run in.
pub trait OracleField: Clone + Num + FromPrimitive + std::fmt::Debug {
    fn approx(&self) -> f64;
}

impl OracleField for f64 {
    fn approx(&self) -> f64 {
        *self
    }
}

impl OracleField for BigRational {
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// `edge_cover[t - 1] = E[C_E(t)]`, `vertex_cover[s - 1] = E[C_V(s)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCover<F> {
    pub edge_cover: Vec<F>,
    pub vertex_cover: Vec<F>,
}

impl<F: OracleField> ExactCover<F> {
    pub fn approx(&self) -> ExactCover<f64> {
        ExactCover {
            edge_cover: self.edge_cover.iter().map(F::approx).collect(),
            vertex_cover: self.vertex_cover.iter().map(F::approx).collect(),
        }
    }

    /// `E[C_E(t)]`, with `E[C_E(0)] = 0`.
    pub fn edge(&self, t: usize) -> Option<&F> {
        self.edge_cover.get(t.checked_sub(1)?)
    }

    pub fn vertex(&self, s: usize) -> Option<&F> {
        self.vertex_cover.get(s.checked_sub(1)?)
    }
}

struct Layout {
    n: usize,
    /// (edge id, head) for each half-edge of each vertex
    incidences: Vec<Vec<(usize, usize)>>,
    /// endpoint bitmask of each edge
    edge_vertices: Vec<u64>,
}

fn layout(g: &Multigraph, start: usize, limit: usize) -> Result<Layout> {
    if g.num_edges() > limit {
        return Err(Error::SizeGuard {
            what: "edges",
            value: g.num_edges(),
            limit,
        });
    }
    if g.n() > 64 {
        return invalid("oracle supports at most 64 vertices");
    }
    if start >= g.n() {
        return invalid(format!("start vertex {start} out of range"));
    }
    if g.num_edges() == 0 || !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let incidences = (0..g.n())
        .map(|v| g.half_edges(v).map(|h| (g.edge_of(h), g.head(h))).collect())
        .collect();
    let edge_vertices = (0..g.num_edges())
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (1u64 << u) | (1u64 << v)
        })
        .collect();
    Ok(Layout {
        n: g.n(),
        incidences,
        edge_vertices,
    })
}

impl Layout {
    fn red(&self, mask: u32, v: usize) -> usize {
        self.incidences[v].iter().filter(|(e, _)| mask & (1 << e) == 0).count()
    }

    fn visited(&self, mask: u32, start: usize) -> usize {
        let mut seen = 1u64 << start;
        for e in 0..self.edge_vertices.len() {
            if mask & (1 << e) != 0 {
                seen |= self.edge_vertices[e];
            }
        }
        seen.count_ones() as usize
    }
}

fn ratio<F: OracleField>(a: usize, b: usize) -> F {
    F::from_usize(a).expect("small integer") / F::from_usize(b).expect("small integer")
}

/// Solves `M x = b` by elimination without pivoting; `M` must have
/// non-vanishing leading minors (true for the M-matrices built here).
fn solve_in_place<F: OracleField>(mut m: Vec<Vec<F>>, mut b: Vec<F>) -> Vec<F> {
    let k = b.len();
    for col in 0..k {
        let pivot = m[col][col].clone();
        for row in col + 1..k {
            if m[row][col].is_zero() {
                continue;
            }
            let f = m[row][col].clone() / pivot.clone();
            for c in col..k {
                let delta = f.clone() * m[col][c].clone();
                m[row][c] = m[row][c].clone() - delta;
            }
            let delta = f * b[col].clone();
            b[row] = b[row].clone() - delta;
        }
    }
    let mut x = vec![F::zero(); k];
    for row in (0..k).rev() {
        let mut acc = b[row].clone();
        for c in row + 1..k {
            acc = acc - m[row][c].clone() * x[c].clone();
        }
        x[row] = acc / m[row][row].clone();
    }
    x
}

/// Layered exact solve in the field `F`.
pub fn exact_edge_process_in<F: OracleField>(g: &Multigraph, start: usize) -> Result<ExactCover<F>> {
    let lay = layout(g, start, MAX_ORACLE_EDGES)?;
    let m = g.num_edges();
    let full: u32 = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let mut time_by_edges = vec![F::zero(); m];
    let mut time_by_visited = vec![F::zero(); lay.n + 1];

    let mut layer: BTreeMap<u32, Vec<F>> = BTreeMap::new();
    let mut entry = vec![F::zero(); lay.n];
    entry[start] = F::one();
    layer.insert(0, entry);

    for k in 0..m {
        let mut next: BTreeMap<u32, Vec<F>> = BTreeMap::new();
        for (mask, q) in layer {
            debug_assert_eq!(mask.count_ones() as usize, k);
            debug_assert_ne!(mask, full);
            let red: Vec<usize> = (0..lay.n).map(|v| lay.red(mask, v)).collect();
            let blue_only: Vec<usize> = (0..lay.n).filter(|&v| red[v] == 0).collect();
            let mut index = vec![usize::MAX; lay.n];
            for (i, &v) in blue_only.iter().enumerate() {
                index[v] = i;
            }
            // expected visits o to blue-only vertices: o (I - P_BB) = q_B
            let b = blue_only.len();
            let mut occupancy = Vec::new();
            if b > 0 && blue_only.iter().any(|&v| !q[v].is_zero()) {
                let mut mat = vec![vec![F::zero(); b]; b];
                for (i, row) in mat.iter_mut().enumerate() {
                    row[i] = F::one();
                }
                for (i, &v) in blue_only.iter().enumerate() {
                    let deg = lay.incidences[v].len();
                    for &(_, w) in &lay.incidences[v] {
                        let j = index[w];
                        if j != usize::MAX {
                            // transposed: row j collects inflow from i
                            mat[j][i] = mat[j][i].clone() - ratio::<F>(1, deg);
                        }
                    }
                }
                let rhs: Vec<F> = blue_only.iter().map(|&v| q[v].clone()).collect();
                occupancy = solve_in_place(mat, rhs);
            }
            // mass reaching each vertex that has a red incidence
            let mut exit = vec![F::zero(); lay.n];
            for v in 0..lay.n {
                if red[v] > 0 {
                    exit[v] = q[v].clone();
                }
            }
            let mut sojourn = F::zero();
            for (i, &v) in blue_only.iter().enumerate().filter(|_| !occupancy.is_empty()) {
                let o = occupancy[i].clone();
                if o.is_zero() {
                    continue;
                }
                sojourn = sojourn + o.clone();
                let deg = lay.incidences[v].len();
                for &(_, w) in &lay.incidences[v] {
                    if red[w] > 0 {
                        exit[w] = exit[w].clone() + o.clone() * ratio::<F>(1, deg);
                    }
                }
            }
            let mut total_exit = F::zero();
            for v in 0..lay.n {
                if exit[v].is_zero() {
                    continue;
                }
                total_exit = total_exit + exit[v].clone();
                for &(e, w) in &lay.incidences[v] {
                    if mask & (1 << e) == 0 {
                        let slot = next.entry(mask | (1 << e)).or_insert_with(|| vec![F::zero(); lay.n]);
                        slot[w] = slot[w].clone() + exit[v].clone() * ratio::<F>(1, red[v]);
                    }
                }
            }
            // each unit of mass spends its blue-only visits plus one exit step here
            let time = sojourn + total_exit;
            time_by_edges[k] = time_by_edges[k].clone() + time.clone();
            let c = lay.visited(mask, start);
            time_by_visited[c] = time_by_visited[c].clone() + time;
        }
        layer = next;
    }

    let mut edge_cover = Vec::with_capacity(m);
    let mut acc = F::zero();
    for t in time_by_edges {
        acc = acc + t;
        edge_cover.push(acc.clone());
    }
    let mut vertex_cover = Vec::with_capacity(lay.n);
    let mut acc = F::zero();
    for s in 1..=lay.n {
        acc = acc + time_by_visited[s - 1].clone();
        vertex_cover.push(acc.clone());
    }
    Ok(ExactCover {
        edge_cover,
        vertex_cover,
    })
}

/// Exact `E[C_E(t)]` and `E[C_V(s)]` for the biased walk from `start`.
/// Rational arithmetic up to [`MAX_RATIONAL_EDGES`] edges, `f64` beyond.
pub fn exact_edge_process(g: &Multigraph, start: usize) -> Result<ExactCover<f64>> {
    if g.num_edges() <= MAX_RATIONAL_EDGES {
        Ok(exact_edge_process_in::<BigRational>(g, start)?.approx())
    } else {
        exact_edge_process_in::<f64>(g, start)
    }
}

/// The rational solution; same guard as the layered solver.
pub fn exact_edge_process_rational(g: &Multigraph, start: usize) -> Result<ExactCover<BigRational>> {
    exact_edge_process_in::<BigRational>(g, start)
}

/// Reduced fraction helper for pinning oracle values in tests.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Independent check: builds the whole reachable chain on `(mask, vertex)`
/// and solves one absorbing system per target with a dense LU.
pub fn exact_edge_process_global(g: &Multigraph, start: usize) -> Result<ExactCover<f64>> {
    let lay = layout(g, start, MAX_GLOBAL_EDGES)?;
    let m = g.num_edges();
    let mut ids: HashMap<(u32, usize), usize> = HashMap::new();
    let mut states: Vec<(u32, usize)> = Vec::new();
    let mut transitions: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut queue = VecDeque::new();
    ids.insert((0, start), 0);
    states.push((0, start));
    queue.push_back(0usize);
    while let Some(i) = queue.pop_front() {
        let (mask, v) = states[i];
        let red = lay.red(mask, v);
        let inc = &lay.incidences[v];
        let moves: Vec<(u32, usize, f64)> = if red > 0 {
            inc.iter()
                .filter(|(e, _)| mask & (1 << e) == 0)
                .map(|&(e, w)| (mask | (1 << e), w, 1.0 / red as f64))
                .collect()
        } else {
            inc.iter().map(|&(_, w)| (mask, w, 1.0 / inc.len() as f64)).collect()
        };
        let mut out = Vec::new();
        for (nm, w, p) in moves {
            let j = *ids.entry((nm, w)).or_insert_with(|| {
                states.push((nm, w));
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            out.push((j, p));
        }
        transitions.push(out);
    }

    let solve = |transient: &dyn Fn(usize) -> bool| -> Result<f64> {
        let live: Vec<usize> = (0..states.len()).filter(|&i| transient(i)).collect();
        if !transient(0) {
            return Ok(0.0);
        }
        let mut index = vec![usize::MAX; states.len()];
        for (k, &i) in live.iter().enumerate() {
            index[i] = k;
        }
        let k = live.len();
        let mut a = DMatrix::<f64>::identity(k, k);
        for (r, &i) in live.iter().enumerate() {
            for &(j, p) in &transitions[i] {
                if index[j] != usize::MAX {
                    a[(r, index[j])] -= p;
                }
            }
        }
        let h = a
            .lu()
            .solve(&DVector::from_element(k, 1.0))
            .ok_or_else(|| Error::Singular("absorbing chain".into()))?;
        Ok(h[index[0]])
    };

    let mut edge_cover = Vec::with_capacity(m);
    for t in 1..=m {
        edge_cover.push(solve(&|i| (states[i].0.count_ones() as usize) < t)?);
    }
    let mut vertex_cover = Vec::with_capacity(lay.n);
    for s in 1..=lay.n {
        vertex_cover.push(solve(&|i| lay.visited(states[i].0, start) < s)?);
    }
    Ok(ExactCover {
        edge_cover,
        vertex_cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::{families, realize};
    use crate::oracle::enumerate_pairings;

    #[test]
    fn triple_edge_is_deterministic() {
        let r = exact_edge_process_rational(&families::triple_edge(), 0).unwrap();
        assert_eq!(r.edge_cover, vec![rational(1, 1), rational(2, 1), rational(3, 1)]);
        assert_eq!(r.vertex_cover, vec![rational(0, 1), rational(1, 1)]);
    }

    #[test]
    fn single_loop() {
        let r = exact_edge_process_rational(&families::single_loop(), 0).unwrap();
        assert_eq!(r.edge_cover, vec![rational(1, 1)]);
        assert_eq!(r.vertex_cover, vec![rational(0, 1)]);
    }

    #[test]
    fn path_graph_walks_back_and_forth() {
        // 0-1-2 from the middle: first edge at step 1, then back through
        // the middle (2 steps) to the other edge
        let r = exact_edge_process_rational(&families::path(3), 1).unwrap();
        assert_eq!(r.edge_cover, vec![rational(1, 1), rational(3, 1)]);
        assert_eq!(r.vertex_cover, vec![rational(0, 1), rational(1, 1), rational(3, 1)]);
        let r = exact_edge_process_rational(&families::path(3), 0).unwrap();
        assert_eq!(r.edge_cover, vec![rational(1, 1), rational(2, 1)]);
    }

    #[test]
    fn k4_pinned_value() {
        let r = exact_edge_process_rational(&families::complete(4), 0).unwrap();
        assert_eq!(r.edge(6).unwrap(), &k4_edge_cover());
        for v in 1..4 {
            assert_eq!(exact_edge_process_rational(&families::complete(4), v).unwrap(), r);
        }
        assert_eq!(r.vertex(1).unwrap(), &rational(0, 1));
    }

    /// Exact `E[C_E(6)]` on K4, from the layered solver.
    fn k4_edge_cover() -> BigRational {
        crate::oracle::K4_EDGE_COVER.parse().unwrap()
    }

    #[test]
    fn layered_and_global_solvers_agree() {
        let mut graphs = vec![families::complete(4), families::triple_edge(), families::path(4), families::cycle(5)];
        for (i, p) in enumerate_pairings(4, 3).unwrap().into_iter().enumerate() {
            if i % 97 == 0 {
                graphs.push(realize(&p));
            }
        }
        for p in enumerate_pairings(2, 4).unwrap() {
            graphs.push(realize(&p));
        }
        let mut checked = 0;
        for g in graphs.iter().filter(|g| is_connected(g)) {
            for start in 0..g.n() {
                let a = exact_edge_process(g, start).unwrap();
                let b = exact_edge_process_global(g, start).unwrap();
                let f = exact_edge_process_in::<f64>(g, start).unwrap();
                for (x, y) in a.edge_cover.iter().zip(&b.edge_cover).chain(a.vertex_cover.iter().zip(&b.vertex_cover)) {
                    assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "{x} vs {y}");
                }
                for (x, y) in a.edge_cover.iter().zip(&f.edge_cover) {
                    assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
                }
                checked += 1;
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn guards() {
        assert_eq!(exact_edge_process(&families::cycle(17), 0).unwrap_err(), Error::SizeGuard { what: "edges", value: 17, limit: 16 });
        let g = Multigraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(exact_edge_process(&g, 0).unwrap_err(), Error::Disconnected);
        assert!(exact_edge_process_global(&families::cycle(9), 0).is_err());
    }

    #[test]
    fn sixteen_edges_run_in_floating_point() {
        let r = exact_edge_process(&families::cycle(16), 0).unwrap();
        // the biased walk covers a cycle in one sweep
        assert_eq!(r.edge_cover[15], 16.0);
    }
}

