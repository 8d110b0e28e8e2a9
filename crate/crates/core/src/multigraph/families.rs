//! Small named graphs used by tests, examples and oracles.

use super::Multigraph;

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Multigraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Multigraph::from_edges(n, &edges).expect("in range")
}

/// Two vertices joined by three parallel edges.
pub fn triple_edge() -> Multigraph {
    Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).expect("in range")
}

pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Multigraph::from_edges(10, &edges).expect("in range")
}

pub fn path(n: usize) -> Multigraph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Multigraph::from_edges(n, &edges).expect("in range")
}

pub fn cycle(n: usize) -> Multigraph {
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Multigraph::from_edges(n, &edges).expect("in range")
}

/// A single vertex with one loop.
pub fn single_loop() -> Multigraph {
    Multigraph::from_edges(1, &[(0, 0)]).expect("in range")
}

/// Cubic tree grown from the edge `0 - 1` to `depth` levels on each side.
/// Internal vertices have degree 3, leaves degree 1.
pub fn cubic_tree(depth: usize) -> Multigraph {
    let mut edges = vec![(0, 1)];
    let mut frontier = vec![0usize, 1];
    let mut next_id = 2;
    for _ in 0..depth {
        let mut grown = Vec::new();
        for &v in &frontier {
            for _ in 0..2 {
                edges.push((v, next_id));
                grown.push(next_id);
                next_id += 1;
            }
        }
        frontier = grown;
    }
    Multigraph::from_edges(next_id, &edges).expect("in range")
}
