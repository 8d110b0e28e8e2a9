use std::collections::VecDeque;

use super::Multigraph;
use crate::error::{invalid, Result};

/// Largest cycle-length cutoff accepted by [`count_short_cycles`].
pub const MAX_OMEGA: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphDiagnostics {
    pub simple: bool,
    pub connected: bool,
    pub short_cycle_count: u64,
    pub omega: usize,
}

pub fn diagnostics(g: &Multigraph, omega: usize) -> Result<GraphDiagnostics> {
    Ok(GraphDiagnostics {
        simple: is_simple(g),
        connected: is_connected(g),
        short_cycle_count: count_short_cycles(g, omega)?,
        omega,
    })
}

/// No loops and no parallel edges.
pub fn is_simple(g: &Multigraph) -> bool {
    let mut seen = vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        for w in g.neighbors(v) {
            if w == v || seen[w] == v {
                return false;
            }
            seen[w] = v;
        }
    }
    true
}

pub fn is_connected(g: &Multigraph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == g.n()
}

/// Exact number of cycles of length at most `omega`.
///
/// A loop is a cycle of length 1 and two parallel edges form a cycle of
/// length 2. Longer cycles are enumerated by DFS rooted at their smallest
/// vertex; each is found once per orientation, hence the final halving.
pub fn count_short_cycles(g: &Multigraph, omega: usize) -> Result<u64> {
    if omega == 0 || omega > MAX_OMEGA {
        return invalid(format!("omega must be in 1..={MAX_OMEGA}, got {omega}"));
    }
    let loops = (0..g.num_edges()).filter(|&e| g.is_loop(e)).count() as u64;
    if omega == 1 {
        return Ok(loops);
    }
    let mut on_path = vec![false; g.n()];
    let mut directed = 0u64;
    for root in 0..g.n() {
        on_path[root] = true;
        for h in g.half_edges(root) {
            let v = g.head(h);
            if v <= root {
                continue;
            }
            on_path[v] = true;
            directed += extend(g, root, v, g.edge_of(h), 1, omega, &mut on_path);
            on_path[v] = false;
        }
        on_path[root] = false;
    }
    Ok(loops + directed / 2)
}

/// Counts closing continuations from `v`, where the path root..v has
/// `len` edges and started with edge `first`.
fn extend(
    g: &Multigraph,
    root: usize,
    v: usize,
    first: usize,
    len: usize,
    omega: usize,
    on_path: &mut [bool],
) -> u64 {
    let mut found = 0;
    for h in g.half_edges(v) {
        let w = g.head(h);
        if w == root {
            if len < omega && (len > 1 || g.edge_of(h) != first) {
                found += 1;
            }
        } else if w > root && !on_path[w] && len + 1 < omega {
            on_path[w] = true;
            found += extend(g, root, w, first, len + 1, omega, on_path);
            on_path[w] = false;
        }
    }
    found
}

/// `|N_r(S)|` for `r = 1..=dmax`: vertices at distance exactly `r` from `S`.
pub fn neighborhood_sizes(g: &Multigraph, set: &[usize], dmax: usize) -> Vec<usize> {
    neighborhood_sizes_filtered(g, set, dmax, |_| true)
}

/// As [`neighborhood_sizes`], only moving along edges accepted by `keep`.
pub fn neighborhood_sizes_filtered<F>(g: &Multigraph, set: &[usize], dmax: usize, keep: F) -> Vec<usize>
where
    F: Fn(usize) -> bool,
{
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &s in set {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    let mut sizes = vec![0usize; dmax];
    while let Some(v) = queue.pop_front() {
        let dv = dist[v];
        if dv == dmax {
            continue;
        }
        for h in g.half_edges(v) {
            if !keep(g.edge_of(h)) {
                continue;
            }
            let w = g.head(h);
            if dist[w] == usize::MAX {
                dist[w] = dv + 1;
                sizes[dv] += 1;
                queue.push_back(w);
            }
        }
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::families;

    /// Brute force: every edge subset that is a single cycle.
    fn brute_cycles(g: &Multigraph, omega: usize) -> u64 {
        let m = g.num_edges();
        assert!(m <= 16);
        let mut count = 0;
        for mask in 1u32..(1 << m) {
            let len = mask.count_ones() as usize;
            if len > omega {
                continue;
            }
            let mut deg = vec![0usize; g.n()];
            let mut verts = vec![];
            for e in 0..m {
                if mask >> e & 1 == 1 {
                    let (u, v) = g.endpoints(e);
                    deg[u] += 1;
                    deg[v] += 1;
                    verts.push(u);
                    verts.push(v);
                }
            }
            if verts.iter().any(|&v| deg[v] != 2) {
                continue;
            }
            // connected within the subset
            let mut seen = vec![false; g.n()];
            let mut stack = vec![verts[0]];
            seen[verts[0]] = true;
            while let Some(v) = stack.pop() {
                for e in 0..m {
                    if mask >> e & 1 == 1 {
                        let (a, b) = g.endpoints(e);
                        for (x, y) in [(a, b), (b, a)] {
                            if x == v && !seen[y] {
                                seen[y] = true;
                                stack.push(y);
                            }
                        }
                    }
                }
            }
            if verts.iter().all(|&v| seen[v]) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn k4_short_cycles() {
        let g = families::complete(4);
        let diag = diagnostics(&g, 4).unwrap();
        assert!(diag.simple);
        assert!(diag.connected);
        assert_eq!(diag.short_cycle_count, 7);
        assert_eq!(brute_cycles(&g, 4), 7);
        assert_eq!(count_short_cycles(&g, 3).unwrap(), 4);
    }

    #[test]
    fn triple_edge_cycles() {
        let g = families::triple_edge();
        let diag = diagnostics(&g, 2).unwrap();
        assert!(!diag.simple);
        assert_eq!(diag.short_cycle_count, 3);
        assert_eq!(brute_cycles(&g, 2), 3);
    }

    #[test]
    fn loops_are_one_cycles() {
        let g = Multigraph::from_edges(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(count_short_cycles(&g, 1).unwrap(), 2);
        assert_eq!(count_short_cycles(&g, 5).unwrap(), 2);
        assert!(!is_simple(&g));
    }

    #[test]
    fn omega_bounds() {
        let g = families::complete(4);
        assert!(count_short_cycles(&g, 0).is_err());
        assert!(count_short_cycles(&g, 13).is_err());
    }

    #[test]
    fn agrees_with_brute_force_on_small_multigraphs() {
        use crate::multigraph::{realize, sample_pairing};
        use crate::seeding::rng_from_seed;
        let mut rng = rng_from_seed(17);
        for trial in 0..300 {
            let (n, d) = [(2, 3), (4, 3), (4, 4), (2, 4), (3, 4), (5, 2), (8, 2), (4, 2)][trial % 8];
            let g = realize(&sample_pairing(n, d, &mut rng).unwrap());
            for omega in 1..=8 {
                assert_eq!(count_short_cycles(&g, omega).unwrap(), brute_cycles(&g, omega), "{g:?} {omega}");
            }
        }
    }

    #[test]
    fn neighborhoods() {
        let g = families::complete(4);
        assert_eq!(neighborhood_sizes(&g, &[0], 2), vec![3, 0]);
        let t = families::cubic_tree(3);
        // endpoints of the root edge of a truncated cubic tree
        assert_eq!(neighborhood_sizes(&t, &[0, 1], 2), vec![4, 8]);
    }

    #[test]
    fn filtered_neighborhoods() {
        let g = families::path(4);
        assert_eq!(neighborhood_sizes_filtered(&g, &[0], 3, |e| e != 1), vec![1, 0, 0]);
    }

    #[test]
    fn connectivity() {
        let g = Multigraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_connected(&g));
        assert!(is_connected(&families::petersen()));
    }
}
