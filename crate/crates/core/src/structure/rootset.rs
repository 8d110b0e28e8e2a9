use crate::multigraph::{membership, Multigraph};

/// Evaluation of the three root-set conditions for a vertex set.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSetReport {
    pub ell: f64,
    pub size: usize,
    /// `|S| >= ell^5`
    pub size_ok: bool,
    pub internal_edges: usize,
    /// `|S|/2 <= internal_edges <= (1/2 + ell^-3) |S|`
    pub internal_ok: bool,
    /// Longest path length searched: `floor(ell)`.
    pub path_limit: usize,
    pub short_path_count: u64,
    /// `short_path_count <= |S| / ell^3`
    pub paths_ok: bool,
    pub verdict: bool,
}

/// Checks whether `set` is a root set of order `ell`.
///
/// Short paths join two distinct members of `set`, have length at most
/// `floor(ell)`, use no edge with both ends in `set` and pass only through
/// vertices outside `set`. Paths are counted as distinct edge sequences,
/// once per unordered pair of ends.
pub fn is_root_set(g: &Multigraph, set: &[usize], ell: f64) -> RootSetReport {
    let in_s = membership(g.n(), set);
    let mut members: Vec<usize> = set.to_vec();
    members.sort_unstable();
    members.dedup();
    let size = members.len();
    let sz = size as f64;

    let internal_edges = (0..g.num_edges())
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            in_s[u] && in_s[v]
        })
        .count();

    let path_limit = if ell.is_finite() && ell > 0.0 { ell.floor() as usize } else { 0 };
    let mut on_path = vec![false; g.n()];
    let mut ordered = 0u64;
    for &u in &members {
        on_path[u] = true;
        ordered += paths_from(g, &in_s, u, 0, path_limit, &mut on_path);
        on_path[u] = false;
    }
    let short_path_count = ordered / 2;

    let size_ok = sz >= ell.powi(5);
    let ie = internal_edges as f64;
    let internal_ok = ie >= sz / 2.0 && ie <= (0.5 + ell.powi(-3)) * sz;
    let paths_ok = short_path_count as f64 <= sz / ell.powi(3);
    RootSetReport {
        ell,
        size,
        size_ok,
        internal_edges,
        internal_ok,
        path_limit,
        short_path_count,
        paths_ok,
        verdict: size_ok && internal_ok && paths_ok,
    }
}

fn paths_from(g: &Multigraph, in_s: &[bool], v: usize, len: usize, limit: usize, on_path: &mut [bool]) -> u64 {
    if len == limit {
        return 0;
    }
    let mut found = 0;
    for h in g.half_edges(v) {
        let w = g.head(h);
        if on_path[w] {
            continue;
        }
        if in_s[w] {
            // an S-to-S step is an internal edge unless we left S first
            if len > 0 {
                found += 1;
            }
            continue;
        }
        on_path[w] = true;
        found += paths_from(g, in_s, w, len + 1, limit, on_path);
        on_path[w] = false;
    }
    found
}
