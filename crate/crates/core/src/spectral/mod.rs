//! Spectral quantities of the simple random walk on a multigraph.
//!
//! The walk picks a uniform half-edge at its current vertex, so a loop is
//! taken with probability `2/deg` and parallel edges add up. Its transition
//! operator `P = D^-1 A` is similar to the symmetric `S = D^-1/2 A D^-1/2`,
//! which is what the eigen-solvers work with.

mod aks;
mod hitting;

pub use aks::{aks_avoidance, AksReport};
pub use hitting::{
    hitting_time_exact, hitting_time_mc, hitting_time_zseries, HittingEstimate, HittingMethod, McOptions,
};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::multigraph::{is_connected, membership, Multigraph};
use crate::seeding::rng_from_seed;

/// Largest graph handed to the dense eigensolver.
pub const DENSE_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralMethod {
    PowerIteration,
    DenseExact,
    /// One vertex: no non-trivial eigenvalue, reported as 0.
    Trivial,
}

impl SpectralMethod {
    pub fn name(self) -> &'static str {
        match self {
            SpectralMethod::PowerIteration => "power-iteration",
            SpectralMethod::DenseExact => "dense-exact",
            SpectralMethod::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    /// Second-largest absolute transition eigenvalue.
    pub lambda: f64,
    /// Signed eigenvalue attaining `lambda` (Rayleigh sign under power
    /// iteration, exact under the dense solver).
    pub signed: f64,
    pub method: SpectralMethod,
    pub iterations: usize,
    /// `||S^2 x - mu x||` for power iteration, 0 for exact methods.
    pub residual: f64,
    pub converged: bool,
}

impl SpectralReport {
    /// A value no smaller than the true `lambda` up to rounding, derived
    /// from the residual of the power iteration.
    pub fn lambda_upper(&self) -> f64 {
        match self.method {
            SpectralMethod::PowerIteration => (self.lambda * self.lambda + self.residual).sqrt().min(1.0),
            _ => self.lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Use the dense solver when power iteration does not converge and
    /// the graph has at most [`DENSE_LIMIT`] vertices.
    pub dense_fallback: bool,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            tol: 1e-6,
            max_iter: 200_000,
            dense_fallback: true,
        }
    }
}

struct SymOp<'a> {
    g: &'a Multigraph,
    inv_sqrt_deg: Vec<f64>,
    /// Unit top eigenvector `sqrt(pi)`.
    top: Vec<f64>,
}

impl<'a> SymOp<'a> {
    fn new(g: &'a Multigraph) -> Self {
        let h = g.num_half_edges() as f64;
        let inv_sqrt_deg = (0..g.n()).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
        let top = (0..g.n()).map(|v| (g.degree(v) as f64 / h).sqrt()).collect();
        SymOp { g, inv_sqrt_deg, top }
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for v in 0..self.g.n() {
            let mut acc = 0.0;
            for h in self.g.half_edges(v) {
                let w = self.g.head(h);
                acc += self.inv_sqrt_deg[w] * x[w];
            }
            y[v] = self.inv_sqrt_deg[v] * acc;
        }
    }

    fn deflate(&self, x: &mut [f64]) {
        let c = dot(x, &self.top);
        for (xi, ti) in x.iter_mut().zip(&self.top) {
            *xi -= c * ti;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn check_walkable(g: &Multigraph) -> Result<()> {
    if g.n() == 0 {
        return invalid("graph has no vertices");
    }
    if (0..g.n()).any(|v| g.degree(v) == 0) {
        return invalid("every vertex needs at least one half-edge");
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Second-largest absolute eigenvalue of the walk's transition operator.
///
/// Power iteration runs on `S` restricted to the complement of `sqrt(pi)`.
/// The estimate is `||S x||` for the unit iterate `x`, which converges to
/// `|lambda|` even when `lambda` and `-lambda` are both eigenvalues and the
/// iterate oscillates. Convergence is declared once the eigen-residual of
/// `S^2` drops below `tol`.
pub fn second_eigenvalue(g: &Multigraph, opts: EigenOptions) -> Result<SpectralReport> {
    check_walkable(g)?;
    if g.n() == 1 {
        return Ok(SpectralReport {
            lambda: 0.0,
            signed: 0.0,
            method: SpectralMethod::Trivial,
            iterations: 0,
            residual: 0.0,
            converged: true,
        });
    }
    let report = power_iteration(g, opts);
    if !report.converged && opts.dense_fallback && g.n() <= DENSE_LIMIT {
        return second_eigenvalue_dense(g);
    }
    Ok(report)
}

fn power_iteration(g: &Multigraph, opts: EigenOptions) -> SpectralReport {
    let op = SymOp::new(g);
    let n = g.n();
    let mut rng = rng_from_seed(0x5eed_1a3b_da7a);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    op.deflate(&mut x);
    let nx = norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let mut y = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        op.apply(&x, &mut y);
        op.deflate(&mut y);
        let ny = norm(&y);
        if ny == 0.0 {
            // x lies in the kernel of the deflated operator
            lambda = 0.0;
            residual = 0.0;
            break;
        }
        lambda = ny;
        // residual of (mu = ny^2, x) for S^2 every few steps
        if iterations % 8 == 0 || iterations == opts.max_iter {
            op.apply(&y, &mut z);
            op.deflate(&mut z);
            let mu = ny * ny;
            residual = z.iter().zip(&x).map(|(a, b)| (a - mu * b).powi(2)).sum::<f64>().sqrt();
            if residual < opts.tol {
                break;
            }
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / ny;
        }
    }
    op.apply(&x, &mut y);
    op.deflate(&mut y);
    let rayleigh = dot(&x, &y);
    SpectralReport {
        lambda,
        signed: if rayleigh < 0.0 { -lambda } else { lambda },
        method: SpectralMethod::PowerIteration,
        iterations,
        residual,
        converged: residual < opts.tol,
    }
}

/// The symmetric form of the transition matrix as a dense matrix.
pub fn dense_symmetric(g: &Multigraph) -> DMatrix<f64> {
    let n = g.n();
    let mut m = DMatrix::zeros(n, n);
    for v in 0..n {
        for h in g.half_edges(v) {
            let w = g.head(h);
            m[(v, w)] += 1.0 / ((g.degree(v) * g.degree(w)) as f64).sqrt();
        }
    }
    m
}

/// Every transition eigenvalue, in decreasing order.
pub fn transition_spectrum(g: &Multigraph) -> Result<Vec<f64>> {
    if g.n() > DENSE_LIMIT {
        return Err(Error::SizeGuard {
            what: "dense spectrum vertices",
            value: g.n(),
            limit: DENSE_LIMIT,
        });
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(dense_symmetric(g)).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

/// Exact second eigenvalue from the full dense spectrum.
pub fn second_eigenvalue_dense(g: &Multigraph) -> Result<SpectralReport> {
    check_walkable(g)?;
    let ev = transition_spectrum(g)?;
    // ev[0] is the eigenvalue 1 of the stationary vector
    let signed = ev[1..]
        .iter()
        .copied()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)))
        .unwrap_or(0.0);
    Ok(SpectralReport {
        lambda: signed.abs(),
        signed,
        method: if g.n() == 1 { SpectralMethod::Trivial } else { SpectralMethod::DenseExact },
        iterations: 0,
        residual: 0.0,
        converged: true,
    })
}

/// A set contracted to one vertex.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Multigraph,
    /// New id of each old vertex; members of the set map to `node`.
    pub relabel: Vec<usize>,
    /// Id of the contracted vertex (always the last one).
    pub node: usize,
}

/// Merges `set` into a single vertex, keeping every edge. Edges inside the
/// set become loops at the new vertex, so its degree is the total degree
/// of the set. Other vertices keep their relative order.
pub fn contract(g: &Multigraph, set: &[usize]) -> Result<Contraction> {
    if set.is_empty() {
        return invalid("cannot contract an empty set");
    }
    if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
        return invalid(format!("vertex {v} out of range"));
    }
    let in_s = membership(g.n(), set);
    let mut relabel = vec![0usize; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if !in_s[v] {
            relabel[v] = next;
            next += 1;
        }
    }
    let node = next;
    for v in 0..g.n() {
        if in_s[v] {
            relabel[v] = node;
        }
    }
    let edges: Vec<(usize, usize)> = (0..g.num_edges())
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (relabel[u], relabel[v])
        })
        .collect();
    Ok(Contraction {
        graph: Multigraph::from_edges(node + 1, &edges)?,
        relabel,
        node,
    })
}

/// `P_v^(t)(v)` for `t = 0..=horizon`, by propagating the distribution.
pub fn return_probabilities(g: &Multigraph, v: usize, horizon: usize) -> Result<Vec<f64>> {
    if v >= g.n() {
        return invalid(format!("vertex {v} out of range"));
    }
    if (0..g.n()).any(|u| g.degree(u) == 0) {
        return invalid("every vertex needs at least one half-edge");
    }
    let mut p = vec![0.0; g.n()];
    p[v] = 1.0;
    let mut q = vec![0.0; g.n()];
    let mut out = Vec::with_capacity(horizon + 1);
    out.push(1.0);
    for _ in 0..horizon {
        propagate(g, &p, &mut q);
        std::mem::swap(&mut p, &mut q);
        out.push(p[v]);
    }
    Ok(out)
}

/// One step of the walk applied to a distribution: `q = p P`.
pub(crate) fn propagate(g: &Multigraph, p: &[f64], q: &mut [f64]) {
    q.iter_mut().for_each(|x| *x = 0.0);
    for u in 0..g.n() {
        if p[u] == 0.0 {
            continue;
        }
        let share = p[u] / g.degree(u) as f64;
        for h in g.half_edges(u) {
            q[g.head(h)] += share;
        }
    }
}
