use std::io::Write;

use super::WalkKind;
use crate::error::Result;

/// One walk step in the debug log.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub from: usize,
    pub to: usize,
    /// Departure half-edge (configuration point) at `from`.
    pub via: usize,
    /// Arrival half-edge at `to`.
    pub arrival: usize,
    /// Whether `from` had a red incidence when the step was chosen.
    pub red_available: bool,
    /// Whether the traversed edge was red before this step.
    pub was_red: bool,
}

impl Step {
    /// Edge identity shared by both half-edges: the lower half-edge index.
    pub fn edge_key(&self) -> usize {
        self.via.min(self.arrival)
    }
}

/// Time series of a walk, sampled right after each newly discovered edge.
///
/// `t` counts distinct edges traversed so far; the sample at `t` is taken
/// immediately after the step that first traverses the `t`-th edge. Sample
/// `t = 0` describes the untouched graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub kind: WalkKind,
    pub n: usize,
    /// Largest vertex degree; `X_0..X_d` are recorded.
    pub d: usize,
    pub num_edges: usize,
    pub num_half_edges: usize,
    pub start: usize,
    /// Total steps taken.
    pub steps: u64,
    /// `edge_steps[t-1] = C_E(t)`.
    pub edge_steps: Vec<u64>,
    /// `vertex_steps[s-1] = C_V(s)`; `C_V(1) = 0`.
    pub vertex_steps: Vec<u64>,
    pub(crate) sample_t: Vec<usize>,
    pub(crate) sample_x: Vec<u32>,
    pub(crate) sample_phi: Vec<u32>,
    pub step_log: Option<Vec<Step>>,
    /// Red incidences per vertex when the walk stopped.
    pub final_red: Vec<u32>,
}

/// One recorded sample.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint<'a> {
    pub t: usize,
    pub steps: u64,
    pub x: &'a [u32],
    pub phi: u32,
    pub delta: f64,
}

impl Trajectory {
    pub fn edges_discovered(&self) -> usize {
        self.edge_steps.len()
    }

    pub fn vertices_visited(&self) -> usize {
        self.vertex_steps.len()
    }

    /// Steps until the `t`-th distinct edge; `C_E(0) = 0`.
    pub fn edge_cover(&self, t: usize) -> Option<u64> {
        if t == 0 {
            return Some(0);
        }
        self.edge_steps.get(t - 1).copied()
    }

    pub fn vertex_cover(&self, s: usize) -> Option<u64> {
        if s == 0 {
            return None;
        }
        self.vertex_steps.get(s - 1).copied()
    }

    /// Steps to visit every vertex, if reached.
    pub fn full_vertex_cover(&self) -> Option<u64> {
        self.vertex_cover(self.n)
    }

    pub fn full_edge_cover(&self) -> Option<u64> {
        self.edge_cover(self.num_edges)
    }

    /// `delta(t) = (H - 2t) / H` with `H` the number of half-edges.
    pub fn delta(&self, t: usize) -> f64 {
        (self.num_half_edges as f64 - 2.0 * t as f64) / self.num_half_edges as f64
    }

    pub fn num_samples(&self) -> usize {
        self.sample_t.len()
    }

    pub fn sample(&self, i: usize) -> TrajectoryPoint<'_> {
        let stride = self.d + 1;
        let t = self.sample_t[i];
        TrajectoryPoint {
            t,
            steps: self.edge_cover(t).unwrap_or(0),
            x: &self.sample_x[i * stride..(i + 1) * stride],
            phi: self.sample_phi[i],
            delta: self.delta(t),
        }
    }

    pub fn samples(&self) -> impl Iterator<Item = TrajectoryPoint<'_>> {
        (0..self.num_samples()).map(|i| self.sample(i))
    }

    /// Sample recorded at exactly time `t`, if stored.
    pub fn at(&self, t: usize) -> Option<TrajectoryPoint<'_>> {
        self.sample_t.binary_search(&t).ok().map(|i| self.sample(i))
    }

    /// `X_i(t)` if the sample at `t` was stored.
    pub fn x(&self, t: usize, i: usize) -> Option<u32> {
        self.at(t).map(|p| p.x[i])
    }

    pub fn phi(&self, t: usize) -> Option<u32> {
        self.at(t).map(|p| p.phi)
    }

    /// First `t` at which at most `n - s` vertices are still untouched
    /// (all incidences red). Requires undecimated samples to be exact.
    pub fn tau(&self, s: usize) -> Option<usize> {
        let target = self.n.checked_sub(s)? as u32;
        self.samples().find(|p| p.x[self.d] <= target).map(|p| p.t)
    }

    /// Vertices still incident to a red edge when the walk stopped.
    pub fn unfinished_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.final_red[v] > 0).collect()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# covertime-lab schema v1")?;
        write!(out, "t,steps")?;
        for i in 0..=self.d {
            write!(out, ",X{i}")?;
        }
        writeln!(out, ",Phi,delta")?;
        for p in self.samples() {
            write!(out, "{},{}", p.t, p.steps)?;
            for x in p.x {
                write!(out, ",{x}")?;
            }
            writeln!(out, ",{},{:.9}", p.phi, p.delta)?;
        }
        Ok(())
    }
}

/// Exact partial cover times `(C_V(s), C_E(t))`; `None` means not reached.
pub fn partial_cover(traj: &Trajectory, s: usize, t: usize) -> (Option<u64>, Option<u64>) {
    (traj.vertex_cover(s), traj.edge_cover(t))
}
