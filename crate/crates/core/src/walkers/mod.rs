//! The biased (unvisited-edge) walk and the simple / non-backtracking baselines.
//!
//! All walks run on configuration points. Per-trial state holds a traversal
//! count on each half-edge (both halves of an edge carry the same count) and
//! the number of red half-edges at each vertex, so a red loop offers two
//! candidate departures, exactly like the configuration-point process.

mod invariants;
mod lazy;
mod trajectory;

pub use invariants::check_invariants;

pub use lazy::{run_lazy_biased_walk, LazyRun};
pub use trajectory::{partial_cover, Step, Trajectory, TrajectoryPoint};

use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::multigraph::{is_connected, Multigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkKind {
    BiasedEdgeProcess,
    SimpleWalk,
    NonBacktrackingWalk,
}

impl WalkKind {
    pub fn name(self) -> &'static str {
        match self {
            WalkKind::BiasedEdgeProcess => "biased",
            WalkKind::SimpleWalk => "simple",
            WalkKind::NonBacktrackingWalk => "nonbacktracking",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "biased" | "edge-process" => Some(WalkKind::BiasedEdgeProcess),
            "simple" | "srw" => Some(WalkKind::SimpleWalk),
            "nonbacktracking" | "nb" | "nbrw" => Some(WalkKind::NonBacktrackingWalk),
            _ => None,
        }
    }
}

impl std::fmt::Display for WalkKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    AllEdges,
    AllVertices,
    /// Stop after this many steps (or earlier if every edge is covered).
    StepBudget(u64),
    /// Stop once this many distinct edges have been traversed.
    Edges(usize),
    /// Stop once this many distinct vertices have been visited.
    Vertices(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Start {
    /// Owner of a uniformly random half-edge (uniform vertex on regular graphs).
    #[default]
    Uniform,
    Vertex(usize),
}

/// Deliberate rule violations, used only by negative-control checks.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Prefer blue edges whenever one is available.
    BlueFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkOptions {
    /// Keep the full step log.
    pub record_steps: bool,
    /// Store `X_i`/`Phi` only at every `decimation`-th discovery time
    /// (and at the last one).
    pub decimation: usize,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl Default for WalkOptions {
    fn default() -> Self {
        WalkOptions {
            record_steps: false,
            decimation: 1,
            fault: None,
        }
    }
}

impl WalkOptions {
    pub fn with_steps() -> Self {
        WalkOptions {
            record_steps: true,
            ..Default::default()
        }
    }

    pub fn decimated(decimation: usize) -> Self {
        WalkOptions {
            decimation: decimation.max(1),
            ..Default::default()
        }
    }
}

/// Where the walk finds the partner of a half-edge.
pub(crate) trait Topology {
    fn n(&self) -> usize;
    fn num_half_edges(&self) -> usize;
    fn half_edges(&self, v: usize) -> std::ops::Range<usize>;
    fn owner(&self, h: usize) -> usize;
    /// Partner of `h`, exposing it first if needed.
    fn traverse<R: Rng + ?Sized>(&mut self, h: usize, rng: &mut R) -> usize;
}

impl Topology for &Multigraph {
    fn n(&self) -> usize {
        Multigraph::n(self)
    }
    fn num_half_edges(&self) -> usize {
        Multigraph::num_half_edges(self)
    }
    fn half_edges(&self, v: usize) -> std::ops::Range<usize> {
        Multigraph::half_edges(self, v)
    }
    fn owner(&self, h: usize) -> usize {
        Multigraph::owner(self, h)
    }
    fn traverse<R: Rng + ?Sized>(&mut self, h: usize, _rng: &mut R) -> usize {
        self.mate(h)
    }
}

/// Biased walk on a fixed multigraph.
pub fn run_biased_walk<R: Rng + ?Sized>(
    g: &Multigraph,
    start: Start,
    rng: &mut R,
    stop: StopRule,
    opts: WalkOptions,
) -> Result<Trajectory> {
    run_walk(g, WalkKind::BiasedEdgeProcess, start, rng, stop, opts)
}

/// Simple or non-backtracking baseline walk on a fixed multigraph.
pub fn run_baseline_walk<R: Rng + ?Sized>(
    g: &Multigraph,
    kind: WalkKind,
    start: Start,
    rng: &mut R,
    stop: StopRule,
    opts: WalkOptions,
) -> Result<Trajectory> {
    if kind == WalkKind::BiasedEdgeProcess {
        return invalid("baseline walk kind must be simple or non-backtracking");
    }
    run_walk(g, kind, start, rng, stop, opts)
}

/// Any walk kind on a fixed multigraph.
pub fn run_walk<R: Rng + ?Sized>(
    g: &Multigraph,
    kind: WalkKind,
    start: Start,
    rng: &mut R,
    stop: StopRule,
    opts: WalkOptions,
) -> Result<Trajectory> {
    if g.n() == 0 || g.num_half_edges() == 0 {
        return invalid("walk needs at least one edge");
    }
    if kind == WalkKind::NonBacktrackingWalk && (0..g.n()).any(|v| g.degree(v) < 2) {
        return invalid("non-backtracking walk needs minimum degree 2");
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let start = match start {
        Start::Uniform => g.owner(rng.random_range(0..g.num_half_edges())),
        Start::Vertex(v) if v < g.n() => v,
        Start::Vertex(v) => return invalid(format!("start vertex {v} out of range")),
    };
    Engine::new(g, kind, start, g.num_edges(), opts).run(rng, stop)
}

pub(crate) struct Engine<T: Topology> {
    topo: T,
    kind: WalkKind,
    opts: WalkOptions,
    max_degree: usize,
    num_edges: usize,
    /// discovery time always sampled regardless of decimation
    final_t: usize,
    /// traversal count on each half-edge
    count: Vec<u32>,
    red: Vec<u32>,
    visited: Vec<bool>,
    x_counts: Vec<u32>,
    /// red half-edges over visited vertices; zero means the walk is trapped
    frontier_red: usize,
    phi: u32,
    cur: usize,
    last_arrival: Option<usize>,
    traj: Trajectory,
}

impl<T: Topology> Engine<T> {
    pub(crate) fn new(topo: T, kind: WalkKind, start: usize, num_edges: usize, opts: WalkOptions) -> Self {
        let n = topo.n();
        let red: Vec<u32> = (0..n).map(|v| topo.half_edges(v).len() as u32).collect();
        let max_degree = red.iter().copied().max().unwrap_or(0) as usize;
        let mut x_counts = vec![0u32; max_degree + 1];
        for &r in &red {
            x_counts[r as usize] += 1;
        }
        let mut visited = vec![false; n];
        visited[start] = true;
        let frontier_red = red[start] as usize;
        let traj = Trajectory {
            kind,
            n,
            d: max_degree,
            num_edges,
            num_half_edges: topo.num_half_edges(),
            start,
            steps: 0,
            edge_steps: Vec::new(),
            vertex_steps: vec![0],
            sample_t: vec![0],
            sample_x: x_counts.clone(),
            sample_phi: vec![0],
            step_log: opts.record_steps.then(Vec::new),
            final_red: Vec::new(),
        };
        Engine {
            count: vec![0; topo.num_half_edges()],
            topo,
            kind,
            opts,
            max_degree,
            num_edges,
            final_t: num_edges,
            red,
            visited,
            x_counts,
            frontier_red,
            phi: 0,
            cur: start,
            last_arrival: None,
            traj,
        }
    }

    fn done(&self, stop: StopRule) -> bool {
        let t = self.traj.edge_steps.len();
        match stop {
            StopRule::AllEdges => t >= self.num_edges,
            StopRule::AllVertices => self.traj.vertex_steps.len() >= self.traj.n,
            StopRule::StepBudget(b) => self.traj.steps >= b || t >= self.num_edges,
            StopRule::Edges(target) => t >= target,
            StopRule::Vertices(target) => self.traj.vertex_steps.len() >= target,
        }
    }

    pub(crate) fn run<R: Rng + ?Sized>(mut self, rng: &mut R, stop: StopRule) -> Result<Trajectory> {
        self.drive(rng, stop)?;
        self.traj.final_red = std::mem::take(&mut self.red);
        Ok(self.traj)
    }

    fn drive<R: Rng + ?Sized>(&mut self, rng: &mut R, stop: StopRule) -> Result<()> {
        match stop {
            StopRule::Edges(t) if t > self.num_edges => {
                return invalid(format!("edge target {t} exceeds {} edges", self.num_edges))
            }
            StopRule::Vertices(s) if s > self.traj.n || s == 0 => {
                return invalid(format!("vertex target {s} outside 1..={}", self.traj.n))
            }
            _ => {}
        }
        if let StopRule::Edges(t) = stop {
            self.final_t = t;
        }
        while !self.done(stop) {
            if self.kind == WalkKind::BiasedEdgeProcess && self.frontier_red == 0 {
                // every reachable edge is blue but the stop rule wants more
                return Err(Error::Disconnected);
            }
            self.step(rng);
        }
        Ok(())
    }

    fn choose<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let v = self.cur;
        let range = self.topo.half_edges(v);
        let deg = range.len();
        match self.kind {
            WalkKind::BiasedEdgeProcess => {
                let red_here = self.red[v] as usize;
                let want_red = match self.opts.fault {
                    None => red_here > 0,
                    Some(Fault::BlueFirst) => red_here == deg,
                };
                if want_red {
                    self.nth_matching(range, rng.random_range(0..red_here), true)
                } else if red_here == 0 {
                    range.start + rng.random_range(0..deg)
                } else {
                    self.nth_matching(range, rng.random_range(0..deg - red_here), false)
                }
            }
            WalkKind::SimpleWalk => range.start + rng.random_range(0..deg),
            WalkKind::NonBacktrackingWalk => match self.last_arrival {
                Some(back) if deg > 1 => {
                    let i = range.start + rng.random_range(0..deg - 1);
                    if i >= back {
                        i + 1
                    } else {
                        i
                    }
                }
                _ => range.start + rng.random_range(0..deg),
            },
        }
    }

    /// The `k`-th half-edge of `range` whose redness equals `red`.
    fn nth_matching(&self, range: std::ops::Range<usize>, mut k: usize, red: bool) -> usize {
        for h in range {
            if (self.count[h] == 0) == red {
                if k == 0 {
                    return h;
                }
                k -= 1;
            }
        }
        unreachable!("red incidence count out of sync")
    }

    fn drop_red(&mut self, v: usize) {
        let r = self.red[v] as usize;
        self.x_counts[r] -= 1;
        self.x_counts[r - 1] += 1;
        self.red[v] -= 1;
    }

    fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let from = self.cur;
        let red_available = self.red[from] > 0;
        let h = self.choose(rng);
        let a = self.topo.traverse(h, rng);
        let to = self.topo.owner(a);
        let was_red = self.count[h] == 0;
        self.count[h] += 1;
        self.count[a] += 1;
        match self.count[h] {
            1 => self.phi += 1,
            2 => self.phi -= 1,
            _ => {}
        }
        self.traj.steps += 1;
        let k = self.traj.steps;
        if !self.visited[to] {
            self.visited[to] = true;
            self.frontier_red += self.red[to] as usize;
            self.traj.vertex_steps.push(k);
        }
        if was_red {
            self.drop_red(from);
            self.drop_red(to);
            self.frontier_red -= 2;
            self.traj.edge_steps.push(k);
            let t = self.traj.edge_steps.len();
            if t.is_multiple_of(self.opts.decimation) || t == self.final_t || t == self.num_edges {
                self.traj.sample_t.push(t);
                self.traj.sample_x.extend_from_slice(&self.x_counts);
                self.traj.sample_phi.push(self.phi);
            }
        }
        if let Some(log) = self.traj.step_log.as_mut() {
            log.push(Step {
                from,
                to,
                via: h,
                arrival: a,
                red_available,
                was_red,
            });
        }
        debug_assert_eq!(self.x_counts.len(), self.max_degree + 1);
        self.last_arrival = Some(a);
        self.cur = to;
    }

    /// Runs to `stop` and hands back both the trajectory and the topology.
    pub(crate) fn run_keep<R: Rng + ?Sized>(mut self, rng: &mut R, stop: StopRule) -> (Result<()>, Trajectory, T) {
        let res = self.drive(rng, stop);
        self.traj.final_red = std::mem::take(&mut self.red);
        (res, self.traj, self.topo)
    }
}
