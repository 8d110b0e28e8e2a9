//! Biased walk with the pairing exposed on demand.
//!
//! A half-edge's partner is drawn only when the walk first leaves through it,
//! uniformly among all still-unexposed points. This has the same law as
//! sampling the whole pairing first and walking on the realized graph.

use rand::Rng;

use super::{Engine, StopRule, Topology, Trajectory, WalkKind, WalkOptions};
use crate::error::Result;
use crate::multigraph::pairing::check_dims;
use crate::multigraph::Pairing;

const UNEXPOSED: usize = usize::MAX;

struct LazyPairing {
    n: usize,
    d: usize,
    mate: Vec<usize>,
    pool: Vec<usize>,
    pos: Vec<usize>,
}

impl LazyPairing {
    fn new(n: usize, d: usize) -> Self {
        let m = n * d;
        LazyPairing {
            n,
            d,
            mate: vec![UNEXPOSED; m],
            pool: (0..m).collect(),
            pos: (0..m).collect(),
        }
    }

    fn remove(&mut self, p: usize) {
        let i = self.pos[p];
        let last = *self.pool.last().expect("pool not empty");
        self.pool.swap_remove(i);
        if last != p {
            self.pos[last] = i;
        }
    }
}

impl Topology for LazyPairing {
    fn n(&self) -> usize {
        self.n
    }
    fn num_half_edges(&self) -> usize {
        self.n * self.d
    }
    fn half_edges(&self, v: usize) -> std::ops::Range<usize> {
        v * self.d..(v + 1) * self.d
    }
    fn owner(&self, h: usize) -> usize {
        h / self.d
    }
    fn traverse<R: Rng + ?Sized>(&mut self, h: usize, rng: &mut R) -> usize {
        if self.mate[h] == UNEXPOSED {
            self.remove(h);
            let partner = self.pool[rng.random_range(0..self.pool.len())];
            self.remove(partner);
            self.mate[h] = partner;
            self.mate[partner] = h;
        }
        self.mate[h]
    }
}

#[derive(Debug, Clone)]
pub struct LazyRun {
    pub trajectory: Trajectory,
    /// Partner of each point, `None` if never exposed.
    pub exposed: Vec<Option<usize>>,
}

impl LazyRun {
    /// True if every exposed pair is a consistent involution.
    pub fn exposure_is_involution(&self) -> bool {
        self.exposed.iter().enumerate().all(|(x, m)| match *m {
            None => true,
            Some(y) => y != x && self.exposed.get(y).copied().flatten() == Some(x),
        })
    }

    /// The full pairing, if the walk exposed all of it.
    pub fn pairing(&self) -> Option<Pairing> {
        let mu: Option<Vec<usize>> = self.exposed.iter().copied().collect();
        let t = &self.trajectory;
        Pairing::new(mu?, t.n, t.d).ok()
    }
}

/// Biased walk on a configuration multigraph whose pairing is revealed as the
/// walk goes, starting from a uniformly random configuration point.
///
/// A disconnected sample surfaces as [`crate::Error::Disconnected`] once the
/// walk has exhausted its component before meeting the stop rule.
pub fn run_lazy_biased_walk<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    rng: &mut R,
    stop: StopRule,
    opts: WalkOptions,
) -> Result<LazyRun> {
    check_dims(n, d)?;
    let topo = LazyPairing::new(n, d);
    let start = rng.random_range(0..n * d) / d;
    let engine = Engine::new(topo, WalkKind::BiasedEdgeProcess, start, n * d / 2, opts);
    let (res, trajectory, topo) = engine.run_keep(rng, stop);
    res?;
    let exposed = topo
        .mate
        .iter()
        .map(|&m| (m != UNEXPOSED).then_some(m))
        .collect();
    Ok(LazyRun {
        trajectory,
        exposed,
    })
}
