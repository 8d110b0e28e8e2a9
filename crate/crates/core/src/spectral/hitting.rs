use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;

use super::{check_walkable, contract, propagate, second_eigenvalue, EigenOptions};
use crate::error::{invalid, Error, Result};
use crate::multigraph::{membership, Multigraph};
use crate::seeding::trial_rng;
use crate::stats::{normal_two_sided, Summary};

/// Most vertices outside the target set that the exact solver accepts.
pub const EXACT_LIMIT: usize = 2000;
/// Above this many unknowns the exact solver switches from LU to CG.
const DENSE_SOLVE_LIMIT: usize = 400;
/// Spectral radius beyond which the series is not summed.
const PERIODIC_LAMBDA: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HittingMethod {
    ZSeries,
    ExactSolve,
    MonteCarlo,
}

impl HittingMethod {
    pub fn name(self) -> &'static str {
        match self {
            HittingMethod::ZSeries => "zseries",
            HittingMethod::ExactSolve => "exact",
            HittingMethod::MonteCarlo => "montecarlo",
        }
    }
}

/// Expected hitting time of a set from the stationary distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingEstimate {
    pub value: f64,
    pub method: HittingMethod,
    /// Series terms summed (`ZSeries`).
    pub truncation: Option<usize>,
    /// Walks run (`MonteCarlo`).
    pub samples: Option<usize>,
    /// Series tail bound, solver residual, or confidence half-width.
    pub error: f64,
    /// Set when a Monte Carlo walk hit the step cap.
    pub flagged: bool,
}

impl HittingEstimate {
    fn zero(method: HittingMethod) -> Self {
        HittingEstimate {
            value: 0.0,
            method,
            truncation: (method == HittingMethod::ZSeries).then_some(0),
            samples: None,
            error: 0.0,
            flagged: false,
        }
    }
}

fn dedup(g: &Multigraph, set: &[usize]) -> Result<Vec<usize>> {
    if set.is_empty() {
        return invalid("target set is empty");
    }
    if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
        return invalid(format!("vertex {v} out of range"));
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// `E_pi H(S)` as `Z_ss / pi_s` on the graph with `S` contracted to `s`.
///
/// The series `Z_ss = sum_t (P_s^(t)(s) - pi_s)` is summed until its tail,
/// bounded by `lambda^(T+1) / (1 - lambda) / pi_s` with `lambda` measured on
/// the contracted graph, falls below `tol` relative to the running value.
/// Near-periodic contractions go to the exact solver instead.
pub fn hitting_time_zseries(g: &Multigraph, set: &[usize], tol: f64) -> Result<HittingEstimate> {
    let set = dedup(g, set)?;
    check_walkable(g)?;
    if set.len() == g.n() {
        return Ok(HittingEstimate::zero(HittingMethod::ZSeries));
    }
    let c = contract(g, &set)?;
    let h = &c.graph;
    let lambda = second_eigenvalue(h, EigenOptions::default())?.lambda_upper();
    if lambda >= PERIODIC_LAMBDA {
        if g.n() - set.len() <= EXACT_LIMIT {
            return hitting_time_exact(g, &set);
        }
        return Err(Error::NoConvergence(format!("contracted chain has lambda {lambda:.9}")));
    }
    let s = c.node;
    let pi = h.stationary(s);
    let mut p = vec![0.0; h.n()];
    p[s] = 1.0;
    let mut q = vec![0.0; h.n()];
    let mut z = 1.0 - pi;
    let mut t = 0usize;
    loop {
        let tail = lambda.powi(t as i32 + 1) / (1.0 - lambda) / pi;
        if tail < tol * (z / pi).abs().max(1.0) {
            return Ok(HittingEstimate {
                value: z / pi,
                method: HittingMethod::ZSeries,
                truncation: Some(t),
                samples: None,
                error: tail,
                flagged: false,
            });
        }
        propagate(h, &p, &mut q);
        std::mem::swap(&mut p, &mut q);
        t += 1;
        z += p[s] - pi;
    }
}

/// `E_pi H(S)` from the first-step equations `h = 1 + P h` off `S`,
/// `h = 0` on `S`; dense LU for small systems, conjugate gradients otherwise.
pub fn hitting_time_exact(g: &Multigraph, set: &[usize]) -> Result<HittingEstimate> {
    let set = dedup(g, set)?;
    let m = g.n() - set.len();
    if m > EXACT_LIMIT {
        return Err(Error::SizeGuard {
            what: "vertices outside the target set",
            value: m,
            limit: EXACT_LIMIT,
        });
    }
    if m == 0 {
        return Ok(HittingEstimate::zero(HittingMethod::ExactSolve));
    }
    let in_s = membership(g.n(), &set);
    if !reaches_set(g, &in_s) {
        return Err(Error::Singular("some vertex cannot reach the target set".into()));
    }
    let outside: Vec<usize> = (0..g.n()).filter(|&v| !in_s[v]).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in outside.iter().enumerate() {
        index[v] = i;
    }
    // (D - A) restricted to the complement of S, right-hand side D 1
    let (h, residual) = if m <= DENSE_SOLVE_LIMIT {
        let mut a = DMatrix::zeros(m, m);
        let mut b = DVector::zeros(m);
        for (i, &v) in outside.iter().enumerate() {
            a[(i, i)] += g.degree(v) as f64;
            b[i] = g.degree(v) as f64;
            for e in g.half_edges(v) {
                let j = index[g.head(e)];
                if j != usize::MAX {
                    a[(i, j)] -= 1.0;
                }
            }
        }
        let x = a
            .clone()
            .lu()
            .solve(&b)
            .ok_or_else(|| Error::Singular("first-step system".into()))?;
        let r = (&a * &x - &b).norm();
        (x.iter().copied().collect::<Vec<f64>>(), r)
    } else {
        conjugate_gradient(g, &outside, &index)?
    };
    let value = outside.iter().zip(&h).map(|(&v, hv)| g.stationary(v) * hv).sum();
    Ok(HittingEstimate {
        value,
        method: HittingMethod::ExactSolve,
        truncation: None,
        samples: None,
        error: residual,
        flagged: false,
    })
}

fn reaches_set(g: &Multigraph, in_s: &[bool]) -> bool {
    let mut seen = in_s.to_vec();
    let mut queue: VecDeque<usize> = (0..g.n()).filter(|&v| in_s[v]).collect();
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Jacobi-preconditioned CG on the symmetric positive definite `(D - A)_UU`.
fn conjugate_gradient(g: &Multigraph, outside: &[usize], index: &[usize]) -> Result<(Vec<f64>, f64)> {
    let m = outside.len();
    let apply = |x: &[f64], y: &mut [f64]| {
        for (i, &v) in outside.iter().enumerate() {
            let mut acc = g.degree(v) as f64 * x[i];
            for e in g.half_edges(v) {
                let j = index[g.head(e)];
                if j != usize::MAX {
                    acc -= x[j];
                }
            }
            y[i] = acc;
        }
    };
    let diag: Vec<f64> = outside
        .iter()
        .map(|&v| {
            let self_weight = g.half_edges(v).filter(|&e| g.head(e) == v).count() as f64;
            g.degree(v) as f64 - self_weight
        })
        .collect();
    let b: Vec<f64> = outside.iter().map(|&v| g.degree(v) as f64).collect();
    let bnorm = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut x = vec![0.0; m];
    let mut r = b.clone();
    let mut z: Vec<f64> = r.iter().zip(&diag).map(|(ri, di)| ri / di).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; m];
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    let max_iter = 20 * m + 1000;
    for _ in 0..max_iter {
        apply(&p, &mut ap);
        let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
        let alpha = rz / pap;
        for i in 0..m {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rnorm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if rnorm <= 1e-13 * bnorm {
            apply(&x, &mut ap);
            let true_res = ap.iter().zip(&b).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            return Ok((x, true_res));
        }
        for i in 0..m {
            z[i] = r[i] / diag[i];
        }
        let rz_new: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..m {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::NoConvergence("conjugate gradients on the first-step system".into()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McOptions {
    pub trials: usize,
    pub seed: u64,
    /// Steps allowed per walk; defaults to `10^9 / trials`.
    pub step_cap: Option<u64>,
    /// Confidence level of the reported half-width.
    pub level: f64,
}

impl McOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        McOptions {
            trials,
            seed,
            step_cap: None,
            level: 0.99,
        }
    }
}

/// Mean number of steps for a simple walk started from `pi` to enter `S`.
/// Walks run in parallel, trial `i` on its own derived generator.
pub fn hitting_time_mc(g: &Multigraph, set: &[usize], opts: McOptions) -> Result<HittingEstimate> {
    let set = dedup(g, set)?;
    if opts.trials == 0 {
        return invalid("trials must be at least 1");
    }
    if g.num_half_edges() == 0 {
        return invalid("graph has no edges");
    }
    let cap = opts.step_cap.unwrap_or((1_000_000_000 / opts.trials as u64).max(1));
    let in_s = membership(g.n(), &set);
    let runs: Vec<Option<u64>> = (0..opts.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(opts.seed, i as u64);
            let mut v = g.owner(rng.random_range(0..g.num_half_edges()));
            let mut steps = 0u64;
            while !in_s[v] {
                if steps == cap {
                    return None;
                }
                let deg = g.degree(v);
                let h = g.half_edges(v).start + rng.random_range(0..deg);
                v = g.head(h);
                steps += 1;
            }
            Some(steps)
        })
        .collect();
    let flagged = runs.iter().any(|r| r.is_none());
    let summary: Summary = runs.iter().map(|r| r.unwrap_or(cap) as f64).collect();
    let st = summary.stats();
    let half_width = normal_two_sided(opts.level) * st.sd / (st.count as f64).sqrt();
    Ok(HittingEstimate {
        value: st.mean,
        method: HittingMethod::MonteCarlo,
        truncation: None,
        samples: Some(opts.trials),
        error: if st.sd.is_finite() { half_width } else { 0.0 },
        flagged,
    })
}
