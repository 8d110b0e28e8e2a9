use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;

use super::extract_green;
use crate::error::{invalid, Error, Result};
use crate::seeding::trial_rng;
use crate::stats::{chi_square, ks_uniform};
use crate::walkers::{run_lazy_biased_walk, StopRule, WalkOptions};

/// Pólya urn with `phi` colors and `m` reinforcements; returns class sizes.
pub fn polya_urn<R: Rng + ?Sized>(phi: usize, m: usize, rng: &mut R) -> Vec<usize> {
    let mut sizes = vec![1usize; phi];
    if phi == 0 {
        return sizes;
    }
    let mut balls: Vec<usize> = (0..phi).collect();
    balls.reserve(m);
    for _ in 0..m {
        let c = balls[rng.random_range(0..balls.len())];
        sizes[c] += 1;
        balls.push(c);
    }
    sizes
}

/// Number of walks sharing a contracted walk with `phi` green edges and
/// `y` once-visited vertices: `phi (phi + 1) ... (phi + y - 1)`.
pub fn equivalence_class_size(phi: u64, y: u64) -> BigUint {
    (0..y).fold(BigUint::from(1u32), |acc, i| acc * (phi + i))
}

/// Law of the first bridge length when `phi + m` green edges are split
/// into `phi` bridges uniformly: `P(K1 = k)` for `k = 1..=m+1`.
pub fn first_bridge_pmf(phi: usize, m: usize) -> Vec<f64> {
    let mut pmf = vec![0.0; m + 1];
    if phi == 0 {
        return pmf;
    }
    if phi == 1 {
        pmf[m] = 1.0;
        return pmf;
    }
    let total = (phi + m) as f64;
    pmf[0] = (phi - 1) as f64 / (total - 1.0);
    for k in 1..=m {
        // P(k+1)/P(k) = (m - k + 1) / (Phi - k - 1)
        pmf[k] = pmf[k - 1] * (m + 1 - k) as f64 / (total - k as f64 - 1.0);
    }
    pmf
}

/// `first_bridge_pmf` folded into `cap` bins: lengths `1..cap` and `>= cap`.
pub fn capped_first_bridge_pmf(phi: usize, m: usize, cap: usize) -> Vec<f64> {
    let mut out = vec![0.0; cap];
    for (i, p) in first_bridge_pmf(phi, m).into_iter().enumerate() {
        out[i.min(cap - 1)] += p;
    }
    out
}

/// Contracted green-edge count, once-visited count and first bridge length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UrnObservation {
    pub phi: usize,
    pub m: usize,
    pub k1: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BucketResult {
    pub phi: (usize, usize),
    pub m: (usize, usize),
    pub samples: usize,
    pub chi2: f64,
    pub df: usize,
    pub p_value: f64,
}

impl BucketResult {
    pub fn label(&self) -> String {
        let part = |(a, b): (usize, usize)| if a == b { a.to_string() } else { format!("{a}-{b}") };
        format!("({};{})", part(self.phi), part(self.m))
    }
}

#[derive(Debug, Clone)]
pub struct UrnTestReport {
    pub buckets: Vec<BucketResult>,
    pub observations: usize,
    pub skipped_trials: usize,
}

impl UrnTestReport {
    pub fn pass_fraction(&self, alpha: f64) -> f64 {
        if self.buckets.is_empty() {
            return 0.0;
        }
        let pass = self.buckets.iter().filter(|b| b.p_value > alpha).count();
        pass as f64 / self.buckets.len() as f64
    }

    pub fn p_values(&self) -> Vec<f64> {
        self.buckets.iter().map(|b| b.p_value).collect()
    }

    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "bucket,samples,chi2,p")?;
        for b in &self.buckets {
            writeln!(out, "\"{}\",{},{:.6},{:.6}", b.label(), b.samples, b.chi2, b.p_value)?;
        }
        Ok(())
    }
}

/// Groups observations and chi-squares the first bridge length in each group.
///
/// Every exact `(phi, m)` pair with at least `min_bucket` observations is a
/// bucket of its own. The rest are ordered by `m / phi` and cut into runs
/// of `min_bucket`; the expected counts of such a run are the sum of each
/// observation's own law, so pooling never mixes conditional laws.
pub fn bucket_test(obs: &[UrnObservation], min_bucket: usize, cap: usize) -> Vec<BucketResult> {
    let mut exact: BTreeMap<(usize, usize), Vec<UrnObservation>> = BTreeMap::new();
    for o in obs.iter().filter(|o| o.phi > 0) {
        exact.entry((o.phi, o.m)).or_default().push(*o);
    }
    let mut groups: Vec<Vec<UrnObservation>> = Vec::new();
    let mut rest = Vec::new();
    for (_, g) in exact {
        if g.len() >= min_bucket {
            groups.push(g);
        } else {
            rest.extend(g);
        }
    }
    rest.sort_by(|a, b| {
        let ra = a.m as f64 / a.phi as f64;
        let rb = b.m as f64 / b.phi as f64;
        ra.total_cmp(&rb).then((a.phi, a.m).cmp(&(b.phi, b.m)))
    });
    let full = rest.len() / min_bucket.max(1);
    if full > 0 {
        let mut chunks: Vec<Vec<UrnObservation>> = rest.chunks(min_bucket).map(|c| c.to_vec()).collect();
        if chunks.len() > full {
            let tail = chunks.pop().unwrap();
            chunks.last_mut().unwrap().extend(tail);
        }
        groups.extend(chunks);
    }

    let mut pmf_cache: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    groups
        .into_iter()
        .map(|g| {
            let mut observed = vec![0u64; cap];
            let mut expected = vec![0.0; cap];
            for o in &g {
                observed[o.k1.min(cap) - 1] += 1;
                let pmf = pmf_cache
                    .entry((o.phi, o.m))
                    .or_insert_with(|| capped_first_bridge_pmf(o.phi, o.m, cap));
                for (e, p) in expected.iter_mut().zip(pmf.iter()) {
                    *e += p;
                }
            }
            let n = g.len() as f64;
            let probs: Vec<f64> = expected.iter().map(|e| e / n).collect();
            let cs = chi_square(&observed, &probs, 5.0);
            let range = |f: fn(&UrnObservation) -> usize| {
                let lo = g.iter().map(f).min().unwrap();
                let hi = g.iter().map(f).max().unwrap();
                (lo, hi)
            };
            BucketResult {
                phi: range(|o| o.phi),
                m: range(|o| o.m),
                samples: g.len(),
                chi2: cs.statistic,
                df: cs.df,
                p_value: cs.p_value,
            }
        })
        .collect()
}

/// Runs one lazily exposed biased walk until just before it discovers its
/// `t`-th edge and reads off the green-bridge statistics of that prefix.
///
/// Returns `Ok(None)` when the sampled graph is disconnected before `t`.
pub fn observe_walk<R: Rng + ?Sized>(n: usize, d: usize, t: usize, rng: &mut R) -> Result<Option<UrnObservation>> {
    if t < 2 {
        return invalid("checkpoint must be at least 2 edges");
    }
    let run = match run_lazy_biased_walk(n, d, rng, StopRule::Edges(t), WalkOptions::with_steps()) {
        Ok(run) => run,
        Err(Error::Disconnected) => return Ok(None),
        Err(e) => return Err(e),
    };
    let traj = &run.trajectory;
    let cut = traj.edge_cover(t).ok_or_else(|| Error::NoConvergence("checkpoint not reached".into()))?;
    let log = traj.step_log.as_ref().expect("step log requested");
    let green = extract_green(&log[..cut as usize - 1])?;
    Ok(Some(UrnObservation {
        phi: green.phi,
        m: green.y.len(),
        k1: green.bridge_lengths.first().copied().unwrap_or(0),
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct UrnTestConfig {
    pub n: usize,
    pub d: usize,
    /// Checkpoint as unexplored fraction: `t = (1 - delta) d n / 2`.
    pub delta: f64,
    pub trials: usize,
    pub min_bucket: usize,
    pub cap: usize,
    pub seed: u64,
}

impl Default for UrnTestConfig {
    fn default() -> Self {
        UrnTestConfig {
            n: 2000,
            d: 3,
            delta: 0.1,
            trials: 20_000,
            min_bucket: 500,
            cap: 10,
            seed: 1,
        }
    }
}

impl UrnTestConfig {
    pub fn checkpoint(&self) -> usize {
        let h = (self.n * self.d) as f64;
        ((1.0 - self.delta) * h / 2.0).round() as usize
    }
}

/// Bridge lengths of real walks against the urn law, one fresh random graph
/// per trial. Trials run in parallel; results depend only on the seed.
pub fn urn_bridge_test(cfg: &UrnTestConfig) -> Result<UrnTestReport> {
    if cfg.cap < 2 || cfg.min_bucket == 0 || !(0.0..1.0).contains(&cfg.delta) {
        return invalid("urn test needs cap >= 2, min_bucket >= 1 and delta in [0, 1)");
    }
    let t = cfg.checkpoint();
    let results: Vec<Option<UrnObservation>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| observe_walk(cfg.n, cfg.d, t, &mut trial_rng(cfg.seed, i as u64)))
        .collect::<Result<_>>()?;
    let skipped_trials = results.iter().filter(|r| r.is_none()).count();
    let obs: Vec<UrnObservation> = results.into_iter().flatten().collect();
    Ok(UrnTestReport {
        buckets: bucket_test(&obs, cfg.min_bucket, cfg.cap),
        observations: obs.len(),
        skipped_trials,
    })
}

/// Null calibration: urn draws for the given `(phi, m)` pairs, `per_pair`
/// each, run through the same bucket test. Returns the report and the KS
/// p-value of its bucket p-values against Uniform(0, 1).
pub fn synthetic_null(pairs: &[(usize, usize)], per_pair: usize, cap: usize, seed: u64) -> (UrnTestReport, f64) {
    let obs: Vec<UrnObservation> = pairs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, &(phi, m))| {
            let mut rng = trial_rng(seed, i as u64);
            (0..per_pair)
                .map(|_| UrnObservation {
                    phi,
                    m,
                    k1: polya_urn(phi, m, &mut rng)[0],
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let report = UrnTestReport {
        buckets: bucket_test(&obs, per_pair, cap),
        observations: obs.len(),
        skipped_trials: 0,
    };
    let (_, ks_p) = ks_uniform(&report.p_values());
    (report, ks_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::rng_from_seed;
    use std::collections::HashMap;

    /// Exact law of the ordered size vector by enumerating every draw sequence.
    fn exact_urn_law(phi: usize, m: usize) -> HashMap<Vec<usize>, f64> {
        fn rec(sizes: &mut Vec<usize>, left: usize, p: f64, out: &mut HashMap<Vec<usize>, f64>) {
            if left == 0 {
                *out.entry(sizes.clone()).or_insert(0.0) += p;
                return;
            }
            let total: usize = sizes.iter().sum();
            for c in 0..sizes.len() {
                let q = sizes[c] as f64 / total as f64;
                sizes[c] += 1;
                rec(sizes, left - 1, p * q, out);
                sizes[c] -= 1;
            }
        }
        let mut out = HashMap::new();
        rec(&mut vec![1; phi], m, 1.0, &mut out);
        out
    }

    fn binom(a: u64, b: u64) -> f64 {
        (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn urn_law_is_uniform_over_compositions() {
        for phi in 1..=3 {
            for m in 0..=4 {
                let law = exact_urn_law(phi, m);
                let compositions = binom((phi + m - 1) as u64, (phi - 1) as u64);
                assert_eq!(law.len() as f64, compositions, "phi={phi} m={m}");
                for (sizes, p) in law {
                    assert_eq!(sizes.iter().sum::<usize>(), phi + m);
                    assert!((p - 1.0 / compositions).abs() < 1e-12);
                }
            }
        }
        // three colors, two draws: six compositions of 5, each 1/6
        let law = exact_urn_law(3, 2);
        assert_eq!(law.len(), 6);
        assert!(law.values().all(|&p| (p - 1.0 / 6.0).abs() < 1e-12));
    }

    #[test]
    fn sampler_matches_exact_law() {
        let mut rng = rng_from_seed(7);
        let law = exact_urn_law(3, 2);
        let keys: Vec<Vec<usize>> = law.keys().cloned().collect();
        let mut counts = vec![0u64; keys.len()];
        for _ in 0..60_000 {
            let s = polya_urn(3, 2, &mut rng);
            counts[keys.iter().position(|k| *k == s).unwrap()] += 1;
        }
        let probs: Vec<f64> = keys.iter().map(|k| law[k]).collect();
        assert!(chi_square(&counts, &probs, 5.0).p_value > 1e-3);
    }

    #[test]
    fn first_bridge_law_matches_enumeration() {
        for phi in 1..=4 {
            for m in 0..=5 {
                let pmf = first_bridge_pmf(phi, m);
                let mut direct = vec![0.0; m + 1];
                for (sizes, p) in exact_urn_law(phi, m) {
                    direct[sizes[0] - 1] += p;
                }
                for k in 0..=m {
                    assert!((pmf[k] - direct[k]).abs() < 1e-12, "phi={phi} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn class_sizes_are_rising_factorials() {
        assert_eq!(equivalence_class_size(5, 0), BigUint::from(1u32));
        assert_eq!(equivalence_class_size(3, 2), BigUint::from(12u32));
        assert_eq!(equivalence_class_size(1, 4), BigUint::from(24u32));
        // each composition of phi + y into phi parts carries y! labelled placements
        let compositions = exact_urn_law(3, 2).len() as u32;
        assert_eq!(equivalence_class_size(3, 2), BigUint::from(compositions * 2));
    }

    #[test]
    fn synthetic_null_is_calibrated() {
        let pairs: Vec<(usize, usize)> = (0..60).map(|i| (2 + i % 7, 3 + (i * 5) % 17)).collect();
        let (report, ks_p) = synthetic_null(&pairs, 2000, 10, 11);
        assert_eq!(report.buckets.len(), 60);
        assert!(ks_p > 0.01, "ks p = {ks_p}");
    }

    #[test]
    fn pooled_buckets_keep_every_observation() {
        let mut rng = rng_from_seed(3);
        let obs: Vec<UrnObservation> = (0..1234)
            .map(|i| {
                let phi = 1 + i % 5;
                let m = i % 7;
                UrnObservation { phi, m, k1: polya_urn(phi, m, &mut rng)[0] }
            })
            .collect();
        let buckets = bucket_test(&obs, 100, 10);
        assert_eq!(buckets.iter().map(|b| b.samples).sum::<usize>(), 1234);
        assert!(buckets.iter().all(|b| b.samples >= 100));
    }

    #[test]
    fn walk_observation_is_consistent() {
        let mut rng = rng_from_seed(5);
        for _ in 0..50 {
            if let Some(o) = observe_walk(60, 3, 60, &mut rng).unwrap() {
                assert!(o.phi >= 1);
                assert!(o.k1 >= 1 && o.k1 <= o.m + 1);
            }
        }
    }
}
