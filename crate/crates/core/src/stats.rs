//! Aggregation and goodness-of-fit helpers.

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

/// Order-independent sample summary.
///
/// Samples are kept and sorted before reduction, so merging partial
/// summaries in any order yields bit-identical statistics.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    samples: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub count: usize,
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.samples.push(x);
    }

    pub fn merge(&mut self, other: &Summary) {
        self.samples.extend_from_slice(&other.samples);
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn stats(&self) -> Stats {
        let mut xs = self.samples.clone();
        xs.sort_by(f64::total_cmp);
        let count = xs.len();
        if count == 0 {
            return Stats {
                count,
                mean: f64::NAN,
                sd: f64::NAN,
                min: f64::NAN,
                max: f64::NAN,
            };
        }
        let mean = kahan_sum(xs.iter().copied()) / count as f64;
        let sd = if count > 1 {
            (kahan_sum(xs.iter().map(|x| (x - mean) * (x - mean))) / (count - 1) as f64).sqrt()
        } else {
            0.0
        };
        Stats {
            count,
            mean,
            sd,
            min: xs[0],
            max: xs[count - 1],
        }
    }
}

impl FromIterator<f64> for Summary {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        Summary {
            samples: iter.into_iter().collect(),
        }
    }
}

fn kahan_sum<I: Iterator<Item = f64>>(it: I) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for x in it {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

/// Two-sided standard normal quantile for confidence `level` (e.g. 0.99 -> 2.576).
pub fn normal_two_sided(level: f64) -> f64 {
    Normal::new(0.0, 1.0)
        .expect("standard normal")
        .inverse_cdf(0.5 + level / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

/// Pearson chi-square of `observed` counts against probabilities `probs`.
///
/// Adjacent bins are pooled left to right until each expected count is at
/// least `min_expected`; a trailing underfull group joins its predecessor.
pub fn chi_square(observed: &[u64], probs: &[f64], min_expected: f64) -> ChiSquare {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let total = total as f64;
    let mut groups: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        acc.0 += o as f64;
        acc.1 += p * total;
        if acc.1 >= min_expected {
            groups.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.1 > 0.0 || acc.0 > 0.0 {
        match groups.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => groups.push(acc),
        }
    }
    let statistic: f64 = groups
        .iter()
        .filter(|g| g.1 > 0.0)
        .map(|&(o, e)| (o - e) * (o - e) / e)
        .sum();
    let df = groups.len().saturating_sub(1);
    let p_value = if df == 0 {
        1.0
    } else {
        1.0 - ChiSquared::new(df as f64).expect("df > 0").cdf(statistic)
    };
    ChiSquare {
        statistic,
        df,
        p_value,
    }
}

/// One-sample Kolmogorov-Smirnov test against Uniform(0, 1).
/// Returns `(D, p)` using the asymptotic Kolmogorov law.
pub fn ks_uniform(samples: &[f64]) -> (f64, f64) {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let lo = x - i as f64 / m;
        let hi = (i + 1) as f64 / m - x;
        d = d.max(lo).max(hi);
    }
    let sq = m.sqrt();
    let lambda = (sq + 0.12 + 0.11 / sq) * d;
    (d, kolmogorov_survival(lambda))
}

fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..200 {
        let k = k as f64;
        let term = (-2.0 * k * k * lambda * lambda).exp();
        sum += if k as i64 % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Pearson chi-square homogeneity test of two count vectors over the same bins.
///
/// Bins are pooled left to right until both expected counts reach
/// `min_expected`; a trailing underfull group joins its predecessor.
pub fn chi_square_two_sample(a: &[u64], b: &[u64], min_expected: f64) -> ChiSquare {
    assert_eq!(a.len(), b.len());
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let total = (na + nb) as f64;
    let (fa, fb) = (na as f64 / total, nb as f64 / total);
    let mut groups: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (&x, &y) in a.iter().zip(b) {
        acc.0 += x as f64;
        acc.1 += y as f64;
        let pooled = acc.0 + acc.1;
        if pooled * fa.min(fb) >= min_expected {
            groups.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.0 + acc.1 > 0.0 {
        match groups.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => groups.push(acc),
        }
    }
    let statistic: f64 = groups
        .iter()
        .map(|&(x, y)| {
            let (ea, eb) = ((x + y) * fa, (x + y) * fb);
            (x - ea).powi(2) / ea + (y - eb).powi(2) / eb
        })
        .sum();
    let df = groups.len().saturating_sub(1);
    let p_value = if df == 0 {
        1.0
    } else {
        1.0 - ChiSquared::new(df as f64).expect("df > 0").cdf(statistic)
    };
    ChiSquare {
        statistic,
        df,
        p_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn summary_basics() {
        let s: Summary = [1.0, 2.0, 3.0, 4.0].into_iter().collect();
        let st = s.stats();
        assert_eq!(st.count, 4);
        assert_eq!(st.mean, 2.5);
        assert!((st.sd - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!((st.min, st.max), (1.0, 4.0));
    }

    #[test]
    fn chi_square_perfect_fit() {
        let r = chi_square(&[25, 25, 25, 25], &[0.25; 4], 5.0);
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.df, 3);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_square_known_value() {
        // stat = 9 + 9 = 18 with df 3; survival erfc(3) + sqrt(36/pi) e^-9
        let r = chi_square(&[10, 40, 25, 25], &[0.25; 4], 5.0);
        assert!((r.statistic - 18.0).abs() < 1e-12);
        let exact = 0.000_439_849_652_838_829;
        assert!((r.p_value - exact).abs() < 1e-12);
    }

    #[test]
    fn chi_square_pools_small_bins() {
        let r = chi_square(&[50, 45, 3, 2], &[0.5, 0.46, 0.02, 0.02], 5.0);
        assert_eq!(r.df, 1);
    }

    #[test]
    fn two_sample_known_value() {
        // 2x2 table [[30, 10], [20, 20]]: expected 25/15 per row, stat 16/3
        let r = chi_square_two_sample(&[30, 10], &[20, 20], 5.0);
        assert!((r.statistic - 16.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.df, 1);
        let identical = chi_square_two_sample(&[5, 7, 9, 11], &[5, 7, 9, 11], 1.0);
        assert_eq!(identical.statistic, 0.0);
    }

    #[test]
    fn normal_quantile() {
        assert!((normal_two_sided(0.99) - 2.5758).abs() < 1e-4);
    }

    #[test]
    fn ks_detects_shift() {
        let good: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        assert!(ks_uniform(&good).1 > 0.99);
        let bad: Vec<f64> = good.iter().map(|x| x * x).collect();
        assert!(ks_uniform(&bad).1 < 1e-6);
    }

    proptest! {
        #[test]
        fn merge_order_is_irrelevant(xs in proptest::collection::vec(-1e6f64..1e6, 1..60), cut in 0usize..60) {
            let cut = cut.min(xs.len());
            let mut a: Summary = xs[..cut].iter().copied().collect();
            let b: Summary = xs[cut..].iter().copied().collect();
            let mut b2 = b.clone();
            a.merge(&b);
            b2.merge(&xs[..cut].iter().copied().collect());
            let (sa, sb) = (a.stats(), b2.stats());
            prop_assert_eq!(sa.mean.to_bits(), sb.mean.to_bits());
            prop_assert_eq!(sa.sd.to_bits(), sb.sd.to_bits());
        }
    }
}
