//! Exhaustive enumeration of short biased walks with the pairing exposed
//! on the fly, for checking the equivalence-class structure exactly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::multigraph::pairing::check_dims;
use crate::structure::extract_green;
use crate::walkers::Step;

const UNEXPOSED: usize = usize::MAX;
/// Largest `d * n` accepted by the enumerator.
pub const MAX_WALK_POINTS: usize = 12;

/// A walk as its point sequence `x_1, ..., x_{2k+1}`: departure and arrival
/// points of `k` steps followed by the pending departure point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedWalk {
    pub points: Vec<usize>,
    /// The walk has probability exactly `1 / denominator`.
    pub denominator: u128,
}

impl EnumeratedWalk {
    pub fn steps(&self, d: usize) -> Vec<Step> {
        let k = (self.points.len() - 1) / 2;
        (0..k)
            .map(|i| {
                let (via, arrival) = (self.points[2 * i], self.points[2 * i + 1]);
                Step {
                    from: via / d,
                    to: arrival / d,
                    via,
                    arrival,
                    red_available: true,
                    was_red: true,
                }
            })
            .collect()
    }
}

/// Every feasible `k`-step walk of the lazily exposed biased walk on the
/// configuration model with `n` vertices of degree `d`.
pub fn enumerate_lazy_walks(n: usize, d: usize, k: usize) -> Result<Vec<EnumeratedWalk>> {
    check_dims(n, d)?;
    if n * d > MAX_WALK_POINTS {
        return Err(Error::SizeGuard {
            what: "configuration points",
            value: n * d,
            limit: MAX_WALK_POINTS,
        });
    }
    let mut out = Vec::new();
    let mut mate = vec![UNEXPOSED; n * d];
    let mut points = Vec::with_capacity(2 * k + 1);
    for x in 0..n * d {
        points.push(x);
        walk(&mut mate, &mut points, (n * d) as u128, d, k, &mut out);
        points.pop();
    }
    Ok(out)
}

fn walk(mate: &mut [usize], points: &mut Vec<usize>, den: u128, d: usize, k: usize, out: &mut Vec<EnumeratedWalk>) {
    if points.len() == 2 * k + 1 {
        out.push(EnumeratedWalk {
            points: points.clone(),
            denominator: den,
        });
        return;
    }
    let x = *points.last().expect("departure point");
    if mate[x] != UNEXPOSED {
        let y = mate[x];
        arrive(mate, points, y, den, d, k, out);
        return;
    }
    let free: Vec<usize> = (0..mate.len()).filter(|&p| p != x && mate[p] == UNEXPOSED).collect();
    let den = den * free.len() as u128;
    for y in free {
        mate[x] = y;
        mate[y] = x;
        arrive(mate, points, y, den, d, k, out);
        mate[x] = UNEXPOSED;
        mate[y] = UNEXPOSED;
    }
}

fn arrive(mate: &mut [usize], points: &mut Vec<usize>, y: usize, den: u128, d: usize, k: usize, out: &mut Vec<EnumeratedWalk>) {
    points.push(y);
    let w = y / d;
    let red: Vec<usize> = (w * d..(w + 1) * d).filter(|&p| mate[p] == UNEXPOSED).collect();
    let options: Vec<usize> = if red.is_empty() { (w * d..(w + 1) * d).collect() } else { red };
    let den = den * options.len() as u128;
    for x in options {
        points.push(x);
        walk(mate, points, den, d, k, out);
        points.pop();
    }
    points.pop();
}

/// Contracted walk: the point sequence with every once-visited vertex's
/// entry and exit points removed, plus those vertices with their points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ContractedKey {
    pub skeleton: Vec<usize>,
    /// `(vertex, entry point, exit point)`, sorted by vertex.
    pub y_units: Vec<(usize, usize, usize)>,
}

/// A class of walks sharing a contracted walk.
#[derive(Debug, Clone)]
pub struct WalkClass {
    pub key: ContractedKey,
    /// Green edges of the contracted walk.
    pub phi: usize,
    pub members: Vec<EnumeratedWalk>,
}

/// The contracted key and contracted green-edge count of one walk.
pub fn contracted_key(walk: &EnumeratedWalk, d: usize) -> Result<(ContractedKey, usize)> {
    let steps = walk.steps(d);
    let green = extract_green(&steps)?;
    let mut y_units = Vec::with_capacity(green.y.len());
    let mut drop = vec![false; walk.points.len()];
    for &y in &green.y {
        // y is entered by step i (arrival point 2i+1) and left by step i+1
        let i = steps.iter().position(|s| s.to == y).expect("once-visited vertex is entered");
        let (entry, exit) = (2 * i + 1, 2 * i + 2);
        drop[entry] = true;
        drop[exit] = true;
        y_units.push((y, walk.points[entry], walk.points[exit]));
    }
    y_units.sort_unstable();
    let skeleton = walk
        .points
        .iter()
        .zip(&drop)
        .filter(|(_, &dropped)| !dropped)
        .map(|(&p, _)| p)
        .collect();
    Ok((ContractedKey { skeleton, y_units }, green.phi))
}

/// Groups walks by contracted key.
pub fn group_by_contraction(walks: Vec<EnumeratedWalk>, d: usize) -> Result<Vec<WalkClass>> {
    let mut classes: BTreeMap<ContractedKey, WalkClass> = BTreeMap::new();
    for w in walks {
        let (key, phi) = contracted_key(&w, d)?;
        let class = classes.entry(key.clone()).or_insert_with(|| WalkClass {
            key,
            phi,
            members: Vec::new(),
        });
        if class.phi != phi {
            return Err(Error::BrokenLog(0));
        }
        class.members.push(w);
    }
    Ok(classes.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::equivalence_class_size;
    use num_bigint::BigUint;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn total_probability(walks: &[EnumeratedWalk]) -> BigRational {
        walks.iter().fold(BigRational::zero(), |acc, w| {
            acc + BigRational::new(1.into(), num_bigint::BigInt::from(w.denominator))
        })
    }

    #[test]
    fn probabilities_sum_to_one() {
        for k in 0..=4 {
            assert!(total_probability(&enumerate_lazy_walks(2, 3, k).unwrap()).is_one());
        }
        for k in 0..=2 {
            assert!(total_probability(&enumerate_lazy_walks(4, 3, k).unwrap()).is_one());
        }
    }

    #[test]
    fn classes_are_equiprobable_with_rising_factorial_size() {
        let mut nontrivial = 0;
        for (n, kmax) in [(2, 5), (4, 4)] {
            for k in 1..=kmax {
                for class in group_by_contraction(enumerate_lazy_walks(n, 3, k).unwrap(), 3).unwrap() {
                    let den = class.members[0].denominator;
                    assert!(class.members.iter().all(|w| w.denominator == den));
                    let y = class.key.y_units.len() as u64;
                    assert_eq!(
                        equivalence_class_size(class.phi as u64, y),
                        BigUint::from(class.members.len()),
                        "n={n} k={k} key={:?}",
                        class.key
                    );
                    nontrivial += (y > 0 && class.members.len() > 1) as usize;
                }
            }
        }
        assert!(nontrivial > 0);
    }
}
