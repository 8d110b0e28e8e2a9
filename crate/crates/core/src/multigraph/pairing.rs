use rand::Rng;

use crate::error::{invalid, Error, Result};

/// A fixed-point-free involution on the `d * n` configuration points.
///
/// Point `p` belongs to vertex `p / d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    mu: Vec<usize>,
    n: usize,
    d: usize,
}

impl Pairing {
    pub fn new(mu: Vec<usize>, n: usize, d: usize) -> Result<Self> {
        if mu.len() != n * d {
            return Err(Error::InvalidPairing(format!(
                "expected {} points, got {}",
                n * d,
                mu.len()
            )));
        }
        for (x, &y) in mu.iter().enumerate() {
            if y >= mu.len() {
                return Err(Error::InvalidPairing(format!("point {x} maps out of range")));
            }
            if y == x {
                return Err(Error::InvalidPairing(format!("point {x} is a fixed point")));
            }
            if mu[y] != x {
                return Err(Error::InvalidPairing(format!("mu(mu({x})) != {x}")));
            }
        }
        Ok(Pairing { mu, n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_points(&self) -> usize {
        self.mu.len()
    }

    pub fn mate(&self, p: usize) -> usize {
        self.mu[p]
    }

    pub fn owner(&self, p: usize) -> usize {
        p / self.d
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mu
    }

    pub fn is_involution(&self) -> bool {
        self.mu
            .iter()
            .enumerate()
            .all(|(x, &y)| y != x && y < self.mu.len() && self.mu[y] == x)
    }
}

pub(crate) fn check_dims(n: usize, d: usize) -> Result<()> {
    if n < 2 {
        return invalid(format!("need n >= 2, got {n}"));
    }
    if d == 0 {
        return invalid("need d >= 1");
    }
    if (n * d) % 2 == 1 {
        return invalid(format!("d*n = {} is odd", n * d));
    }
    Ok(())
}

/// Uniform perfect matching of the configuration points.
///
/// The lowest unmatched point is paired with a uniformly chosen unmatched
/// partner, repeatedly; this produces each of the `(dn-1)!!` matchings with
/// equal probability.
pub fn sample_pairing<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Pairing> {
    check_dims(n, d)?;
    let m = n * d;
    let mut pool: Vec<usize> = (0..m).collect();
    let mut mu = vec![0usize; m];
    let mut i = 0;
    while i < m {
        let j = rng.random_range(i + 1..m);
        pool.swap(i + 1, j);
        let (a, b) = (pool[i], pool[i + 1]);
        mu[a] = b;
        mu[b] = a;
        i += 2;
    }
    Ok(Pairing { mu, n, d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::rng_from_seed;

    #[test]
    fn rejects_bad_dims() {
        let mut rng = rng_from_seed(0);
        assert!(sample_pairing(3, 3, &mut rng).is_err());
        assert!(sample_pairing(1, 4, &mut rng).is_err());
        assert!(sample_pairing(4, 0, &mut rng).is_err());
    }

    #[test]
    fn single_matching_for_two_points() {
        let mut rng = rng_from_seed(1);
        let p = sample_pairing(2, 1, &mut rng).unwrap();
        assert_eq!(p.as_slice(), &[1, 0]);
    }

    #[test]
    fn new_validates() {
        assert!(Pairing::new(vec![1, 0, 3, 2], 2, 2).is_ok());
        assert!(Pairing::new(vec![0, 1], 2, 1).is_err());
        assert!(Pairing::new(vec![1, 2, 0, 3], 2, 2).is_err());
        assert!(Pairing::new(vec![1, 0], 2, 2).is_err());
    }
}
