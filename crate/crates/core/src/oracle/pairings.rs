use crate::error::{Error, Result};
use crate::multigraph::pairing::check_dims;
use crate::multigraph::Pairing;

/// Largest point count accepted by [`enumerate_pairings`].
pub const MAX_ENUMERATED_POINTS: usize = 12;

/// Every perfect matching of the `d * n` configuration points, in
/// lexicographic order of partner choices.
pub fn enumerate_pairings(n: usize, d: usize) -> Result<Vec<Pairing>> {
    check_dims(n, d)?;
    let m = n * d;
    if m > MAX_ENUMERATED_POINTS {
        return Err(Error::SizeGuard {
            what: "configuration points",
            value: m,
            limit: MAX_ENUMERATED_POINTS,
        });
    }
    let mut out = Vec::new();
    let mut mu = vec![usize::MAX; m];
    extend(&mut mu, &mut out, n, d);
    Ok(out)
}

fn extend(mu: &mut [usize], out: &mut Vec<Pairing>, n: usize, d: usize) {
    let Some(a) = mu.iter().position(|&x| x == usize::MAX) else {
        out.push(Pairing::new(mu.to_vec(), n, d).expect("complete matching"));
        return;
    };
    for b in a + 1..mu.len() {
        if mu[b] == usize::MAX {
            mu[a] = b;
            mu[b] = a;
            extend(mu, out, n, d);
            mu[a] = usize::MAX;
            mu[b] = usize::MAX;
        }
    }
}

/// `(m - 1)!!` for even `m`.
pub fn double_factorial_odd(m: usize) -> u64 {
    (1..m).step_by(2).map(|k| k as u64).product()
}
