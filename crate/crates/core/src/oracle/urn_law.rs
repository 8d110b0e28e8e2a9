use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact law of the ordered class sizes of a Pólya urn with `phi` colors
/// after `m` draws, by summing over every draw sequence.
pub fn urn_law_exact(phi: usize, m: usize) -> BTreeMap<Vec<usize>, BigRational> {
    let mut out = BTreeMap::new();
    if phi == 0 {
        return out;
    }
    let mut sizes = vec![1usize; phi];
    draw(&mut sizes, m, BigRational::one(), &mut out);
    out
}

fn draw(sizes: &mut Vec<usize>, left: usize, p: BigRational, out: &mut BTreeMap<Vec<usize>, BigRational>) {
    if left == 0 {
        let slot = out.entry(sizes.clone()).or_insert_with(BigRational::zero);
        *slot += p;
        return;
    }
    let total: usize = sizes.iter().sum();
    for c in 0..sizes.len() {
        let q = BigRational::new(sizes[c].into(), total.into());
        sizes[c] += 1;
        draw(sizes, left - 1, p.clone() * q, out);
        sizes[c] -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_colors_two_draws() {
        let law = urn_law_exact(3, 2);
        assert_eq!(law.len(), 6);
        let sixth = BigRational::new(1.into(), 6.into());
        assert!(law.values().all(|p| *p == sixth));
        assert!(law.keys().all(|k| k.iter().sum::<usize>() == 5 && k.iter().all(|&x| x >= 1)));
    }

    #[test]
    fn uniform_over_compositions_for_two_colors() {
        for m in 0..=4 {
            let law = urn_law_exact(2, m);
            assert_eq!(law.len(), m + 1);
            let p = BigRational::new(1.into(), (m + 1).into());
            assert!(law.values().all(|q| *q == p));
        }
    }
}
