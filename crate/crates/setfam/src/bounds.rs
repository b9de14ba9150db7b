//! Closed-form extremal bounds and the canonical witness constructions.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::binomial;
use crate::family::SetFamily;
use crate::set::{subsets_up_to_rank, ElementSet, GroundParams};
use crate::{Error, Result};

/// Bounded-rank bound `Σ_{j=0}^{k−t} C(n−t, k−t−j)`.
pub fn ekr_bound(n: u32, k: u32, t: u32) -> Result<BigUint> {
    if !(t <= k && k <= n) {
        return Err(Error::BadParams { n, k, t });
    }
    let mut sum = BigUint::zero();
    for j in 0..=(k - t) {
        sum += binomial((n - t) as u64, (k - t - j) as i64);
    }
    Ok(sum)
}

/// Uniform bound `C(n−t, k−t)` plus whether `n >= (k−t+1)(t+1)` holds.
pub fn uniform_ekr_bound(n: u32, k: u32, t: u32) -> Result<(BigUint, bool)> {
    if !(t <= k && k <= n) {
        return Err(Error::BadParams { n, k, t });
    }
    let value = binomial((n - t) as u64, (k - t) as i64);
    let regime = (n as u64) >= ((k - t + 1) as u64) * ((t + 1) as u64);
    Ok((value, regime))
}

/// Product of per-family bounded-rank bounds.
pub fn cross_bound_product(n: u32, ranks: &[u32], t: u32) -> Result<BigUint> {
    let mut prod = BigUint::from(1u32);
    for &k in ranks {
        prod *= ekr_bound(n, k, t)?;
    }
    Ok(prod)
}

/// r-wise bound `Σ_{i=1}^{k} C(n−1, i−1)`.
pub fn rwise_bound(n: u32, k: u32) -> Result<BigUint> {
    if !(1 <= k && k <= n) {
        return Err(Error::BadParams { n, k, t: 0 });
    }
    let mut sum = BigUint::zero();
    for i in 1..=k {
        sum += binomial((n - 1) as u64, (i - 1) as i64);
    }
    Ok(sum)
}

/// The star: all sets of size at most `k` containing the core `{1, ..., t}`.
pub fn star_family(n: u32, k: u32, t: u32) -> Result<SetFamily> {
    let params = GroundParams::new(n, k, t)?;
    let core = ElementSet::from_elements(n, &(1..=t).collect::<Vec<_>>())?;
    let members: Vec<ElementSet> = subsets_up_to_rank(n, k)
        .into_iter()
        .filter(|s| core.is_subset_of(s))
        .collect();
    SetFamily::new(params, members)
}

/// The star plus the `t` subsets of `[t]` of size `t − 1`; shows the
/// relaxed-pairwise threshold `k − t` cannot be weakened to `k − t + 1`.
pub fn tightness_example(n: u32, k: u32, t: u32) -> Result<SetFamily> {
    if !(2 <= t && t < k && k < n) {
        return Err(Error::TightnessParams { n, k, t });
    }
    let star = star_family(n, k, t)?;
    let core: Vec<u32> = (1..=t).collect();
    let mut members = star.members().to_vec();
    for drop in &core {
        let small: Vec<u32> = core.iter().copied().filter(|e| e != drop).collect();
        members.push(ElementSet::from_elements(n, &small)?);
    }
    SetFamily::new(star.params(), members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compression::is_up_set;
    use crate::predicates::is_t_intersecting;

    fn big(x: u32) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn ekr_bound_values() {
        assert_eq!(ekr_bound(6, 2, 1).unwrap(), big(6));
        assert_eq!(ekr_bound(9, 9, 9).unwrap(), big(1));
        assert_eq!(ekr_bound(5, 3, 2).unwrap(), big(4));
        assert!(ekr_bound(5, 3, 4).is_err());
    }

    #[test]
    fn uniform_bound_values() {
        let (v, regime) = uniform_ekr_bound(6, 2, 1).unwrap();
        assert_eq!(v, big(5));
        assert!(regime);
        assert_eq!(uniform_ekr_bound(4, 2, 2).unwrap().0, big(1));
        let (v, regime) = uniform_ekr_bound(4, 2, 1).unwrap();
        assert_eq!(v, big(3));
        assert!(regime);
        assert!(!uniform_ekr_bound(3, 2, 1).unwrap().1);
    }

    #[test]
    fn cross_product_values() {
        assert_eq!(cross_bound_product(6, &[2, 2], 1).unwrap(), big(36));
        assert_eq!(
            cross_bound_product(6, &[2], 1).unwrap(),
            ekr_bound(6, 2, 1).unwrap()
        );
        assert_eq!(cross_bound_product(6, &[2, 3], 1).unwrap(), big(96));
    }

    #[test]
    fn rwise_bound_values() {
        assert_eq!(rwise_bound(4, 2).unwrap(), big(4));
        assert_eq!(rwise_bound(9, 1).unwrap(), big(1));
        assert_eq!(rwise_bound(6, 2).unwrap(), big(6));
    }

    #[test]
    fn star_family_matches_bound() {
        for n in 1..=8u32 {
            for k in 0..=n {
                for t in 0..=k {
                    let star = star_family(n, k, t).unwrap();
                    assert_eq!(
                        BigUint::from(star.len()),
                        ekr_bound(n, k, t).unwrap(),
                        "n={n} k={k} t={t}"
                    );
                    assert!(is_t_intersecting(&star, t));
                    assert!(is_up_set(&star));
                }
            }
        }
    }

    #[test]
    fn star_small_cases() {
        let s = star_family(6, 2, 1).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.iter().all(|m| m.contains(1)));
        let one = star_family(7, 3, 3).unwrap();
        assert_eq!(one.len(), 1);
        let s = star_family(5, 3, 2).unwrap();
        let shown: Vec<String> = s.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["{1,2}", "{1,2,3}", "{1,2,4}", "{1,2,5}"]);
    }

    #[test]
    fn tightness_example_cases() {
        let f = tightness_example(5, 3, 2).unwrap();
        assert_eq!(f.len(), 6);
        let shown: Vec<String> = f.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["{1}", "{2}", "{1,2}", "{1,2,3}", "{1,2,4}", "{1,2,5}"]);

        let g = tightness_example(6, 4, 2).unwrap();
        assert_eq!(g.len(), 13);

        assert!(tightness_example(5, 3, 1).is_err());
        assert!(tightness_example(5, 3, 3).is_err());
        assert!(tightness_example(5, 5, 2).is_err());
    }

    #[test]
    fn tightness_threshold_is_exactly_k_minus_t_plus_one() {
        use crate::predicates::satisfies_pairwise_threshold;
        for (n, k, t) in [(5u32, 3u32, 2u32), (6, 4, 2), (7, 4, 3), (8, 5, 2)] {
            let f = tightness_example(n, k, t).unwrap();
            assert_eq!(
                BigUint::from(f.len()),
                ekr_bound(n, k, t).unwrap() + big(t)
            );
            assert!(!satisfies_pairwise_threshold(&f, t, k - t));
            assert!(satisfies_pairwise_threshold(&f, t, k - t + 1));
            // the worst pair hits the k−t+1 threshold exactly
            let worst = f
                .members()
                .iter()
                .enumerate()
                .flat_map(|(i, a)| {
                    f.members()[i + 1..]
                        .iter()
                        .filter(move |b| a.intersection(b).len() < t)
                        .map(move |b| a.symmetric_difference(b).len())
                })
                .max()
                .unwrap();
            assert_eq!(worst, k - t + 1);
        }
    }

    #[test]
    fn telescoping_identity() {
        for n in 1..=20u32 {
            for k in 1..=n {
                for t in 0..k {
                    assert_eq!(
                        ekr_bound(n, k, t).unwrap(),
                        uniform_ekr_bound(n, k, t).unwrap().0 + ekr_bound(n, k - 1, t).unwrap()
                    );
                }
            }
        }
    }
}
