//! Hypothesis and conclusion predicates for intersecting-family theorems.
//!
//! All universal predicates return `true` on empty families.

use itertools::Itertools;

use crate::family::SetFamily;
use crate::set::ElementSet;
use crate::{Error, Result};

/// Every unordered pair of distinct members shares at least `t` elements.
pub fn is_t_intersecting(family: &SetFamily, t: u32) -> bool {
    let m = family.members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if m[i].intersection(&m[j]).len() < t {
                return false;
            }
        }
    }
    true
}

/// For all distinct members: `|A ∩ B| < t` implies `|A △ B| <= threshold`.
pub fn satisfies_pairwise_threshold(family: &SetFamily, t: u32, threshold: u32) -> bool {
    let m = family.members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if m[i].intersection(&m[j]).len() < t
                && m[i].symmetric_difference(&m[j]).len() > threshold
            {
                return false;
            }
        }
    }
    true
}

/// The relaxed pairwise hypothesis: pairs meeting in fewer than `t` elements
/// have symmetric difference at most `k - t`.
pub fn satisfies_relaxed_pairwise(family: &SetFamily, k: u32, t: u32) -> bool {
    debug_assert!(t <= k);
    satisfies_pairwise_threshold(family, t, k - t)
}

/// Condition (1): for every tuple `(F_1, ..., F_r)` drawn from the product of
/// the families, `|⋂ F_j| < t` implies `|⋃ F_j − ⋂ F_j| <= k − t`, where `k`
/// is the minimum rank bound.
pub fn satisfies_condition_one(families: &[&SetFamily], k: u32, t: u32) -> bool {
    assert!(!families.is_empty(), "condition (1) needs at least one family");
    debug_assert!(t <= k);
    let n = families[0].n();
    let full = ElementSet::from_bits(n, if n == 64 { !0 } else { (1u64 << n) - 1 }).unwrap();
    let empty = ElementSet::empty(n).unwrap();
    tuple_ok(families, 0, empty, full, k - t, t)
}

fn tuple_ok(
    families: &[&SetFamily],
    depth: usize,
    union: ElementSet,
    inter: ElementSet,
    budget: u32,
    t: u32,
) -> bool {
    if depth == families.len() {
        return inter.len() >= t || union.difference(&inter).len() <= budget;
    }
    // the union only grows and the intersection only shrinks, so once the
    // antecedent is forced and the conclusion broken we can stop early
    families[depth].iter().all(|f| {
        let u = union.union(f);
        let i = inter.intersection(f);
        if i.len() < t && u.difference(&i).len() > budget && depth + 1 == families.len() {
            return false;
        }
        tuple_ok(families, depth + 1, u, i, budget, t)
    })
}

/// Every inter-family pair meets in at least `t` elements.
pub fn are_cross_t_intersecting(families: &[&SetFamily], t: u32) -> bool {
    assert!(families.len() >= 2, "cross intersection needs >= 2 families");
    for i in 0..families.len() {
        for j in i + 1..families.len() {
            for a in families[i].iter() {
                for b in families[j].iter() {
                    if a.intersection(b).len() < t {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Cross relaxed hypothesis: inter-family pairs meeting in fewer than `t`
/// elements have symmetric difference at most `min(k_i, k_j) − t`.
pub fn satisfies_cross_relaxed(families: &[&SetFamily], ranks: &[u32], t: u32) -> Result<bool> {
    if ranks.len() != families.len() {
        return Err(Error::RankListMismatch {
            got: ranks.len(),
            families: families.len(),
        });
    }
    for i in 0..families.len() {
        for j in i + 1..families.len() {
            let threshold = ranks[i].min(ranks[j]).saturating_sub(t);
            for a in families[i].iter() {
                for b in families[j].iter() {
                    if a.intersection(b).len() < t
                        && a.symmetric_difference(b).len() > threshold
                    {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Every `r`-tuple of members (with repetition) has a common element.
///
/// Tuples with repetition depend only on their support, so it suffices to
/// check distinct subsets of at most `r` members; supersets only shrink the
/// intersection, so size exactly `min(r, |F|)` covers everything.
pub fn is_r_wise_intersecting(family: &SetFamily, r: u32) -> bool {
    assert!(r >= 2, "r-wise intersection needs r >= 2");
    if family.is_empty() {
        return true;
    }
    let m = (r as usize).min(family.len());
    family
        .members()
        .iter()
        .combinations(m)
        .all(|tuple| !common_intersection(&tuple).is_empty())
}

/// Relaxed `r`-wise hypothesis: every `r`-tuple (with repetition) with empty
/// common intersection has `|⋃ − ⋂| <= k`.
pub fn satisfies_relaxed_rwise(family: &SetFamily, k: u32, r: u32) -> bool {
    assert!(r >= 2, "r-wise predicates need r >= 2");
    if family.is_empty() {
        return true;
    }
    // supports of size < r are realizable by repeating an element of the tuple
    let max = (r as usize).min(family.len());
    for s in 1..=max {
        for tuple in family.members().iter().combinations(s) {
            let inter = common_intersection(&tuple);
            if inter.is_empty() {
                let union = tuple
                    .iter()
                    .fold(ElementSet::empty(family.n()).unwrap(), |acc, f| {
                        acc.union(f)
                    });
                if union.difference(&inter).len() > k {
                    return false;
                }
            }
        }
    }
    true
}

fn common_intersection(sets: &[&ElementSet]) -> ElementSet {
    let mut it = sets.iter();
    let first = **it.next().expect("nonempty tuple");
    it.fold(first, |acc, s| acc.intersection(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{star_family, tightness_example};
    use crate::set::GroundParams;

    fn family(n: u32, k: u32, sets: &[&[u32]]) -> SetFamily {
        let p = GroundParams::new(n, k, 0).unwrap();
        SetFamily::new(
            p,
            sets.iter()
                .map(|s| ElementSet::from_elements(n, s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn t_intersecting_basics() {
        let star = star_family(6, 2, 1).unwrap();
        assert!(is_t_intersecting(&star, 1));
        assert!(!is_t_intersecting(&family(4, 2, &[&[1, 2], &[3, 4]]), 1));
        let p = GroundParams::new(4, 2, 1).unwrap();
        assert!(is_t_intersecting(&SetFamily::empty(p), 3));
    }

    #[test]
    fn t_intersecting_monotone_in_t() {
        let f = family(5, 3, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5]]);
        assert!(is_t_intersecting(&f, 2));
        assert!(is_t_intersecting(&f, 1));
        assert!(is_t_intersecting(&f, 0));
        assert!(!is_t_intersecting(&f, 3));
    }

    #[test]
    fn relaxed_pairwise_cases() {
        // t-intersecting makes the hypothesis vacuous
        let star = star_family(6, 2, 1).unwrap();
        assert!(satisfies_relaxed_pairwise(&star, 2, 1));
        // {1},{2} at k=2, t=1: |A∩B| = 0 < 1 and |A△B| = 2 > 1
        assert!(!satisfies_relaxed_pairwise(&family(3, 2, &[&[1], &[2]]), 2, 1));
        // the tightness example separates the k−t and k−t+1 thresholds
        let tight = tightness_example(5, 3, 2).unwrap();
        assert!(!satisfies_pairwise_threshold(&tight, 2, 1));
        assert!(satisfies_pairwise_threshold(&tight, 2, 2));
    }

    #[test]
    fn condition_one_cases() {
        let star = star_family(6, 2, 1).unwrap();
        assert!(satisfies_condition_one(&[&star, &star], 2, 1));
        let f1 = family(3, 1, &[&[1]]);
        let f2 = family(3, 1, &[&[2]]);
        assert!(!satisfies_condition_one(&[&f1, &f2], 1, 1));
    }

    #[test]
    fn condition_one_r2_matches_pairwise_on_exhaustive_small_families() {
        use crate::set::subsets_up_to_rank;
        let (n, k) = (4u32, 2u32);
        let verts = subsets_up_to_rank(n, k);
        let p = GroundParams::new(n, k, 0).unwrap();
        for t in 0..=k {
            for mask in 0u32..(1 << verts.len()) {
                let members: Vec<ElementSet> = verts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, s)| *s)
                    .collect();
                let f = SetFamily::new(p, members).unwrap();
                // degenerate tuples (A, A) never violate: |A∩A| < t forces
                // |A| < t <= k, and |A ∪ A − A ∩ A| = 0
                assert_eq!(
                    satisfies_condition_one(&[&f, &f], k, t),
                    satisfies_relaxed_pairwise(&f, k, t),
                    "mask={mask} t={t}"
                );
            }
        }
    }

    #[test]
    fn cross_intersecting_cases() {
        let s2 = star_family(6, 2, 1).unwrap();
        let s3 = star_family(6, 3, 1).unwrap();
        assert!(are_cross_t_intersecting(&[&s2, &s3], 1));
        let f1 = family(3, 1, &[&[1]]);
        let f2 = family(3, 1, &[&[2]]);
        assert!(!are_cross_t_intersecting(&[&f1, &f2], 1));
        let a = family(4, 2, &[&[1, 2]]);
        assert!(are_cross_t_intersecting(&[&a, &a], 2));
    }

    #[test]
    fn cross_relaxed_cases() {
        let s2 = star_family(6, 2, 1).unwrap();
        let s3 = star_family(6, 3, 1).unwrap();
        assert!(satisfies_cross_relaxed(&[&s2, &s3], &[2, 3], 1).unwrap());
        let f1 = family(4, 2, &[&[1, 2]]);
        let f2 = family(4, 2, &[&[3, 4]]);
        assert!(!satisfies_cross_relaxed(&[&f1, &f2], &[2, 2], 1).unwrap());
        let g = family(2, 1, &[&[1]]);
        assert!(satisfies_cross_relaxed(&[&g, &g], &[1, 1], 1).unwrap());
        assert!(satisfies_cross_relaxed(&[&f1, &f2], &[2], 1).is_err());
    }

    #[test]
    fn r_wise_cases() {
        let star = star_family(6, 2, 1).unwrap();
        assert!(is_r_wise_intersecting(&star, 3));
        let tri = family(3, 2, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert!(is_r_wise_intersecting(&tri, 2));
        assert!(!is_r_wise_intersecting(&tri, 3));
        let single = family(3, 2, &[&[2]]);
        assert!(is_r_wise_intersecting(&single, 5));
    }

    #[test]
    fn relaxed_rwise_cases() {
        let star = star_family(6, 2, 1).unwrap();
        assert!(satisfies_relaxed_rwise(&star, 2, 3));
        let f = family(3, 1, &[&[1], &[2], &[3]]);
        assert!(!satisfies_relaxed_rwise(&f, 1, 3));
        let p = GroundParams::new(3, 1, 0).unwrap();
        assert!(satisfies_relaxed_rwise(&SetFamily::empty(p), 1, 3));
    }
}
