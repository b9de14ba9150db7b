//! The shifting operator `S_{i,k}` and the up-set fixpoint closure.
//!
//! `S_{i,k}` maps a member `A` to `A ∪ {i}` when that set is absent from the
//! family and `|A| < k`, and leaves it alone otherwise.  Iterating the full
//! pass `S_{n,k} ∘ ... ∘ S_{1,k}` to a fixpoint yields an up-set of the same
//! cardinality.

use crate::family::SetFamily;
use crate::set::ElementSet;
use crate::{Error, Result};

/// One application of `S_{i,k}` to every member of the family.
///
/// The rank bound `k` may be lower than the family's own; it must not exceed
/// it.  The output is re-canonicalized and has the same cardinality as the
/// input (the map is injective on the family).
pub fn compress_once(family: &SetFamily, i: u32, k: u32) -> Result<SetFamily> {
    let n = family.n();
    if i == 0 || i > n {
        return Err(Error::ShiftElement(i, n));
    }
    if k > family.rank_bound() {
        return Err(Error::ShiftRank(k, family.rank_bound()));
    }
    let shifted: Vec<ElementSet> = family
        .iter()
        .map(|a| {
            let grown = a.with_element(i).expect("i validated above");
            if a.len() < k && !family.contains(&grown) {
                grown
            } else {
                *a
            }
        })
        .collect();
    // Injectivity of S_{i,k} on the family makes this constructor's
    // duplicate check a defect detector rather than a reachable error.
    SetFamily::new(family.params(), shifted)
}

/// True iff every member below the rank bound stays in the family under
/// adding any missing element.
pub fn is_up_set(family: &SetFamily) -> bool {
    let k = family.rank_bound();
    family.iter().all(|a| {
        a.len() >= k
            || (1..=family.n())
                .filter(|&i| !a.contains(i))
                .all(|i| family.contains(&a.with_element(i).unwrap()))
    })
}

/// Iterates full passes `S_{n,k} ∘ ... ∘ S_{1,k}` (ascending `i` within a
/// pass) until a pass changes nothing.
///
/// Terminates in at most `1 + Σ (k − |A|)` passes; the generous guard below
/// only trips on an implementation defect.
pub fn up_closure(family: &SetFamily) -> SetFamily {
    let n = family.n();
    let k = family.rank_bound();
    let guard = (n as u64) * (k as u64) * (family.len() as u64) + 2;
    let mut cur = family.clone();
    for _ in 0..guard {
        let mut next = cur.clone();
        for i in 1..=n {
            next = compress_once(&next, i, k).expect("pass parameters are valid");
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
    panic!("up_closure failed to reach a fixpoint within the pass guard");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::{subsets_up_to_rank, GroundParams};

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
    fn compress_grows_when_free() {
        let f = family(3, 2, &[&[1], &[2]]);
        let g = compress_once(&f, 3, 2).unwrap();
        assert_eq!(g, family(3, 2, &[&[1, 3], &[2, 3]]));
    }

    #[test]
    fn compress_blocked_by_presence_and_rank() {
        // {1} ∪ {3} is already present, and {1,3} contains 3
        let f = family(3, 2, &[&[1], &[1, 3]]);
        assert_eq!(compress_once(&f, 3, 2).unwrap(), f);
        // |A| = k blocks growth
        let g = family(3, 2, &[&[1, 2]]);
        assert_eq!(compress_once(&g, 3, 2).unwrap(), g);
    }

    #[test]
    fn compress_rejects_bad_element() {
        let f = family(3, 2, &[&[1]]);
        assert!(matches!(
            compress_once(&f, 4, 2),
            Err(Error::ShiftElement(4, 3))
        ));
        assert!(matches!(compress_once(&f, 0, 2), Err(Error::ShiftElement(0, 3))));
        assert!(matches!(compress_once(&f, 1, 3), Err(Error::ShiftRank(3, 2))));
    }

    #[test]
    fn up_set_detection() {
        // star {A : 1 ∈ A, |A| <= 2} over [3]
        let star = family(3, 2, &[&[1], &[1, 2], &[1, 3]]);
        assert!(is_up_set(&star));
        assert!(!is_up_set(&family(3, 2, &[&[1]])));
        // all k-sets: the condition is vacuous
        let uniform = family(4, 2, &[&[1, 2], &[1, 3], &[3, 4]]);
        assert!(is_up_set(&uniform));
    }

    #[test]
    fn closure_of_singleton() {
        let f = family(3, 2, &[&[1]]);
        let c = up_closure(&f);
        assert_eq!(c.len(), 1);
        assert!(is_up_set(&c));
        assert_eq!(c, family(3, 2, &[&[1, 2]]));
    }

    #[test]
    fn closure_fixes_up_sets_and_empty() {
        let star = family(3, 2, &[&[1], &[1, 2], &[1, 3]]);
        assert_eq!(up_closure(&star), star);
        let empty = SetFamily::empty(GroundParams::new(3, 2, 0).unwrap());
        assert_eq!(up_closure(&empty), empty);
    }

    #[test]
    fn cardinality_preserved_exhaustively() {
        // every family over C([n], <= k) for n <= 4, k <= 2
        for n in 1..=4u32 {
            for k in 0..=2.min(n) {
                let verts = subsets_up_to_rank(n, k);
                let p = GroundParams::new(n, k, 0).unwrap();
                for mask in 0u32..(1 << verts.len()) {
                    let members: Vec<ElementSet> = verts
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> j & 1 == 1)
                        .map(|(_, s)| *s)
                        .collect();
                    let f = SetFamily::new(p, members).unwrap();
                    for i in 1..=n {
                        let g = compress_once(&f, i, k).unwrap();
                        assert_eq!(g.len(), f.len());
                    }
                    let c = up_closure(&f);
                    assert_eq!(c.len(), f.len());
                    assert!(is_up_set(&c));
                }
            }
        }
    }
}
