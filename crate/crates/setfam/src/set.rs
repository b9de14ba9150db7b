//! Subsets of the ground set `[n]` as single-word bitmasks.
//!
//! Elements are 1-indexed externally (the ground set is `{1, ..., n}`) and
//! stored at bit position `e - 1`.  The ground size is capped at 64 so every
//! set operation is a word operation.

use crate::{Error, Result};

/// Maximum supported ground-set size.
pub const MAX_GROUND: u32 = 64;

/// Problem parameters: ground size `n`, rank bound `k`, intersection
/// threshold `t`, with `t <= k <= n <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundParams {
    pub n: u32,
    pub k: u32,
    pub t: u32,
}

impl GroundParams {
    pub fn new(n: u32, k: u32, t: u32) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize(n));
        }
        if !(t <= k && k <= n) {
            return Err(Error::BadParams { n, k, t });
        }
        Ok(GroundParams { n, k, t })
    }
}

/// A subset of `[n]`, `n <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: u64,
    n: u32,
}

impl ElementSet {
    /// The empty subset of `[n]`.
    pub fn empty(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize(n));
        }
        Ok(ElementSet { bits: 0, n })
    }

    /// Builds a set from 1-indexed elements, rejecting out-of-range or
    /// repeated elements.
    pub fn from_elements(n: u32, elements: &[u32]) -> Result<Self> {
        let mut set = Self::empty(n)?;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            if set.contains(e) {
                return Err(Error::DuplicateElement(e));
            }
            set.bits |= 1u64 << (e - 1);
        }
        Ok(set)
    }

    /// Reinterprets a raw mask as a subset of `[n]`.  Bits at positions
    /// `>= n` must be clear.
    pub fn from_bits(n: u32, bits: u64) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize(n));
        }
        if n < 64 && bits >> n != 0 {
            return Err(Error::ElementOutOfRange {
                element: 64 - bits.leading_zeros(),
                n,
            });
        }
        Ok(ElementSet { bits, n })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn ground_size(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, element: u32) -> bool {
        element >= 1 && element <= self.n && self.bits & (1u64 << (element - 1)) != 0
    }

    /// The set with `element` added; identity if already present.
    pub fn with_element(&self, element: u32) -> Result<Self> {
        if element == 0 || element > self.n {
            return Err(Error::ElementOutOfRange {
                element,
                n: self.n,
            });
        }
        Ok(ElementSet {
            bits: self.bits | 1u64 << (element - 1),
            n: self.n,
        })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check(other).expect("mismatched ground sets");
        ElementSet {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check(other).expect("mismatched ground sets");
        ElementSet {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check(other).expect("mismatched ground sets");
        ElementSet {
            bits: self.bits & !other.bits,
            n: self.n,
        }
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.check(other).expect("mismatched ground sets");
        ElementSet {
            bits: self.bits ^ other.bits,
            n: self.n,
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.n == other.n && self.bits & !other.bits == 0
    }

    /// 1-indexed elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() + 1;
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    /// Canonical ordering for family members: size first, then mask value.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.bits).cmp(&(other.len(), other.bits))
    }
}

impl std::fmt::Display for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// All subsets of `[n]` with size at most `k`, in canonical order.
pub fn subsets_up_to_rank(n: u32, k: u32) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = (0..(1u128 << n))
        .map(|bits| ElementSet {
            bits: bits as u64,
            n,
        })
        .filter(|s| s.len() <= k)
        .collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// All subsets of `[n]` of size exactly `k`, in canonical order.
pub fn subsets_of_rank(n: u32, k: u32) -> Vec<ElementSet> {
    subsets_up_to_rank(n, k)
        .into_iter()
        .filter(|s| s.len() == k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_matches_spec_examples() {
        let a = ElementSet::from_elements(3, &[1, 2]).unwrap();
        let b = ElementSet::from_elements(3, &[2, 3]).unwrap();
        assert_eq!(
            a.intersection(&b),
            ElementSet::from_elements(3, &[2]).unwrap()
        );
        assert_eq!(
            a.symmetric_difference(&b),
            ElementSet::from_elements(3, &[1, 3]).unwrap()
        );
        assert_eq!(a.symmetric_difference(&b).len(), 2);

        let e = ElementSet::empty(3).unwrap();
        assert_eq!(e.union(&e), e);
        assert_eq!(e.intersection(&e), e);
        assert_eq!(e.len(), 0);

        let c = ElementSet::from_elements(3, &[1, 2, 3]).unwrap();
        assert!(c.symmetric_difference(&c).is_empty());
        assert_eq!(c.intersection(&c), c);
    }

    #[test]
    fn rejects_bad_elements() {
        assert!(ElementSet::from_elements(3, &[4]).is_err());
        assert!(ElementSet::from_elements(3, &[0]).is_err());
        assert!(ElementSet::from_elements(3, &[1, 1]).is_err());
        assert!(ElementSet::empty(0).is_err());
        assert!(ElementSet::empty(65).is_err());
        assert!(ElementSet::from_bits(3, 0b1000).is_err());
    }

    #[test]
    fn symmetric_difference_size_identity() {
        // |A ^ B| = |A| + |B| - 2|A & B|, exhaustive over n = 4
        for a in 0u64..16 {
            for b in 0u64..16 {
                let sa = ElementSet::from_bits(4, a).unwrap();
                let sb = ElementSet::from_bits(4, b).unwrap();
                assert_eq!(
                    sa.symmetric_difference(&sb).len(),
                    sa.len() + sb.len() - 2 * sa.intersection(&sb).len()
                );
            }
        }
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(subsets_up_to_rank(4, 2).len(), 1 + 4 + 6);
        assert_eq!(subsets_of_rank(6, 2).len(), 15);
        // canonical order: sizes ascending, mask ascending within a size
        let v = subsets_up_to_rank(3, 2);
        assert!(v.windows(2).all(|w| w[0].canonical_cmp(&w[1]).is_lt()));
    }

    #[test]
    fn params_validation() {
        assert!(GroundParams::new(6, 2, 1).is_ok());
        assert!(GroundParams::new(6, 2, 3).is_err());
        assert!(GroundParams::new(2, 3, 1).is_err());
        assert!(GroundParams::new(0, 0, 0).is_err());
    }
}
