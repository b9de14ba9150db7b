//! Rank-bounded families of distinct sets in canonical order.

use crate::set::{ElementSet, GroundParams};
use crate::{Error, Result};

/// A collection of distinct subsets of `[n]`, each of size at most `k`.
///
/// Members are kept in canonical order (size, then mask value) so that every
/// construction and transformation produces byte-stable output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    params: GroundParams,
    members: Vec<ElementSet>,
}

impl SetFamily {
    pub fn new(params: GroundParams, mut members: Vec<ElementSet>) -> Result<Self> {
        for m in &members {
            if m.ground_size() != params.n {
                return Err(Error::GroundMismatch(m.ground_size(), params.n));
            }
            if m.len() > params.k {
                return Err(Error::RankExceeded(m.to_string(), m.len(), params.k));
            }
        }
        members.sort_by(|a, b| a.canonical_cmp(b));
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet(w[0].to_string()));
        }
        Ok(SetFamily { params, members })
    }

    pub fn empty(params: GroundParams) -> Self {
        SetFamily {
            params,
            members: Vec::new(),
        }
    }

    pub fn params(&self) -> GroundParams {
        self.params
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn rank_bound(&self) -> u32 {
        self.params.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        self.members
            .binary_search_by(|m| m.canonical_cmp(set))
            .is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }
}

impl std::fmt::Display for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, es: &[u32]) -> ElementSet {
        ElementSet::from_elements(n, es).unwrap()
    }

    #[test]
    fn canonicalizes_and_rejects_duplicates() {
        let p = GroundParams::new(4, 2, 1).unwrap();
        let f = SetFamily::new(p, vec![set(4, &[1, 2]), set(4, &[3]), set(4, &[1])]).unwrap();
        let sizes: Vec<u32> = f.iter().map(|m| m.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2]);
        assert!(f.contains(&set(4, &[3])));
        assert!(!f.contains(&set(4, &[4])));

        let dup = SetFamily::new(p, vec![set(4, &[1]), set(4, &[1])]);
        assert!(matches!(dup, Err(Error::DuplicateSet(_))));
    }

    #[test]
    fn enforces_rank_bound() {
        let p = GroundParams::new(4, 1, 0).unwrap();
        assert!(SetFamily::new(p, vec![set(4, &[1, 2])]).is_err());
    }
}
