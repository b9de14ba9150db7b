//! Exhaustive maximum-family searches.
//!
//! These compute true optima at desk scale so the closed-form bounds can be
//! checked rather than trusted.  Pairwise predicates reduce to maximum clique
//! on a compatibility graph; r-wise and cross-product searches use DFS with
//! sound pruning.  Guards are hard errors: a non-exhaustive run never reports
//! `proof_complete = true`.

use num_bigint::BigUint;

use crate::family::SetFamily;
use crate::predicates;
use crate::set::{subsets_of_rank, subsets_up_to_rank, ElementSet, GroundParams};
use crate::{Error, Result};

/// Guard for pairwise clique searches.
pub const PAIRWISE_GUARD: u64 = 4096;
/// Guard for r-wise searches (tuple checks are costlier).
pub const RWISE_GUARD: u64 = 512;
/// Guard for cross-product searches (per-family vertex sets live in a u128).
pub const CROSS_GUARD: u64 = 128;

/// Result of an exhaustive search: the proven optimum and a witness.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub optimum: BigUint,
    pub witness: Witness,
    pub nodes_explored: u64,
    pub proof_complete: bool,
}

#[derive(Debug, Clone)]
pub enum Witness {
    Family(SetFamily),
    Families(Vec<SetFamily>),
    PairSystem(crate::bollobas::PairSystem),
}

impl Witness {
    pub fn as_family(&self) -> Option<&SetFamily> {
        match self {
            Witness::Family(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_families(&self) -> Option<&[SetFamily]> {
        match self {
            Witness::Families(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairwiseMode {
    /// Every distinct pair meets in at least `t` elements.
    Strict,
    /// Pairs meeting in fewer than `t` elements have `|A △ B| <= k − t`.
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RwiseMode {
    /// Every r-tuple (with repetition) has a common element.
    Strict,
    /// r-tuples with empty common intersection have `|⋃ − ⋂| <= k`.
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossMode {
    /// Inter-family pairs meet in at least `t` elements.
    Strict,
    /// Inter-family pairs meeting in fewer than `t` elements have
    /// `|A △ B| <= min(k_1, k_2) − t`.
    Relaxed,
}

// ---------------------------------------------------------------------------
// vertex bitsets (up to PAIRWISE_GUARD bits)

#[derive(Clone, PartialEq, Eq)]
struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    fn empty(len: usize) -> Self {
        VertexSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for v in 0..len {
            s.insert(v);
        }
        s
    }

    fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1u64 << (v % 64));
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Self) -> Self {
        VertexSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * 64 + v)
                }
            })
        })
    }
}

// ---------------------------------------------------------------------------
// maximum clique

struct CliqueSolver<'a> {
    adj: &'a [VertexSet],
    best: usize,
    best_clique: Vec<usize>,
    nodes: u64,
}

impl<'a> CliqueSolver<'a> {
    fn new(adj: &'a [VertexSet]) -> Self {
        CliqueSolver {
            adj,
            best: 0,
            best_clique: Vec::new(),
            nodes: 0,
        }
    }

    /// Greedy-coloring upper bound on the clique number of `cands`.
    fn color_bound(&self, cands: &VertexSet) -> usize {
        let mut colors: Vec<VertexSet> = Vec::new();
        for v in cands.iter() {
            match colors
                .iter_mut()
                .find(|class| class.and(&self.adj[v]).is_empty())
            {
                Some(class) => class.insert(v),
                None => {
                    let mut class = VertexSet::empty(self.adj.len());
                    class.insert(v);
                    colors.push(class);
                }
            }
        }
        colors.len()
    }

    /// Include-first DFS in canonical vertex order.  Updating only on strict
    /// improvement makes the recorded clique the lexicographically least
    /// maximum clique: pruned subtrees lie later in lexicographic order and
    /// cannot contain a strictly larger clique.
    fn expand(&mut self, current: &mut Vec<usize>, cands: &VertexSet) {
        self.nodes += 1;
        if current.len() > self.best {
            self.best = current.len();
            self.best_clique = current.clone();
        }
        let Some(v) = cands.first() else { return };
        if current.len() + cands.count() <= self.best {
            return;
        }
        if current.len() + self.color_bound(cands) <= self.best {
            return;
        }
        let mut rest = cands.clone();
        rest.remove(v);
        // include v
        current.push(v);
        self.expand(current, &rest.and(&self.adj[v]));
        current.pop();
        // exclude v
        self.expand(current, &rest);
    }

    fn solve(mut self) -> (Vec<usize>, u64) {
        let all = VertexSet::full(self.adj.len());
        self.expand(&mut Vec::new(), &all);
        (self.best_clique, self.nodes)
    }
}

/// Maximum clique of the given compatibility graph; returns the
/// lexicographically least maximum clique and the node count.
pub(crate) fn max_clique(adjacency: &[Vec<usize>]) -> (Vec<usize>, u64) {
    let len = adjacency.len();
    let adj: Vec<VertexSet> = adjacency
        .iter()
        .map(|ns| {
            let mut s = VertexSet::empty(len);
            for &v in ns {
                s.insert(v);
            }
            s
        })
        .collect();
    CliqueSolver::new(&adj).solve()
}

// ---------------------------------------------------------------------------
// pairwise searches

fn pairwise_compatible(a: &ElementSet, b: &ElementSet, k: u32, t: u32, mode: PairwiseMode) -> bool {
    let meet = a.intersection(b).len();
    match mode {
        PairwiseMode::Strict => meet >= t,
        PairwiseMode::Relaxed => meet >= t || a.symmetric_difference(b).len() <= k - t,
    }
}

fn clique_outcome(
    verts: Vec<ElementSet>,
    params: GroundParams,
    compat: impl Fn(&ElementSet, &ElementSet) -> bool,
    verify: impl Fn(&SetFamily) -> bool,
) -> SearchOutcome {
    let adjacency: Vec<Vec<usize>> = (0..verts.len())
        .map(|i| {
            (0..verts.len())
                .filter(|&j| j != i && compat(&verts[i], &verts[j]))
                .collect()
        })
        .collect();
    let (clique, nodes) = max_clique(&adjacency);
    let members: Vec<ElementSet> = clique.iter().map(|&v| verts[v]).collect();
    let witness = SetFamily::new(params, members).expect("witness members are distinct vertices");
    assert!(verify(&witness), "witness failed re-verification");
    SearchOutcome {
        optimum: BigUint::from(witness.len()),
        witness: Witness::Family(witness),
        nodes_explored: nodes,
        proof_complete: true,
    }
}

fn check_pairwise_guard(n: u32, k: u32, t: u32, uniform: bool) -> Result<GroundParams> {
    let params = GroundParams::new(n, k, t)?;
    let count: u64 = if uniform {
        let c = crate::arith::binomial(n as u64, k as i64);
        u64::try_from(&c).unwrap_or(u64::MAX)
    } else {
        (0..=k).map(|r| {
            u64::try_from(&crate::arith::binomial(n as u64, r as i64)).unwrap_or(u64::MAX)
        }).sum()
    };
    if count > PAIRWISE_GUARD {
        return Err(Error::GuardExceeded {
            vertices: count,
            guard: PAIRWISE_GUARD,
        });
    }
    Ok(params)
}

/// Maximum size of a rank-`<= k` family whose distinct pairs satisfy the mode
/// predicate.
pub fn max_family_pairwise(n: u32, k: u32, t: u32, mode: PairwiseMode) -> Result<SearchOutcome> {
    let params = check_pairwise_guard(n, k, t, false)?;
    let verts = subsets_up_to_rank(n, k);
    Ok(clique_outcome(
        verts,
        params,
        |a, b| pairwise_compatible(a, b, k, t, mode),
        |f| match mode {
            PairwiseMode::Strict => predicates::is_t_intersecting(f, t),
            PairwiseMode::Relaxed => predicates::satisfies_relaxed_pairwise(f, k, t),
        },
    ))
}

/// Maximum size of a `k`-uniform `t`-intersecting family.
pub fn max_family_uniform(n: u32, k: u32, t: u32) -> Result<SearchOutcome> {
    let params = check_pairwise_guard(n, k, t, true)?;
    let verts = subsets_of_rank(n, k);
    Ok(clique_outcome(
        verts,
        params,
        |a, b| a.intersection(b).len() >= t,
        |f| predicates::is_t_intersecting(f, t),
    ))
}

// ---------------------------------------------------------------------------
// r-wise search

struct RwiseSearcher {
    verts: Vec<ElementSet>,
    k: u32,
    r: u32,
    mode: RwiseMode,
    best: Vec<usize>,
    nodes: u64,
}

impl RwiseSearcher {
    /// Adding `x` to a feasible partial family only requires checking tuples
    /// whose support contains `x`; supports are `{x}` plus up to `r − 1`
    /// already-chosen members (smaller supports arise by repeating `x`).
    fn extension_ok(&self, chosen: &[usize], x: usize) -> bool {
        let xs = self.verts[x];
        let limit = (self.r as usize - 1).min(chosen.len());
        self.supports_ok(chosen, 0, limit, xs, xs)
    }

    fn supports_ok(
        &self,
        chosen: &[usize],
        from: usize,
        remaining: usize,
        inter: ElementSet,
        union: ElementSet,
    ) -> bool {
        if !self.tuple_ok(inter, union) {
            return false;
        }
        if remaining == 0 {
            return true;
        }
        (from..chosen.len()).all(|idx| {
            let m = self.verts[chosen[idx]];
            self.supports_ok(
                chosen,
                idx + 1,
                remaining - 1,
                inter.intersection(&m),
                union.union(&m),
            )
        })
    }

    fn tuple_ok(&self, inter: ElementSet, union: ElementSet) -> bool {
        match self.mode {
            RwiseMode::Strict => !inter.is_empty(),
            RwiseMode::Relaxed => {
                !inter.is_empty() || union.difference(&inter).len() <= self.k
            }
        }
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>, from: usize) {
        self.nodes += 1;
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if from >= self.verts.len() {
            return;
        }
        if chosen.len() + (self.verts.len() - from) <= self.best.len() {
            return;
        }
        // include-first in canonical order keeps the recorded optimum the
        // lexicographically least maximum family
        if self.extension_ok(chosen, from) {
            chosen.push(from);
            self.dfs(chosen, from + 1);
            chosen.pop();
        }
        self.dfs(chosen, from + 1);
    }
}

/// Maximum family size under the r-wise mode predicate.
pub fn max_family_rwise(n: u32, k: u32, r: u32, mode: RwiseMode) -> Result<SearchOutcome> {
    assert!(r >= 2, "r-wise search needs r >= 2");
    let params = GroundParams::new(n, k, 0)?;
    let count: u64 = (0..=k)
        .map(|j| u64::try_from(&crate::arith::binomial(n as u64, j as i64)).unwrap_or(u64::MAX))
        .sum();
    if count > RWISE_GUARD {
        return Err(Error::GuardExceeded {
            vertices: count,
            guard: RWISE_GUARD,
        });
    }
    let verts = subsets_up_to_rank(n, k);
    let mut searcher = RwiseSearcher {
        verts,
        k,
        r,
        mode,
        best: Vec::new(),
        nodes: 0,
    };
    searcher.dfs(&mut Vec::new(), 0);
    let members: Vec<ElementSet> = searcher.best.iter().map(|&v| searcher.verts[v]).collect();
    let witness = SetFamily::new(params, members)?;
    let ok = match mode {
        RwiseMode::Strict => predicates::is_r_wise_intersecting(&witness, r),
        RwiseMode::Relaxed => predicates::satisfies_relaxed_rwise(&witness, k, r),
    };
    assert!(ok, "witness failed re-verification");
    Ok(SearchOutcome {
        optimum: BigUint::from(witness.len()),
        witness: Witness::Family(witness),
        nodes_explored: searcher.nodes,
        proof_complete: true,
    })
}

// ---------------------------------------------------------------------------
// cross-product search (two families)

/// Maximizes `|F_1| · |F_2|` over pairs of families satisfying the cross mode
/// predicate.
///
/// Cross conditions constrain only inter-family pairs, so for a fixed `F_1`
/// the optimal `F_2` is exactly the set of all candidates compatible with
/// every member of `F_1`.  The DFS enumerates `F_1` and maintains that
/// closure as a running bitmask, which makes the search exact.
pub fn max_cross_product(n: u32, ranks: &[u32], t: u32, mode: CrossMode) -> Result<SearchOutcome> {
    if ranks.len() != 2 {
        return Err(Error::CrossArity(ranks.len()));
    }
    let (k1, k2) = (ranks[0], ranks[1]);
    let p1 = GroundParams::new(n, k1, t)?;
    let p2 = GroundParams::new(n, k2, t)?;
    let max_rank = k1.max(k2);
    let count: u64 = (0..=max_rank)
        .map(|j| u64::try_from(&crate::arith::binomial(n as u64, j as i64)).unwrap_or(u64::MAX))
        .sum();
    if count > CROSS_GUARD {
        return Err(Error::GuardExceeded {
            vertices: count,
            guard: CROSS_GUARD,
        });
    }
    let v1 = subsets_up_to_rank(n, k1);
    let v2 = subsets_up_to_rank(n, k2);
    let min_rank = k1.min(k2);
    let compatible = |a: &ElementSet, b: &ElementSet| -> bool {
        let meet = a.intersection(b).len();
        match mode {
            CrossMode::Strict => meet >= t,
            CrossMode::Relaxed => meet >= t || a.symmetric_difference(b).len() <= min_rank - t,
        }
    };
    // per-F1-candidate mask of compatible F2 candidates
    let masks: Vec<u128> = v1
        .iter()
        .map(|a| {
            v2.iter()
                .enumerate()
                .filter(|(_, b)| compatible(a, b))
                .fold(0u128, |m, (j, _)| m | 1u128 << j)
        })
        .collect();

    struct State {
        best: u64,
        best_f1: Vec<usize>,
        best_mask: u128,
        nodes: u64,
    }
    let mut st = State {
        best: 0,
        best_f1: Vec::new(),
        best_mask: 0,
        nodes: 0,
    };

    fn dfs(
        masks: &[u128],
        st: &mut State,
        chosen: &mut Vec<usize>,
        from: usize,
        mask: u128,
    ) {
        st.nodes += 1;
        let product = chosen.len() as u64 * mask.count_ones() as u64;
        if product > st.best {
            st.best = product;
            st.best_f1 = chosen.clone();
            st.best_mask = mask;
        }
        if from >= masks.len() || mask == 0 {
            return;
        }
        // adding candidates can only shrink the closure mask
        let upper = (chosen.len() + (masks.len() - from)) as u64 * mask.count_ones() as u64;
        if upper <= st.best {
            return;
        }
        chosen.push(from);
        dfs(masks, st, chosen, from + 1, mask & masks[from]);
        chosen.pop();
        dfs(masks, st, chosen, from + 1, mask);
    }

    let all2 = if v2.len() == 128 {
        !0u128
    } else {
        (1u128 << v2.len()) - 1
    };
    dfs(&masks, &mut st, &mut Vec::new(), 0, all2);

    let f1 = SetFamily::new(p1, st.best_f1.iter().map(|&i| v1[i]).collect())?;
    let f2_members: Vec<ElementSet> = v2
        .iter()
        .enumerate()
        .filter(|(j, _)| st.best_mask >> j & 1 == 1)
        .map(|(_, s)| *s)
        .collect();
    let f2 = SetFamily::new(p2, f2_members)?;
    if !f1.is_empty() && !f2.is_empty() {
        let ok = match mode {
            CrossMode::Strict => predicates::are_cross_t_intersecting(&[&f1, &f2], t),
            CrossMode::Relaxed => {
                predicates::satisfies_cross_relaxed(&[&f1, &f2], &[k1, k2], t)?
            }
        };
        assert!(ok, "witness failed re-verification");
    }
    Ok(SearchOutcome {
        optimum: BigUint::from(st.best),
        witness: Witness::Families(vec![f1, f2]),
        nodes_explored: st.nodes,
        proof_complete: true,
    })
}
