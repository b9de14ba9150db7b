//! Set-pair systems: intersection conditions, exact Bollobás sums, properly
//! separating permutations, and the sharpness search for the weakened
//! condition (c′) at t = 0.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{binomial, inverse};
use crate::search::{max_clique, SearchOutcome, Witness};
use crate::set::{subsets_of_rank, ElementSet};
use crate::{Error, Result};

/// Ground-size limit for exhaustive permutation enumeration.
pub const PERMUTATION_GUARD: u32 = 8;

/// An indexed list of set pairs `(A_i, B_i)` over `[n]` with a stored
/// intersection threshold `t`.
///
/// Distinct indices are distinct pairs even when equal as sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSystem {
    n: u32,
    t: u32,
    pairs: Vec<(ElementSet, ElementSet)>,
}

impl PairSystem {
    pub fn new(n: u32, t: u32, pairs: Vec<(ElementSet, ElementSet)>) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::GroundSize(n));
        }
        for (a, b) in &pairs {
            if a.ground_size() != n {
                return Err(Error::GroundMismatch(a.ground_size(), n));
            }
            if b.ground_size() != n {
                return Err(Error::GroundMismatch(b.ground_size(), n));
            }
        }
        Ok(PairSystem { n, t, pairs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(ElementSet, ElementSet)] {
        &self.pairs
    }

    /// All 2-subsets of `[m]` paired with their complements; the tight system
    /// for the disjoint-pairs inequality.
    pub fn classic(m: u32, a: u32) -> Result<Self> {
        let full = ElementSet::from_bits(m, if m == 64 { !0 } else { (1u64 << m) - 1 })?;
        let pairs = subsets_of_rank(m, a)
            .into_iter()
            .map(|s| (s, full.difference(&s)))
            .collect();
        PairSystem::new(m, 0, pairs)
    }
}

/// Which clause of the Talbot conditions a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    A,
    B,
    C,
    CPrime,
}

/// Exact evaluation of conditions (a), (b), (c), and the weaker (c′).
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub a_holds: bool,
    pub b_holds: bool,
    pub c_holds: bool,
    pub c_prime_holds: bool,
    pub violations: Vec<(usize, usize, Clause)>,
}

/// Evaluates each Talbot clause against the system's stored `t`.
///
/// (a): `|A_i ∩ B_i| <= t` per index.  (b): `|A_i ∩ B_j| >= t` for ordered
/// `i != j`.  (c)/(c′) trigger when `A_i ∩ B_i = A_j ∩ B_j` as sets; (c)
/// requires both cross intersections to differ from the diagonal one, (c′)
/// only that not all three coincide.
pub fn check_conditions(system: &PairSystem) -> ConditionReport {
    let t = system.t();
    let pairs = system.pairs();
    let mut report = ConditionReport {
        a_holds: true,
        b_holds: true,
        c_holds: true,
        c_prime_holds: true,
        violations: Vec::new(),
    };
    for (i, (a, b)) in pairs.iter().enumerate() {
        if a.intersection(b).len() > t {
            report.a_holds = false;
            report.violations.push((i, i, Clause::A));
        }
    }
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            if i == j {
                continue;
            }
            if pairs[i].0.intersection(&pairs[j].1).len() < t {
                report.b_holds = false;
                report.violations.push((i, j, Clause::B));
            }
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let di = pairs[i].0.intersection(&pairs[i].1);
            let dj = pairs[j].0.intersection(&pairs[j].1);
            if di != dj {
                continue;
            }
            let ij = pairs[i].0.intersection(&pairs[j].1);
            let ji = pairs[j].0.intersection(&pairs[i].1);
            if ij == di || ji == di {
                report.c_holds = false;
                report.violations.push((i, j, Clause::C));
            }
            if ij == di && ji == di {
                report.c_prime_holds = false;
                report.violations.push((i, j, Clause::CPrime));
            }
        }
    }
    report
}

/// `Σ_i 1 / (C(|A_i ∪ B_i|, |A_i − B_i|) · C(|B_i|, |A_i ∩ B_i|))`, exactly.
pub fn bollobas_sum(system: &PairSystem) -> BigRational {
    system
        .pairs()
        .iter()
        .map(|(a, b)| pair_weight(a, b))
        .fold(BigRational::zero(), |acc, w| acc + w)
}

fn pair_weight(a: &ElementSet, b: &ElementSet) -> BigRational {
    let denom = binomial(
        a.union(b).len() as u64,
        a.difference(b).len() as i64,
    ) * binomial(b.len() as u64, a.intersection(b).len() as i64);
    inverse(&denom)
}

/// True iff in `perm` every element of `A − B` precedes every element of `B`,
/// and every element of `A` precedes every element of `B − A`.
pub fn properly_separates(perm: &[u32], a: &ElementSet, b: &ElementSet) -> Result<bool> {
    let n = a.ground_size();
    let mut position = vec![usize::MAX; n as usize + 1];
    if perm.len() != n as usize {
        return Err(Error::MalformedPermutation(n));
    }
    for (idx, &e) in perm.iter().enumerate() {
        if e == 0 || e > n || position[e as usize] != usize::MAX {
            return Err(Error::MalformedPermutation(n));
        }
        position[e as usize] = idx;
    }
    Ok(separates_with_positions(&position, a, b))
}

fn separates_with_positions(position: &[usize], a: &ElementSet, b: &ElementSet) -> bool {
    let max_pos = |s: &ElementSet| s.elements().map(|e| position[e as usize]).max();
    let min_pos = |s: &ElementSet| s.elements().map(|e| position[e as usize]).min();
    let a_minus_b = a.difference(b);
    let b_minus_a = b.difference(a);
    if let (Some(hi), Some(lo)) = (max_pos(&a_minus_b), min_pos(b)) {
        if hi >= lo {
            return false;
        }
    }
    if let (Some(hi), Some(lo)) = (max_pos(a), min_pos(&b_minus_a)) {
        if hi >= lo {
            return false;
        }
    }
    true
}

/// Closed-form probability that a uniform permutation of `[n]` properly
/// separates `(A, B)`.
pub fn exact_separation_probability(a: &ElementSet, b: &ElementSet) -> BigRational {
    let denom = binomial(
        a.union(b).len() as u64,
        a.difference(b).len() as i64,
    ) * binomial(b.len() as u64, a.intersection(b).len() as i64);
    inverse(&denom)
}

/// Oracle mode: counts separating permutations by enumerating all `n!`
/// permutations and returns `count / n!`.
pub fn enumerated_separation_probability(
    a: &ElementSet,
    b: &ElementSet,
) -> Result<BigRational> {
    let n = a.ground_size();
    if n > PERMUTATION_GUARD {
        return Err(Error::EnumerationGuard {
            n,
            limit: PERMUTATION_GUARD,
        });
    }
    let mut count = 0u64;
    let mut total = 0u64;
    for_each_permutation(n, |position| {
        total += 1;
        if separates_with_positions(position, a, b) {
            count += 1;
        }
    });
    Ok(BigRational::new(count.into(), total.into()))
}

/// Calls `f` with the position table (`position[element] = index`) of every
/// permutation of `[n]`, in a fixed order.
fn for_each_permutation(n: u32, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<u32> = (1..=n).collect();
    let mut position = vec![0usize; n as usize + 1];
    heap_permutations(&mut perm, n as usize, &mut |p: &[u32]| {
        for (idx, &e) in p.iter().enumerate() {
            position[e as usize] = idx;
        }
        f(&position);
    });
}

fn heap_permutations(perm: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
    if k <= 1 {
        f(perm);
        return;
    }
    for i in 0..k {
        heap_permutations(perm, k - 1, f);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// True iff no permutation of `[n]` properly separates two distinct indexed
/// pairs.  Exhaustive; requires `n <= 8`.
pub fn verify_disjointness_exact(system: &PairSystem) -> Result<bool> {
    let n = system.n();
    if n > PERMUTATION_GUARD {
        return Err(Error::EnumerationGuard {
            n,
            limit: PERMUTATION_GUARD,
        });
    }
    let mut disjoint = true;
    for_each_permutation(n, |position| {
        if !disjoint {
            return;
        }
        let mut hits = 0;
        for (a, b) in system.pairs() {
            if separates_with_positions(position, a, b) {
                hits += 1;
                if hits >= 2 {
                    disjoint = false;
                    return;
                }
            }
        }
    });
    Ok(disjoint)
}

/// Seeded Monte Carlo estimate of the separation probabilities.
#[derive(Debug, Clone)]
pub struct McEstimate {
    pub trials: u64,
    pub hits_per_pair: Vec<u64>,
    pub point_estimates: Vec<BigRational>,
    pub exact_reference: Vec<BigRational>,
    pub collision_detected: bool,
}

/// Trials per deterministic chunk; chunk seeds depend only on `(seed, chunk)`
/// so results are independent of the thread count.
const MC_CHUNK: u64 = 4096;

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    // splitmix64 step keeps per-chunk streams decorrelated
    let mut z = seed ^ chunk.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

fn run_chunk(
    system: &PairSystem,
    seed: u64,
    chunk: u64,
    trials: u64,
) -> (Vec<u64>, bool) {
    let n = system.n() as usize;
    let mut rng = chunk_rng(seed, chunk);
    let mut hits = vec![0u64; system.len()];
    let mut collision = false;
    let mut perm: Vec<u32> = (1..=system.n()).collect();
    let mut position = vec![0usize; n + 1];
    for _ in 0..trials {
        // Fisher-Yates
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        for (idx, &e) in perm.iter().enumerate() {
            position[e as usize] = idx;
        }
        let mut seen = false;
        for (p, (a, b)) in system.pairs().iter().enumerate() {
            if separates_with_positions(&position, a, b) {
                hits[p] += 1;
                if seen {
                    collision = true;
                }
                seen = true;
            }
        }
    }
    (hits, collision)
}

/// Samples `trials` uniform permutations from a seeded generator and records
/// which pairs each one separates.  Bit-for-bit reproducible for a fixed seed
/// and trial count, regardless of `threads`.
pub fn mc_separation_estimate(
    system: &PairSystem,
    trials: u64,
    seed: u64,
    threads: usize,
) -> McEstimate {
    assert!(trials >= 1, "need at least one trial");
    let chunk_count = trials.div_ceil(MC_CHUNK);
    let chunk_trials = |c: u64| {
        if c + 1 == chunk_count && trials % MC_CHUNK != 0 {
            trials % MC_CHUNK
        } else {
            MC_CHUNK
        }
    };
    let threads = threads.max(1);
    let mut hits = vec![0u64; system.len()];
    let mut collision = false;
    if threads == 1 || chunk_count == 1 {
        for c in 0..chunk_count {
            let (h, col) = run_chunk(system, seed, c, chunk_trials(c));
            for (acc, x) in hits.iter_mut().zip(h) {
                *acc += x;
            }
            collision |= col;
        }
    } else {
        let results: Vec<(Vec<u64>, bool)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    scope.spawn(move || {
                        let mut local = vec![0u64; system.len()];
                        let mut col = false;
                        let mut c = w as u64;
                        while c < chunk_count {
                            let (h, k) = run_chunk(system, seed, c, chunk_trials(c));
                            for (acc, x) in local.iter_mut().zip(h) {
                                *acc += x;
                            }
                            col |= k;
                            c += threads as u64;
                        }
                        (local, col)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (h, col) in results {
            for (acc, x) in hits.iter_mut().zip(h) {
                *acc += x;
            }
            collision |= col;
        }
    }
    let point_estimates = hits
        .iter()
        .map(|&h| BigRational::new(h.into(), trials.into()))
        .collect();
    let exact_reference = system
        .pairs()
        .iter()
        .map(|(a, b)| exact_separation_probability(a, b))
        .collect();
    McEstimate {
        trials,
        hits_per_pair: hits,
        point_estimates,
        exact_reference,
        collision_detected: collision,
    }
}

/// Outcome of the condition-(c′) sharpness search at `t = 0`.
#[derive(Debug, Clone)]
pub struct CPrimeSearch {
    pub outcome: SearchOutcome,
    pub sum: BigRational,
    pub reaches_lower_bound: bool,
}

/// Maximizes `|I|` over systems of disjoint pairs with `|A_i| = a`,
/// `|B_i| = b` over `[n]` such that for every `i != j` the three-way equality
/// `A_i ∩ B_j = A_i ∩ B_i = A_j ∩ B_i = ∅` fails.
///
/// Candidate pairs are generated in canonical order and the search is a
/// maximum-clique computation on the compatibility graph; the first branch is
/// restricted to the relabel-minimal pair `([a], {a+1..a+b})`, which every
/// maximum system contains after an element relabeling.
pub fn search_c_prime_violation(a: u32, b: u32, n: u32) -> Result<CPrimeSearch> {
    if (a as u64).gcd(&(b as u64)) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    if a + b > n || n > 8 {
        return Err(Error::PairSearchParams { a, b, n });
    }
    let mut candidates: Vec<(ElementSet, ElementSet)> = Vec::new();
    for sa in subsets_of_rank(n, a) {
        for sb in subsets_of_rank(n, b) {
            if sa.intersection(&sb).is_empty() {
                candidates.push((sa, sb));
            }
        }
    }
    candidates.sort_by_key(|(sa, sb)| (sa.bits(), sb.bits()));
    let compatible = |i: usize, j: usize| -> bool {
        let ij = candidates[i].0.intersection(&candidates[j].1);
        let ji = candidates[j].0.intersection(&candidates[i].1);
        !(ij.is_empty() && ji.is_empty())
    };

    // symmetry reduction: relabeling elements is transitive on candidate
    // pairs, so some maximum system contains the canonical first candidate
    let canonical = candidates
        .iter()
        .position(|(sa, sb)| {
            sa.elements().eq(1..=a) && sb.elements().eq(a + 1..=a + b)
        })
        .expect("canonical pair exists whenever a + b <= n");
    let reduced: Vec<usize> = (0..candidates.len())
        .filter(|&i| i == canonical || compatible(i, canonical))
        .collect();
    let adjacency: Vec<Vec<usize>> = reduced
        .iter()
        .map(|&i| {
            reduced
                .iter()
                .enumerate()
                .filter(|&(_, &j)| j != i && compatible(i, j))
                .map(|(pos, _)| pos)
                .collect()
        })
        .collect();
    let (clique, nodes) = max_clique(&adjacency);
    let optimum = clique.len().max(usize::from(!candidates.is_empty()));

    // witness: lexicographically least clique of optimum size in the full
    // candidate order, rebuilt greedily with feasibility checks
    let full_adjacency: Vec<Vec<usize>> = (0..candidates.len())
        .map(|i| {
            (0..candidates.len())
                .filter(|&j| j != i && compatible(i, j))
                .collect()
        })
        .collect();
    let witness_indices = lex_min_clique(&full_adjacency, optimum);
    let pairs: Vec<(ElementSet, ElementSet)> = witness_indices
        .iter()
        .map(|&i| candidates[i])
        .collect();
    let system = PairSystem::new(n, 0, pairs)?;
    let report = check_conditions(&system);
    assert!(
        report.a_holds && report.b_holds && report.c_prime_holds,
        "witness failed re-verification"
    );
    let sum = bollobas_sum(&system);
    let target = BigRational::from_integer(2.into())
        - BigRational::new(BigUint::one().into(), (a as u64 + b as u64).into());
    Ok(CPrimeSearch {
        reaches_lower_bound: sum >= target,
        sum,
        outcome: SearchOutcome {
            optimum: BigUint::from(optimum),
            witness: Witness::PairSystem(system),
            nodes_explored: nodes,
            proof_complete: true,
        },
    })
}

/// Greedy lexicographically-least clique of exactly `size` vertices.
fn lex_min_clique(adjacency: &[Vec<usize>], size: usize) -> Vec<usize> {
    fn feasible(adjacency: &[Vec<usize>], cands: &[usize], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if cands.len() < need {
            return false;
        }
        for (pos, &v) in cands.iter().enumerate() {
            let next: Vec<usize> = cands[pos + 1..]
                .iter()
                .copied()
                .filter(|w| adjacency[v].contains(w))
                .collect();
            if feasible(adjacency, &next, need - 1) {
                return true;
            }
        }
        false
    }

    let mut chosen = Vec::new();
    let mut cands: Vec<usize> = (0..adjacency.len()).collect();
    while chosen.len() < size {
        let pick = cands
            .iter()
            .position(|&v| {
                let next: Vec<usize> = cands
                    .iter()
                    .copied()
                    .filter(|w| *w > v && adjacency[v].contains(w))
                    .collect();
                feasible(adjacency, &next, size - chosen.len() - 1)
            })
            .expect("a clique of the proven optimum size exists");
        let v = cands[pick];
        chosen.push(v);
        cands.retain(|w| *w > v && adjacency[v].contains(w));
    }
    chosen
}
