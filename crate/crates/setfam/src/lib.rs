//! Exact verification and exhaustive search for intersecting set families.
//!
//! Everything here works over a ground set `[n] = {1, ..., n}` with `n <= 64`,
//! so a subset is a single machine word.  The crate provides:
//!
//! * set algebra, big-integer binomials, exact rationals ([`set`], [`arith`]),
//! * the shifting operator `S_{i,k}` and up-set closure ([`compression`]),
//! * intersection predicates for pairwise, cross, and r-wise families
//!   ([`predicates`]),
//! * closed-form bounds and extremal constructions ([`bounds`]),
//! * exhaustive maximum-family searches that prove optimality ([`search`]),
//! * set-pair systems, Bollobás sums, and properly-separating permutations
//!   ([`bollobas`]),
//! * JSON documents for families and pair systems ([`doc`]).

pub mod arith;
pub mod bollobas;
pub mod bounds;
pub mod cli;
pub mod compression;
pub mod doc;
pub mod family;
pub mod predicates;
pub mod search;
pub mod set;

pub use family::SetFamily;
pub use set::{ElementSet, GroundParams};

/// Errors surfaced by constructors, parsers, and search guards.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ground-set size {0} out of range (1..=64)")]
    GroundSize(u32),
    #[error("element {element} out of range for ground set [{n}]")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("mismatched ground sets: [{0}] vs [{1}]")]
    GroundMismatch(u32, u32),
    #[error("invalid parameters: require t <= k <= n, got n={n}, k={k}, t={t}")]
    BadParams { n: u32, k: u32, t: u32 },
    #[error("set {0} has size {1}, exceeding the rank bound k={2}")]
    RankExceeded(String, u32, u32),
    #[error("duplicate set {0} in family")]
    DuplicateSet(String),
    #[error("duplicate element {0} in set literal")]
    DuplicateElement(u32),
    #[error("shift element {0} out of range for ground set [{1}]")]
    ShiftElement(u32, u32),
    #[error("rank bound {0} for shift exceeds family rank bound {1}")]
    ShiftRank(u32, u32),
    #[error("search space too large: {vertices} candidate sets exceed guard {guard}")]
    GuardExceeded { vertices: u64, guard: u64 },
    #[error("exhaustive permutation enumeration requires n <= {limit}, got n={n}")]
    EnumerationGuard { n: u32, limit: u32 },
    #[error("cross-product search supports exactly 2 families, got {0}")]
    CrossArity(usize),
    #[error("rank list has {got} entries for {families} families")]
    RankListMismatch { got: usize, families: usize },
    #[error("a and b must be relatively prime, got a={0}, b={1}")]
    NotCoprime(u32, u32),
    #[error("need a+b <= n <= 8, got a={a}, b={b}, n={n}")]
    PairSearchParams { a: u32, b: u32, n: u32 },
    #[error("tightness example requires 2 <= t < k < n, got n={n}, k={k}, t={t}")]
    TightnessParams { n: u32, k: u32, t: u32 },
    #[error("malformed permutation: not a bijection on [{0}]")]
    MalformedPermutation(u32),
    #[error("{0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
