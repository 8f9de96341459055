use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Variants under "bug traps" signal a broken invariant rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("not a symmetric permutation of 1..={0}: {1}")]
    InvalidPermutation(usize, String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("element {0} is not a minimal left coset representative for the Siegel type")]
    NotInIW(String),
    #[error("element {element} does not fix 1..={fixed}, so it is not in W_g^[c] for c = {c}")]
    NotInParabolicEmbedding { element: String, c: usize, fixed: usize },
    #[error("rank-table index out of range: ({i}, {j}) with 2n = {bound}")]
    RankIndexOutOfRange { i: usize, j: usize, bound: usize },
    #[error("canonical word convention failure for subset {0:?}")]
    CanonicalWord(Vec<usize>),
    #[error("Frobenius action is not a Coxeter automorphism: {0:?}")]
    InvalidFrobenius(Vec<usize>),

    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of order {p}^{k} exceeds the desk-scale guard of 2^20")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("elements or matrices come from different fields")]
    FieldMismatch,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("element code {code} out of range for a field of order {order}")]
    ElementOutOfRange { code: u64, order: u64 },
    #[error("cannot embed F_{{p^{from}}} into F_{{p^{to}}}")]
    DegreeMismatch { from: u32, to: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not alternating and nondegenerate")]
    BadGram,
    #[error("subspace is not Lagrangian")]
    NotLagrangian,
    #[error("flag members are not a strictly increasing chain from 0 to the ambient space")]
    NotAFlag,
    #[error("flag is not closed under the symplectic complement")]
    NotSelfDual,
    #[error("{matches} double-coset representatives match the rank table (expected exactly 1)")]
    RelposMatch { matches: usize },
    #[error("need 2c <= g, got c = {c}, g = {g}")]
    RankTooSmall { c: usize, g: usize },

    // bug traps
    #[error("no stabilization after {0} iterations")]
    NoStabilization(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
