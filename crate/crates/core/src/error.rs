//! Error type shared by all layers of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not monic of degree {expected}")]
    BadMinpoly { expected: u32 },
    #[error("polynomial is reducible over F_{p}")]
    ReducibleMinpoly { p: u64 },
    #[error("field size {q} exceeds the supported cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("no default irreducible polynomial shipped for p={p}, r={r}")]
    NoDefaultPoly { p: u64, r: u32 },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("generator closure exceeded the cap of {cap} elements")]
    ClosureCap { cap: usize },
    #[error("multiplication table is not a valid group operation: {0}")]
    NotAGroup(String),
    #[error("subgroup is not normal in its parent")]
    NotNormal,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("subgroup of order {order} is not a {p}-group")]
    NotPGroup { order: usize, p: u64 },
    #[error("|N| = {n} is divisible by the characteristic p = {p}")]
    NotPPrime { n: usize, p: u64 },
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit vector is not a two-sided identity")]
    BadUnit,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("the field F_{{{p}^{r}}} does not split this algebra; try extension degree r = {suggested_r}")]
    NonSplit { p: u64, r: u32, suggested_r: u32 },
    #[error("randomized splitting exceeded its retry budget ({attempts} attempts, seed {seed})")]
    SplitBudget { attempts: u32, seed: u64 },
    #[error("module action does not respect the structure constants")]
    BadAction,
    #[error("module is not projective")]
    NotProjective,
    #[error("not a valid support tau-tilting pair: {0}")]
    InvalidPair(String),
    #[error("complex is not two-term silting: {0}")]
    NotSilting(String),
    #[error("enumeration hit the node cap of {cap}")]
    NodeCap { cap: usize },
    #[error("poset is incomplete; {0} requires a complete enumeration")]
    IncompletePoset(&'static str),
    #[error("search space overflow: {0}")]
    SearchOverflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(
        "isomorphism test inconclusive: hom space of dim {hom_dim} exceeds the exhaustive bound"
    )]
    IsoInconclusive { hom_dim: usize },
    #[error("{0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
