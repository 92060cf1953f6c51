use thiserror::Error;

use crate::cartan::{Family, Weight};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family:?}")]
    InvalidRank { family: Family, rank: usize },

    #[error("unknown algebra identifier `{0}`")]
    UnknownAlgebra(String),

    #[error("weight has {found} labels but the algebra has rank {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("Weyl group order exceeds the configured bound {bound}")]
    GroupTooLarge { bound: usize },

    #[error("module dimension {dim} exceeds the configured bound {bound}")]
    DimensionTooLarge { dim: u128, bound: u64 },

    #[error("level must be at least 1, got {0}")]
    InvalidLevel(i64),

    #[error("weight {weight} has <weight,theta> = {pairing} > level {level}")]
    LevelExceeded { weight: Weight, pairing: i64, level: i64 },

    #[error("weight {0} is not in the weight system")]
    NotInSupport(Weight),

    #[error("|P_k^+| = {size} exceeds the configured bound {bound}")]
    BasisTooLarge { size: usize, bound: usize },

    #[error("fusion algebra axiom violated: {0}")]
    AxiomViolation(String),

    #[error("spin {twice}/2 out of range for level {level}")]
    SpinOutOfRange { twice: u32, level: u32 },

    #[error("tuple entry {entry} out of range 0..{modulus}")]
    EntryOutOfRange { entry: i64, modulus: u32 },

    #[error("incompatible orbit labels: {0}")]
    IncompatibleLabels(String),

    #[error("inexact division in orbit-count formula: {numerator} / {denominator}")]
    InexactDivision { numerator: String, denominator: u64 },

    #[error("orbit counts disagree: enumeration {enumerated}, partition sum {partition_sum}")]
    CountMismatch { enumerated: u64, partition_sum: u64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error(
        "unsupported fusion coefficient N[{a}][{b}]^[{c}] = {value}: group covers only handle coefficients in {{0,1}}"
    )]
    UnsupportedCoefficient { a: usize, b: usize, c: usize, value: u64 },

    #[error("invalid bijection: {0}")]
    InvalidBijection(String),

    #[error("parse error in `{input}` at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("serialization error: {0}")]
    Serialization(String),
}
