use thiserror::Error;

/// Errors raised by configuration, form construction, the engines and the parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("dyadic or invalid residue class: q mod 4 = {0} (expected 1 or 3)")]
    InvalidResidueClass(i64),

    #[error("negative picard rank {0}")]
    NegativeRank(i64),

    #[error("picard rank {rank} exceeds the supported maximum {max}")]
    RankTooLarge { rank: i64, max: u32 },

    #[error("forms belong to different curve configurations")]
    ConfigMismatch,

    #[error("unknown bundle label L{label} (picard rank is {picard_rank})")]
    UnknownBundleLabel { label: u64, picard_rank: u32 },

    #[error("not in I-squared: form must have even rank and trivial signed discriminant")]
    NotInISquared,

    #[error("picard rank {rank} exceeds the enumeration bound {bound}")]
    BoundExceeded { rank: u32, bound: u32 },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, WittError>;
