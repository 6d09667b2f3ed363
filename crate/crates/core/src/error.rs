use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cone is not strongly convex (it contains a line)")]
    NotStronglyConvex,

    #[error("sublattice is not saturated; a direct complement need not exist")]
    NotSaturated,

    #[error("the given vectors do not span a face of the cone")]
    NotAFace,

    #[error("cone containment violated: generator {witness} maps outside the target cone")]
    ConeContainment { witness: String },

    #[error("image {image} of source generator {generator} is not in the target monoid")]
    ImageNotInMonoid { generator: String, image: String },

    #[error("charts have different source monoids")]
    SourceMismatch,

    #[error("chart is not dominant: the group map has kernel {kernel}")]
    NotDominant { kernel: String },

    #[error("enumeration did not stabilise before the bound reached {bound}")]
    NoStabilization { bound: u64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
