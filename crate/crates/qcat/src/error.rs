use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Values from two different quantale instances were mixed in one operation.
    #[error("instance mismatch in {op}: {left} vs {right}")]
    InstanceMismatch {
        op: &'static str,
        left: &'static str,
        right: &'static str,
    },

    /// A step distribution violated its representation invariants.
    #[error("invalid step distribution: {0}")]
    InvalidStep(String),

    /// An operation needs a horizon of at least 2.
    #[error("horizon must be at least 2, got {0}")]
    Horizon(usize),

    /// The operation is not defined for this quantale instance.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An object index or label does not belong to the carrier.
    #[error("unknown object: {0}")]
    UnknownObject(String),

    /// Two categories (or a functor/distributor and a category) do not fit together.
    #[error("incompatible carriers: {0}")]
    Incompatible(String),

    /// Malformed caller input that is not tied to one value.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
