use alloc::string::String;

/// Errors reported by the limit calculators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The operation is not defined for this kind of SNR distribution.
    #[error("{operation} is not supported for the {kind} SNR distribution")]
    Unsupported {
        operation: &'static str,
        kind: &'static str,
    },
    /// An argument lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
    /// A numerical routine failed to reach its target accuracy.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
