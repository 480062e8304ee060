//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. Variants split into two
//! families: *validation* failures (bad arguments, violated theorem
//! hypotheses) and *numerical* failures (a result that cannot be
//! represented or resolved at the allowed precision). The CLI maps the
//! first family to exit code 2 and the second to exit code 1.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// The exact complex zero has no log-polar representation.
    #[error("zero value is not representable in log-polar form")]
    ZeroValue,

    /// A value is only representable in log-polar form.
    #[error("log-modulus {log_modulus:.6e} exceeds the cartesian cap {max_log_modulus:.6e}")]
    Overflow {
        log_modulus: f64,
        max_log_modulus: f64,
    },

    /// A sum cancelled to something indistinguishable from zero even after
    /// all allowed precision escalations.
    #[error(
        "sum cancelled below 2^-{threshold_exponent} of its largest term after {escalations} precision escalation(s)"
    )]
    CancellationToZero {
        threshold_exponent: u32,
        escalations: u32,
    },

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameter validation failed; the message names the violated condition.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("tolerance must be positive")]
    InvalidTolerance,

    /// A theorem hypothesis does not hold for the given arguments; the
    /// message names the binding constraint.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("interpolation nodes must be pairwise distinct")]
    DuplicateNodes,

    /// The O(n)-storage Fourier form was requested beyond its cap.
    #[error("order {requested} exceeds the expansion cap {cap}")]
    ResourceLimit { requested: u64, cap: u64 },

    /// A schedule asked for an oscillation order beyond the compute budget.
    #[error("schedule requires n = {requested:.3e} beyond the budget cap {cap}")]
    BudgetExceeded { requested: f64, cap: u64 },
}

impl Error {
    /// True for failures of numerical resolution rather than of input
    /// validation. These map to CLI exit code 1; everything else is 2.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::CancellationToZero { .. } | Error::Overflow { .. }
        )
    }
}
