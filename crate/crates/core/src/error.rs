use thiserror::Error;

use crate::report::AuditReport;
use crate::set::ElementSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} out of range for a ground set of {n} elements")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("circuit list contains an empty circuit")]
    EmptyCircuit,

    #[error("ground set of {n} elements exceeds the limit of {max}")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error("ground set of {n} elements is too large for an exhaustive scan (limit {max})")]
    GroundSetTooLargeForExhaustiveScan { n: usize, max: usize },

    #[error("ground set of {n} elements is too large for isomorphism testing (limit {max})")]
    GroundSetTooLargeForIsomorphism { n: usize, max: usize },

    #[error("ground set of {n} elements is too large for partition search (limit {max})")]
    GroundSetTooLargeForSearch { n: usize, max: usize },

    #[error("deletion and contraction sets overlap in {0}")]
    OverlappingSets(ElementSet),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("not a modular cut: {}", .0.summary())]
    NotAModularCut(Box<AuditReport>),

    #[error("matroid has rank zero")]
    RankZero,

    #[error("matroid has corank zero")]
    CorankZero,

    #[error("invalid arm partition: {0}")]
    InvalidArms(String),

    #[error("arm partition covers {covered} but the ground set is {ground}")]
    PartitionDoesNotCoverGroundSet {
        covered: ElementSet,
        ground: ElementSet,
    },

    #[error("ground set has an odd number ({0}) of elements")]
    OddGroundSet(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("echidna extension failed: {0}")]
    ExtensionFailed(String),

    #[error("{0} is not a circuit")]
    NotACircuit(ElementSet),

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("not a t-spike: {}", .0.summary())]
    NotASpike(Box<AuditReport>),

    #[error("not a t-echidna: {}", .0.summary())]
    NotAnEchidna(Box<AuditReport>),

    #[error("OrderTooSmall: order {order} is below the required {required}")]
    OrderTooSmall { order: usize, required: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("bound {name}({args}) is too large to evaluate")]
    Overflow { name: &'static str, args: String },

    #[error("insufficient: {0}")]
    Insufficient(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
