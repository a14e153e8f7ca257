use thiserror::Error;

use crate::stateset::StateSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building, validating, decomposing
/// or (de)serializing a state property system.
///
/// Property indices in the ortho variants refer to canonical positions of
/// the validated family; the ones raised by [`crate::Sps::new`] carry the
/// offending sets themselves since the raw input has no canonical order yet.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state roster is empty")]
    EmptyRoster,
    #[error("duplicate state label `{0}`")]
    DuplicateStateLabel(String),
    #[error("{what} of size {size} exceeds the configured maximum of {max}")]
    CapExceeded { what: &'static str, size: u128, max: u128 },
    #[error("{what} index {index} out of range (expected < {len})")]
    IndexOutOfRange { what: &'static str, index: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("the empty set is not among the properties")]
    MissingBottom,
    #[error("the full state set is not among the properties")]
    MissingTop,
    #[error("property set {set:?} occurs more than once")]
    DuplicateProperty { set: StateSet },
    #[error("{left:?} ∩ {right:?} = {intersection:?} is not a property")]
    NotIntersectionClosed { left: StateSet, right: StateSet, intersection: StateSet },

    #[error("orthocomplement table has {found} entries for {expected} properties")]
    PartnerTableLength { expected: usize, found: usize },
    #[error("orthocomplement is not an involution at property {property}: ⊥ gives {partner}, ⊥⊥ gives {back}")]
    NotInvolutive { property: usize, partner: usize, back: usize },
    #[error("orthocomplement is not antitone: property {lower} ≤ {upper} but {upper}^⊥ ≰ {lower}^⊥")]
    NotAntitone { lower: usize, upper: usize },
    #[error("complement law fails at property {property} (⊥ = {partner}): {detail}")]
    ComplementLawFailed { property: usize, partner: usize, detail: ComplementFailure },
    #[error("state {state} is orthogonal to every state of property {property} but lies outside its orthocomplement")]
    OrthoComFailed { property: usize, state: usize },

    #[error("property {property} is not classical")]
    NotClassical { property: usize },
    #[error("property {property} is not a classical state")]
    NotAClassicalState { property: usize },
    #[error("direct union needs at least one part")]
    EmptyPartsList,
    #[error("direct union would have {size} properties, above the cap of {cap}")]
    ProductTooLarge { size: u128, cap: u128 },
    #[error("mutation {kind} is not applicable: {reason}")]
    MutationInapplicable { kind: &'static str, reason: String },
    #[error("internal consistency failure: {0}")]
    InternalTheoremViolation(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown state label `{0}`")]
    UnknownStateLabel(String),
    #[error("property {property} references missing orthocomplement `{reference}`")]
    DanglingPerpReference { property: usize, reference: String },
    #[error("unsupported format_version `{found}` (expected `{expected}`)")]
    VersionMismatch { found: String, expected: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplementFailure {
    /// `a ∧ a^⊥` is not the bottom element.
    MeetNotBottom,
    /// `a ∨ a^⊥` is not the top element.
    JoinNotTop,
}

impl std::fmt::Display for ComplementFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComplementFailure::MeetNotBottom => f.write_str("a ∧ a^⊥ is not the bottom property"),
            ComplementFailure::JoinNotTop => f.write_str("a ∨ a^⊥ is not the top property"),
        }
    }
}

impl Error {
    /// Stable identifier of the error kind, used in JSON reports and tests.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyRoster => "EmptyRoster",
            Error::DuplicateStateLabel(_) => "DuplicateStateLabel",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::MissingBottom => "MissingBottom",
            Error::MissingTop => "MissingTop",
            Error::DuplicateProperty { .. } => "DuplicateProperty",
            Error::NotIntersectionClosed { .. } => "NotIntersectionClosed",
            Error::PartnerTableLength { .. } => "PartnerTableLength",
            Error::NotInvolutive { .. } => "NotInvolutive",
            Error::NotAntitone { .. } => "NotAntitone",
            Error::ComplementLawFailed { .. } => "ComplementLawFailed",
            Error::OrthoComFailed { .. } => "OrthoComFailed",
            Error::NotClassical { .. } => "NotClassical",
            Error::NotAClassicalState { .. } => "NotAClassicalState",
            Error::EmptyPartsList => "EmptyPartsList",
            Error::ProductTooLarge { .. } => "ProductTooLarge",
            Error::MutationInapplicable { .. } => "MutationInapplicable",
            Error::InternalTheoremViolation(_) => "InternalTheoremViolation",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownStateLabel(_) => "UnknownStateLabel",
            Error::DanglingPerpReference { .. } => "DanglingPerpReference",
            Error::VersionMismatch { .. } => "VersionMismatch",
        }
    }

    /// Name of the axiom a validation failure violates, if it is one.
    pub fn law(&self) -> Option<&'static str> {
        Some(match self {
            Error::MissingBottom | Error::MissingTop => "bottom-and-top",
            Error::NotIntersectionClosed { .. } => "intersection-closure",
            Error::DuplicateProperty { .. } => "order-embedding",
            Error::NotInvolutive { .. } => "involution",
            Error::NotAntitone { .. } => "antitone",
            Error::ComplementLawFailed { .. } => "complement",
            Error::OrthoComFailed { .. } => "ortho-cartan",
            _ => return None,
        })
    }

    /// True for errors that report a malformed or axiom-violating instance,
    /// as opposed to I/O, syntax or caller mistakes.
    pub fn is_validation_failure(&self) -> bool {
        self.law().is_some()
            || matches!(
                self,
                Error::EmptyRoster
                    | Error::DuplicateStateLabel(_)
                    | Error::PartnerTableLength { .. }
                    | Error::IndexOutOfRange { .. }
                    | Error::InternalTheoremViolation(_)
            )
    }
}
