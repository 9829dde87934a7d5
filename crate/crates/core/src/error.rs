use crate::pants_graph::CurveId;

/// Errors raised by the model-building operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matching is not a perfect matching of the legs: {0}")]
    NotPerfectMatching(String),
    #[error("pants graph is disconnected")]
    Disconnected,
    #[error("odd vertex count {0}: genus is not an integer")]
    OddVertexCount(usize),
    #[error("genus below two")]
    GenusBelowTwo,
    #[error("unknown curve {0}")]
    UnknownCurve(CurveId),
    #[error("duplicate curve id {0}")]
    DuplicateCurveId(CurveId),
    #[error("curve id {0} is already in use")]
    CurveIdInUse(CurveId),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("complex failed validation: {0}")]
    NotValidated(String),
    #[error("stage {stage} out of range 0..={max}")]
    StageOutOfRange { stage: usize, max: usize },
    #[error("malformed spine tree: {0}")]
    MalformedTree(String),
    #[error("attachment target is not a boundary loop: {0}")]
    AttachmentTargetNotBoundaryLoop(String),
    #[error("model is not a single compression body: {0}")]
    NotSingleBody(String),
    #[error("path base does not match the induced decomposition")]
    BaseMismatch,
    #[error("path endpoints do not match: {0}")]
    EndpointMismatch(String),
    #[error("not a matching: {0}")]
    NotAMatching(String),
    #[error("matching mismatch: {0}")]
    MatchingMismatch(String),
    #[error("shared loops survive the thin-surface path: {0:?}")]
    SharedLoopViolation(Vec<CurveId>),
    #[error("validation failure: {0}")]
    ValidationFailure(String),
    #[error("bad symbol in word: {0}")]
    BadSymbol(String),
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
