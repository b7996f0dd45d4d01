use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("Box not allowed in IP{}", .position.map(|p| format!(" (offset {p})")).unwrap_or_default())]
    BoxInIp { position: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("translation context needs at least one formula")]
    EmptyContext,
    #[error("this translation needs a context and a witness")]
    MissingContext,
    #[error("duplicate formula `{0}` in translation context")]
    DuplicateInContext(String),
    #[error("context formula `{0}` is not an IP formula")]
    ModalInContext(String),
    #[error("witness index {index} out of range for a context of {len}")]
    WitnessOutOfRange { index: usize, len: usize },
    #[error("witness `{0}` is not a member of the context")]
    WitnessNotInContext(String),
    #[error("Goedel translation expects an IP formula, got `{0}`")]
    NotIp(String),
    #[error("unknown translation `{0}`")]
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{logic} prover expects a {logic} sequent")]
    WrongLogic { logic: crate::syntax::Logic },
    #[error("search exceeded the node cap of {0}")]
    NodeCapExceeded(u64),
    #[error("unknown prover `{0}`")]
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra needs at least one element")]
    Empty,
    #[error("table has wrong dimensions: {0}")]
    Shape(String),
    #[error("not a bounded lattice: {0}")]
    NotLattice(String),
    #[error("residuation fails at w={w}, x={x}, y={y}")]
    Residuation { w: usize, x: usize, y: usize },
    #[error("atom `{0}` has no assigned value")]
    Unassigned(String),
    #[error("value {value} for `{atom}` is outside a carrier of {size}")]
    OutOfRange {
        atom: String,
        value: usize,
        size: usize,
    },
    #[error("formula contains Box and cannot be evaluated in a Heyting algebra")]
    Modal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("model has no worlds")]
    NoWorlds,
    #[error("world {0} is listed twice")]
    DuplicateWorld(usize),
    #[error("world {0} is referenced but not declared")]
    UnknownWorld(usize),
    #[error("relation is not reflexive at world {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} R {1} and {1} R {2} but not {0} R {2}")]
    NotTransitive(usize, usize, usize),
}
