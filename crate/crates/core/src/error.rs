use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` is not a leaf")]
    NotALeaf(String),
    #[error("grafted tree has root `{found}` but is assigned to leaf `{leaf}`")]
    RootMismatch { leaf: String, found: String },
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("edge `{0}` is not an inner edge")]
    NotInner(String),
    #[error("vertex `{0}` does not admit an outer face")]
    NotRemovable(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("bound overflow: {0}")]
    BoundOverflow(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("vertex rule is not monotone: {0}")]
    NotMonotone(String),
    #[error("map is not injective: {0}")]
    NotInjective(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("not an elementary face or degeneracy: {0}")]
    NotElementary(String),
    #[error("subobjects live in different ambients: {0}")]
    MismatchedAmbient(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
