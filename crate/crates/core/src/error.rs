use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("{non_tree_arrows} non-tree arrows exceed the search bound {bound}")]
    SizeLimitExceeded {
        non_tree_arrows: usize,
        bound: usize,
    },
    #[error("subgraph is not a maximal weak tree")]
    NotMaximalWeakTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("unknown object {0}")]
    ObjectNotFound(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("invalid category table: {0}")]
    InvalidTable(String),
    #[error("invalid computad: {0}")]
    InvalidComputad(String),
    #[error("not a sub-computad: {0}")]
    NotSubcomputad(String),
    #[error("the free category on the base graph is infinite")]
    InfiniteFreeCategory,
    #[error("graph is not strictly increasing over the given tree")]
    NotStrictlyIncreasing,
    #[error("graph is not monotone over the given tree")]
    NotMonotone,
    #[error("invalid 2-cell word: {0}")]
    InvalidTwoCellWord(String),
    #[error("ambient computad has more than one object")]
    MultipleZeroCells,
    #[error("not an f.c.s. triple: {0}")]
    NotFcsTriple(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unresolved reference {name}")]
    UnresolvedReference { line: usize, name: String },
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
