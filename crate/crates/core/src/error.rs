use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("invalid generator token `{0}`")]
    InvalidToken(String),
    #[error("duplicate generator token `{0}`")]
    DuplicateToken(String),
    #[error("rule has an empty left-hand side")]
    EmptyLhs,
    #[error("duplicate rule `{0}`")]
    DuplicateRule(String),
    #[error("letter index {0} is outside the alphabet")]
    ForeignLetter(u32),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("rule lhs does not occur at position {position}")]
    FactorMismatch { position: usize },
    #[error("no normal form after {steps} rewriting steps (nontermination suspected); last word: {last}")]
    StepCapExceeded { steps: usize, last: String, trace: Vec<(usize, usize)> },

    #[error("letter `{0}` has no rank in the precedence")]
    UnrankedLetter(String),
    #[error("letter `{0}` is not in the restricted alphabet")]
    ExcludedLetter(String),
    #[error("word length {len} exceeds the cap {cap}")]
    LengthCap { len: usize, cap: usize },

    #[error("cannot orient equation {lhs} = {rhs}")]
    Unorientable { lhs: String, rhs: String },
    #[error("completion diverging: rule cap {0} reached")]
    RuleCap(usize),

    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("invalid id `{0}`: ids may not contain whitespace, `.` or `^`")]
    InvalidId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge `{0}` joins a vertex to itself; declare it as a loop")]
    SelfEdge(String),
    #[error("not a tree after loop removal: edge `{0}` closes a cycle")]
    NotATree(String),
    #[error("graph is disconnected: vertex `{0}` is unreachable")]
    Disconnected(String),
    #[error("vertex `{vertex}` has genus {genus}; only genus >= 1 is supported")]
    UnsupportedGenus { vertex: String, genus: i64 },
    #[error(
        "unsupported gluing on `{id}`: matrix ({k} {n}; {k2} {n2}) is not of the form (1 n; 0 1)"
    )]
    UnsupportedGluing { id: String, k: i64, n: i64, k2: i64, n2: i64 },
    #[error("vertex `{vertex}` is {actual}, expected {expected}")]
    WrongColor { vertex: String, expected: &'static str, actual: &'static str },
    #[error("expected a two-vertex graph with one edge and no loops")]
    NotTwoBundle,

    #[error("word is not irreducible")]
    Reducible,
    #[error("block parse failed at position {0}")]
    BlockParse(usize),
    #[error("count overflow at length {0}")]
    CountOverflow(usize),
    #[error("search radius {radius} exceeds the limit {limit}")]
    RadiusTooLarge { radius: usize, limit: usize },
}
