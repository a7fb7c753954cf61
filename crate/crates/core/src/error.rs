use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes across the crate. Construction errors mean the caller's data
/// violates an invariant (bad vertex, two-cycle, broken alternation); the
/// precondition variants mean an operation was asked about a graph outside its
/// stated domain. `TheoremCounterexample` is special: it is produced only when
/// an exhaustive search certifies that a guaranteed structure does not exist,
/// which would be a reportable research event rather than an ordinary error.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop arc at vertex {0} is not allowed in an oriented graph")]
    LoopArc(usize),
    #[error("arcs {u}->{v} and {v}->{u} both present; oriented graphs have no two-cycles")]
    TwoCycle { u: usize, v: usize },
    #[error("duplicate arc {u}->{v}")]
    DuplicateArc { u: usize, v: usize },
    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("trit code {code} out of range for n={n} (space holds {space} graphs)")]
    CodeOutOfRange { code: u128, n: usize, space: u128 },
    #[error("trit codes are only defined for n <= {max}, got n={n}")]
    CodeUnsupported { n: usize, max: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid anticycle: {0}")]
    InvalidCycle(String),
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(
        "no antipath or anticycle of length >= {need} found on a graph satisfying the \
         degree hypothesis (n={n}, k={k}); this contradicts the verified statement and \
         is a reportable research event"
    )]
    TheoremCounterexample { n: usize, k: u64, need: u64 },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            msg: msg.to_string(),
        }
    }
}
