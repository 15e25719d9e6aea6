use thiserror::Error;

/// Errors raised by the arithmetic, group, presentation and solver layers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring parameters: {0}")]
    InvalidParams(String),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("{value} is not a unit modulo {modulus}")]
    NonUnit { value: u64, modulus: u64 },
    #[error("r0 = {r0} is not a root of the polynomial modulo {p}")]
    NotARoot { r0: u64, p: u64 },
    #[error("derivative vanishes modulo {p} at r0 = {r0}")]
    SingularRoot { r0: u64, p: u64 },
    #[error("dimension or ring mismatch between matrices: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("reduction target {target} outside 1..={k}")]
    BadTarget { target: u32, k: u32 },
    #[error("cannot embed a {m}x{m} block into size {n}")]
    SizeError { m: usize, n: usize },
    #[error("matrix is outside H' (entry ({row}, {col}) violates the congruence)")]
    NotInHPrime { row: usize, col: usize },
    #[error("brute-force search space p^{exponent} exceeds the search budget")]
    SearchSpaceTooLarge { exponent: u64 },
    #[error("bad generators: {0}")]
    BadGenerators(String),
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("coset enumeration exceeded {max_cosets} cosets")]
    CosetOverflow { max_cosets: usize },
    #[error("malformed presentation: {0}")]
    BadPresentation(String),
    #[error("relator {relator} does not vanish modulo p^{level} on the base lifts")]
    BaseNotApproximateSection { relator: usize, level: u32 },
    #[error("no complement exists for n={n}, p={p}, k={k}")]
    NoComplement { n: usize, p: u64, k: u32 },
    #[error("a complement exists for n={n}, p={p}, k={k}; nothing to certify")]
    ComplementExists { n: usize, p: u64, k: u32 },
    #[error("n={n}, p={p}, k={k}: nonexistence is citation-only ({citation})")]
    NotCertifiable {
        n: usize,
        p: u64,
        k: u32,
        citation: String,
    },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
