use thiserror::Error;

pub type Result<T> = std::result::Result<T, LatticeError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty poset")]
    Empty,
    #[error("element index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("cover relation is cyclic (involves element {0})")]
    CyclicCovers(usize),
    #[error("pair ({lower}, {upper}) is not a covering pair")]
    NotACover { lower: usize, upper: usize },
    #[error("not a lattice: elements {a} and {b} have no {kind}")]
    NotALattice { a: usize, b: usize, kind: &'static str },
    #[error("elements {a} and {b} are not in the order a <= b")]
    NotComparable { a: usize, b: usize },
    #[error("more than {cap} maximal chains")]
    ChainCapExceeded { cap: usize },
    #[error("{what} exceeds cap {cap}")]
    SizeCapExceeded { what: &'static str, cap: usize },
    #[error("lattice is not modular (witness x={0}, y={1}, z={2})")]
    NotModular(usize, usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a lattice homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("search cap {cap} exceeded ({what})")]
    SearchCapExceeded { what: &'static str, cap: usize },
    #[error("not a kernel: element {0} has no largest kernel element below it")]
    NotAKernel(usize),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
