use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid braid token {0:?}: expected a nonzero integer")]
    BadToken(String),

    #[error("braid letter 0 is not a generator")]
    ZeroLetter,

    #[error("generator {letter} out of range for a braid on {strands} strands")]
    LetterOutOfRange { letter: i64, strands: usize },

    #[error("a braid needs at least one strand")]
    NoStrands,

    #[error("unknown component id {0}")]
    UnknownComponent(usize),

    #[error("unknown crossing id {0}")]
    UnknownCrossing(usize),

    #[error("diagram has {crossings} crossings, above the cap of {cap}{hint}")]
    CrossingCap { crossings: usize, cap: usize, hint: &'static str },

    #[error("crossing {0} is already 1-resolved in this state")]
    NotAZeroEdge(usize),

    #[error("differential does not square to zero between degrees {0} and {1}")]
    NotAComplex(isize, isize),

    #[error("composition of the two maps is nonzero")]
    NonzeroComposition,

    #[error("matrix shapes do not compose: {0}")]
    Shape(String),

    #[error("unknown Frobenius algebra {0:?}")]
    UnknownFrobenius(String),

    #[error("matchings live in different rings (k = {0} and k = {1})")]
    RankMismatch(usize, usize),

    #[error("arc ring H^{k} exceeds the dimension guard (k <= {max})")]
    DimensionGuard { k: usize, max: usize },

    #[error("zig-zag line never reaches -1")]
    NeverNegative,

    #[error("homology is empty")]
    EmptyHomology,

    #[error("torus parameters out of range: {0}")]
    TorusRange(String),

    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
