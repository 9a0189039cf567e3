use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invariant factor {position}: {detail}")]
    InvariantFactors { position: usize, detail: &'static str },
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
    #[error("homomorphism does not respect the source relations")]
    NotWellDefined,
    #[error("vector does not lie in the span of the cycles")]
    NotInSubgroup,
    #[error("boundary column {column} is not in the span of the cycles")]
    InconsistentSubquotient { column: usize },

    #[error("multiplication table is not square or has an entry out of range at ({row}, {col})")]
    TableShape { row: usize, col: usize },
    #[error("element 0 is not a two-sided identity (fails against element {element})")]
    NoIdentity { element: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: {g} * {n} * {g}^-1 leaves the subgroup")]
    NotNormal { n: usize, g: usize },

    #[error("action of element {element}: {detail}")]
    BadAction { element: usize, detail: &'static str },
    #[error("action is not a homomorphism: act({g}) act({h}) != act({g}*{h})")]
    ActionNotHomomorphism { g: usize, h: usize },

    #[error("cochain space too large: {entries} coordinates exceeds the limit of {limit}")]
    SizeLimit { entries: usize, limit: usize },
    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(usize),
    #[error("cochain of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },

    #[error("invalid group extension: {0}")]
    BadExtension(String),
    #[error("class is not invariant under the quotient: {0}")]
    NotInvariant(String),
    #[error("class does not restrict to zero on the normal subgroup")]
    NotSplitOnSubgroup,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("bidegree ({p}, {q}) is not supported")]
    UnsupportedBidegree { p: usize, q: usize },
}
