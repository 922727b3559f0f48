use thiserror::Error;

/// Errors raised by group, S-ring and permutation-group operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic factor must be at least 1, got {0}")]
    BadFactor(i64),
    #[error("group order {order} exceeds the bound {bound}")]
    OrderTooLarge { order: u128, bound: usize },
    #[error("malformed group literal `{0}`")]
    BadGroupLiteral(String),
    #[error("malformed element literal `{0}`")]
    BadElementLiteral(String),
    #[error("element does not belong to the group")]
    MismatchedGroups,
    #[error("{0} endomorphism candidates exceed the search bound")]
    AutGroupTooLarge(u128),
    #[error("images do not define an automorphism")]
    NotAnAutomorphism,
    #[error("subgroup is not contained in the upper subgroup of the section")]
    NotASubgroupOf,
    #[error("basis does not present the quotient")]
    BadBasis,
    #[error("classes do not partition the group")]
    NotPartition,
    #[error("identity is not a singleton class")]
    IdentityNotSingleton,
    #[error("class {class} is not closed under inversion")]
    NotInverseClosed { class: usize },
    #[error("product of classes {x} and {y} takes different multiplicities at {g} and {h}")]
    ProductNotClosed { x: usize, y: usize, g: usize, h: usize },
    #[error("subgroup is not a union of basic sets")]
    HNotASubgroup,
    #[error("section is not formed by S-ring subgroups")]
    SectionNotASection,
    #[error("{m} is not coprime to the group order")]
    NotCoprime { m: i64 },
    #[error("{p} does not divide the group order")]
    PrimeNotDivisor { p: u64 },
    #[error("S-rings induced on the section differ")]
    IncompatibleSection,
    #[error("automorphism set does not close to a subgroup within the bound")]
    NotASubgroup,
    #[error("permutation is not a bijection")]
    NotBijective,
    #[error("degree {0} exceeds the cap")]
    DegreeTooLarge(usize),
    #[error("first group is not a subgroup of the second")]
    NotSubgroup,
    #[error("group does not contain all right translations")]
    DoesNotContainRegular,
    #[error("group is not of the form E4 x C_n with n a prime power or a product of two odd primes")]
    WrongGroupShape,
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("catalog line {line}: {source}")]
    CatalogLine { line: usize, source: Box<Error> },
    #[error("invalid parameter: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
