use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("automorphism group of {label} has more than {cap} elements")]
    AutCap { label: String, cap: usize },
    #[error("automorphism search for {label} timed out after {secs:.1}s")]
    AutTimeout { label: String, secs: f64 },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not invariant under the automorphism")]
    NotInvariant,
    #[error("group has a nontrivial center")]
    NontrivialCenter,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("moduli differ: {0} vs {1}")]
    FieldMismatch(u64, u64),
    #[error("matrix is singular")]
    Singular,
    #[error("primary blocks share the polynomial {0}")]
    RepeatedBlock(String),
    #[error("search space cap exceeded: {0}")]
    SearchCap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
