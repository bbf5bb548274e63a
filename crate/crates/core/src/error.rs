use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("field modulus is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus,
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("polynomial is not constant")]
    NotConstant,
    #[error("polynomial is zero or constant")]
    ZeroOrConstant,

    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("prime search exhausted: {0}")]
    SearchExhausted(String),
    #[error("d = {d} does not divide q - 1 = {q_minus_1}")]
    InvalidD { d: u64, q_minus_1: u64 },
    #[error("reduced power is not a constant")]
    NonConstantResidue,
    #[error("not an r-th power modulo the prime")]
    NotAnRthPower,
    #[error("modulus is not a monic irreducible polynomial")]
    NotPrimePoly,

    #[error("determinant is not a unit")]
    NonUnitDeterminant,
    #[error("matrix is not in SL2 (determinant {0})")]
    NotSL2(String),
    #[error("word families do not match")]
    FamilyMismatch,
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("zero is not a unit")]
    ZeroUnit,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("no unit adjustment makes the factors squares")]
    NoUnitAdjustment,
    #[error("quintuple violates det M1 = 1")]
    QuintupleNotSL2,

    #[error("input does not have the required shape: {0}")]
    PreconditionShape(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("exponents are not coprime")]
    NotCoprimeExponents,
    #[error("certificate arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("expected 52 parameters, got {0}")]
    BadLength(usize),
    #[error("pair is not unimodular")]
    NotUnimodular,
    #[error("degree cap exceeded: predicted degree {predicted} > cap {cap}")]
    DegreeCapExceeded { predicted: u64, cap: u64 },
    #[error("stage check failed: {0}")]
    StageCheckFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch")]
    FieldMismatch,
}
