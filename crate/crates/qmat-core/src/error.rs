use alloc::string::String;

/// Which rank or cyclic-flat axiom failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    R1,
    R2,
    R3,
    Z0,
    Z1,
    Z2,
    Z3,
}

impl core::fmt::Display for Axiom {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            Axiom::R1 => "R1",
            Axiom::R2 => "R2",
            Axiom::R3 => "R3",
            Axiom::Z0 => "Z0",
            Axiom::Z1 => "Z1",
            Axiom::Z2 => "Z2",
            Axiom::Z3 => "Z3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("minimal polynomial is reducible over F_{0}")]
    Irreducibility(u32),
    #[error("omega has order {order}, expected {expected}")]
    Primitivity { order: u64, expected: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("subspace is zero")]
    Empty,
    #[error("first subspace is not contained in the second")]
    Containment,
    #[error("ground dimension {n} exceeds the enumeration limit {limit}")]
    Scale { n: u32, limit: u32 },
    #[error("base fields differ (q = {0} and q = {1})")]
    Field(u32, u32),
    #[error("matrix is singular")]
    Singular,
    #[error("axiom {axiom} violated: {detail}")]
    Axiom { axiom: Axiom, detail: String },
    #[error("cyclic flats do not reproduce the input: {0}")]
    Consistency(String),
    #[error("subspace is not a cyclic flat")]
    NotCyclicFlat,
    #[error("not a Whitney matrix: {0}")]
    NotWhitney(String),
    #[error("not a lattice: {0}")]
    Lattice(String),
    #[error("inconsistent labels: {0}")]
    Label(String),
    #[error("invalid condensation: {0}")]
    Condensation(String),
    #[error("block order: {0}")]
    Order(String),
    #[error("parse error: {0}")]
    Parse(String),
}
