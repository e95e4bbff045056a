//! Exact computation on polynomial maps over finite fields.
//!
//! The crate revolves around one question: given a polynomial map
//! `f: GF(q)^n -> GF(q)^n` that is neither constant nor surjective, how many
//! values does it miss? The image is computed exhaustively and the missed
//! count is checked against the exact lower bound `n(q-1)/deg(f)` and its
//! subfield refinement `n*h*(q-1)/deg_l(f)`, where `deg_l` is the degree of
//! the map after restriction of scalars to a subfield `l` of index `h`.
//!
//! Main pieces:
//!
//! * [`field`]: arithmetic in `GF(p^m)`, subfields, Frobenius, norms, and
//!   the vector-space decomposition of a field over a subfield.
//! * [`poly`]: sparse multivariate polynomials: evaluation, reduction
//!   modulo `x_i^q - x_i`, degrees, parsing, interpolation from value tables.
//! * [`polymap`]: vector-valued maps, exhaustive images, fiber statistics.
//! * [`degrees`]: base-q digit sums and the digit-sum formula for the
//!   subfield degree, with an independent restriction-of-scalars oracle.
//! * [`bounds`]: the lower bounds, per-subfield verification reports,
//!   truncated elementary-symmetric series checks, and exhaustive sweeps.
//! * [`extremal`]: generators for the two extremal families that meet the
//!   bound with equality.
//!
//! Everything is exact: residue arithmetic for field elements and integer
//! rationals for bound comparisons. No floating point anywhere.

pub mod bounds;
pub mod degrees;
pub mod extremal;
pub mod field;
mod linalg;
pub mod poly;
pub mod polymap;
pub mod selftest;

pub use bounds::{
    best_subfield_bound, elementary_symmetric_series, exhaustive_bound_sweep,
    fiber_series_identity_holds, subfield_bound, verify_bound, wan_bound, BoundReport, BoundScan,
    SeriesCheck, SweepMode, SweepOptions, SweepReport, Violation,
};
pub use degrees::{check_digit_bound, deg_l_oracle, deg_l_via_digits, digit_sum};
pub use extremal::{norm_example, one_missing_example, ExampleArtifact, Verification};
pub use field::{FieldElement, FieldSpec, SubfieldEmbedding, SubfieldIso};
pub use poly::{interpolate, point_at, point_index, Degree, MultiPoly};
pub use polymap::{ImageResult, PolyMap};

/// Default cap on exhaustively enumerated points (2^24).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus is reducible (divisible by {factor})")]
    ReducibleModulus { factor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("element has {got} coefficients, field degree is {expected}")]
    ElementLength { expected: usize, got: usize },
    #[error("{q} is not a subfield order of GF({p}^{m})")]
    InvalidSubfieldOrder { q: u64, p: u64, m: usize },
    #[error("element does not lie in the requested subfield")]
    NotInSubfield,
    #[error("the given elements are not a basis over the subfield")]
    SingularBasis,
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable x{index} out of range (nvars = {nvars})")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("value table has {got} entries, expected {expected}")]
    IncompleteTable { expected: u64, got: u64 },
    #[error("enumeration of {points} points exceeds cap {cap}")]
    DomainTooLarge { points: u128, cap: u64 },
    #[error("polynomial is not reduced: exponent {exponent} >= field order {order}")]
    NotReduced { exponent: u64, order: u64 },
    #[error("the zero polynomial has no digit-sum degree")]
    ZeroPolynomial,
    #[error("degree must be positive (map reduces to a constant)")]
    ZeroDegree,
    #[error("sweep of {required} maps exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("digit base {0} is invalid (must be >= 2)")]
    InvalidBase(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("no non-constant map over GF({q})^{n} misses exactly one value")]
    NoSuchExample { q: u64, n: usize },
    #[error("invalid field spec \"{0}\"")]
    FieldSpecFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
