//! Crate-wide error type.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors reported by constructions and checks in this crate.
///
/// Precondition violations carry the offending datum so that callers can
/// name it in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Unknown or out-of-range simple type, e.g. `C2` or `E9`.
    InvalidAlgebra(String),
    /// Division by zero in exact scalar arithmetic.
    DivisionByZero,
    /// `root_of_unity(0)` requested.
    ZeroOrderRoot,
    /// An index referred past the end of a base or generator list.
    IndexOutOfRange { index: usize, len: usize },
    /// Dynkin step modulus must be at least 2.
    InvalidModulus(u32),
    /// A root set failed the closed/symmetric subsystem invariants.
    NotClosed(Vec<i64>),
    NotSymmetric(Vec<i64>),
    /// A subsystem root could not be expanded integrally over the base.
    BaseExpansion(Vec<i64>),
    /// An enumeration or search exceeded its configured budget.
    BudgetExceeded(&'static str),
    /// Characters are only enumerable for finite groups.
    GroupInfinite,
    /// The subgroup does not contain the torsion or is not saturated,
    /// so the quotient is not free.
    QuotientNotFree,
    /// A Poisson-bracket subgroup contains a nonzero torsion element.
    PsiHasTorsion,
    /// chi takes the value 1 on the image of this root.
    ChiValueOne(Vec<i64>),
    /// lambda vanishes on the image of this root.
    LambdaZero(Vec<i64>),
    /// A root of the complement has zero image in the quotient group.
    ZeroClassImage(Vec<i64>),
    /// A coefficient map is missing the class of this root.
    MissingCoefficient(Vec<i64>),
    /// Homomorphism values do not respect the generator relations.
    InconsistentHomomorphism,
    /// An element is not in the subgroup spanned by the given generators.
    NotInSubgroup,
    /// Operation requires a phi-bracket spec.
    NotPhiBracket,
    /// The two multivectors are not proportional (calibration failure).
    NotProportional,
    /// An ordering tag does not describe a permutation/sign assignment
    /// of the free quotient coordinates.
    InvalidOrderingTag,
    /// Explicit coefficient data violated class-constancy or antisymmetry.
    InconsistentCoefficients(Vec<i64>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidAlgebra(s) => write!(f, "invalid simple type: {s}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroOrderRoot => write!(f, "root of unity of order 0 requested"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range (length {len})")
            }
            Error::InvalidModulus(n) => write!(f, "dynkin step modulus {n} < 2"),
            Error::NotClosed(r) => write!(f, "root set not closed at {r:?}"),
            Error::NotSymmetric(r) => write!(f, "root set not symmetric at {r:?}"),
            Error::BaseExpansion(r) => write!(f, "root {r:?} does not expand over the base"),
            Error::BudgetExceeded(what) => write!(f, "budget exceeded: {what}"),
            Error::GroupInfinite => write!(f, "group is infinite"),
            Error::QuotientNotFree => write!(f, "quotient by the subgroup is not free"),
            Error::PsiHasTorsion => write!(f, "subgroup contains torsion"),
            Error::ChiValueOne(r) => write!(f, "chi equals 1 on the image of root {r:?}"),
            Error::LambdaZero(r) => write!(f, "lambda vanishes on the image of root {r:?}"),
            Error::ZeroClassImage(r) => write!(f, "root {r:?} has zero image in the quotient"),
            Error::MissingCoefficient(r) => {
                write!(f, "no coefficient for the class of root {r:?}")
            }
            Error::InconsistentHomomorphism => {
                write!(f, "homomorphism values do not respect generator relations")
            }
            Error::NotInSubgroup => write!(f, "element is not in the subgroup"),
            Error::NotPhiBracket => write!(f, "operation requires a phi-bracket spec"),
            Error::NotProportional => write!(f, "multivectors are not proportional"),
            Error::InvalidOrderingTag => write!(f, "invalid ordering tag"),
            Error::InconsistentCoefficients(r) => {
                write!(f, "coefficient data inconsistent at root {r:?}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
