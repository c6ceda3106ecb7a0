//! Exact computations with cages of hyperplanes: node enumeration,
//! interpolation checks, inscribed complete intersections, Viète cages and
//! worked examples over number fields.
//!
//! All arithmetic is exact, over the rationals or a simple algebraic
//! extension `Q[t]/(m(t))`.

pub mod cage;
pub mod demos;
pub mod error;
pub mod field;
pub mod inscribe;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod verify;
pub mod viete;

pub use cage::{Cage, MultiIndex, Node, NodeSelection};
pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, FieldElement, FieldKind, Rational};
pub use inscribe::{LambdaMatrix, TangentSubspace};
pub use linalg::{Matrix, SubspaceBasis};
pub use poly::{HomogPoly, LinearForm, Monomial};
pub use verify::{CheckReport, VerificationReport};
pub use viete::{CoefficientPoint, Configuration};
