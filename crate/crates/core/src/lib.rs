//! Exact computations for partial-isometric representations of LCM
//! semigroups: LCM calculus, monomial operators on `ℓ²(P)`, the diagonal
//! algebra `B_P`, covariance checkers, symbolic crossed-product arithmetic and
//! the finite-level p-adic / Bunce-Deddens invariants.

pub mod bp;
pub mod covariance;
pub mod crossed;
pub mod error;
pub mod operators;
pub mod padic;
pub mod report;
pub mod semigroup;
pub mod window;

pub use bp::{qa_decomposition, sup_norm, BpFunction, NormMethod, ProjectionFamilyReport};
pub use covariance::{RepresentationKind, RepresentationSpec};
pub use crossed::{CrossedProductElement, SpanningMonomial, System};
pub use error::{Error, Result};
pub use operators::{BasisPoint, Carrier, Operator, Outcome, Space};
pub use report::{CheckReport, Status, Witness};
pub use semigroup::{Element, Ideal, Semigroup};
pub use window::WindowSpec;
