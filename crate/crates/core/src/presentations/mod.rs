//! Trivectors, presentations and finite graded algebras.

pub mod algebra;
pub mod catalog;
pub mod poly;
pub mod presentation;
pub mod trivector;

pub use algebra::{algebra_from_presentation, FiniteGradedAlgebra, Symmetry};
pub use poly::{Form, Kind, Monomial};
pub use presentation::{ExtQuotientPresentation, QuadraticPresentation};
pub use trivector::Trivector;
