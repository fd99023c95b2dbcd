//! Exact computations with graded skew-commutative Gorenstein algebras and
//! their Koszul duals.

pub mod betti;
pub mod error;
pub mod field;
pub mod gb;
pub mod identities;
pub mod linalg;
pub mod duality;
pub mod presentations;
pub mod resolution;
pub mod report;
pub mod series;
pub mod suite;

pub use error::{Error, Result};

/// Runs `$body` with `$f` bound to a reference to the field of
/// characteristic `$c`, returning early with the error for a bad one.
#[macro_export]
macro_rules! with_field {
    ($c:expr, |$f:ident| $body:expr) => {
        match $crate::field::FieldChoice::from_characteristic($c)? {
            $crate::field::FieldChoice::Rational => {
                let $f = &$crate::field::Rationals;
                $body
            }
            $crate::field::FieldChoice::Prime(p) => {
                let $f = &p;
                $body
            }
        }
    };
}
