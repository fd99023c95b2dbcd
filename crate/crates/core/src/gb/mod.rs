//! Groebner bases in the free associative algebra and in the exterior
//! algebra, normal-word Hilbert series, order census and low Tor.

pub mod anick;
pub mod automaton;
pub mod census;
pub mod nc;
pub mod order;
pub mod skew;

pub use anick::{bar_tor, tor3_of_dual, AnickResolution};
pub use census::{permutation_census, CensusMode, CensusReport};
pub use nc::{hilbert_from_gb, nc_groebner, quadratic_gb_certificate, GbElement, NcGroebnerBasis};
pub use order::WordOrder;
pub use skew::{graded_groebner, skew_groebner, MonomialOrder};
