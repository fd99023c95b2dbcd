//! Graded modules over finite-dimensional algebras, minimal resolutions,
//! Tor, Ext and the series built from them.

pub mod ext;
pub mod minimal;
pub mod module;

pub use ext::{bass_from_resolution, bass_series, check_condition, ext_table, Condition, ExtTable};
pub use minimal::{minimal_resolution, module_betti, poincare_series, residue_betti, MinimalResolution};
pub use module::{injective_hull, matlis_dual, GradedModule, QuotientModule, Submodule};
