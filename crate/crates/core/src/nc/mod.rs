//! Free *-algebras on ordered generators with rewrite rules.

pub mod algebras;
mod checks;
pub mod poly;
pub mod system;

pub use algebras::{algebra, ExactSystem, ALGEBRA_NAMES};
pub use checks::{shipped_algebras, suite};
pub use poly::{product, NcPoly, Word};
pub use system::{
    qcommutation_factor, solve_combination, Generator, NcError, OverlapFailure, Reducer, RewriteRule, RewriteSystem,
    SystemBuilder,
};
