//! Exact combinatorics of hypertoric varieties: polarized arrangements,
//! Gale duality, category O character data, loop arrangements, and refined
//! quasimap invariants computed by two independent routes.

pub mod arrangement;
pub mod category_o;
pub mod error;
pub mod fleet;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod loops;
pub mod lp;

pub use arrangement::{
    BasisVertex, ChamberFilter, Circuit, DistanceMode, PolarizedArrangement, Sign, SignVector,
    ValidationFailure, ValidationReport,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use invariants::{GeneratingSeries, TauPolynomial, WeightedSpace};
pub use lattice::IntMatrix;

/// Version string mixed into cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
