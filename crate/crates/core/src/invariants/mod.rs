//! Poincaré polynomials, quasimap weight data and the generating series
//! `Υ^ref`.

pub mod oracle;
pub mod pipeline;
pub mod poly;

pub use oracle::{bb_poincare, bb_poincare_with_probe, euler, Probe, WeightedCoord, WeightedSpace};
pub use pipeline::{
    ext_poincare, quasimap_weights, tilting_grdim_periodic, upsilon_formula, upsilon_oracle, verify,
    FormulaOptions, TwistVector, VerifyReport,
};
pub use poly::{GeneratingSeries, TauPolynomial};
