//! Verification laboratory for the Appell F2 system in its reducible regime:
//! series evaluators, exact annihilation certificates, twisted-cycle
//! intersection and circuit matrices, the Eisenstein specialization, period
//! integrals on the associated genus-2 curves, and the branched-cover census.

pub mod error;
pub mod par;
pub mod covers;
pub mod diffops;
pub mod eisenstein;
pub mod identities;
pub mod matrix;
pub mod monodromy;
pub mod param;
pub mod periods;
pub mod quad;
pub mod report;
pub mod series;
pub mod truncated;

pub use error::{Error, Result};
