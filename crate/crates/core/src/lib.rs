//! Concentration bounds for the mean of a sample drawn without replacement
//! from a finite population of reals.
//!
//! The crate is split into four parts:
//!
//! - [`bounds`]: closed-form tail probabilities and confidence radii
//!   (Hoeffding, Bernstein, Hoeffding–Serfling, Bernstein–Serfling and the
//!   empirical Bernstein–Serfling radius), plus the scale factors they share.
//! - [`estimators`]: streaming prefix statistics (sample mean and the biased
//!   empirical variance).
//! - [`monte_carlo`]: seeded population generation, partial Fisher–Yates
//!   sampling and exceedance estimation.
//! - [`oracle`]: exact enumeration over tiny populations, used to check the
//!   martingale identities and the validity of every bound.

pub mod bounds;
pub mod error;
pub mod estimators;
pub mod monte_carlo;
pub mod oracle;

pub use error::{BoundError, Result};
