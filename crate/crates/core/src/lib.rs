//! Space-time fractional diffusion: Mittag-Leffler and Wright functions,
//! Lévy stable densities in the Feller parameterization, the Green function
//! by subordination, and trajectory simulation by parametric subordination.
//!
//! All evaluators are pure functions. Randomness flows only through
//! [`RngStream`], one stream per trajectory, so ensembles are reproducible
//! regardless of thread count.

pub mod error;
pub mod gamma;
pub mod quad;
pub mod sampling;
pub mod specfun;
pub mod stable;
pub mod stats;
pub mod subordination;
pub mod sum;
pub mod verify;
pub mod walker;

pub use error::{Error, Result};
pub use sampling::{feller_to_cms, sample_one_sided, sample_stable, CmsParams, RngStream};
pub use specfun::{mittag_leffler, wright_m, MlParams, WrightOrder};
pub use stable::{stable_pdf, stable_pdf_scaled, validate_params, StableParams, StableRegime};
pub use subordination::{green_function, tabulate_green, DensityGrid, DiffusionParams};
pub use verify::{verify_marginal, VerifyConfig, VerifyReport};
pub use walker::{simulate_walk, Snapshot, WalkConfig, WalkPath};
