//! Mittag-Leffler and Wright special functions.

mod mittag_leffler;
mod wright;

pub use mittag_leffler::{mittag_leffler, mittag_leffler_complex, ml_relaxation, ml_spectral_density, MlParams};
pub use wright::{wright_f, wright_m, wright_m_density, wright_m_moment, WrightOrder};
