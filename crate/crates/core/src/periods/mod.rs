//! Gaussian periods, period polynomials, discriminants, Gauss and Jacobi
//! sums, and the resolvent-based generator of balanced decompositions.

mod discriminant;
mod resolvent;
mod system;

pub use discriminant::{determinant, polynomial_discriminant, resultant, sylvester_matrix};
pub use resolvent::{
    canonical_associate, decomposition_from_report, decomposition_tuple, gauss_sum,
    gaussian_periods, jacobi_product, jacobi_sum, period_polynomial, resolvent_power,
    resolvent_quotient, Associate, ResolventReport,
};
pub use system::{primitive_root, PeriodSystem};

/// Default upper bounds for interactive use.
pub const DEFAULT_MAX_P: u64 = 200;
pub const DEFAULT_MAX_E: u64 = 13;
