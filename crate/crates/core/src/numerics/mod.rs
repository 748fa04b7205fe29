//! Special functions, quadrature, and the regularized summation engine.

pub mod cutoff;
pub mod hermite;
pub mod quadrature;
pub mod special;
pub mod summation;

pub use cutoff::{cutoff_weight, CutoffKind, CutoffSpec};
pub use hermite::{gauss_hermite_average, gauss_hermite_average_masked, gauss_hermite_rule};
pub use quadrature::{integrate, integrate_semi_infinite, QuadratureEstimate, QuadratureOptions};
pub use special::{polygamma2, zeta3};
pub use summation::{regulated_integral, regulated_sum, sum_minus_integral, SumEstimate, Summand};
