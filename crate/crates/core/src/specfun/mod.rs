//! Special functions and quadrature.

mod gamma;
mod hyp2f1;
mod jacobi;
mod jet;
mod quadrature;

pub use gamma::{gamma, ln_factorial, ln_gamma_real, log_gamma, rgamma};
pub use hyp2f1::{hyp2f1, hyp2f1_jet, hyp2f1_with_error};
pub use jacobi::{jacobi_poly, jacobi_poly_finite_sum, jacobi_poly_jet};
pub use jet::Jet;
pub use quadrature::{gauss_legendre, make_mapped_rule, make_radial_rule, tail_estimate, Interval, QuadratureRule, XPoint};
