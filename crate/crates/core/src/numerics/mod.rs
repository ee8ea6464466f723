//! Shared numerical machinery: adaptive quadrature, bracketed root finding,
//! adaptive Runge-Kutta integration with complex state, and monotone cubic
//! interpolation for tabulated data.

pub mod interp;
pub mod ode;
pub mod quadrature;
pub mod roots;

pub use interp::Pchip;
pub use ode::{integrate_ode, OdeError, OdeSolution};
pub use quadrature::{integrate, integrate_complex, integrate_with_abs, QuadratureError};
pub use roots::{brent, scan_bracket, RootError};
