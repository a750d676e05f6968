//! Polyanalytic Gaussian RBF kernels and the operator calculus around them.
//!
//! The crate is organized as:
//!
//! - [`specfun`]: Hermite / Laguerre / complex Ito-Hermite polynomials and
//!   the Christoffel-Darboux and Mehler combinations;
//! - [`quad`]: deterministic Gauss-Hermite rules on the line and plane, the
//!   Fock and RBF inner products, and the reproducing-integral evaluator;
//! - [`kernels`]: closed forms for the Fock, polyanalytic Fock, Gaussian RBF
//!   and polyanalytic RBF kernel families, plus their Zaremba-Bergman series;
//! - [`polygauss`]: exact coefficient algebra for `p(z, conj z) e^{-z^2/g^2}`
//!   and the Landau-type operator structure;
//! - [`transforms`]: Hermite-window convolutions, Bargmann transforms and the
//!   Weyl operator families;
//! - [`mlkit`]: Gram matrices, PSD reports and kernel ridge regression over
//!   the real-vector kernel.

pub mod error;
pub mod kernels;
pub mod mlkit;
pub mod polygauss;
pub mod quad;
pub mod specfun;
pub mod transforms;

pub use error::{Error, Result};
pub use kernels::{KernelFamily, KernelSpec, KernelValue};
pub use num_complex::Complex64;
