//! Exact computations with jets.
//!
//! The crate is organised bottom-up:
//!
//! - [`jet_algebra`]: truncated multivariate power series `Q[t_1..t_d]/(t)^{r+1}` and jets of
//!   affine space.
//! - [`poly`]: sparse polynomials and rational functions over `Q`, with a small text format.
//! - [`jet_scheme`]: defining equations of jet spaces of affine schemes, jet prolongation of
//!   polynomial maps, membership and non-degeneracy of jets.
//! - [`connection`]: connection charts, the derivative table of flat frames and the jet map
//!   `beta`, together with an independent power-series ODE solver.
//! - [`hodge`]: flag-variety charts, the first Hodge-Riemann relation, the polarization torsor
//!   and the period-map jet `alpha`.
//! - [`examples`]: worked connections (the Legendre family and small synthetic charts).
//!
//! All arithmetic is exact over `Q`. Floating point only appears in the optional positivity
//! probe of [`hodge::positivity`].

pub mod connection;
pub mod error;
pub mod examples;
pub mod hodge;
pub mod jet_algebra;
pub mod jet_scheme;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod rational;

pub use error::{JetError, Result};
pub use rational::Rational;
