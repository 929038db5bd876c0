//! Flat frames of a connection on an affine chart, evaluated on jets.
//!
//! A chart carries a frame `v^1..v^m` with `∇v^i = Σ_j c_ij ⊗ v^j`, `c_ij = Σ_l c_{ij,l} dz_l`.
//! A flat basis `b^k = Σ_i f_ik v^i` then satisfies
//!
//! ```text
//! ∂_l f_jk = -Σ_i f_ik c_{ij,l}        (matrix form: ∂_l f = A_l f, A_l = -c_lᵀ)
//! ```
//!
//! Files give `c` in the `∇v^i = Σ_j c_ij v^j` convention; the minus sign is introduced here.
//!
//! [`beta`] computes the order-`r` jet of the flat frame along a jet `σ` from the derivative
//! table ([`XiTable`]) evaluated at the base point. [`series_oracle`] solves the pulled-back
//! system degree by degree instead; the two share nothing beyond the series ring.

mod beta;
mod chart;
mod matrix_jet;
mod oracle;
mod xi;

pub use beta::{beta, check_right_equivariance, flatness_residual, is_flat_along};
pub use chart::ConnectionChart;
pub use matrix_jet::{matrixjet_invert, MatrixJet};
pub use oracle::series_oracle;
pub use xi::{build_xi, xi_along_word, XiTable};
