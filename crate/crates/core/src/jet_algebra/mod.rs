//! The truncated power-series ring `A^d_r = Q[t_1..t_d]/(t_1..t_d)^{r+1}` and jets of affine
//! space.
//!
//! [`Series`] is generic over its coefficient ring so that the same code expands jets with
//! rational coefficients ([`TruncatedSeries`]) and generic jets whose coefficients are the jet
//! coordinates themselves (`Series<Polynomial>`).

mod jet_point;
mod multi_index;
mod series;

pub use jet_point::JetPoint;
pub use multi_index::{monomial_count, MultiIndex};
pub use series::{series_compose, Coefficient, Series, TruncatedSeries};
