use thiserror::Error;

pub type Result<T, E = JetError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("dimension mismatch: expected (d={expected_dims}, r={expected_order}), found (d={found_dims}, r={found_order})")]
    DimensionMismatch {
        expected_dims: usize,
        expected_order: u32,
        found_dims: usize,
        found_order: u32,
    },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("series is not a unit: constant term is zero")]
    NotAUnit,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("cannot restrict from order {from} to higher order {to}")]
    OrderIncrease { from: u32, to: u32 },
    #[error("order {0} too low for this operation")]
    OrderTooLow(u32),
    #[error("order mismatch: high jet has order {high}, low jet has order {low}")]
    OrderMismatch { high: u32, low: u32 },
    #[error("base point is not on the scheme")]
    BasepointNotOnScheme,
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("initial matrix is singular")]
    SingularInitial,
    #[error("no flag chart has an invertible constant minor")]
    NoValidChart,
    #[error("no rational point of the polarization torsor found: {0}")]
    NoRationalFvPoint(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid Hodge data: {0}")]
    InvalidHodgeData(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl JetError {
    pub(crate) fn shape(expected: (usize, u32), found: (usize, u32)) -> Self {
        JetError::DimensionMismatch {
            expected_dims: expected.0,
            expected_order: expected.1,
            found_dims: found.0,
            found_order: found.1,
        }
    }
}
