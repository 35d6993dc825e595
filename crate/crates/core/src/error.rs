use alloc::string::String;

use crate::types::{Bidegree, RamificationType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("partition parts must be positive")]
    ZeroPart,

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("series logarithm needs constant term 1 at u^0 and 0 at higher orders: {0}")]
    LogPrecondition(String),

    #[error("series exponential needs a vanishing constant term: {0}")]
    ExpPrecondition(String),

    #[error("operator image {image} escapes block {bidegree}")]
    BlockLeak {
        bidegree: Bidegree,
        image: RamificationType,
    },

    #[error("spectral analysis of block {bidegree} failed: {reason}")]
    Spectral { bidegree: Bidegree, reason: String },
}

pub type Result<T> = core::result::Result<T, Error>;
