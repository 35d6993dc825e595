//! Framed simple purely real Hurwitz numbers: ramification types, the
//! cut-and-join evolution, a combinatorial oracle, joint spectra and the
//! non-separating variant.
#![no_std]

extern crate alloc;

pub mod cutjoin;
pub mod error;
pub mod evolution;
pub mod linalg;
pub mod nonsep;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod series;
pub mod spectral;
pub mod types;

pub use error::{Error, Result};
pub use partition::Partition;
pub use poly::{PolyVector, UnsignedPoly};
pub use types::{Bidegree, RamificationType, Sign, UnsignedType, Var};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
