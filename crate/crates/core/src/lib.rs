//! Odd-order symmetric cubic tensors: construction, H-eigenstructure and
//! classification into positive semi-definite tensor classes.

pub mod error;
pub mod classify;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod spectra;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::{CubicTensor, MultiIndex};
