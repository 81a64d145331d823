//! Exact Groebner-basis machinery and its application to Mustafin
//! degenerations of projective space.

pub mod coeffs;
pub mod degeneration;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod mustafin;
pub mod poly;
pub mod specialize;
pub mod syzygy;

pub use error::{Error, Result};
