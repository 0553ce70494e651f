//! Special solutions of the degenerate Garnier system G(1112) and the
//! monodromy data of the associated linear equation.

pub mod complex;
pub mod error;
pub mod garnier;
pub mod linalg;
pub mod matrix;
pub mod monodromy;
pub mod ode;
pub mod par;
pub mod pipeline;
pub mod series;
pub mod specfun;

pub use complex::C64;
pub use error::{Error, Result};
