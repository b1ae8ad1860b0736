#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod complex;
pub mod error;
pub mod expm;
pub mod hodge;
pub mod interp;
pub mod quadrature;
pub mod random;
pub mod shapes;
pub mod spectral;

pub use complex::{Cochain, ComplexDescription, OperatorMatrix, SimplicialComplex};
pub use error::{Error, Result};
