pub mod algebra;
pub mod builder;
pub mod catalog;
pub mod csp;
pub mod dense;
pub mod error;
pub mod graphview;
pub mod lifting;
pub mod limitspec;
pub mod spectra;

pub use algebra::{IndexSet, MatrixBouquet, MatrixPolynomial, Word};
pub use error::{Error, ErrorKind, Result};
pub use lifting::{Lift, Signing};
