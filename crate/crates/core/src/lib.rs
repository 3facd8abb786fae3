pub mod bits;
pub mod buildings;
pub mod field;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod generators;
pub mod gf2;
pub mod io;
pub mod minimization;
pub mod overlap;
pub mod rational;
pub mod spectral;
pub mod verify;
pub(crate) mod sweep;

pub use bits::Bits;
pub use complex::{Cochain, Complex, LinkView, WeightTable};
pub use error::{Error, Result};
pub use rational::{Rational, Value};
