pub mod casimir;
pub mod catalog;
pub mod transform;
pub mod coeff;
pub mod diamond;
pub mod error;
pub mod freealg;
pub mod linalg;
pub mod relations;
pub mod syntax;

pub use coeff::{Coeff, ParamPoly, RatFunc, Rational, Sym};
pub use error::{Error, Result};
pub use freealg::{DegreeMap, NCPoly, Word};
