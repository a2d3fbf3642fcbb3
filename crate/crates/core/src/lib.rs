//! Newton diagrams, Kouchnirenko nondegeneracy and Łojasiewicz exponents of
//! isolated hypersurface singularities, in exact arithmetic.

pub mod algebraic;
pub mod classify;
pub mod corpus;
pub mod curve;
pub mod diagram;
pub mod error;
pub mod exponent;
pub mod field;
pub mod germ;
pub mod lattice;
pub mod modp;
pub mod nondegeneracy;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod scalar;
pub mod upoly;

pub use error::{Error, Result};
pub use germ::{ExpVec, PolyGerm, SingularityCheck};
pub use parse::parse_germ;
pub use scalar::{GaussianRational, Rational};
