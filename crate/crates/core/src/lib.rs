//! Finite-dimensional commutative algebras over exact fields, the lattice of
//! intermediate subalgebras of an extension, and decision procedures for
//! pointwise minimality.

pub mod algebra;
pub mod canon;
pub mod catalog;
pub mod error;
pub mod field;
pub mod harness;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod options;
pub mod pointwise;
pub mod poly;
pub mod random;
pub mod report;
pub mod ringstruct;
pub mod verdict;

pub use algebra::{Algebra, Element, Subalgebra, Subspace};
pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, Scalar};
pub use options::Options;
pub use verdict::Truth;
