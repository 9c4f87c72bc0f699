//! Exact graded algebra over free associative algebras.
//!
//! The crate computes quotient dimensions of homogeneous two-sided ideals in
//! F{x1,…,xd}, checks the basic growth inequality and the exponential lower
//! bound that follows from it, and builds generator sequences whose ideals
//! make every element of positive degree nilpotent.

pub mod combinat;
pub mod error;
pub mod field;
pub mod freealg;
pub mod graded;
pub mod gscore;
pub mod symfun;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, Scalar};
pub use freealg::{Ambient, Monomial, Polynomial};
