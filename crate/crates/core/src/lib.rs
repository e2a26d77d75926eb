//! Exact representation theory of finite-dimensional algebras over prime fields.

pub mod error;
pub mod linalg;
pub mod par;
pub mod seed;
pub mod spec_file;

pub use error::{Error, Result};
pub mod algebra;
pub mod ar;
pub mod claims;
pub mod cm_auslander;
pub mod gorenstein;
pub mod module;
