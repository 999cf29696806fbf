//! Exact enumeration of noncrossing partition lattices and block
//! factorizations of Coxeter elements in well-generated reflection groups,
//! together with the closed formulas they are checked against.

pub mod closedform;
pub mod cli;
pub mod error;
pub mod facto;
pub mod groups;
pub mod ncp;

pub use error::{Error, Result};
pub use groups::{build_group, Budget, ClassId, Element, Group, GroupSpec};
