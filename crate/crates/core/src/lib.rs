//! Finite combinatorics of binary-tree orders: similarity types, vip level
//! orders, their exhaustive census, diagonalization maps and Rado-graph
//! tree codings.

pub mod census;
pub mod collapse;
pub mod diagonal;
pub mod error;
pub mod partition;
pub mod rado;
pub mod treecore;
pub mod viporder;

pub use error::{Error, Result};
pub use treecore::{Node, NodeSet};
