pub mod cell;
pub mod dimension;
pub mod error;
pub mod exact;
pub mod harness;
mod linalg;
pub mod lp;
pub mod neighbors;
pub mod polytope;
pub mod relations;
