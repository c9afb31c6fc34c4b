//! Exact counting of nonattacking rider placements, Ehrhart quasipolynomial
//! fitting, and vertex denominators of the associated inside-out polytopes.

pub mod error;
pub mod exactmath;
pub mod model;
pub mod counting;
pub mod quasipoly;
pub mod polytope;
pub mod configs;

pub use error::{Error, Result};
