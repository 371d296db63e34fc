//! Exact computations with the quiver algebras of decreasing sequences, their
//! DG box thickening, the higher multiplication on vertices and the
//! bimodule realizing it on complexes of projectives.

pub mod algebra;
pub mod bimodule;
pub mod catun;
pub mod complexes;
pub mod error;
pub mod json;
pub mod kzero;
pub mod linalg;
pub mod path;
pub mod quiver;
pub mod rings;
pub mod suite;

pub use error::{Error, Result};
