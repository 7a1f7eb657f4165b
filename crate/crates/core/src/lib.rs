//! Exact construction and classification of Rota–Baxter operators on
//! nilpotent evolution algebras of maximal nilindex.

pub mod canonical;
pub mod cli;
pub mod error;
pub mod evolution;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod rb;
pub mod scalar;
pub mod weight0;
pub mod weight1;

pub use error::{Error, Result};
pub use scalar::Scalar;
