//! Exact computations in the descent algebra and the Orlik-Solomon algebra of
//! small finite Coxeter groups, with verifiers for the identities relating
//! their characters.

pub mod algebra;
pub mod characters;
pub mod conjecture;
pub mod context;
pub mod coxeter;
pub mod descent;
pub mod error;
pub mod lemmas;
pub mod linalg;
pub mod os;
pub mod report;
pub mod scalars;
pub mod shapes;
pub mod typea;

pub use error::{Error, Result};
pub use scalars::{Cyclo, Rational};
