//! Finite computational category theory: finite categories, (op)fibrations,
//! indexed categories, the monoidal Grothendieck construction and the
//! fibrewise/global transfer of monoidal structure over cocartesian bases.

pub mod corr;
pub mod error;
pub mod fib;
pub mod fincat;
pub mod format;
pub mod gen;
pub mod groth;
pub mod indexed;
pub mod moncat;
pub mod report;
pub mod zoo;

pub use error::{Error, Result};
pub use report::LawReport;
