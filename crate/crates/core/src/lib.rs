//! Rota–Baxter type operators on the 2×2 matrix algebra over small finite fields.
//!
//! The crate checks operator identities exactly, enumerates all solutions of
//! an identity over `F_p` or `F_{p^2}`, sorts them into orbits under the
//! automorphism group, and produces the polynomial systems whose zero sets
//! are those solution sets.

pub mod catalog;
pub mod error;
pub mod field;
pub mod identities;
pub mod linalg;
pub mod literal;
pub mod matrix;
pub mod operator;
pub mod polysys;
pub mod search;
pub mod transforms;
pub mod unipoly;

pub use error::{Error, Result};
pub use field::{make_field, FieldElement, FieldSpec};
pub use identities::{check_identity, CheckResult, IdentityKind, Problem, Witness};
pub use matrix::{Mat2, MatrixClass, ProductKind};
pub use operator::Op4;
