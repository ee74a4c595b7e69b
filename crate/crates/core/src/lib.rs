//! Type-B Tamari lattices: triangulations, bracket vectors, noncrossing
//! partitions, the `BD_n^S` quotients and their shellings.

pub mod bracket_b;
pub mod error;
pub mod exec;
pub mod lattice;
pub(crate) mod mesh;
pub mod noncross;
pub mod oracle;
pub mod polygon;
pub mod quotient_bds;
pub mod shelling;
pub mod tamari_a;
pub mod tri_b;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
