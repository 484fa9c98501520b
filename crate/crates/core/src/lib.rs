//! Block classification for cyclotomic Hecke and Schur algebras of type
//! `G(r,1,n)`: multipartition combinatorics, abacus displays, residues,
//! Jantzen coefficients and the comparison of the two block relations.

pub mod abacus;
pub mod blocks;
pub mod cli;
pub mod error;
pub mod jantzen;
pub mod modulus;
pub mod partition;
pub mod residue;

pub use error::{Error, Result};
pub use modulus::Modulus;
pub use partition::{Multipartition, Node, Partition, Universe};
pub use residue::Regime;
