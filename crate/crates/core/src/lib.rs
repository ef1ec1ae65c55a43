//! Classification of dihedral group actions on compact Riemann surfaces up to
//! topological type, through Hurwitz generating systems and their homological invariants.

pub mod catalog;
pub mod cli;
pub mod classification;
pub mod error;
pub mod group;
pub mod hurwitz;
pub mod invariants;
pub mod moves;
pub(crate) mod packed;
pub mod verify;

pub use error::{Error, Result};
pub use group::{BinaryDihedralElement, ConjClassId, DihedralAut, DihedralElement};
pub use hurwitz::{HurwitzVector, NuType, SigmaSet};
