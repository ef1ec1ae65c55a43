//! Arithmetic in the dihedral group `D_n`, its binary dihedral cover and its automorphisms.

mod automorphism;
mod binary;
mod dihedral;
mod finite;
mod table;

pub use automorphism::{automorphism_permutations, automorphisms_brute_force, totient, DihedralAut};
pub use binary::BinaryDihedralElement;
pub use dihedral::{check_modulus, elements, gcd, generates, subgroup_generated, ConjClassId, DihedralElement, SubgroupInfo};
pub use finite::TableGroup;
pub use table::{DnTable, MAX_TABLE_N};
