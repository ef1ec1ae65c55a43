use crate::error::{Error, Result};
use crate::group::dihedral::{check_modulus, elements, DihedralElement};

pub const MAX_TABLE_N: u32 = 127;

/// Multiplication and inversion tables of `D_n` on element indices.
#[derive(Clone, Debug)]
pub struct DnTable {
    n: u32,
    order: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl DnTable {
    pub fn new(n: u32) -> Result<Self> {
        check_modulus(n)?;
        if n > MAX_TABLE_N {
            return Err(Error::precondition(format!("n = {n} exceeds the table limit {MAX_TABLE_N}")));
        }
        let all: Vec<_> = elements(n).collect();
        let order = all.len();
        let mut mul = vec![0u8; order * order];
        for a in &all {
            for b in &all {
                mul[a.index() * order + b.index()] = (*a * *b).index() as u8;
            }
        }
        let inv = all.iter().map(|a| a.inverse().index() as u8).collect();
        Ok(Self { n, order, mul, inv })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn conj(&self, g: u8, a: u8) -> u8 {
        self.mul(self.mul(g, a), self.inv(g))
    }

    #[inline]
    pub fn comm(&self, a: u8, b: u8) -> u8 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn product<I: IntoIterator<Item = u8>>(&self, items: I) -> u8 {
        items.into_iter().fold(0, |acc, a| self.mul(acc, a))
    }

    pub fn element(&self, index: u8) -> DihedralElement {
        DihedralElement::from_index(self.n, index as usize)
    }

    /// Index of the identity.
    pub const IDENTITY: u8 = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_agrees_with_elements() {
        let t = DnTable::new(6).unwrap();
        for a in 0..12u8 {
            for b in 0..12u8 {
                assert_eq!(t.element(t.mul(a, b)), t.element(a) * t.element(b));
            }
            assert_eq!(t.mul(a, t.inv(a)), DnTable::IDENTITY);
        }
        assert!(DnTable::new(128).is_err());
    }
}
