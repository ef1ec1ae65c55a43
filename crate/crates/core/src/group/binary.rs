use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::group::dihedral::{check_modulus, DihedralElement};

/// The element `ξ^pow η^eta` of the binary dihedral group of order `4n`,
/// with `ξ^(2n) = 1`, `η^2 = ξ^n` and `η ξ η^-1 = ξ^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryDihedralElement {
    n: u32,
    pow: u32,
    eta: bool,
}

impl BinaryDihedralElement {
    pub fn new(n: u32, pow: u32, eta: bool) -> Result<Self> {
        check_modulus(n)?;
        if pow >= 2 * n {
            return Err(Error::parse(format!("exponent {pow} out of range for 2n = {}", 2 * n)));
        }
        Ok(Self { n, pow, eta })
    }

    pub fn identity(n: u32) -> Self {
        Self { n, pow: 0, eta: false }
    }

    pub fn xi(n: u32, p: i64) -> Self {
        Self { n, pow: p.rem_euclid(2 * n as i64) as u32, eta: false }
    }

    pub fn eta(n: u32) -> Self {
        Self { n, pow: 0, eta: true }
    }

    /// The central element `ξ^n`.
    pub fn central(n: u32) -> Self {
        Self::xi(n, n as i64)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn pow(&self) -> u32 {
        self.pow
    }

    pub fn has_eta(&self) -> bool {
        self.eta
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        let m = 2 * self.n as u64;
        let q = if self.eta { m - other.pow as u64 } else { other.pow as u64 };
        let twist = if self.eta && other.eta { self.n as u64 } else { 0 };
        let pow = ((self.pow as u64 + q + twist) % m) as u32;
        Ok(Self { n: self.n, pow, eta: self.eta ^ other.eta })
    }

    pub fn inverse(&self) -> Self {
        if self.eta {
            Self::xi(self.n, self.pow as i64 + self.n as i64).with_eta()
        } else {
            Self::xi(self.n, -(self.pow as i64))
        }
    }

    fn with_eta(mut self) -> Self {
        self.eta = true;
        self
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other * self.inverse() * other.inverse()
    }

    /// Image under the projection onto `D_n`.
    pub fn project(&self) -> DihedralElement {
        DihedralElement::raw(self.n, self.pow % self.n, self.eta)
    }

    /// The canonical set-theoretic lift `x^i y^j -> ξ^i η^j` with `0 <= i < n`.
    pub fn lift(e: &DihedralElement) -> Self {
        Self { n: e.n(), pow: e.rot(), eta: e.refl() }
    }

    pub fn elements(n: u32) -> impl Iterator<Item = Self> {
        (0..2 * n).flat_map(move |p| [false, true].map(|eta| Self { n, pow: p, eta }))
    }
}

impl Mul for BinaryDihedralElement {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("multiplying elements of different binary dihedral groups")
    }
}

impl fmt::Display for BinaryDihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.pow, self.eta) {
            (0, false) => write!(f, "1"),
            (0, true) => write!(f, "eta"),
            (p, false) => write!(f, "xi^{p}"),
            (p, true) => write!(f, "xi^{p}*eta"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dihedral::elements;

    #[test]
    fn defining_relations() {
        for n in 2..=9 {
            let xi = BinaryDihedralElement::xi(n, 1);
            let eta = BinaryDihedralElement::eta(n);
            let one = BinaryDihedralElement::identity(n);
            assert_eq!(xi.pow_i(2 * n as i64), one);
            assert_eq!(eta * eta, BinaryDihedralElement::central(n));
            assert_eq!(eta * xi * eta.inverse(), xi.inverse());
        }
    }

    #[test]
    fn commutator_values() {
        let n = 4;
        let eta = BinaryDihedralElement::eta(n);
        for l in 0..8 {
            let xi = BinaryDihedralElement::xi(n, l);
            assert_eq!(xi.commutator(&eta), BinaryDihedralElement::xi(n, 2 * l));
        }
        let xi2 = BinaryDihedralElement::xi(n, 2);
        assert_eq!(eta.commutator(&xi2), BinaryDihedralElement::xi(n, 4));
    }

    #[test]
    fn projection_is_a_homomorphism_with_kernel_of_order_two() {
        for n in 2..=8 {
            let all: Vec<_> = BinaryDihedralElement::elements(n).collect();
            assert_eq!(all.len(), 4 * n as usize);
            for a in &all {
                assert_eq!(*a * a.inverse(), BinaryDihedralElement::identity(n));
                for b in &all {
                    assert_eq!((*a * *b).project(), a.project() * b.project());
                }
            }
            let kernel: Vec<_> = all.iter().filter(|a| a.project().is_identity()).collect();
            assert_eq!(kernel, vec![&BinaryDihedralElement::identity(n), &BinaryDihedralElement::central(n)]);
            for e in elements(n) {
                assert_eq!(BinaryDihedralElement::lift(&e).project(), e);
            }
        }
    }

    impl BinaryDihedralElement {
        fn pow_i(&self, k: i64) -> Self {
            (0..k).fold(Self::identity(self.n), |acc, _| acc * *self)
        }
    }
}
