//! Second homology of `D_n` relative to a union of conjugacy classes, and the
//! Schur class of a Hurwitz vector computed in the binary dihedral cover.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{check_modulus, BinaryDihedralElement, DihedralElement};
use crate::hurwitz::{HurwitzVector, NuType, SigmaSet};

/// An element of `Z/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SchurClass {
    pub bit: u8,
}

impl SchurClass {
    pub const ZERO: SchurClass = SchurClass { bit: 0 };
    pub const ONE: SchurClass = SchurClass { bit: 1 };
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for SchurClass {
    type Output = SchurClass;

    fn add(self, rhs: SchurClass) -> SchurClass {
        SchurClass { bit: self.bit ^ rhs.bit }
    }
}

/// Order of `H_2(D_n, Z)`.
pub fn h2_order(n: u32) -> Result<u32> {
    check_modulus(n)?;
    Ok(if n.is_multiple_of(2) { 2 } else { 1 })
}

/// Order of `H_2(D_n, Z)` modulo the classes of commuting pairs meeting `sigma`.
pub fn h2_sigma_order(n: u32, sigma: &SigmaSet) -> Result<u32> {
    check_modulus(n)?;
    if sigma.n() != n {
        return Err(Error::ModulusMismatch(n, sigma.n()));
    }
    if n % 2 == 1 || sigma.has_reflection() || sigma.has_central() {
        Ok(1)
    } else {
        Ok(2)
    }
}

fn require_even_and_trivial(v: &HurwitzVector) -> Result<()> {
    if v.n() % 2 == 1 {
        return Err(Error::precondition(format!("H_2(D_{}) is trivial for odd n", v.n())));
    }
    let ev = v.evaluate();
    if !ev.is_identity() {
        return Err(Error::precondition(format!("evaluation is {ev}, not the identity")));
    }
    Ok(())
}

fn lifted_product(v: &HurwitzVector, section: impl Fn(&DihedralElement) -> BinaryDihedralElement) -> SchurClass {
    let n = v.n();
    let mut acc = BinaryDihedralElement::identity(n);
    for c in v.c() {
        acc = acc * section(c);
    }
    for pair in v.ab().chunks(2) {
        acc = acc * BinaryDihedralElement::lift(&pair[0]).commutator(&BinaryDihedralElement::lift(&pair[1]));
    }
    debug_assert!(acc.project().is_identity());
    SchurClass { bit: (acc != BinaryDihedralElement::identity(n)) as u8 }
}

/// `∏ lift(c_j) · ∏ [lift(a_i), lift(b_i)]` in the binary dihedral group, as a bit.
///
/// Uses the lift `x^i y^j -> ξ^i η^j` with `0 <= i < n`.
pub fn schur_lift_product(v: &HurwitzVector) -> Result<SchurClass> {
    require_even_and_trivial(v)?;
    Ok(lifted_product(v, BinaryDihedralElement::lift))
}

/// Lift of a rotation `x^s` that sends inverse pairs to inverse pairs: `ξ^s` for
/// `s < n/2` and `ξ^(s+n)` for `s > n/2`.
pub fn symmetric_rotation_lift(e: &DihedralElement) -> BinaryDihedralElement {
    let (n, s) = (e.n(), e.rot());
    debug_assert!(e.is_rotation() && 2 * s != n);
    if 2 * s < n {
        BinaryDihedralElement::xi(n, s as i64)
    } else {
        BinaryDihedralElement::xi(n, s as i64 + n as i64)
    }
}

/// Lifted product with branch values lifted by [`symmetric_rotation_lift`].
///
/// Defined when `n` is even and every branch value is a non-central rotation. Since
/// the lift is compatible with conjugation, the bit is constant on orbits of the
/// mapping class group, also between vectors whose branch values differ.
pub fn sigma_adapted_class(v: &HurwitzVector) -> Result<SchurClass> {
    require_even_and_trivial(v)?;
    let sigma = NuType::of_vector(v)?.support();
    if !sigma.only_noncentral_rotations() {
        return Err(Error::precondition(format!("sigma {sigma} is not made of non-central rotation classes")));
    }
    Ok(lifted_product(v, symmetric_rotation_lift))
}

/// Difference of Schur classes of two vectors with identical branch values.
pub fn relative_h2_class(v1: &HurwitzVector, v2: &HurwitzVector) -> Result<SchurClass> {
    if !v1.same_shape(v2) {
        return Err(Error::precondition("vectors have different shapes"));
    }
    if v1.c() != v2.c() {
        return Err(Error::precondition("branch values differ entrywise"));
    }
    require_even_and_trivial(v1)?;
    require_even_and_trivial(v2)?;
    let sigma = NuType::of_vector(v1)?.support();
    if h2_sigma_order(v1.n(), &sigma)? != 2 {
        return Err(Error::precondition(format!("H_2,sigma is trivial for sigma = {sigma}")));
    }
    Ok(schur_lift_product(v1)? + schur_lift_product(v2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ConjClassId, DihedralAut};
    use crate::hurwitz::{enumerate_hs, DEFAULT_BUDGET};

    fn v(s: &str) -> HurwitzVector {
        s.parse().unwrap()
    }

    #[test]
    fn h2_values() {
        assert_eq!(h2_order(3).unwrap(), 1);
        assert_eq!(h2_order(4).unwrap(), 2);
        assert_eq!(h2_order(12).unwrap(), 2);
        for n in 3..=10 {
            assert_eq!(h2_sigma_order(n, &SigmaSet::new(n, []).unwrap()).unwrap(), h2_order(n).unwrap());
        }
    }

    #[test]
    fn h2_sigma_examples() {
        let s = |cs: &[ConjClassId]| SigmaSet::new(6, cs.iter().copied()).unwrap();
        assert_eq!(h2_sigma_order(6, &s(&[ConjClassId::Rotation(1)])).unwrap(), 2);
        assert_eq!(h2_sigma_order(6, &s(&[ConjClassId::ReflEven])).unwrap(), 1);
        assert_eq!(h2_sigma_order(6, &s(&[ConjClassId::CentralRotation])).unwrap(), 1);
        assert!(SigmaSet::new(6, [ConjClassId::Identity]).is_err());
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_lift_product(&v("n=4 g=2 c=[] ab=[y,e,x,e]")).unwrap(), SchurClass::ZERO);
        assert_eq!(schur_lift_product(&v("n=4 g=2 c=[] ab=[y,x^2,x,e]")).unwrap(), SchurClass::ONE);
        assert_eq!(schur_lift_product(&v("n=4 g=2 c=[x,x] ab=[y,x,x,e]")).unwrap(), SchurClass::ZERO);
        assert!(schur_lift_product(&v("n=3 g=2 c=[] ab=[y,e,x,e]")).is_err());
        assert!(schur_lift_product(&v("n=4 g=1 c=[] ab=[y,x]")).is_err());
    }

    #[test]
    fn relative_examples() {
        let v1 = v("n=4 g=2 c=[x,x] ab=[y,x,x,e]");
        let v2 = v("n=4 g=2 c=[x,x] ab=[y,x^3,x,e]");
        assert_eq!(relative_h2_class(&v1, &v2).unwrap(), SchurClass::ONE);
        assert_eq!(relative_h2_class(&v1, &v1).unwrap(), SchurClass::ZERO);
        let e1 = v("n=4 g=2 c=[] ab=[y,e,x,e]");
        let e2 = v("n=4 g=2 c=[] ab=[y,x^2,x,e]");
        assert_eq!(relative_h2_class(&e1, &e2).unwrap(), SchurClass::ONE);
        let other = v("n=4 g=2 c=[x^3,x^3] ab=[y,x,x,e]");
        assert!(relative_h2_class(&v1, &other).is_err());
        let refl = v("n=4 g=2 c=[y,y] ab=[y,e,x,e]");
        assert!(relative_h2_class(&refl, &refl).is_err());
    }

    #[test]
    fn section_cocycle_takes_central_values() {
        for n in 2..=8 {
            for g in crate::group::elements(n) {
                for h in crate::group::elements(n) {
                    let lift = BinaryDihedralElement::lift;
                    let cocycle = lift(&(g * h)) * lift(&h).inverse() * lift(&g).inverse();
                    assert!(cocycle.project().is_identity());
                }
            }
        }
    }

    #[test]
    fn symmetric_lift_commutes_with_inversion() {
        for n in [4u32, 6, 8] {
            for s in 1..n {
                if 2 * s == n {
                    continue;
                }
                let e = DihedralElement::rotation(n, s as i64);
                assert_eq!(symmetric_rotation_lift(&e.inverse()), symmetric_rotation_lift(&e).inverse());
                assert_eq!(symmetric_rotation_lift(&e).project(), e);
            }
        }
    }

    #[test]
    fn etale_class_is_aut_invariant() {
        for w in enumerate_hs(4, 2, 0, None, DEFAULT_BUDGET).unwrap() {
            let bit = schur_lift_product(&w).unwrap();
            for f in DihedralAut::all(4).unwrap() {
                assert_eq!(schur_lift_product(&w.apply_aut(&f)).unwrap(), bit);
            }
        }
    }
}
