use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::dihedral::{check_modulus, elements, gcd, ConjClassId, DihedralElement};

/// The automorphism `x -> x^a`, `y -> x^b y` of `D_n` for `n >= 3`, with `gcd(a, n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DihedralAut {
    n: u32,
    a: u32,
    b: u32,
}

impl DihedralAut {
    pub fn new(n: u32, a: i64, b: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidModulus(n));
        }
        let a = a.rem_euclid(n as i64) as u32;
        let b = b.rem_euclid(n as i64) as u32;
        if gcd(a, n) != 1 {
            return Err(Error::precondition(format!("{a} is not a unit modulo {n}")));
        }
        Ok(Self { n, a, b })
    }

    pub fn identity(n: u32) -> Self {
        Self { n, a: 1, b: 0 }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// All `n φ(n)` automorphisms, ordered by `(a, b)`.
    pub fn all(n: u32) -> Result<Vec<Self>> {
        if n < 3 {
            return Err(Error::InvalidModulus(n));
        }
        Ok((1..n)
            .filter(|&a| gcd(a, n) == 1)
            .flat_map(|a| (0..n).map(move |b| Self { n, a, b }))
            .collect())
    }

    pub fn apply(&self, e: &DihedralElement) -> DihedralElement {
        debug_assert_eq!(e.n(), self.n);
        let n = self.n as u64;
        let rot = (self.a as u64 * e.rot() as u64 + if e.refl() { self.b as u64 } else { 0 }) % n;
        DihedralElement::raw(self.n, rot as u32, e.refl())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n as u64;
        Self {
            n: self.n,
            a: ((self.a as u64 * other.a as u64) % n) as u32,
            b: ((self.a as u64 * other.b as u64 + self.b as u64) % n) as u32,
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n as i64;
        let a_inv = (1..n).find(|&t| (t * self.a as i64) % n == 1).expect("a is a unit");
        Self { n: self.n, a: a_inv as u32, b: (-(a_inv * self.b as i64)).rem_euclid(n) as u32 }
    }

    pub fn apply_class(&self, c: ConjClassId) -> ConjClassId {
        self.apply(&c.representative(self.n)).class()
    }

    /// Action on element indices, as used by the orbit engine.
    pub fn permutation(&self) -> Vec<u8> {
        elements(self.n).map(|e| self.apply(&e).index() as u8).collect()
    }
}

impl fmt::Display for DihedralAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x -> x^{}, y -> x^{}*y)", self.a, self.b)
    }
}

/// All automorphisms of `D_n` found by testing every pair of generator images.
///
/// Each automorphism is returned as its images of `(x, y)`.
pub fn automorphisms_brute_force(n: u32) -> Result<Vec<(DihedralElement, DihedralElement)>> {
    check_modulus(n)?;
    let all: Vec<_> = elements(n).collect();
    let mut out = Vec::new();
    for &xi in &all {
        for &yi in &all {
            let image = |e: &DihedralElement| xi.pow(e.rot() as i64) * yi.pow(e.refl() as i64);
            let images: Vec<_> = all.iter().map(image).collect();
            let mut seen = vec![false; all.len()];
            for im in &images {
                seen[im.index()] = true;
            }
            if seen.iter().any(|s| !s) {
                continue;
            }
            let hom = all.iter().all(|p| all.iter().all(|q| image(&(*p * *q)) == images[p.index()] * images[q.index()]));
            if hom {
                out.push((xi, yi));
            }
        }
    }
    Ok(out)
}

/// Permutations of element indices induced by every automorphism of `D_n`.
pub fn automorphism_permutations(n: u32) -> Result<Vec<Vec<u8>>> {
    if n >= 3 {
        return Ok(DihedralAut::all(n)?.iter().map(DihedralAut::permutation).collect());
    }
    Ok(automorphisms_brute_force(n)?
        .into_iter()
        .map(|(xi, yi)| elements(n).map(|e| (xi.pow(e.rot() as i64) * yi.pow(e.refl() as i64)).index() as u8).collect())
        .collect())
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u32
}
