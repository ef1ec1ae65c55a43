use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The element `x^rot y^refl` of the dihedral group of order `2n`.
///
/// Elements are ordered lexicographically by `(rot, refl)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DihedralElement {
    n: u32,
    rot: u32,
    refl: bool,
}

pub fn check_modulus(n: u32) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidModulus(n))
    } else {
        Ok(())
    }
}

impl DihedralElement {
    pub fn new(n: u32, rot: u32, refl: bool) -> Result<Self> {
        check_modulus(n)?;
        if rot >= n {
            return Err(Error::parse(format!("rotation exponent {rot} out of range for n = {n}")));
        }
        Ok(Self { n, rot, refl })
    }

    pub(crate) const fn raw(n: u32, rot: u32, refl: bool) -> Self {
        Self { n, rot, refl }
    }

    pub fn identity(n: u32) -> Self {
        Self::raw(n, 0, false)
    }

    pub fn x(n: u32) -> Self {
        Self::rotation(n, 1)
    }

    pub fn y(n: u32) -> Self {
        Self::raw(n, 0, true)
    }

    /// `x^i`, with `i` reduced modulo `n`.
    pub fn rotation(n: u32, i: i64) -> Self {
        Self::raw(n, i.rem_euclid(n as i64) as u32, false)
    }

    /// `x^i y`, with `i` reduced modulo `n`.
    pub fn reflection(n: u32, i: i64) -> Self {
        Self::raw(n, i.rem_euclid(n as i64) as u32, true)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rot(&self) -> u32 {
        self.rot
    }

    pub fn refl(&self) -> bool {
        self.refl
    }

    pub fn is_identity(&self) -> bool {
        self.rot == 0 && !self.refl
    }

    pub fn is_rotation(&self) -> bool {
        !self.refl
    }

    /// Position in the list `e, y, x, xy, x^2, ...`, which is the element order.
    pub fn index(&self) -> usize {
        2 * self.rot as usize + self.refl as usize
    }

    pub fn from_index(n: u32, index: usize) -> Self {
        debug_assert!(index < 2 * n as usize);
        Self::raw(n, (index / 2) as u32, index % 2 == 1)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        let n = self.n as u64;
        let c = if self.refl { n - other.rot as u64 } else { other.rot as u64 };
        let rot = ((self.rot as u64 + c) % n) as u32;
        Ok(Self::raw(self.n, rot, self.refl ^ other.refl))
    }

    pub fn inverse(&self) -> Self {
        if self.refl {
            *self
        } else {
            Self::raw(self.n, (self.n - self.rot) % self.n, false)
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        if self.refl {
            if k.rem_euclid(2) == 0 {
                Self::identity(self.n)
            } else {
                *self
            }
        } else {
            let r = (self.rot as i128 * k as i128).rem_euclid(self.n as i128);
            Self::raw(self.n, r as u32, false)
        }
    }

    /// `g a g^-1`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        *g * *self * g.inverse()
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other * self.inverse() * other.inverse()
    }

    pub fn order(&self) -> u32 {
        if self.refl {
            2
        } else {
            self.n / gcd(self.n, self.rot)
        }
    }

    pub fn class(&self) -> ConjClassId {
        ConjClassId::of(self)
    }

    /// Image in the abelianization, written as `(i mod 2, j)` for `n` even and `(0, j)` for `n` odd.
    pub fn abelianization(&self) -> (u8, u8) {
        let i = if self.n.is_multiple_of(2) { (self.rot % 2) as u8 } else { 0 };
        (i, self.refl as u8)
    }

    pub fn parse(n: u32, s: &str) -> Result<Self> {
        check_modulus(n)?;
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::parse(format!("cannot parse element {s:?}"));
        if s == "e" || s == "1" {
            return Ok(Self::identity(n));
        }
        let (rot_part, refl) = if let Some(head) = s.strip_suffix("*y") {
            (head, true)
        } else if s == "y" {
            ("", true)
        } else {
            (s.as_str(), false)
        };
        let rot = if rot_part.is_empty() {
            0
        } else if rot_part == "x" {
            1
        } else if let Some(exp) = rot_part.strip_prefix("x^") {
            exp.parse::<u32>().map_err(|_| bad())?
        } else {
            return Err(bad());
        };
        Self::new(n, rot, refl)
    }
}

impl Mul for DihedralElement {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("multiplying elements of different dihedral groups")
    }
}

impl PartialOrd for DihedralElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DihedralElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.rot, self.refl).cmp(&(other.n, other.rot, other.refl))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rot, self.refl) {
            (0, false) => write!(f, "e"),
            (0, true) => write!(f, "y"),
            (1, false) => write!(f, "x"),
            (1, true) => write!(f, "x*y"),
            (r, false) => write!(f, "x^{r}"),
            (r, true) => write!(f, "x^{r}*y"),
        }
    }
}

impl Serialize for DihedralElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All `2n` elements in increasing order.
pub fn elements(n: u32) -> impl Iterator<Item = DihedralElement> {
    (0..2 * n as usize).map(move |i| DihedralElement::from_index(n, i))
}

pub fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Conjugacy class labels, in the fixed total order used by invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConjClassId {
    Identity,
    /// `{x^i, x^-i}` with `0 < i < n/2`.
    Rotation(u32),
    /// `{x^(n/2)}`, only for `n` even.
    CentralRotation,
    /// `{x^(2k) y}`, only for `n` even.
    ReflEven,
    /// `{x^(2k+1) y}`, only for `n` even.
    ReflOdd,
    /// All reflections, only for `n` odd.
    ReflAll,
}

impl ConjClassId {
    pub fn of(e: &DihedralElement) -> Self {
        let n = e.n;
        if e.refl {
            if n % 2 == 1 {
                ConjClassId::ReflAll
            } else if e.rot.is_multiple_of(2) {
                ConjClassId::ReflEven
            } else {
                ConjClassId::ReflOdd
            }
        } else if e.rot == 0 {
            ConjClassId::Identity
        } else if 2 * e.rot == n {
            ConjClassId::CentralRotation
        } else {
            ConjClassId::Rotation(e.rot.min(n - e.rot))
        }
    }

    pub fn is_valid(&self, n: u32) -> bool {
        match *self {
            ConjClassId::Identity => true,
            ConjClassId::Rotation(i) => i >= 1 && 2 * i < n,
            ConjClassId::CentralRotation | ConjClassId::ReflEven | ConjClassId::ReflOdd => n.is_multiple_of(2),
            ConjClassId::ReflAll => n % 2 == 1,
        }
    }

    pub fn is_reflection(&self) -> bool {
        matches!(self, ConjClassId::ReflEven | ConjClassId::ReflOdd | ConjClassId::ReflAll)
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, ConjClassId::Rotation(_) | ConjClassId::CentralRotation)
    }

    /// The rotation exponent `i` with `0 < i <= n/2`, for rotation classes.
    pub fn rotation_label(&self, n: u32) -> Option<u32> {
        match *self {
            ConjClassId::Rotation(i) => Some(i),
            ConjClassId::CentralRotation => Some(n / 2),
            _ => None,
        }
    }

    pub fn representative(&self, n: u32) -> DihedralElement {
        match *self {
            ConjClassId::Identity => DihedralElement::identity(n),
            ConjClassId::Rotation(i) => DihedralElement::rotation(n, i as i64),
            ConjClassId::CentralRotation => DihedralElement::rotation(n, (n / 2) as i64),
            ConjClassId::ReflEven | ConjClassId::ReflAll => DihedralElement::y(n),
            ConjClassId::ReflOdd => DihedralElement::reflection(n, 1),
        }
    }

    /// Order of any element of the class.
    pub fn order(&self, n: u32) -> u32 {
        self.representative(n).order()
    }

    pub fn members(&self, n: u32) -> Vec<DihedralElement> {
        elements(n).filter(|e| ConjClassId::of(e) == *self).collect()
    }

    /// All classes of `D_n` in increasing order, starting with the identity.
    pub fn all(n: u32) -> Vec<ConjClassId> {
        let mut out = vec![ConjClassId::Identity];
        out.extend((1..).take_while(|i| 2 * i < n).map(ConjClassId::Rotation));
        if n.is_multiple_of(2) {
            out.extend([ConjClassId::CentralRotation, ConjClassId::ReflEven, ConjClassId::ReflOdd]);
        } else {
            out.push(ConjClassId::ReflAll);
        }
        out
    }

    pub fn nontrivial(n: u32) -> Vec<ConjClassId> {
        Self::all(n).into_iter().skip(1).collect()
    }

    pub fn parse(n: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        let id = match s {
            "e" => ConjClassId::Identity,
            "central" => ConjClassId::CentralRotation,
            "refl_even" => ConjClassId::ReflEven,
            "refl_odd" => ConjClassId::ReflOdd,
            "refl" => ConjClassId::ReflAll,
            _ => {
                let i = s
                    .strip_prefix("rot")
                    .and_then(|t| t.parse::<u32>().ok())
                    .ok_or_else(|| Error::parse(format!("unknown class label {s:?}")))?;
                ConjClassId::Rotation(i)
            }
        };
        if !id.is_valid(n) {
            return Err(Error::parse(format!("class {s:?} does not exist for n = {n}")));
        }
        Ok(id)
    }
}

impl fmt::Display for ConjClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjClassId::Identity => write!(f, "e"),
            ConjClassId::Rotation(i) => write!(f, "rot{i}"),
            ConjClassId::CentralRotation => write!(f, "central"),
            ConjClassId::ReflEven => write!(f, "refl_even"),
            ConjClassId::ReflOdd => write!(f, "refl_odd"),
            ConjClassId::ReflAll => write!(f, "refl"),
        }
    }
}

impl Serialize for ConjClassId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// True when the elements generate all of `D_n`.
pub fn generates(n: u32, gens: &[DihedralElement]) -> bool {
    let mut g = n;
    let mut first_refl: Option<u32> = None;
    for e in gens {
        if e.refl {
            match first_refl {
                None => first_refl = Some(e.rot),
                Some(r) => g = gcd(g, (e.rot + n - r) % n),
            }
        } else {
            g = gcd(g, e.rot);
        }
    }
    first_refl.is_some() && g == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupInfo {
    pub n: u32,
    pub elements: Vec<DihedralElement>,
    pub is_all: bool,
    /// Every element is a rotation.
    pub is_rotations: bool,
    /// `[R : H ∩ R]` where `R` is the rotation subgroup.
    pub index_in_rotations: u32,
}

impl SubgroupInfo {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: &DihedralElement) -> bool {
        self.elements.binary_search(e).is_ok()
    }
}

/// Closure of `gens` under multiplication.
pub fn subgroup_generated(n: u32, gens: &[DihedralElement]) -> Result<SubgroupInfo> {
    check_modulus(n)?;
    for g in gens {
        if g.n != n {
            return Err(Error::ModulusMismatch(n, g.n));
        }
    }
    let mut seen = vec![false; 2 * n as usize];
    let mut frontier = vec![DihedralElement::identity(n)];
    seen[0] = true;
    while let Some(a) = frontier.pop() {
        for g in gens {
            let b = a * *g;
            if !seen[b.index()] {
                seen[b.index()] = true;
                frontier.push(b);
            }
        }
    }
    let elements: Vec<_> = elements(n).filter(|e| seen[e.index()]).collect();
    let rotations = elements.iter().filter(|e| e.is_rotation()).count() as u32;
    Ok(SubgroupInfo {
        n,
        is_all: elements.len() == 2 * n as usize,
        is_rotations: rotations as usize == elements.len(),
        index_in_rotations: n / rotations,
        elements,
    })
}
