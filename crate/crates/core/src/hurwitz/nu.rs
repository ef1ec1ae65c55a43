use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{automorphism_permutations, check_modulus, ConjClassId, DihedralElement};
use crate::hurwitz::HurwitzVector;

/// Number of branch values in each conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NuType {
    n: u32,
    counts: BTreeMap<ConjClassId, u32>,
}

impl NuType {
    pub fn new(n: u32, counts: impl IntoIterator<Item = (ConjClassId, u32)>) -> Result<Self> {
        check_modulus(n)?;
        let mut map = BTreeMap::new();
        for (class, k) in counts {
            if class == ConjClassId::Identity {
                return Err(Error::precondition("the identity class cannot carry branch values"));
            }
            if !class.is_valid(n) {
                return Err(Error::precondition(format!("class {class} does not exist for n = {n}")));
            }
            if k > 0 {
                *map.entry(class).or_insert(0) += k;
            }
        }
        Ok(Self { n, counts: map })
    }

    pub fn empty(n: u32) -> Self {
        Self { n, counts: BTreeMap::new() }
    }

    pub fn of_elements(n: u32, c: &[DihedralElement]) -> Result<Self> {
        if c.iter().any(DihedralElement::is_identity) {
            return Err(Error::precondition("identity among branch values"));
        }
        Self::new(n, c.iter().map(|e| (e.class(), 1)))
    }

    pub fn of_vector(v: &HurwitzVector) -> Result<Self> {
        Self::of_elements(v.n(), v.c())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn count(&self, class: ConjClassId) -> u32 {
        self.counts.get(&class).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ConjClassId, u32)> + '_ {
        self.counts.iter().map(|(c, k)| (*c, *k))
    }

    pub fn support(&self) -> SigmaSet {
        SigmaSet { n: self.n, classes: self.counts.keys().copied().collect() }
    }

    pub fn reflection_count(&self) -> u32 {
        self.iter().filter(|(c, _)| c.is_reflection()).map(|(_, k)| k).sum()
    }

    /// Rotation labels `0 < r <= n/2` with multiplicity, in increasing order.
    pub fn rotation_labels(&self) -> Vec<u32> {
        self.iter()
            .filter_map(|(c, k)| c.rotation_label(self.n).map(|r| std::iter::repeat_n(r, k as usize)))
            .flatten()
            .collect()
    }

    /// True when the class sum vanishes in the abelianization.
    pub fn is_admissible(&self) -> bool {
        let (mut i, mut j) = (0u32, 0u32);
        for (class, k) in self.iter() {
            let (ci, cj) = class.representative(self.n).abelianization();
            i += ci as u32 * k;
            j += cj as u32 * k;
        }
        i % 2 == 0 && j % 2 == 0
    }

    /// Image under an automorphism given as a permutation of element indices.
    pub fn permuted(&self, perm: &[u8]) -> Self {
        let counts = self.iter().map(|(c, k)| {
            let image = DihedralElement::from_index(self.n, perm[c.representative(self.n).index()] as usize);
            (image.class(), k)
        });
        Self::new(self.n, counts).expect("automorphisms preserve classes")
    }

    pub fn aut_orbit(&self) -> BTreeSet<NuType> {
        automorphism_permutations(self.n)
            .expect("modulus validated at construction")
            .iter()
            .map(|p| self.permuted(p))
            .collect()
    }

    /// Smallest member of the orbit under automorphisms.
    pub fn orbit_representative(&self) -> Self {
        self.aut_orbit().into_iter().next().expect("orbit contains self")
    }

    pub fn parse(n: u32, s: &str) -> Result<Self> {
        let mut counts = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (label, k) = item.split_once(':').ok_or_else(|| Error::parse(format!("expected class:count, got {item:?}")))?;
            let k = k.trim().parse::<u32>().map_err(|_| Error::parse(format!("bad count in {item:?}")))?;
            counts.push((ConjClassId::parse(n, label)?, k));
        }
        Self::new(n, counts)
    }

    /// All class functions with total `d` on the non-identity classes of `D_n`.
    pub fn all_with_total(n: u32, d: u32) -> Vec<NuType> {
        let classes = ConjClassId::nontrivial(n);
        let mut out = Vec::new();
        let mut current = vec![0u32; classes.len()];
        fn rec(i: usize, left: u32, n: u32, classes: &[ConjClassId], current: &mut Vec<u32>, out: &mut Vec<NuType>) {
            if i + 1 == classes.len() {
                current[i] = left;
                out.push(NuType::new(n, classes.iter().copied().zip(current.iter().copied())).unwrap());
                return;
            }
            for k in 0..=left {
                current[i] = k;
                rec(i + 1, left - k, n, classes, current, out);
            }
        }
        if classes.is_empty() {
            return out;
        }
        rec(0, d, n, &classes, &mut current, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for NuType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, k)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}:{k}")?;
        }
        Ok(())
    }
}

impl Serialize for NuType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.iter().map(|(c, k)| (c.to_string(), k)))
    }
}

/// The set of conjugacy classes met by the branch values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SigmaSet {
    #[serde(skip)]
    n: u32,
    classes: BTreeSet<ConjClassId>,
}

impl SigmaSet {
    pub fn new(n: u32, classes: impl IntoIterator<Item = ConjClassId>) -> Result<Self> {
        check_modulus(n)?;
        let classes: BTreeSet<_> = classes.into_iter().collect();
        for c in &classes {
            if *c == ConjClassId::Identity || !c.is_valid(n) {
                return Err(Error::precondition(format!("class {c} is not allowed in a sigma set for n = {n}")));
            }
        }
        Ok(Self { n, classes })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn classes(&self) -> &BTreeSet<ConjClassId> {
        &self.classes
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, c: ConjClassId) -> bool {
        self.classes.contains(&c)
    }

    pub fn has_reflection(&self) -> bool {
        self.classes.iter().any(ConjClassId::is_reflection)
    }

    pub fn has_central(&self) -> bool {
        self.contains(ConjClassId::CentralRotation)
    }

    pub fn only_noncentral_rotations(&self) -> bool {
        self.classes.iter().all(|c| matches!(c, ConjClassId::Rotation(_)))
    }

    /// All subsets of the non-identity classes of `D_n`.
    pub fn all_subsets(n: u32) -> Vec<SigmaSet> {
        let classes = ConjClassId::nontrivial(n);
        (0u64..1 << classes.len())
            .map(|mask| SigmaSet {
                n,
                classes: classes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| *c).collect(),
            })
            .collect()
    }
}

impl fmt::Display for SigmaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

pub fn nu_type(v: &HurwitzVector) -> Result<NuType> {
    NuType::of_vector(v)
}

pub fn sigma_set(v: &HurwitzVector) -> Result<SigmaSet> {
    Ok(NuType::of_vector(v)?.support())
}

pub fn is_admissible(nu: &NuType) -> bool {
    nu.is_admissible()
}

/// Orders of non-identity elements of `D_n`: divisors of `n` above 1, and 2.
pub fn is_valid_order(n: u32, m: u32) -> bool {
    m > 1 && (n.is_multiple_of(m) || m == 2)
}

pub fn valid_orders(n: u32) -> Vec<u32> {
    (2..=n).filter(|&m| is_valid_order(n, m)).collect()
}

/// Genus `g` of a `D_n`-cover with quotient genus `g'` and branching orders `orders`.
pub fn hurwitz_genus(n: u32, g_prime: u32, orders: &[u32]) -> Result<u64> {
    check_modulus(n)?;
    for &m in orders {
        if !is_valid_order(n, m) {
            return Err(Error::precondition(format!("{m} is not the order of an element of D_{n}")));
        }
    }
    let order = 2 * n as i128;
    let twice: i128 = order * (2 * g_prime as i128 - 2) + orders.iter().map(|&m| order - order / m as i128).sum::<i128>();
    if twice % 2 != 0 {
        return Err(Error::precondition(format!("2(g-1) = {twice} is odd")));
    }
    let g = twice / 2 + 1;
    if g < 0 {
        return Err(Error::precondition(format!("2(g-1) = {twice} gives negative genus")));
    }
    Ok(g as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nu_examples() {
        let v: HurwitzVector = "n=3 g=0 c=[y,x*y,x] ab=[]".parse().unwrap();
        let nu = nu_type(&v).unwrap();
        assert_eq!(nu.count(ConjClassId::ReflAll), 2);
        assert_eq!(nu.count(ConjClassId::Rotation(1)), 1);
        assert_eq!(nu.to_string(), "rot1:1,refl:2");
        let w: HurwitzVector = "n=6 g=0 c=[x,x^5] ab=[]".parse().unwrap();
        assert_eq!(nu_type(&w).unwrap().to_string(), "rot1:2");
        let e: HurwitzVector = "n=6 g=2 c=[] ab=[y,e,x,e]".parse().unwrap();
        assert!(sigma_set(&e).unwrap().is_empty());
        let bad: HurwitzVector = "n=6 g=0 c=[e,x] ab=[]".parse().unwrap();
        assert!(nu_type(&bad).is_err());
    }

    #[test]
    fn admissibility_examples() {
        assert!(NuType::parse(5, "refl:2").unwrap().is_admissible());
        assert!(!NuType::parse(5, "refl:3").unwrap().is_admissible());
        assert!(!NuType::parse(6, "refl_even:1,refl_odd:1").unwrap().is_admissible());
        assert!(NuType::parse(6, "rot1:1,refl_even:1,refl_odd:1").unwrap().is_admissible());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(hurwitz_genus(3, 0, &[2, 2, 3, 3]).unwrap(), 2);
        assert_eq!(hurwitz_genus(3, 2, &[]).unwrap(), 7);
        assert!(hurwitz_genus(3, 0, &[2, 2, 2]).is_err());
        assert!(hurwitz_genus(3, 0, &[4]).is_err());
        assert_eq!(hurwitz_genus(4, 2, &[]).unwrap(), 9);
    }

    #[test]
    fn parse_rejects_unknown_classes() {
        assert!(NuType::parse(5, "central:2").is_err());
        assert!(NuType::parse(5, "rot3:2").is_err());
        assert!(NuType::parse(5, "bogus:1").is_err());
        assert!(NuType::parse(5, "e:1").is_err());
    }

    #[test]
    fn orbit_representative_swaps_reflection_classes() {
        let nu = NuType::parse(6, "refl_odd:2").unwrap();
        assert_eq!(nu.orbit_representative().to_string(), "refl_even:2");
        let nu = NuType::parse(5, "rot2:2").unwrap();
        assert_eq!(nu.orbit_representative().to_string(), "rot1:2");
    }

    #[test]
    fn class_functions_are_counted() {
        assert_eq!(NuType::all_with_total(3, 2).len(), 3);
        assert_eq!(NuType::all_with_total(4, 3).len(), 20);
        assert_eq!(SigmaSet::all_subsets(6).len(), 32);
    }

    proptest! {
        #[test]
        fn genus_matches_rational_formula(n in 3u32..20, gp in 0u32..4, picks in proptest::collection::vec(0usize..8, 0..6)) {
            let orders: Vec<u32> = picks.iter().map(|&i| { let v = valid_orders(n); v[i % v.len()] }).collect();
            let rhs = 2.0 * n as f64 * (2.0 * (gp as f64 - 1.0) + orders.iter().map(|&m| 1.0 - 1.0 / m as f64).sum::<f64>());
            match hurwitz_genus(n, gp, &orders) {
                Ok(g) => prop_assert!((2.0 * (g as f64 - 1.0) - rhs).abs() < 1e-9),
                Err(_) => prop_assert!(rhs < -2.0 + 1e-9 || (rhs.round() as i64) % 2 != 0),
            }
        }
    }
}
