//! Irreducible components of the locus of curves with a `D_n`-action, and the
//! group-theoretic checks behind coincidences of fixed loci.

mod coincidence;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

pub use coincidence::{
    coincidence_check_pair, coincidence_exception_example, d2_equivalences, dd_constructions, CoincidenceReport,
    DdConstruction, DdKind, NielsenRelation,
};

use crate::classification::{nu_realizable, CanonicalForm, Classifier, FormKind};
use crate::error::{Error, Result};
use crate::group::{check_modulus, gcd, ConjClassId, DihedralElement};
use crate::hurwitz::{check_budget, enumerate_hs, valid_orders, HurwitzVector, NuType};
use crate::moves::partition;

/// Default cap on `(2n)^(d + 2g')` for the searches run by the catalog.
pub const CATALOG_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimaryNumericalType {
    pub g_prime: u32,
    pub d: usize,
    pub orders: Vec<u32>,
}

/// Solutions of `2(g-1) = 2n(2g'-2) + Σ (2n - 2n/m_i)` with `m_i` element orders of `D_n`.
pub fn primary_types(n: u32, g: u64) -> Result<Vec<PrimaryNumericalType>> {
    if n < 3 {
        return Err(Error::InvalidModulus(n));
    }
    if g < 2 {
        return Err(Error::precondition(format!("genus {g} is below 2")));
    }
    let order = 2 * n as u64;
    let target = 2 * (g - 1);
    let orders = valid_orders(n);
    let mut out = Vec::new();
    for g_prime in 0.. {
        let base = order as i64 * (2 * g_prime as i64 - 2);
        if base > target as i64 {
            break;
        }
        let rest = (target as i64 - base) as u64;
        let mut current = Vec::new();
        collect_orders(&orders, order, rest, 0, &mut current, &mut |o| {
            out.push(PrimaryNumericalType { g_prime, d: o.len(), orders: o.to_vec() })
        });
    }
    out.sort();
    Ok(out)
}

fn collect_orders(orders: &[u32], group: u64, rest: u64, from: usize, current: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if rest == 0 {
        f(current);
        return;
    }
    for (i, &m) in orders.iter().enumerate().skip(from) {
        let term = group - group / m as u64;
        if term <= rest {
            current.push(m);
            collect_orders(orders, group, rest - term, i, current, f);
            current.pop();
        }
    }
}

/// ν-types whose classes have exactly the given orders, one per `Aut(D_n)`-orbit.
fn nu_orbits_with_orders(n: u32, orders: &[u32]) -> Vec<NuType> {
    let mut multiplicity: BTreeMap<u32, u32> = BTreeMap::new();
    for &m in orders {
        *multiplicity.entry(m).or_default() += 1;
    }
    let mut partial: Vec<Vec<(ConjClassId, u32)>> = vec![Vec::new()];
    for (&m, &k) in &multiplicity {
        let classes: Vec<ConjClassId> = ConjClassId::nontrivial(n).into_iter().filter(|c| c.order(n) == m).collect();
        let mut next = Vec::new();
        for base in &partial {
            distribute(&classes, k, &mut Vec::new(), &mut |split| {
                let mut v = base.clone();
                v.extend(split.iter().copied());
                next.push(v);
            });
        }
        partial = next;
    }
    let reps: BTreeSet<NuType> = partial
        .into_iter()
        .map(|counts| NuType::new(n, counts).expect("classes are valid").orbit_representative())
        .collect();
    reps.into_iter().collect()
}

type Counts = Vec<(ConjClassId, u32)>;

fn distribute(classes: &[ConjClassId], k: u32, acc: &mut Counts, f: &mut dyn FnMut(&Counts)) {
    match classes {
        [] => {
            if k == 0 {
                f(acc)
            }
        }
        [last] => {
            acc.push((*last, k));
            f(acc);
            acc.pop();
        }
        [first, rest @ ..] => {
            for j in 0..=k {
                acc.push((*first, j));
                distribute(rest, k - j, acc, f);
                acc.pop();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub g_prime: u32,
    pub d: usize,
    pub orders: Vec<u32>,
    /// Representative of the ν-orbit under `Aut(D_n)`.
    pub nu: NuType,
    /// Number of components sharing this ν-orbit.
    pub epsilon_multiplicity: u32,
    pub dimension: i64,
    pub representative: HurwitzVector,
    pub flags: Vec<String>,
    #[serde(skip)]
    pub canonical: Option<CanonicalForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Catalog {
    pub n: u32,
    pub g: u64,
    pub components: Vec<ComponentRecord>,
}

impl Catalog {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalogs serialize")
    }

    /// Writes the JSON to `path` through a temporary file in the same directory.
    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        use std::io::Write;
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(self.to_json().as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.persist(path).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogOptions {
    /// Recompute every count by a full orbit partition and fail on disagreement.
    pub oracle: bool,
    pub budget: u128,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        Self { oracle: false, budget: CATALOG_BUDGET }
    }
}

pub const FLAG_ORACLE: &str = "oracle_verified";
pub const FLAG_UNVERIFIED: &str = "unverified";
pub const FLAG_COINCIDENCE_GENUS_ONE: &str = "possible_coincidence:III-a";
pub const FLAG_COINCIDENCE_GENUS_ZERO: &str = "possible_coincidence:III-b";

pub fn catalog(n: u32, g: u64, options: CatalogOptions) -> Result<Catalog> {
    Ok(Catalog { n, g, components: components(n, g, options)? })
}

/// One record per component, grouped by primary type in sorted order.
pub fn components(n: u32, g: u64, options: CatalogOptions) -> Result<Vec<ComponentRecord>> {
    check_modulus(n)?;
    let types = primary_types(n, g)?;
    let per_type: Vec<Result<Vec<ComponentRecord>>> =
        types.par_iter().map(|t| type_components(n, g, t, options)).collect();
    let mut out = Vec::new();
    for records in per_type {
        out.extend(records?);
    }
    Ok(out)
}

fn type_components(n: u32, g: u64, t: &PrimaryNumericalType, options: CatalogOptions) -> Result<Vec<ComponentRecord>> {
    let mut classifier = Classifier::new();
    let within_budget = check_budget(n, t.g_prime, t.d, options.budget).is_ok();
    let mut records = Vec::new();
    for nu in nu_orbits_with_orders(n, &t.orders) {
        if !nu_realizable(n, t.g_prime, &nu)?.realizable {
            continue;
        }
        let mut flags = Vec::new();
        let forms: Vec<(CanonicalForm, HurwitzVector)> = if !needs_search(t.g_prime, &nu) {
            constructed_forms(n, t.g_prime, &nu, &mut classifier)?
        } else if within_budget {
            searched_forms(n, t.g_prime, &nu, options.budget, &mut classifier)?
        } else {
            flags.push(FLAG_UNVERIFIED.to_string());
            let rep = search_representative(n, t.g_prime, &nu, options.budget)?;
            vec![(CanonicalForm { n, g_prime: t.g_prime, d: t.d, kind: FormKind::SmallFallback { representative: rep.clone() } }, rep)]
        };
        if forms.is_empty() {
            return Err(Error::precondition(format!("no Hurwitz system found for the realizable type {nu} with g' = {}", t.g_prime)));
        }
        flags.extend(coincidence_flag(n, g, t, &nu));
        let multiplicity = forms.len() as u32;
        for (form, rep) in forms {
            validate_representative(&rep, t, &nu)?;
            records.push(ComponentRecord {
                g_prime: t.g_prime,
                d: t.d,
                orders: t.orders.clone(),
                nu: nu.clone(),
                epsilon_multiplicity: multiplicity,
                dimension: 3 * (t.g_prime as i64 - 1) + t.d as i64,
                representative: rep,
                flags: flags.clone(),
                canonical: (!flags.iter().any(|f| f == FLAG_UNVERIFIED)).then_some(form),
            });
        }
    }
    if options.oracle {
        if within_budget {
            oracle_check(n, t, &mut records, options.budget, &mut classifier)?;
        } else {
            for r in &mut records {
                if !r.flags.iter().any(|f| f == FLAG_UNVERIFIED) {
                    r.flags.push(FLAG_UNVERIFIED.to_string());
                }
            }
        }
    }
    Ok(records)
}

/// Cases whose components are not read off from explicit normal forms.
fn needs_search(g_prime: u32, nu: &NuType) -> bool {
    let sigma = nu.support();
    g_prime == 0 || (g_prime == 1 && !sigma.has_reflection() && !sigma.is_empty())
}

/// Canonical forms of the normal-form candidates compatible with `nu`.
fn constructed_forms(
    n: u32,
    g_prime: u32,
    nu: &NuType,
    classifier: &mut Classifier,
) -> Result<Vec<(CanonicalForm, HurwitzVector)>> {
    let d = nu.total() as usize;
    let r = nu.rotation_labels();
    let sigma = nu.support();
    let mut kinds = Vec::new();
    if d == 0 {
        if n.is_multiple_of(2) {
            kinds.extend([FormKind::Etale { schur: Some(0) }, FormKind::Etale { schur: Some(1) }]);
        } else {
            kinds.push(FormKind::Etale { schur: None });
        }
    } else if sigma.has_reflection() {
        if n % 2 == 1 {
            kinds.push(FormKind::WithReflections { r, nu1: 0, nu2: nu.count(ConjClassId::ReflAll), epsilon: None });
        } else {
            let (a, b) = (nu.count(ConjClassId::ReflEven), nu.count(ConjClassId::ReflOdd));
            let (lo, hi) = (a.min(b), a.max(b));
            kinds.push(FormKind::WithReflections { r, nu1: lo, nu2: hi, epsilon: Some(((hi + 1) % 2) as u8) });
        }
    } else {
        let sum: u32 = r.iter().sum();
        if n % 2 == 1 {
            kinds.push(FormKind::RotationsOnly { r: r.clone(), h: ((sum as u64 * n.div_ceil(2) as u64) % n as u64) as u32 });
        } else {
            let k = n / 2;
            let h0 = (sum / 2) % k;
            kinds.push(FormKind::RotationsOnly { r: r.clone(), h: h0 });
            if !r.contains(&k) {
                kinds.push(FormKind::RotationsOnly { r: r.clone(), h: h0 + k });
            }
        }
    }
    let mut forms: BTreeMap<CanonicalForm, HurwitzVector> = BTreeMap::new();
    for kind in kinds {
        let rep = CanonicalForm { n, g_prime, d, kind }.representative();
        rep.require_hurwitz()?;
        let form = classifier.canonical_invariant(&rep)?;
        forms.entry(form).or_insert(rep);
    }
    Ok(forms.into_iter().collect())
}

/// Canonical forms met by a full search of the Hurwitz systems with type `nu`.
fn searched_forms(
    n: u32,
    g_prime: u32,
    nu: &NuType,
    budget: u128,
    classifier: &mut Classifier,
) -> Result<Vec<(CanonicalForm, HurwitzVector)>> {
    let mut forms: BTreeMap<CanonicalForm, HurwitzVector> = BTreeMap::new();
    for v in enumerate_hs(n, g_prime, nu.total() as usize, Some(nu), budget)? {
        let form = classifier.canonical_invariant(&v)?;
        forms.entry(form).or_insert(v);
    }
    Ok(forms.into_iter().collect())
}

/// Finds one Hurwitz system of type `nu` without enumerating the whole space.
fn search_representative(n: u32, g_prime: u32, nu: &NuType, node_limit: u128) -> Result<HurwitzVector> {
    let mut slots: Vec<ConjClassId> = Vec::new();
    for (c, k) in nu.iter() {
        slots.extend(std::iter::repeat_n(c, k as usize));
    }
    let not_found = || Error::Budget { what: format!("search for a system of type {nu}"), needed: node_limit + 1, budget: node_limit };
    match g_prime {
        0 => {
            let mut chosen = Vec::with_capacity(slots.len());
            let mut nodes = 0u128;
            let found = dfs_branch_values(n, &slots, DihedralElement::identity(n), &mut chosen, &mut nodes, node_limit);
            let c = found.ok_or_else(not_found)?;
            HurwitzVector::new(n, 0, c, Vec::new())
        }
        1 => {
            let labels = nu.rotation_labels();
            let base = labels.iter().fold(n, |g, &r| gcd(g, r));
            for signs in 0u64..(1u64 << labels.len().min(40)) {
                let c: Vec<DihedralElement> = labels
                    .iter()
                    .enumerate()
                    .map(|(j, &r)| DihedralElement::rotation(n, if signs >> j & 1 == 1 { -(r as i64) } else { r as i64 }))
                    .collect();
                let sum = c.iter().fold(0u32, |s, e| (s + e.rot()) % n);
                for delta in (0..n).filter(|&delta| (2 * delta) % n == sum && gcd(base, delta) == 1) {
                    let ab = vec![DihedralElement::y(n), DihedralElement::reflection(n, delta as i64)];
                    let v = HurwitzVector::new(n, 1, c.clone(), ab)?;
                    if v.is_hurwitz_system() {
                        return Ok(v);
                    }
                }
            }
            Err(not_found())
        }
        _ => Err(Error::precondition("explicit normal forms exist for g' >= 2")),
    }
}

fn dfs_branch_values(
    n: u32,
    slots: &[ConjClassId],
    product: DihedralElement,
    chosen: &mut Vec<DihedralElement>,
    nodes: &mut u128,
    limit: u128,
) -> Option<Vec<DihedralElement>> {
    *nodes += 1;
    if *nodes > limit {
        return None;
    }
    let i = chosen.len();
    if i + 1 == slots.len() {
        let last = product.inverse();
        if last.class() != slots[i] {
            return None;
        }
        chosen.push(last);
        if crate::group::generates(n, chosen) {
            return Some(chosen.clone());
        }
        chosen.pop();
        return None;
    }
    for e in slots[i].members(n) {
        chosen.push(e);
        if let Some(found) = dfs_branch_values(n, slots, product * e, chosen, nodes, limit) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

fn validate_representative(rep: &HurwitzVector, t: &PrimaryNumericalType, nu: &NuType) -> Result<()> {
    rep.require_hurwitz()?;
    let own = NuType::of_vector(rep)?;
    let mut orders: Vec<u32> = rep.c().iter().map(|c| c.order()).collect();
    orders.sort_unstable();
    if rep.g_prime() != t.g_prime || orders != t.orders || own.orbit_representative() != *nu {
        return Err(Error::precondition(format!("representative {rep} does not have type {nu} with orders {:?}", t.orders)));
    }
    Ok(())
}

/// Flags records whose type matches one of the two sides of the known coincidence of fixed loci.
fn coincidence_flag(n: u32, g: u64, t: &PrimaryNumericalType, nu: &NuType) -> Option<String> {
    if n % 2 == 1 || n < 4 || g != n as u64 - 1 {
        return None;
    }
    let x2 = DihedralElement::rotation(n, 2).class();
    let genus_one = NuType::new(n, [(x2, 1)]).ok()?.orbit_representative();
    let genus_zero = NuType::new(n, [(ConjClassId::Rotation(1), 2), (ConjClassId::ReflEven, 2)]).ok()?.orbit_representative();
    if t.g_prime == 1 && t.d == 1 && *nu == genus_one {
        Some(FLAG_COINCIDENCE_GENUS_ONE.to_string())
    } else if t.g_prime == 0 && t.d == 4 && *nu == genus_zero {
        Some(FLAG_COINCIDENCE_GENUS_ZERO.to_string())
    } else {
        None
    }
}

/// Recomputes the components of one primary type as orbits of moves and automorphisms.
fn oracle_check(
    n: u32,
    t: &PrimaryNumericalType,
    records: &mut [ComponentRecord],
    budget: u128,
    classifier: &mut Classifier,
) -> Result<()> {
    let p = partition(n, t.g_prime, t.d, None, true, budget)?;
    let sorted = |v: &HurwitzVector| {
        let mut o: Vec<u32> = v.c().iter().map(|c| c.order()).collect();
        o.sort_unstable();
        o
    };
    let expected: BTreeSet<&CanonicalForm> = records.iter().filter_map(|r| r.canonical.as_ref()).collect();
    let mut hit: BTreeMap<CanonicalForm, usize> = BTreeMap::new();
    let mut covered = 0usize;
    for orbit in p.orbits.iter().filter(|o| sorted(&o.canonical) == t.orders) {
        let form = classifier.canonical_invariant(&orbit.canonical)?;
        if !expected.contains(&form) {
            return Err(Error::precondition(format!("orbit of {} is missing from the catalog", orbit.canonical)));
        }
        *hit.entry(form).or_default() += 1;
        covered += orbit.size;
    }
    let with_orders = p.members().filter(|(v, _)| sorted(v) == t.orders).count();
    if hit.len() != expected.len() || hit.values().any(|&k| k != 1) || covered != with_orders {
        return Err(Error::precondition(format!(
            "catalog lists {} components for g' = {}, orders {:?}, but the orbit partition gives {}",
            expected.len(),
            t.g_prime,
            t.orders,
            hit.values().sum::<usize>()
        )));
    }
    for r in records.iter_mut() {
        r.flags.push(FLAG_ORACLE.to_string());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primary_type_examples() {
        assert_eq!(primary_types(3, 2).unwrap(), vec![PrimaryNumericalType { g_prime: 0, d: 4, orders: vec![2, 2, 3, 3] }]);
        assert!(primary_types(3, 7).unwrap().contains(&PrimaryNumericalType { g_prime: 2, d: 0, orders: vec![] }));
        assert!(primary_types(3, 0).is_err());
        assert!(primary_types(3, 1).is_err());
    }

    #[test]
    fn primary_types_satisfy_the_genus_formula() {
        for n in 3..=8 {
            for g in 2..=12u64 {
                for t in primary_types(n, g).unwrap() {
                    assert_eq!(crate::hurwitz::hurwitz_genus(n, t.g_prime, &t.orders).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn nu_orbits_respect_orders() {
        let nus = nu_orbits_with_orders(4, &[2, 2, 4, 4]);
        for nu in &nus {
            let mut orders: Vec<u32> = nu.iter().flat_map(|(c, k)| std::iter::repeat_n(c.order(4), k as usize)).collect();
            orders.sort_unstable();
            assert_eq!(orders, vec![2, 2, 4, 4]);
        }
        assert!(nus.contains(&NuType::parse(4, "rot1:2,refl_even:2").unwrap().orbit_representative()));
    }

    #[test]
    fn smallest_d3_catalog() {
        let records = components(3, 2, CatalogOptions { oracle: true, ..CatalogOptions::default() }).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].dimension, 1);
        assert!(records[0].flags.iter().any(|f| f == FLAG_ORACLE));
    }

    #[test]
    fn d4_etale_components_appear_in_genus_nine() {
        let records = components(4, 9, CatalogOptions::default()).unwrap();
        let etale: Vec<_> = records.iter().filter(|r| r.g_prime == 2 && r.d == 0).collect();
        assert_eq!(etale.len(), 2);
        assert!(etale.iter().all(|r| r.epsilon_multiplicity == 2 && r.dimension == 3));
    }

    #[test]
    fn targeted_search_finds_systems() {
        let nu = NuType::parse(5, "refl:4,rot1:2").unwrap();
        let v = search_representative(5, 0, &nu, 1_000_000).unwrap();
        assert!(v.is_hurwitz_system());
        assert_eq!(NuType::of_vector(&v).unwrap(), nu);
        let nu = NuType::parse(6, "rot1:2").unwrap();
        let v = search_representative(6, 1, &nu, 1_000_000).unwrap();
        assert!(v.is_hurwitz_system());
    }
}
