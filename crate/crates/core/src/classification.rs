//! Normal forms of Hurwitz generating systems in `D_n`, the complete invariant
//! modulo automorphisms, and the ν-types that occur.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{gcd, ConjClassId, DihedralAut, DihedralElement};
use crate::hurwitz::{HurwitzVector, NuType};
use crate::invariants::{schur_lift_product, sigma_adapted_class};
use crate::moves::{OrbitEngine, DEFAULT_CAP};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum FormKind {
    /// No branch values: `(y, x^(schur·n/2), x, 1, ..., 1)`.
    Etale { schur: Option<u8> },
    /// Some branch value is a reflection.
    WithReflections { r: Vec<u32>, nu1: u32, nu2: u32, epsilon: Option<u8> },
    /// All branch values are rotations: `(x^r; y, x^h, x, 1, ..., 1)`.
    RotationsOnly { r: Vec<u32>, h: u32 },
    /// Smallest member of the orbit under moves and automorphisms.
    SmallFallback { representative: HurwitzVector },
}

/// Ordered by `(n, g', d)` and then by case and parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub n: u32,
    pub g_prime: u32,
    pub d: usize,
    #[serde(flatten)]
    pub kind: FormKind,
}

impl CanonicalForm {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("canonical forms serialize")
    }

    /// A Hurwitz generating system with this form.
    pub fn representative(&self) -> HurwitzVector {
        let n = self.n;
        let x = |i: i64| DihedralElement::rotation(n, i);
        let xy = |i: i64| DihedralElement::reflection(n, i);
        let handles = |first: &[DihedralElement]| {
            let mut ab = first.to_vec();
            ab.resize(2 * self.g_prime as usize, DihedralElement::identity(n));
            ab
        };
        let (c, ab) = match &self.kind {
            FormKind::Etale { schur } => {
                let h = schur.unwrap_or(0) as i64 * (n / 2) as i64;
                (Vec::new(), handles(&[xy(0), x(h), x(1)]))
            }
            FormKind::WithReflections { r, nu1, nu2, epsilon } => {
                let total: i64 = r.iter().map(|&ri| ri as i64).sum();
                let mut c: Vec<_> = r.iter().map(|&ri| x(ri as i64)).collect();
                match epsilon {
                    None => {
                        c.push(xy(1 - total));
                        c.push(xy(1));
                        c.extend((2..*nu2).map(|_| xy(0)));
                    }
                    Some(eps) => {
                        c.push(xy(*eps as i64 - total));
                        c.extend((1..*nu2).map(|_| xy(1)));
                        c.extend((0..*nu1).map(|_| xy(0)));
                    }
                }
                (c, handles(&[x(1)]))
            }
            FormKind::RotationsOnly { r, h } => {
                (r.iter().map(|&ri| x(ri as i64)).collect(), handles(&[xy(0), x(*h as i64), x(1)]))
            }
            FormKind::SmallFallback { representative } => return representative.clone(),
        };
        HurwitzVector::new(n, self.g_prime, c, ab).expect("shape is consistent")
    }
}

fn uses_fallback(g_prime: u32, nu: &NuType) -> bool {
    let sigma = nu.support();
    g_prime == 0 || (g_prime == 1 && !sigma.has_reflection() && !sigma.is_empty())
}

fn rotations_only_h(v: &HurwitzVector, r: &[u32]) -> Result<u32> {
    let n = v.n();
    let sum: u32 = r.iter().sum();
    if n % 2 == 1 {
        let half = n.div_ceil(2);
        return Ok(((sum as u64 * half as u64) % n as u64) as u32);
    }
    let k = n / 2;
    if sum % 2 == 1 {
        return Err(Error::precondition("rotation labels have odd sum"));
    }
    let h0 = (sum / 2) % k;
    if r.contains(&k) {
        return Ok(h0);
    }
    let candidate = CanonicalForm {
        n,
        g_prime: v.g_prime(),
        d: v.d(),
        kind: FormKind::RotationsOnly { r: r.to_vec(), h: h0 },
    }
    .representative();
    if sigma_adapted_class(v)? == sigma_adapted_class(&candidate)? {
        Ok(h0)
    } else {
        Ok(h0 + k)
    }
}

fn constructive_form(v: &HurwitzVector, nu: &NuType) -> Result<FormKind> {
    let n = v.n();
    let sigma = nu.support();
    if v.d() == 0 {
        let schur = if n.is_multiple_of(2) { Some(schur_lift_product(v)?.bit) } else { None };
        return Ok(FormKind::Etale { schur });
    }
    let r = nu.rotation_labels();
    if sigma.has_reflection() {
        let (nu1, nu2, epsilon) = if n % 2 == 1 {
            (0, nu.count(ConjClassId::ReflAll), None)
        } else {
            let (a, b) = (nu.count(ConjClassId::ReflEven), nu.count(ConjClassId::ReflOdd));
            let (lo, hi) = (a.min(b), a.max(b));
            (lo, hi, Some(((hi + 1) % 2) as u8))
        };
        return Ok(FormKind::WithReflections { r, nu1, nu2, epsilon });
    }
    let h = rotations_only_h(v, &r)?;
    Ok(FormKind::RotationsOnly { r, h })
}

fn require_classifiable(v: &HurwitzVector) -> Result<NuType> {
    if v.n() < 3 {
        return Err(Error::InvalidModulus(v.n()));
    }
    v.require_hurwitz()?;
    NuType::of_vector(v)
}

/// Normal form of a Hurwitz generating system, not yet minimized over automorphisms
/// except in the fallback case.
pub fn normal_form(v: &HurwitzVector) -> Result<CanonicalForm> {
    Classifier::new().normal_form(v)
}

/// Complete invariant: the smallest normal form over all automorphic images.
pub fn canonical_invariant(v: &HurwitzVector) -> Result<CanonicalForm> {
    Classifier::new().canonical_invariant(v)
}

pub fn equivalent(v1: &HurwitzVector, v2: &HurwitzVector) -> Result<bool> {
    if !v1.same_shape(v2) {
        return Err(Error::precondition("vectors have different (n, g', d)"));
    }
    let mut c = Classifier::new();
    Ok(c.canonical_invariant(v1)? == c.canonical_invariant(v2)?)
}

/// Computes canonical forms, remembering the orbits explored in fallback cases.
#[derive(Default)]
pub struct Classifier {
    cap: Option<usize>,
    engines: HashMap<(u32, u32, usize), OrbitEngine>,
    fallback: HashMap<(u32, u32, usize), HashMap<u128, HurwitzVector>>,
}

impl Classifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: usize) -> Self {
        Self { cap: Some(cap), ..Self::default() }
    }

    fn fallback_form(&mut self, v: &HurwitzVector) -> Result<FormKind> {
        let shape = (v.n(), v.g_prime(), v.d());
        if let std::collections::hash_map::Entry::Vacant(e) = self.engines.entry(shape) {
            e.insert(OrbitEngine::new(v.n(), v.g_prime(), v.d(), None, true)?);
        }
        let engine = &self.engines[&shape];
        let key = engine.key(v);
        let known = self.fallback.entry(shape).or_default();
        if let Some(rep) = known.get(&key) {
            return Ok(FormKind::SmallFallback { representative: rep.clone() });
        }
        let cap = self.cap.unwrap_or(DEFAULT_CAP);
        let explored = engine.explore(key, cap);
        if explored.truncated {
            return Err(Error::Budget { what: format!("orbit of {v}"), needed: cap as u128 + 1, budget: cap as u128 });
        }
        let rep = engine.vector(*explored.members.iter().min().expect("seed is a member"));
        for m in explored.members {
            known.insert(m, rep.clone());
        }
        Ok(FormKind::SmallFallback { representative: rep })
    }

    pub fn normal_form(&mut self, v: &HurwitzVector) -> Result<CanonicalForm> {
        let nu = require_classifiable(v)?;
        let kind = if uses_fallback(v.g_prime(), &nu) { self.fallback_form(v)? } else { constructive_form(v, &nu)? };
        Ok(CanonicalForm { n: v.n(), g_prime: v.g_prime(), d: v.d(), kind })
    }

    pub fn canonical_invariant(&mut self, v: &HurwitzVector) -> Result<CanonicalForm> {
        let nu = require_classifiable(v)?;
        if uses_fallback(v.g_prime(), &nu) {
            return self.normal_form(v);
        }
        let mut best: Option<CanonicalForm> = None;
        for f in DihedralAut::all(v.n())? {
            let w = v.apply_aut(&f);
            let kind = constructive_form(&w, &NuType::of_vector(&w)?)?;
            let form = CanonicalForm { n: v.n(), g_prime: v.g_prime(), d: v.d(), kind };
            if best.as_ref().is_none_or(|b| form < *b) {
                best = Some(form);
            }
        }
        Ok(best.expect("the identity automorphism exists"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RealizabilityRule {
    AnyAdmissibleGp2,
    ReflectionPresentGp1,
    RotationIndexGp1,
    R,
    O,
    E,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RealizabilityVerdict {
    pub realizable: bool,
    pub rule_fired: RealizabilityRule,
}

impl RealizabilityVerdict {
    fn yes(rule: RealizabilityRule) -> Self {
        Self { realizable: true, rule_fired: rule }
    }

    fn no() -> Self {
        Self { realizable: false, rule_fired: RealizabilityRule::None }
    }
}

/// Whether some rotation choice `x^(±r_j)` and some `δ` with `Σ ±r_j = 2δ` give
/// `gcd(n, r_1, ..., r_d, δ) = 1`.
fn rotation_index_condition(n: u32, labels: &[u32]) -> bool {
    let base = labels.iter().fold(n, |g, &r| gcd(g, r));
    let mut sums = vec![false; n as usize];
    sums[0] = true;
    for &r in labels {
        let mut next = vec![false; n as usize];
        for (s, _) in sums.iter().enumerate().filter(|(_, &on)| on) {
            next[(s + r as usize) % n as usize] = true;
            next[(s + n as usize - r as usize) % n as usize] = true;
        }
        sums = next;
    }
    (0..n).any(|delta| sums[(2 * delta % n) as usize] && gcd(base, delta) == 1)
}

/// Whether some Hurwitz generating system in `HS(D_n; g', d)` has ν-type `nu`.
pub fn nu_realizable(n: u32, g_prime: u32, nu: &NuType) -> Result<RealizabilityVerdict> {
    if nu.n() != n {
        return Err(Error::ModulusMismatch(n, nu.n()));
    }
    if n < 3 {
        return Err(Error::InvalidModulus(n));
    }
    if !nu.is_admissible() {
        return Ok(RealizabilityVerdict::no());
    }
    let reflections = nu.reflection_count();
    let labels = nu.rotation_labels();
    Ok(match g_prime {
        0 => {
            let rotations_generate = labels.iter().fold(n, |g, &r| gcd(g, r)) == 1;
            if reflections == 2 && rotations_generate {
                RealizabilityVerdict::yes(RealizabilityRule::R)
            } else if n % 2 == 1 && reflections >= 4 {
                RealizabilityVerdict::yes(RealizabilityRule::O)
            } else if n.is_multiple_of(2)
                && reflections >= 4
                && ((nu.count(ConjClassId::ReflEven) > 0 && nu.count(ConjClassId::ReflOdd) > 0)
                    || labels.iter().any(|r| r % 2 == 1))
            {
                RealizabilityVerdict::yes(RealizabilityRule::E)
            } else {
                RealizabilityVerdict::no()
            }
        }
        1 => {
            if reflections > 0 {
                RealizabilityVerdict::yes(RealizabilityRule::ReflectionPresentGp1)
            } else if rotation_index_condition(n, &labels) {
                RealizabilityVerdict::yes(RealizabilityRule::RotationIndexGp1)
            } else {
                RealizabilityVerdict::no()
            }
        }
        _ => RealizabilityVerdict::yes(RealizabilityRule::AnyAdmissibleGp2),
    })
}
