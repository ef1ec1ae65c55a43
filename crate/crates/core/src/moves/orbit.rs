use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{automorphism_permutations, gcd, DnTable};
use crate::hurwitz::{check_budget, HsSearch, HurwitzVector, NuType};
use crate::moves::{MoveContext, MoveSet};
use crate::packed::{pack, unpack, unpack_into, MAX_PACKED_LEN};

/// Default cap on the number of states visited by one search.
pub const DEFAULT_CAP: usize = 10_000_000;

#[derive(Clone, Debug)]
pub struct OrbitOptions {
    pub mod_aut: bool,
    pub move_set: Option<MoveSet>,
    pub cap: usize,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        Self { mod_aut: false, move_set: None, cap: DEFAULT_CAP }
    }
}

impl OrbitOptions {
    pub fn mod_aut() -> Self {
        Self { mod_aut: true, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub seed: HurwitzVector,
    pub size: usize,
    /// Lexicographically smallest member.
    pub canonical: HurwitzVector,
    /// Largest breadth-first depth reached from the seed.
    pub diameter: usize,
    pub mod_aut: bool,
    /// Set when the cap stopped the search; size and canonical are then partial.
    pub truncated: bool,
    pub move_set_hash: String,
}

pub(crate) struct Explored {
    pub members: Vec<u128>,
    pub diameter: usize,
    pub truncated: bool,
}

/// Breadth-first search over the action of a move set, optionally together with `Aut(D_n)`.
pub(crate) struct OrbitEngine {
    table: DnTable,
    n: u32,
    g_prime: u32,
    d: usize,
    k: usize,
    moves: MoveSet,
    auts: Vec<Vec<u8>>,
}

/// Generators of `Aut(D_n)` as index permutations.
fn aut_generators(n: u32) -> Result<Vec<Vec<u8>>> {
    if n < 3 {
        return automorphism_permutations(n);
    }
    let mut gens = Vec::new();
    for a in (2..n).filter(|&a| gcd(a, n) == 1) {
        gens.push(crate::group::DihedralAut::new(n, a as i64, 0)?.permutation());
    }
    gens.push(crate::group::DihedralAut::new(n, 1, 1)?.permutation());
    Ok(gens)
}

impl OrbitEngine {
    pub(crate) fn new(n: u32, g_prime: u32, d: usize, moves: Option<MoveSet>, mod_aut: bool) -> Result<Self> {
        let table = DnTable::new(n)?;
        let k = d + 2 * g_prime as usize;
        if k > MAX_PACKED_LEN {
            return Err(Error::precondition(format!("vectors of length {k} exceed the packed limit {MAX_PACKED_LEN}")));
        }
        let moves = moves.unwrap_or_else(|| MoveSet::standard(n, g_prime, d));
        for mv in moves.moves() {
            mv.validate(n, g_prime, d)?;
        }
        let auts = if mod_aut { aut_generators(n)? } else { Vec::new() };
        Ok(Self { table, n, g_prime, d, k, moves, auts })
    }

    pub(crate) fn move_set(&self) -> &MoveSet {
        &self.moves
    }

    pub(crate) fn key(&self, v: &HurwitzVector) -> u128 {
        pack(&v.to_indices())
    }

    pub(crate) fn vector(&self, key: u128) -> HurwitzVector {
        HurwitzVector::from_indices(self.n, self.g_prime, self.d, &unpack(key, self.k))
    }

    pub(crate) fn explore(&self, seed: u128, cap: usize) -> Explored {
        let ctx = MoveContext::new(&self.table, self.d);
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        let mut members = Vec::new();
        seen.insert(seed);
        queue.push_back((seed, 0usize));
        let mut diameter = 0;
        let mut truncated = false;
        let mut src = vec![0u8; self.k];
        let mut dst = vec![0u8; self.k];
        while let Some((key, depth)) = queue.pop_front() {
            members.push(key);
            diameter = diameter.max(depth);
            unpack_into(key, &mut src);
            let mut visit = |next: u128| {
                if seen.len() >= cap {
                    truncated = true;
                    return;
                }
                if seen.insert(next) {
                    queue.push_back((next, depth + 1));
                }
            };
            for mv in self.moves.moves() {
                dst.copy_from_slice(&src);
                ctx.apply(*mv, &mut dst);
                visit(pack(&dst));
            }
            for perm in &self.auts {
                for (o, i) in dst.iter_mut().zip(&src) {
                    *o = perm[*i as usize];
                }
                visit(pack(&dst));
            }
        }
        Explored { members, diameter, truncated }
    }
}

pub fn orbit(v: &HurwitzVector, options: &OrbitOptions) -> Result<OrbitReport> {
    let engine = OrbitEngine::new(v.n(), v.g_prime(), v.d(), options.move_set.clone(), options.mod_aut)?;
    let explored = engine.explore(engine.key(v), options.cap);
    let canonical = *explored.members.iter().min().expect("seed is a member");
    Ok(OrbitReport {
        seed: v.clone(),
        size: explored.members.len(),
        canonical: engine.vector(canonical),
        diameter: explored.diameter,
        mod_aut: options.mod_aut,
        truncated: explored.truncated,
        move_set_hash: engine.move_set().hash(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub canonical: HurwitzVector,
    pub size: usize,
}

/// `HS(D_n; g', d)` split into orbits, ordered by canonical representative.
#[derive(Clone, Debug)]
pub struct Partition {
    pub n: u32,
    pub g_prime: u32,
    pub d: usize,
    pub mod_aut: bool,
    pub orbits: Vec<OrbitSummary>,
    membership: HashMap<u128, u32>,
    keys: Vec<u128>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Number of vectors in the space.
    pub fn total(&self) -> usize {
        self.keys.len()
    }

    pub fn orbit_of(&self, v: &HurwitzVector) -> Option<usize> {
        if v.n() != self.n || v.g_prime() != self.g_prime || v.d() != self.d {
            return None;
        }
        self.membership.get(&pack(&v.to_indices())).map(|&i| i as usize)
    }

    /// Every vector of the space together with its orbit index, in lexicographic order.
    pub fn members(&self) -> impl Iterator<Item = (HurwitzVector, usize)> + '_ {
        let k = self.d + 2 * self.g_prime as usize;
        self.keys.iter().map(move |key| {
            (HurwitzVector::from_indices(self.n, self.g_prime, self.d, &unpack(*key, k)), self.membership[key] as usize)
        })
    }
}

/// Splits `HS(D_n; g', d)`, optionally restricted to one ν-type, into orbits of the standard move set.
pub fn partition(n: u32, g_prime: u32, d: usize, nu: Option<&NuType>, mod_aut: bool, budget: u128) -> Result<Partition> {
    check_budget(n, g_prime, d, budget)?;
    let engine = OrbitEngine::new(n, g_prime, d, None, mod_aut)?;
    let keys = HsSearch::new(&engine.table, g_prime, d, nu)?.collect_keys();
    let mut membership: HashMap<u128, u32> = HashMap::with_capacity(keys.len());
    let mut raw: Vec<(u128, usize)> = Vec::new();
    for &key in &keys {
        if membership.contains_key(&key) {
            continue;
        }
        let explored = engine.explore(key, usize::MAX);
        let id = raw.len() as u32;
        for m in &explored.members {
            let previous = membership.insert(*m, id);
            debug_assert!(previous.is_none());
        }
        raw.push((*explored.members.iter().min().unwrap(), explored.members.len()));
    }
    if nu.is_none() && membership.len() != keys.len() {
        return Err(Error::precondition("an orbit left the space of Hurwitz systems"));
    }
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&i| raw[i].0);
    let mut rank = vec![0u32; raw.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r as u32;
    }
    for id in membership.values_mut() {
        *id = rank[*id as usize];
    }
    let orbits = order.iter().map(|&i| OrbitSummary { canonical: engine.vector(raw[i].0), size: raw[i].1 }).collect();
    Ok(Partition { n, g_prime, d, mod_aut, orbits, membership, keys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{enumerate_hs, DEFAULT_BUDGET};

    #[test]
    fn d3_triangle_orbit_covers_everything() {
        let all = enumerate_hs(3, 0, 3, None, DEFAULT_BUDGET).unwrap();
        let report = orbit(&all[0], &OrbitOptions::mod_aut()).unwrap();
        assert_eq!(report.size, 18);
        assert!(!report.truncated);
    }

    #[test]
    fn d4_etale_has_two_orbits() {
        let p = partition(4, 2, 0, None, true, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.orbits.iter().map(|o| o.size).sum::<usize>(), 1440);
    }

    #[test]
    fn canonical_is_idempotent_and_a_member() {
        let v: HurwitzVector = "n=5 g=1 c=[x,x^4] ab=[y,x]".parse().unwrap();
        let r = orbit(&v, &OrbitOptions::default()).unwrap();
        let again = orbit(&r.canonical, &OrbitOptions::default()).unwrap();
        assert_eq!(again.canonical, r.canonical);
        assert_eq!(again.size, r.size);
        assert!(r.canonical <= v);
    }

    #[test]
    fn cap_truncates() {
        let v: HurwitzVector = "n=4 g=2 c=[] ab=[y,e,x,e]".parse().unwrap();
        let r = orbit(&v, &OrbitOptions { cap: 10, ..OrbitOptions::default() }).unwrap();
        assert!(r.truncated);
        assert!(r.size <= 10);
    }

    #[test]
    fn partition_orbits_are_disjoint_and_closed() {
        let p = partition(4, 1, 2, None, false, DEFAULT_BUDGET).unwrap();
        for (v, id) in p.members().step_by(7) {
            let r = orbit(&v, &OrbitOptions::default()).unwrap();
            assert_eq!(r.size, p.orbits[id].size);
            assert_eq!(r.canonical, p.orbits[id].canonical);
        }
    }
}
