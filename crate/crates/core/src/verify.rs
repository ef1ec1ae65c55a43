//! Named consistency checks between the invariants, the normal forms and brute-force orbit
//! computations, run over a grid of small cases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::catalog::{
    coincidence_check_pair, coincidence_exception_example, components, d2_equivalences, dd_constructions, CatalogOptions,
    ComponentRecord,
};
use crate::classification::{nu_realizable, CanonicalForm, Classifier};
use crate::error::{Error, Result};
use crate::group::{BinaryDihedralElement, DihedralElement};
use crate::hurwitz::{enumerate_hs, HurwitzVector, NuType, SigmaSet};
use crate::invariants::{h2_order, h2_sigma_order, relative_h2_class, schur_lift_product, SchurClass};
use crate::moves::{partition, Move, Partition};

/// Largest `(2n)^(d + 2g')` in the full grid.
pub const FULL_GRID_BUDGET: u128 = 10_000_000;
/// Largest `(2n)^(d + 2g')` in the small grid.
pub const SMALL_GRID_BUDGET: u128 = 200_000;
/// Minimum number of `(vector, move)` pairs tested for move soundness.
pub const MOVE_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grid {
    Small,
    Full,
}

impl Grid {
    pub fn budget(self) -> u128 {
        match self {
            Grid::Small => SMALL_GRID_BUDGET,
            Grid::Full => FULL_GRID_BUDGET,
        }
    }
}

impl std::str::FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Grid::Small),
            "full" => Ok(Grid::Full),
            _ => Err(Error::parse(format!("unknown grid '{s}', expected small or full"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub n: u32,
    pub g_prime: u32,
    pub d: usize,
}

/// Cells with `3 <= n <= 6`, `g' <= 2`, `d <= 4`, nonempty vectors and `(2n)^(d + 2g')` within budget.
pub fn desk_cells(grid: Grid) -> Vec<Cell> {
    let mut out = Vec::new();
    for n in 3..=6u32 {
        for g_prime in 0..=2u32 {
            for d in 0..=4usize {
                let k = d as u32 + 2 * g_prime;
                if k > 0 && (2 * n as u128).pow(k) <= grid.budget() {
                    out.push(Cell { n, g_prime, d });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2} {:<32} {:>8.2}s / {:>4}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

pub const CHECK_IDS: std::ops::RangeInclusive<u32> = 1..=10;

fn name_and_limit(id: u32) -> (&'static str, Duration) {
    let s = Duration::from_secs;
    match id {
        1 => ("second homology", s(1)),
        2 => ("relative second homology", s(1)),
        3 => ("etale classification", s(240)),
        4 => ("move soundness", s(120)),
        5 => ("invariant is complete", s(600)),
        6 => ("epsilon multiplicity", s(60)),
        7 => ("realizability", s(300)),
        8 => ("reflection rigidity", s(600)),
        9 => ("fixed locus coincidences", s(120)),
        10 => ("catalog regression", s(300)),
        _ => ("unknown", s(0)),
    }
}

/// Runs one check; the outcome passes only if every assertion holds within the time limit.
pub fn run_check(id: u32, grid: Grid) -> CheckOutcome {
    let (name, limit) = name_and_limit(id);
    let start = Instant::now();
    let result = match id {
        1 => check_h2(),
        2 => check_h2_sigma(),
        3 => check_etale(),
        4 => check_moves(grid),
        5 => check_completeness(grid),
        6 => check_multiplicity(grid),
        7 => check_realizability(grid),
        8 => check_rigidity(grid),
        9 => check_coincidences(),
        10 => check_catalog(),
        _ => Err(Error::precondition(format!("no check numbered {id}"))),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(Verdict { ok, detail }) => (ok, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if elapsed > limit {
        passed = false;
        detail.push_str(" (time limit exceeded)");
    }
    CheckOutcome { id, name, passed, detail, elapsed, limit }
}

pub fn run_all(grid: Grid) -> Vec<CheckOutcome> {
    CHECK_IDS.map(|id| run_check(id, grid)).collect()
}

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new(ok: bool, detail: impl Into<String>) -> Result<Self> {
        Ok(Self { ok, detail: detail.into() })
    }
}

fn check_h2() -> Result<Verdict> {
    let mut bad = Vec::new();
    for n in [3, 5, 7, 9, 11] {
        if h2_order(n)? != 1 {
            bad.push(format!("h2({n})"));
        }
    }
    for n in [4, 6, 8, 10, 12] {
        if h2_order(n)? != 2 {
            bad.push(format!("h2({n})"));
        }
    }
    for n in 2..=8u32 {
        let all: Vec<_> = BinaryDihedralElement::elements(n).collect();
        let kernel: BTreeSet<_> = all.iter().filter(|e| e.project().is_identity()).copied().collect();
        let expected = BTreeSet::from([BinaryDihedralElement::identity(n), BinaryDihedralElement::central(n)]);
        let homomorphism = all.iter().all(|a| all.iter().all(|b| (*a * *b).project() == a.project() * b.project()));
        if kernel != expected || !homomorphism || all.len() != 4 * n as usize {
            bad.push(format!("projection for n = {n}"));
        }
    }
    Verdict::new(bad.is_empty(), if bad.is_empty() { "10 orders, 7 projections".to_string() } else { format!("wrong: {}", bad.join(", ")) })
}

/// `|H_2,Σ|` from lifted commutators of commuting pairs meeting `sigma`.
pub fn h2_sigma_order_by_lifts(n: u32, sigma: &SigmaSet) -> Result<u32> {
    if h2_order(n)? == 1 {
        return Ok(1);
    }
    let all: Vec<DihedralElement> = crate::group::elements(n).collect();
    let killed = all.iter().filter(|a| sigma.contains(a.class())).any(|a| {
        all.iter().any(|b| {
            *a * *b == *b * *a
                && BinaryDihedralElement::lift(a).commutator(&BinaryDihedralElement::lift(b)) == BinaryDihedralElement::central(n)
        })
    });
    Ok(if killed { 1 } else { 2 })
}

fn four_case_rule(n: u32, sigma: &SigmaSet) -> u32 {
    if n % 2 == 1 || sigma.has_reflection() || sigma.has_central() {
        1
    } else {
        2
    }
}

fn check_h2_sigma() -> Result<Verdict> {
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 3..=8u32 {
        for sigma in SigmaSet::all_subsets(n) {
            count += 1;
            let order = h2_sigma_order(n, &sigma)?;
            if order != four_case_rule(n, &sigma) || order != h2_sigma_order_by_lifts(n, &sigma)? {
                bad.push(format!("n = {n}, sigma = {sigma}"));
            }
        }
    }
    Verdict::new(bad.is_empty(), if bad.is_empty() { format!("{count} sets") } else { format!("wrong: {}", bad.join("; ")) })
}

fn check_etale() -> Result<Verdict> {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 3..=6u32 {
        let p = partition(n, 2, 0, None, true, FULL_GRID_BUDGET)?;
        let expected = if n % 2 == 0 { 2 } else { 1 };
        ok &= p.len() == expected;
        if n % 2 == 0 {
            let mut bits: BTreeMap<usize, BTreeSet<SchurClass>> = BTreeMap::new();
            for (v, id) in p.members() {
                bits.entry(id).or_default().insert(schur_lift_product(&v)?);
            }
            let separated = bits.values().all(|b| b.len() == 1) && bits.values().collect::<BTreeSet<_>>().len() == p.len();
            let trivial: HurwitzVector = format!("n={n} g=2 c=[] ab=[y,e,x,e]").parse()?;
            let twisted: HurwitzVector = format!("n={n} g=2 c=[] ab=[y,x^{},x,e]", n / 2).parse()?;
            let apart = matches!((p.orbit_of(&trivial), p.orbit_of(&twisted)), (Some(a), Some(b)) if a != b);
            ok &= separated && apart;
        }
        notes.push(format!("n={n}: {} orbits of {}", p.len(), p.total()));
    }
    Verdict::new(ok, notes.join(", "))
}

fn check_moves(grid: Grid) -> Result<Verdict> {
    let cells = desk_cells(grid);
    let mut lists = Vec::new();
    for c in &cells {
        let all = enumerate_hs(c.n, c.g_prime, c.d, None, grid.budget())?;
        if !all.is_empty() {
            lists.push((c, all));
        }
    }
    let moves_per_cell: usize = lists.iter().map(|(c, _)| Move::all_for(c.n, c.g_prime, c.d).len()).sum();
    let per_cell = MOVE_SAMPLES.div_ceil(moves_per_cell.max(1)) + 1;
    let (mut pairs, mut violations) = (0usize, Vec::new());
    for (c, all) in &lists {
        let stride = (all.len() / per_cell).max(1);
        for v in all.iter().step_by(stride).take(per_cell) {
            let nu = NuType::of_vector(v)?;
            for mv in Move::all_for(c.n, c.g_prime, c.d) {
                pairs += 1;
                let w = mv.apply(v)?;
                let sound = w.is_hurwitz_system()
                    && w.evaluate() == v.evaluate()
                    && NuType::of_vector(&w)? == nu
                    && mv.inverse().apply(&w)? == *v;
                if !sound && violations.len() < 5 {
                    violations.push(format!("{mv} on {v}"));
                }
            }
        }
    }
    let ok = violations.is_empty() && pairs >= MOVE_SAMPLES;
    Verdict::new(ok, format!("{pairs} pairs over {} cells{}", lists.len(), if violations.is_empty() { String::new() } else { format!(", violations: {}", violations.join("; ")) }))
}

/// Orbits mod `Aut(D_n)` together with the canonical forms met on each.
struct CellOrbits {
    cell: Cell,
    partition: Partition,
    forms: Vec<BTreeSet<CanonicalForm>>,
}

fn cell_orbits(cell: Cell, budget: u128, classifier: &mut Classifier) -> Result<CellOrbits> {
    let p = partition(cell.n, cell.g_prime, cell.d, None, true, budget)?;
    let mut forms = vec![BTreeSet::new(); p.len()];
    for (v, id) in p.members() {
        forms[id].insert(classifier.canonical_invariant(&v)?);
    }
    Ok(CellOrbits { cell, partition: p, forms })
}

fn check_completeness(grid: Grid) -> Result<Verdict> {
    let mut classifier = Classifier::new();
    let (mut orbits, mut bad) = (0usize, Vec::new());
    for cell in desk_cells(grid) {
        let co = cell_orbits(cell, grid.budget(), &mut classifier)?;
        let constant = co.forms.iter().all(|f| f.len() == 1);
        let distinct: BTreeSet<_> = co.forms.iter().flatten().collect();
        if !constant || distinct.len() != co.partition.len() {
            bad.push(format!("{:?}", co.cell));
        }
        orbits += co.partition.len();
    }
    Verdict::new(bad.is_empty(), format!("{} cells, {orbits} orbits{}", desk_cells(grid).len(), fail_suffix(&bad)))
}

fn fail_suffix(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!(", mismatches: {}", bad.join(", "))
    }
}

/// Orbits grouped by the `Aut(D_n)`-orbit of their ν-type.
fn orbits_by_nu(p: &Partition) -> Result<BTreeMap<NuType, Vec<usize>>> {
    let mut out: BTreeMap<NuType, Vec<usize>> = BTreeMap::new();
    for (i, o) in p.orbits.iter().enumerate() {
        out.entry(NuType::of_vector(&o.canonical)?.orbit_representative()).or_default().push(i);
    }
    Ok(out)
}

fn check_multiplicity(grid: Grid) -> Result<Verdict> {
    let mut classifier = Classifier::new();
    let (mut singles, mut doubles, mut bad) = (0, 0, Vec::new());
    let cells = desk_cells(grid).into_iter().filter(|c| c.n % 2 == 0 && c.g_prime >= 1 && c.d >= 1);
    for cell in cells {
        let co = cell_orbits(cell, grid.budget(), &mut classifier)?;
        for (nu, ids) in orbits_by_nu(&co.partition)? {
            if !nu.support().only_noncentral_rotations() {
                continue;
            }
            match ids.len() {
                1 => singles += 1,
                2 => {
                    doubles += 1;
                    if matched_relative_class(&co.partition, ids[0], ids[1])? != Some(SchurClass::ONE) {
                        bad.push(format!("{cell:?} {nu}"));
                    }
                }
                k => bad.push(format!("{cell:?} {nu}: {k} orbits")),
            }
        }
    }
    let v1: HurwitzVector = "n=4 g=2 c=[x,x] ab=[y,x,x,e]".parse()?;
    let v2: HurwitzVector = "n=4 g=2 c=[x,x] ab=[y,x^3,x,e]".parse()?;
    let witness = relative_h2_class(&v1, &v2)? == SchurClass::ONE
        && classifier.canonical_invariant(&v1)? != classifier.canonical_invariant(&v2)?;
    if !witness {
        bad.push("D_4 witness pair".into());
    }
    Verdict::new(bad.is_empty(), format!("{singles} single, {doubles} split ν-orbits{}", fail_suffix(&bad)))
}

/// Relative class of two members, one from each orbit, with identical branch values.
fn matched_relative_class(p: &Partition, a: usize, b: usize) -> Result<Option<SchurClass>> {
    let mut by_c: BTreeMap<Vec<DihedralElement>, HurwitzVector> = BTreeMap::new();
    for (v, id) in p.members() {
        if id == a {
            by_c.entry(v.c().to_vec()).or_insert(v);
        }
    }
    for (w, id) in p.members() {
        if id == b {
            if let Some(v) = by_c.get(w.c()) {
                return relative_h2_class(v, &w).map(Some);
            }
        }
    }
    Ok(None)
}

fn check_realizability(grid: Grid) -> Result<Verdict> {
    let (mut tested, mut bad) = (0usize, Vec::new());
    for cell in desk_cells(grid) {
        let mut found = BTreeSet::new();
        for v in enumerate_hs(cell.n, cell.g_prime, cell.d, None, grid.budget())? {
            found.insert(NuType::of_vector(&v)?);
        }
        for nu in NuType::all_with_total(cell.n, cell.d as u32).into_iter().filter(NuType::is_admissible) {
            tested += 1;
            if nu_realizable(cell.n, cell.g_prime, &nu)?.realizable != found.contains(&nu) {
                bad.push(format!("{cell:?} {nu}"));
            }
        }
    }
    Verdict::new(bad.is_empty(), format!("{tested} admissible types{}", fail_suffix(&bad)))
}

fn check_rigidity(grid: Grid) -> Result<Verdict> {
    let (mut types, mut bad) = (0usize, Vec::new());
    for cell in desk_cells(grid) {
        let p = partition(cell.n, cell.g_prime, cell.d, None, true, grid.budget())?;
        for (nu, ids) in orbits_by_nu(&p)? {
            if nu.support().has_reflection() {
                types += 1;
                if ids.len() != 1 {
                    bad.push(format!("{cell:?} {nu}: {} orbits", ids.len()));
                }
            }
        }
    }
    Verdict::new(bad.is_empty(), format!("{types} ν-orbits with reflections{}", fail_suffix(&bad)))
}

fn check_coincidences() -> Result<Verdict> {
    let mut bad = Vec::new();
    let mut count = 0;
    for (n, h) in [(3, 0), (5, 0), (4, 2), (6, 3)] {
        count += 1;
        let r = coincidence_check_pair(n, h)?;
        if !r.passed() {
            bad.push(format!("pair ({n},{h}): {}", r.failures.join("; ")));
        }
    }
    for d4 in [2, 3] {
        count += 1;
        let r = coincidence_exception_example(d4)?;
        if !r.passed() {
            bad.push(format!("example d4 = {d4}: {}", r.failures.join("; ")));
        }
    }
    for n in [3, 4, 6] {
        for c in dd_constructions(n)? {
            count += 1;
            if !c.passed() {
                bad.push(format!("{:?} n = {n}: {}", c.kind, c.failures.join("; ")));
            }
        }
    }
    count += 1;
    let r = d2_equivalences()?;
    if !r.passed() {
        bad.push(format!("D_2: {}", r.failures.join("; ")));
    }
    Verdict::new(bad.is_empty(), format!("{count} reports{}", fail_suffix(&bad)))
}

fn records_sound(records: &[ComponentRecord]) -> bool {
    records.iter().all(|r| {
        let dimension = 3 * (r.g_prime as i64 - 1) + r.d as i64;
        let nu = NuType::of_vector(&r.representative).map(|nu| nu.orbit_representative());
        r.dimension == dimension && r.representative.is_hurwitz_system() && nu.ok().as_ref() == Some(&r.nu)
    })
}

fn check_catalog() -> Result<Verdict> {
    let oracle = CatalogOptions { oracle: true, ..CatalogOptions::default() };
    let small = components(3, 2, oracle)?;
    let small_ok = small.len() == 1 && small[0].dimension == 1;
    let d4 = components(4, 5, oracle)?;
    let etale = d4.iter().filter(|r| r.d == 0).count();
    let sound = records_sound(&small) && records_sound(&d4);
    Verdict::new(
        small_ok && etale == 2 && sound,
        format!(
            "(3,2): {} component(s); (4,5): {} components, {etale} etale (2 required); records {}",
            small.len(),
            d4.len(),
            if sound { "sound" } else { "unsound" }
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let small = desk_cells(Grid::Small);
        let full = desk_cells(Grid::Full);
        assert!(small.iter().all(|c| full.contains(c)));
        assert!(full.contains(&Cell { n: 5, g_prime: 2, d: 3 }));
        assert!(!full.contains(&Cell { n: 6, g_prime: 2, d: 3 }));
        assert!("medium".parse::<Grid>().is_err());
    }

    #[test]
    fn lifted_commutators_match_the_rule() {
        for n in 3..=6 {
            for sigma in SigmaSet::all_subsets(n) {
                assert_eq!(h2_sigma_order_by_lifts(n, &sigma).unwrap(), four_case_rule(n, &sigma), "{sigma}");
            }
        }
    }

    #[test]
    fn fast_checks_pass() {
        for id in [1, 2, 9] {
            let o = run_check(id, Grid::Small);
            assert!(o.passed, "{o}");
        }
        assert!(!run_check(11, Grid::Small).passed);
    }
}
