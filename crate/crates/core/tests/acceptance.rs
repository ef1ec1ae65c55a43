//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Each criterion runs the library check on the full grid and, where possible, an
//! independent oracle written here with plain integer arithmetic. The process fails
//! unless every criterion passes, apart from the known catalog defect that is
//! asserted to fail in exactly the documented way.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dihedral_covers::classification::{equivalent, nu_realizable};
use dihedral_covers::invariants::{h2_order, h2_sigma_order, relative_h2_class};
use dihedral_covers::moves::partition;
use dihedral_covers::verify::{desk_cells, run_check, CheckOutcome, Grid, FULL_GRID_BUDGET};
use dihedral_covers::{DihedralElement, HurwitzVector, NuType, SigmaSet};

/// Tuples at most this large are enumerated naively by the realizability oracle.
const NAIVE_LIMIT: u64 = 3_000_000;

/// Known HS(D_n; 2, 0) sizes for n = 3..=6.
const ETALE_COUNTS: [(u32, usize); 4] = [(3, 360), (4, 1440), (5, 1800), (6, 5040)];

/// `x^r y^s` in D_n as `(r, s)`.
type Dn = (u32, u32);

fn dn_mul(n: u32, a: Dn, b: Dn) -> Dn {
    let r = if a.1 == 0 { a.0 + b.0 } else { a.0 + n - b.0 };
    (r % n, a.1 ^ b.1)
}

fn dn_inv(n: u32, a: Dn) -> Dn {
    if a.1 == 0 {
        ((n - a.0) % n, 0)
    } else {
        a
    }
}

fn dn_comm(n: u32, a: Dn, b: Dn) -> Dn {
    dn_mul(n, dn_mul(n, a, b), dn_mul(n, dn_inv(n, a), dn_inv(n, b)))
}

fn dn_all(n: u32) -> Vec<Dn> {
    (0..2).flat_map(|s| (0..n).map(move |r| (r, s))).collect()
}

fn dn_generates(n: u32, gens: &[Dn]) -> bool {
    let mut seen = BTreeSet::from([(0, 0)]);
    let mut frontier = vec![(0, 0)];
    while let Some(a) = frontier.pop() {
        for &g in gens {
            let b = dn_mul(n, a, g);
            if seen.insert(b) {
                frontier.push(b);
            }
        }
    }
    seen.len() == 2 * n as usize
}

fn to_lib(n: u32, a: Dn) -> DihedralElement {
    DihedralElement::new(n, a.0, a.1 == 1).expect("valid element")
}

/// `xi^k eta^e` in the binary dihedral group of order `4n`.
type Bd = (u32, u32);

fn bd_mul(n: u32, a: Bd, b: Bd) -> Bd {
    let m = 2 * n;
    match (a.1, b.1) {
        (0, e) => ((a.0 + b.0) % m, e),
        (_, 0) => ((a.0 + m - b.0) % m, 1),
        _ => ((a.0 + m - b.0 + n) % m, 0),
    }
}

fn bd_inv(n: u32, a: Bd) -> Bd {
    let m = 2 * n;
    if a.1 == 0 {
        ((m - a.0) % m, 0)
    } else {
        ((a.0 + n) % m, 1)
    }
}

fn bd_comm(n: u32, a: Bd, b: Bd) -> Bd {
    bd_mul(n, bd_mul(n, a, b), bd_mul(n, bd_inv(n, a), bd_inv(n, b)))
}

/// Order of the kernel of the cover restricted to its commutator subgroup.
fn schur_order_by_commutators(n: u32) -> u32 {
    let all: Vec<Bd> = (0..2).flat_map(|e| (0..2 * n).map(move |k| (k, e))).collect();
    let gens: BTreeSet<Bd> = all.iter().flat_map(|&a| all.iter().map(move |&b| bd_comm(n, a, b))).collect();
    let mut sub = BTreeSet::from([(0, 0)]);
    let mut frontier = vec![(0, 0)];
    while let Some(a) = frontier.pop() {
        for &g in &gens {
            let b = bd_mul(n, a, g);
            if sub.insert(b) {
                frontier.push(b);
            }
        }
    }
    if sub.contains(&(n, 0)) {
        2
    } else {
        1
    }
}

/// A Σ-set survives when no commuting pair meeting it lifts to a central commutator.
fn sigma_order_by_pairs(n: u32, sigma: &SigmaSet) -> u32 {
    if schur_order_by_commutators(n) == 1 {
        return 1;
    }
    let all = dn_all(n);
    let killed = all.iter().filter(|&&a| sigma.contains(to_lib(n, a).class())).any(|&a| {
        all.iter().any(|&b| dn_mul(n, a, b) == dn_mul(n, b, a) && bd_comm(n, a, b) == (n, 0))
    });
    if killed {
        1
    } else {
        2
    }
}

fn naive_etale_count(n: u32) -> usize {
    let all = dn_all(n);
    let mut count = 0;
    for &a1 in &all {
        for &b1 in &all {
            let k = dn_comm(n, a1, b1);
            for &a2 in &all {
                for &b2 in &all {
                    if dn_mul(n, k, dn_comm(n, a2, b2)) == (0, 0) && dn_generates(n, &[a1, b1, a2, b2]) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// ν-types, up to automorphisms, carried by some Hurwitz generating system.
fn naive_realized(n: u32, gp: u32, d: usize) -> BTreeSet<NuType> {
    let all = dn_all(n);
    let len = d + 2 * gp as usize;
    let mut found = BTreeSet::new();
    let mut idx = vec![0usize; len];
    loop {
        let t: Vec<Dn> = idx.iter().map(|&i| all[i]).collect();
        if t[..d].iter().all(|&c| c != (0, 0)) {
            let mut p = (0, 0);
            for &c in &t[..d] {
                p = dn_mul(n, p, c);
            }
            for h in t[d..].chunks(2) {
                p = dn_mul(n, p, dn_comm(n, h[0], h[1]));
            }
            if p == (0, 0) && dn_generates(n, &t) {
                let c: Vec<DihedralElement> = t[..d].iter().map(|&e| to_lib(n, e)).collect();
                found.insert(NuType::of_elements(n, &c).expect("valid").orbit_representative());
            }
        }
        let mut k = 0;
        loop {
            if k == len {
                return found;
            }
            idx[k] += 1;
            if idx[k] < all.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

struct Line {
    id: u32,
    passed: bool,
    detail: String,
    elapsed: Duration,
    limit: Duration,
}

fn oracle_line(outcome: CheckOutcome, started: Instant, oracle: Result<String, String>) -> Line {
    let elapsed = started.elapsed();
    let (oracle_ok, note) = match oracle {
        Ok(s) => (true, s),
        Err(s) => (false, format!("oracle disagrees: {s}")),
    };
    let in_time = elapsed <= outcome.limit;
    Line {
        id: outcome.id,
        passed: outcome.passed && oracle_ok && in_time,
        detail: format!("{}; {note}{}", outcome.detail, if in_time { "" } else { "; over time limit" }),
        elapsed,
        limit: outcome.limit,
    }
}

fn criterion(id: u32) -> Line {
    let started = Instant::now();
    let outcome = run_check(id, Grid::Full);
    let oracle = match id {
        1 => oracle_h2(),
        2 => oracle_h2_sigma(),
        3 => oracle_etale(),
        6 => oracle_witness(),
        7 => oracle_realizability(),
        _ => Ok("no separate oracle".to_string()),
    };
    oracle_line(outcome, started, oracle)
}

fn oracle_h2() -> Result<String, String> {
    for n in 3..=12 {
        let expected = schur_order_by_commutators(n);
        let got = h2_order(n).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("n = {n}: {got} vs {expected}"));
        }
    }
    Ok("commutator subgroups agree for n = 3..12".to_string())
}

fn oracle_h2_sigma() -> Result<String, String> {
    let mut count = 0;
    for n in 3..=8 {
        for sigma in SigmaSet::all_subsets(n) {
            count += 1;
            let got = h2_sigma_order(n, &sigma).map_err(|e| e.to_string())?;
            if got != sigma_order_by_pairs(n, &sigma) {
                return Err(format!("n = {n}, sigma = {sigma}"));
            }
        }
    }
    Ok(format!("lifted pairs agree on {count} sets"))
}

fn oracle_etale() -> Result<String, String> {
    for (n, expected) in ETALE_COUNTS {
        let naive = naive_etale_count(n);
        let p = partition(n, 2, 0, None, true, FULL_GRID_BUDGET).map_err(|e| e.to_string())?;
        if naive != expected || p.total() != expected {
            return Err(format!("n = {n}: naive {naive}, partition {}, expected {expected}", p.total()));
        }
    }
    Ok("naive counts 360/1440/1800/5040".to_string())
}

fn oracle_witness() -> Result<String, String> {
    let v1: HurwitzVector = "n=4 g=2 c=[x,x] ab=[y,x,x,e]".parse().map_err(|e: dihedral_covers::Error| e.to_string())?;
    let v2: HurwitzVector = "n=4 g=2 c=[x,x] ab=[y,x^3,x,e]".parse().map_err(|e: dihedral_covers::Error| e.to_string())?;
    let same = equivalent(&v1, &v2).map_err(|e| e.to_string())?;
    let class = relative_h2_class(&v1, &v2).map_err(|e| e.to_string())?;
    let p = partition(4, 2, 2, None, true, FULL_GRID_BUDGET).map_err(|e| e.to_string())?;
    let apart = matches!((p.orbit_of(&v1), p.orbit_of(&v2)), (Some(a), Some(b)) if a != b);
    if same || class.bit != 1 || !apart {
        return Err(format!("witness: equivalent {same}, class {}, separate orbits {apart}", class.bit));
    }
    Ok("D_4 witness in distinct orbits with class 1".to_string())
}

fn oracle_realizability() -> Result<String, String> {
    let mut cells = 0;
    let mut types = 0;
    let mut by_shape: BTreeMap<(u32, u32, usize), BTreeSet<NuType>> = BTreeMap::new();
    for cell in desk_cells(Grid::Full) {
        let size = (2 * cell.n as u64).pow((cell.d + 2 * cell.g_prime as usize) as u32);
        if size > NAIVE_LIMIT {
            continue;
        }
        let realized = by_shape.entry((cell.n, cell.g_prime, cell.d)).or_insert_with(|| naive_realized(cell.n, cell.g_prime, cell.d));
        cells += 1;
        let admissible: BTreeSet<NuType> = NuType::all_with_total(cell.n, cell.d as u32)
            .into_iter()
            .filter(|nu| nu.is_admissible())
            .map(|nu| nu.orbit_representative())
            .collect();
        for nu in admissible {
            types += 1;
            let verdict = nu_realizable(cell.n, cell.g_prime, &nu).map_err(|e| e.to_string())?;
            if verdict.realizable != realized.contains(&nu) {
                return Err(format!("n = {}, g' = {}, nu = {nu}", cell.n, cell.g_prime));
            }
        }
    }
    Ok(format!("naive search agrees on {types} types over {cells} cells"))
}

/// Criterion 10 fails only through its étale count: with n = 4 an unramified action
/// has genus 1 + 8(g' - 1), so genus 5 admits none. Everything else must hold.
fn criterion_10_is_known_defect(line: &Line) -> bool {
    !line.passed
        && line.detail.starts_with("(3,2): 1 component(s)")
        && line.detail.contains(", 0 etale (2 required)")
        && line.detail.contains("records sound")
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    for id in 1..=10 {
        let line = criterion(id);
        println!(
            "{} criterion {:>2}  {:>8.2}s / {:>4}s  {}",
            if line.passed { "PASS" } else { "FAIL" },
            line.id,
            line.elapsed.as_secs_f64(),
            line.limit.as_secs(),
            line.detail
        );
        let expected_red = line.id == 10 && criterion_10_is_known_defect(&line);
        if !line.passed && !expected_red {
            unexpected.push(line.id);
        }
    }
    if unexpected.is_empty() {
        println!("all criteria pass except the known catalog étale defect (criterion 10)");
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
