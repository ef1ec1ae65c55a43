//! Command-line front end. Structures are printed as JSON; `verify-paper` prints a table.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::catalog::{catalog, CatalogOptions, CATALOG_BUDGET};
use crate::classification::{equivalent, Classifier};
use crate::error::{Error, Result};
use crate::hurwitz::{for_each_hs, HurwitzVector, NuType, DEFAULT_BUDGET};
use crate::invariants::{h2_sigma_order, schur_lift_product, sigma_adapted_class};
use crate::moves::{orbit, partition, MoveSet, OrbitCache, OrbitOptions, OrbitSummary, DEFAULT_CAP};
use crate::verify::{run_check, Grid, CHECK_IDS};

#[derive(Parser, Debug)]
#[command(name = "dihedral-covers", version, about = "Topological types of dihedral group actions on curves")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for cached orbit partitions; falls back to $DIHEDRAL_COVERS_CACHE.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ν-type, Σ and Schur data of a vector.
    Invariant {
        #[arg(short = 'v', long)]
        vector: HurwitzVector,
    },
    /// Canonical form of a Hurwitz generating system.
    Classify {
        #[arg(short = 'v', long)]
        vector: HurwitzVector,
    },
    /// Orbit of a vector under moves, or with --partition the orbits of a whole space.
    Orbit {
        #[arg(short = 'v', long, required_unless_present = "partition")]
        vector: Option<HurwitzVector>,
        #[arg(long)]
        mod_aut: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, requires_all = ["n", "gp", "d"], conflicts_with = "vector")]
        partition: bool,
        #[arg(short = 'n')]
        n: Option<u32>,
        #[arg(long)]
        gp: Option<u32>,
        #[arg(short = 'd')]
        d: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Whether two vectors have the same topological type.
    Equivalent {
        #[arg(long)]
        v1: HurwitzVector,
        #[arg(long)]
        v2: HurwitzVector,
    },
    /// Components of the locus of genus-g curves with a D_n-action.
    Catalog {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'g')]
        g: u64,
        /// Recompute all counts from orbit partitions.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = CATALOG_BUDGET)]
        budget: u128,
        /// Write the catalog here instead of standard output.
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Run the consistency checks and print a pass/fail table.
    VerifyPaper {
        #[arg(long, default_value = "small")]
        grid: Grid,
        /// Run only these checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
    /// Stream the Hurwitz generating systems of a space.
    Enumerate {
        #[arg(short = 'n')]
        n: u32,
        #[arg(long)]
        gp: u32,
        #[arg(short = 'd')]
        d: usize,
        /// Restrict to one ν-type, e.g. "rot1:2,refl:2".
        #[arg(long)]
        nu: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

/// Accepts the single-dash spellings `-v1`, `-v2` and `-gp`.
fn normalize(args: impl IntoIterator<Item = String>) -> Vec<String> {
    args.into_iter()
        .map(|a| match a.as_str() {
            "-v1" | "-v2" | "-gp" => format!("-{a}"),
            _ => a,
        })
        .collect()
}

/// Runs the command line and returns the exit status: 0 on success, 1 on a domain error,
/// 2 when a search budget is exceeded.
pub fn run(args: impl IntoIterator<Item = String>, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(normalize(args)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    match pool.install(|| execute(&cli, out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_budget() {
                2
            } else {
                1
            }
        }
    }
}

fn print_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    match &cli.command {
        Command::Invariant { vector } => {
            let nu = NuType::of_vector(vector)?;
            let sigma = nu.support();
            let hurwitz = vector.check_hurwitz().err();
            let trivial = vector.evaluate().is_identity();
            let schur = (vector.n() % 2 == 0 && trivial).then(|| schur_lift_product(vector)).transpose()?;
            let adapted = (vector.n() % 2 == 0 && trivial && sigma.only_noncentral_rotations())
                .then(|| sigma_adapted_class(vector))
                .transpose()?;
            print_json(
                out,
                &json!({
                    "vector": vector,
                    "hurwitz": hurwitz.is_none(),
                    "failure": hurwitz,
                    "evaluation": vector.evaluate(),
                    "nu": nu,
                    "sigma": sigma.classes().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "h2_sigma_order": h2_sigma_order(vector.n(), &sigma)?,
                    "schur": schur.map(|s| s.bit),
                    "sigma_adapted": adapted.map(|s| s.bit),
                }),
            )?;
        }
        Command::Classify { vector } => {
            writeln!(out, "{}", Classifier::new().canonical_invariant(vector)?.to_json())?;
        }
        Command::Orbit { vector, mod_aut, cap, partition: whole, n, gp, d, budget } => {
            if *whole {
                let (n, gp, d) = (n.expect("required"), gp.expect("required"), d.expect("required"));
                let orbits = cached_partition(cli, n, gp, d, *mod_aut, *budget)?;
                print_json(out, &json!({ "n": n, "g_prime": gp, "d": d, "mod_aut": mod_aut, "orbits": orbits }))?;
            } else {
                let v = vector.as_ref().expect("required");
                let report = orbit(v, &OrbitOptions { mod_aut: *mod_aut, move_set: None, cap: *cap })?;
                print_json(out, &report)?;
            }
        }
        Command::Equivalent { v1, v2 } => {
            writeln!(out, "{}", equivalent(v1, v2)?)?;
        }
        Command::Catalog { n, g, oracle, budget, out: path } => {
            let c = catalog(*n, *g, CatalogOptions { oracle: *oracle, budget: *budget })?;
            match path {
                Some(path) => c.write_atomic(path)?,
                None => writeln!(out, "{}", c.to_json())?,
            }
        }
        Command::VerifyPaper { grid, only } => {
            let ids: Vec<u32> = if only.is_empty() { CHECK_IDS.collect() } else { only.clone() };
            let mut all_passed = true;
            for id in ids {
                let outcome = run_check(id, *grid);
                all_passed &= outcome.passed;
                writeln!(out, "{outcome}")?;
                out.flush()?;
            }
            return Ok(if all_passed { 0 } else { 1 });
        }
        Command::Enumerate { n, gp, d, nu, budget } => {
            let nu = nu.as_deref().map(|s| NuType::parse(*n, s)).transpose()?;
            let mut failure = None;
            for_each_hs(*n, *gp, *d, nu.as_ref(), *budget, |v| {
                if failure.is_none() {
                    if let Err(e) = writeln!(out, "{v}") {
                        failure = Some(e);
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(Error::Io(e));
            }
        }
    }
    Ok(0)
}

fn cached_partition(cli: &Cli, n: u32, gp: u32, d: usize, mod_aut: bool, budget: u128) -> Result<Vec<OrbitSummary>> {
    let cache = cli.cache_dir.as_ref().map(OrbitCache::new).or_else(OrbitCache::from_env);
    let hash = MoveSet::standard(n, gp, d).hash();
    if let Some(cache) = &cache {
        if let Some(orbits) = cache.load(n, gp, d, mod_aut, &hash)? {
            return Ok(orbits);
        }
    }
    let p = partition(n, gp, d, None, mod_aut, budget)?;
    if let Some(cache) = &cache {
        cache.store(&p, &hash)?;
    }
    Ok(p.orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("dihedral-covers").chain(args.iter().copied()).map(String::from);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_etale() {
        let (code, out, _) = call(&["classify", "-v", "n=4 g=2 c=[] ab=[y,x^2,x,e]"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""case":"etale","schur":1"#), "{out}");
    }

    #[test]
    fn single_dash_long_flags() {
        let (code, out, _) = call(&["equivalent", "-v1", "n=4 g=2 c=[] ab=[y,e,x,e]", "-v2", "n=4 g=2 c=[] ab=[y,x^2,x,e]"]);
        assert_eq!((code, out.trim()), (0, "false"));
        let (code, out, _) = call(&["enumerate", "-n", "3", "-gp", "0", "-d", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 18);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["classify", "-v", "n=4 g=2 c=[] ab=[q,e,x,e]"]).0, 1);
        assert_eq!(call(&["enumerate", "-n", "6", "-gp", "2", "-d", "4", "--budget", "1000"]).0, 2);
        assert_eq!(call(&["enumerate", "-n", "3", "-gp", "0", "-d", "3", "--nu", "bogus:1"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
