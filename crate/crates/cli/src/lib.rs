//! The `cubemob` command line.

pub mod audit;
pub mod cache;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubemob_core::census::{self, Method, DEFAULT_SEED};
use cubemob_core::face::axioms::corank_census;
use cubemob_core::mobius::{imp_poset, mobius_audit_on, mr_poset, MAX_IMP_POSET_N, MAX_MR_POSET_N};
use cubemob_core::poset::PosetTable;
use cubemob_core::subalgebra::{enumerate_by_closure, enumerate_subalgebras, MRSubalgebra};
use cubemob_core::Face;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cache::{Cache, CacheEntry, CacheKey};
use crate::report::{emit, Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cubemob_core::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Internal(String),
}

#[derive(Debug, Parser)]
#[command(name = "cubemob", version, about = "Exact combinatorics of the n-cube face semilattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Directory for the Möbius table cache.
    #[arg(long, env = "CUBEMOB_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the faces of L_n.
    Faces {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        n: u8,
    },
    /// List the MR-subalgebras of L_n.
    Subalgebras {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        n: u8,
        #[arg(long, value_enum, default_value = "structural")]
        method: EnumMethod,
    },
    /// Orbit, stabilizer and freezer table, one row per orbit.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        n: u8,
    },
    /// μ({1}, L_n) by brute force and by both recurrences.
    Mobius {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=12))]
        n: u8,
    },
    /// Count derangements of the n-cube.
    Derangements {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        n: u8,
        #[arg(long, value_enum, default_value = "both")]
        method: DerangementMethod,
    },
    /// Run every cross-check for n = 1..=N; exits 3 on any discrepancy.
    Audit {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        n: u8,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumMethod {
    Structural,
    Closure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerangementMethod {
    Inversion,
    Direct,
    Both,
}

/// Parses `args` (including the program name), runs the command and
/// writes the report to `out` and diagnostics to `err`. Returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, code)) => match emit(&report, cli.global.format) {
            Ok(bytes) => match out.write_all(&bytes) {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "cubemob: cannot write report: {e}");
                    EXIT_INTERNAL
                }
            },
            Err(e) => {
                let _ = writeln!(err, "cubemob: {e}");
                EXIT_INTERNAL
            }
        },
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "cubemob: {msg}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "cubemob: {e}");
            EXIT_INTERNAL
        }
    }
}

fn execute(cli: &Cli) -> Result<(Report, i32), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
        .map_err(|e| CliError::Internal(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Faces { n } => Ok((faces_report(n as usize), EXIT_OK)),
        Command::Subalgebras { n, method } => Ok((subalgebras_report(n as usize, method)?, EXIT_OK)),
        Command::Census { n } => Ok((census_report(n as usize, cli.global.seed)?, EXIT_OK)),
        Command::Mobius { n } => Ok((mobius_report(n as usize, cli.global.cache_dir.as_deref())?, EXIT_OK)),
        Command::Derangements { n, method } => Ok((derangements_report(n as usize, method)?, EXIT_OK)),
        Command::Audit { n } => {
            let outcome = audit::run_audit(n as usize, cli.global.seed);
            let code = if outcome.clean() { EXIT_OK } else { EXIT_DISCREPANCY };
            Ok((outcome.report(n as usize, cli.global.seed), code))
        }
    })
}

fn faces_report(n: usize) -> Report {
    let faces: Vec<Face> = Face::all(n).collect();
    let rows = faces
        .iter()
        .map(|f| vec![f.to_string(), f.corank().to_string(), (n - f.corank()).to_string()])
        .collect();
    let json = json!({
        "n": n,
        "count": faces.len(),
        "faces": faces.iter().map(|f| json!({"face": f.to_string(), "corank": f.corank()})).collect::<Vec<_>>(),
        "corank_census": corank_census(n),
    });
    Report::new(json, &["face", "corank", "dimension"], rows)
}

fn subalgebras_report(n: usize, method: EnumMethod) -> Result<Report, CliError> {
    let list: Vec<MRSubalgebra> = match method {
        EnumMethod::Structural => enumerate_subalgebras(n)?,
        EnumMethod::Closure => {
            if n > cubemob_core::subalgebra::MAX_CLOSURE_ORACLE_N {
                return Err(CliError::Usage(format!(
                    "--method closure supports n <= {}",
                    cubemob_core::subalgebra::MAX_CLOSURE_ORACLE_N
                )));
            }
            let mut found = enumerate_by_closure(n)?
                .iter()
                .map(|set| MRSubalgebra::from_face_set(n, set))
                .collect::<cubemob_core::Result<Vec<_>>>()?;
            found.sort();
            found
        }
    };
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for a in &list {
        let wire = serde_json::to_value(a)?;
        entries.push(json!({
            "subalgebra": a.to_string(),
            "blocks": wire.get("blocks").cloned().unwrap_or(Value::Null),
            "dimension": a.dimension(),
            "type": a.type_vector().to_string(),
        }));
        rows.push(vec![a.to_string(), a.dimension().to_string(), a.type_vector().to_string()]);
    }
    let json = json!({"n": n, "count": list.len(), "subalgebras": entries});
    Ok(Report::new(json, &["subalgebra", "dimension", "type"], rows))
}

const CENSUS_HEADER: [&str; 16] = [
    "id",
    "type",
    "r",
    "k",
    "orbit_formula",
    "orbit_brute",
    "stab_formula",
    "stab_brute",
    "fr_formula",
    "fr_brute",
    "im_rho_formula",
    "im_rho_brute",
    "f",
    "g",
    "s",
    "consistent",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn census_report(n: usize, seed: u64) -> Result<Report, CliError> {
    let rows = census::census(n)?;
    let (mode, subjects) = if n <= 3 {
        ("exhaustive", enumerate_subalgebras(n)?)
    } else if n <= census::MAX_BRUTE_N {
        ("sample", census::sample_subalgebras(n, 50, seed)?)
    } else {
        ("none", Vec::new())
    };
    let checks = census::formula_checks(&subjects)?;
    let verification = json!({
        "mode": mode,
        "seed": if mode == "sample" { json!(seed) } else { Value::Null },
        "checked": checks.len(),
        "agree": checks.iter().all(|c| c.agrees()),
    });
    let table = rows
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                r.type_vector.clone(),
                r.r.to_string(),
                r.k.to_string(),
                r.orbit_formula.to_string(),
                opt(&r.orbit_brute),
                r.stab_formula.to_string(),
                opt(&r.stab_brute),
                r.fr_formula.to_string(),
                opt(&r.fr_brute),
                r.im_rho_formula.to_string(),
                opt(&r.im_rho_brute),
                r.f.to_string(),
                r.g.to_string(),
                opt(&r.s),
                r.consistent().to_string(),
            ]
        })
        .collect();
    let json = json!({"n": n, "rows": serde_json::to_value(&rows)?, "verification": verification});
    Ok(Report::new(json, &CENSUS_HEADER, table))
}

/// Builds the Möbius tables of `poset`, reusing and refreshing the cache.
fn cached_poset<T>(poset: PosetTable<T>, kind: &str, n: usize, cache: Option<&mut Cache>) -> PosetTable<T> {
    let Some(cache) = cache else {
        return poset;
    };
    let key = CacheKey {
        kind: kind.to_string(),
        n: n as u32,
        hash: poset.content_hash(),
    };
    if let Some(entry) = cache.get(&key) {
        match poset.preload(entry.payload.clone()) {
            Ok(()) => {
                log::debug!("cache hit for {kind} n={n}");
                return poset;
            }
            Err(e) => log::warn!("discarding cached {kind} n={n}: {e}"),
        }
    }
    cache.put(CacheEntry::new(key, poset.mu_matrix()));
    poset
}

fn mobius_report(n: usize, cache_dir: Option<&std::path::Path>) -> Result<Report, CliError> {
    let mut cache = cache_dir.map(Cache::open);
    let mr = if n <= MAX_MR_POSET_N {
        Some(cached_poset(mr_poset(n)?, "mu-mr", n, cache.as_mut()))
    } else {
        None
    };
    let imp = if n <= MAX_IMP_POSET_N {
        Some(cached_poset(imp_poset(n)?, "mu-imp", n, cache.as_mut()))
    } else {
        None
    };
    let audit = mobius_audit_on(n, mr.as_ref(), imp.as_ref())?;
    let rows = vec![
        vec!["mu_bruteforce".into(), opt(&audit.mu_bruteforce)],
        vec!["mu_recurrence_paper".into(), audit.mu_recurrence_paper.to_string()],
        vec!["mu_recurrence_adjudicated".into(), audit.mu_recurrence_adjudicated.to_string()],
        vec!["mu_one_impl_oracle".into(), opt(&audit.mu_one_impl_oracle)],
        vec!["mu_one_impl_printed".into(), audit.mu_one_impl_printed.to_string()],
        vec!["discrepancies".into(), audit.discrepancies.len().to_string()],
    ];
    Ok(Report::new(serde_json::to_value(&audit)?, &["quantity", "value"], rows))
}

fn derangements_report(n: usize, method: DerangementMethod) -> Result<Report, CliError> {
    let method = match method {
        DerangementMethod::Inversion => Method::Inversion,
        DerangementMethod::Direct => Method::Direct,
        DerangementMethod::Both => Method::Both,
    };
    if method != Method::Direct && n > census::MAX_BRUTE_N {
        return Err(CliError::Usage(format!(
            "the inversion method supports n <= {}; use --method direct",
            census::MAX_BRUTE_N
        )));
    }
    let report = census::derangements(n, method)?;
    let rows = vec![vec![n.to_string(), opt(&report.inversion), opt(&report.direct), opt(&report.agree)]];
    Ok(Report::new(serde_json::to_value(&report)?, &["n", "inversion", "direct", "agree"], rows))
}
