//! `rootlift`: compute and verify the lifts of θ_R for the q-order-one root systems.

mod cache;
mod commands;
mod engine;
mod report;

use cache::{Cache, CACHE_ENV};
use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::Ctx;
use engine::Engine;
use report::{ConfigSummary, Stats, VerificationReport};
use rootlift::lattice::RootSystemSpec;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "rootlift", version, about = "Theta blocks of root systems, their Borcherds and Gritsenko lifts")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cache directory (default: $ROOTLIFT_CACHE_DIR, else $XDG_CACHE_HOME/rootlift).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Include wall-clock time and cache counters in the report.
    #[arg(long, global = true)]
    stats: bool,
}

#[derive(Args, Clone)]
struct Systems {
    /// Root system name (A4, A1+B3, A1+C3, B2+G2, 3A2, 3A1+A3, 2A1+A2+B2, 8A1) or "all".
    #[arg(long = "root", short = 'r', default_value = "all")]
    roots: Vec<String>,
}

#[derive(Args, Clone)]
struct Precision {
    /// Compare q-exponents up to this bound.
    #[arg(long, default_value_t = 3)]
    q_prec: i64,
    /// Compare ξ-exponents up to this bound.
    #[arg(long, default_value_t = 3)]
    xi_prec: u32,
    /// Shorthand for --q-prec 4 --xi-prec 4.
    #[arg(long)]
    deep: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List the root systems whose θ_R has q-order one.
    Classify,
    /// Lattices, discriminant forms and Conway correspondence.
    LatticeReport {
        #[command(flatten)]
        sys: Systems,
    },
    /// Expand a theta block η^e ∏ ϑ(forms) or a table row.
    Block {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        eta_power: i64,
        /// Comma-separated integer coefficients of a linear form; repeatable.
        #[arg(long = "form", allow_hyphen_values = true)]
        forms: Vec<String>,
        /// Table row name, e.g. A4 or B2+G2.
        #[arg(long, conflicts_with = "forms")]
        table: Option<String>,
        /// Specialize the table row at these integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "table")]
        x: Option<Vec<i64>>,
        #[arg(long, default_value_t = 4)]
        q_prec: i64,
    },
    /// Expand θ_R.
    ThetaR {
        #[command(flatten)]
        sys: Systems,
        #[arg(long, default_value_t = 4)]
        q_prec: i64,
    },
    /// Pull θ_R back along ζ_i ↦ ζ^{x_i}.
    Specialize {
        #[command(flatten)]
        sys: Systems,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Option<Vec<i64>>,
        #[arg(long, default_value_t = 6)]
        q_prec: i64,
    },
    /// Theta decomposition into vector-valued components.
    Decompose {
        #[command(flatten)]
        sys: Systems,
        /// Decompose ψ_R instead of θ_R.
        #[arg(long)]
        psi: bool,
        #[command(flatten)]
        prec: Precision,
    },
    /// Check G(θ_R) = B(ψ_R) coefficientwise.
    Verify {
        #[command(flatten)]
        sys: Systems,
        #[command(flatten)]
        prec: Precision,
    },
    /// Principal parts of ψ_R against the candidate list.
    PrincipalParts {
        #[command(flatten)]
        sys: Systems,
        #[command(flatten)]
        prec: Precision,
    },
    /// Multiplicities of the singular classes of ψ_R.
    Reflectivity {
        #[command(flatten)]
        sys: Systems,
        #[arg(long, default_value_t = 2)]
        norm_bound: i64,
        #[command(flatten)]
        prec: Precision,
    },
    /// Divisor table of the Borcherds product.
    Divisors {
        #[command(flatten)]
        sys: Systems,
        #[arg(long, default_value_t = 2)]
        norm_bound: i64,
        #[command(flatten)]
        prec: Precision,
    },
    /// Weil-invariant subspace of the discriminant form.
    Invariants {
        #[command(flatten)]
        sys: Systems,
    },
    /// Split and table structure of the invariants, and the Conway correspondence.
    Structure {
        #[command(flatten)]
        sys: Systems,
    },
    /// Every check, for the selected root systems.
    Suite {
        #[command(flatten)]
        sys: Systems,
        #[command(flatten)]
        prec: Precision,
        /// Use (2, 2) precision.
        #[arg(long, conflicts_with = "deep")]
        quick: bool,
    },
}

fn resolve_systems(names: &[String]) -> Result<Vec<RootSystemSpec>, String> {
    let canonical = RootSystemSpec::canonical_names();
    let mut out: Vec<String> = Vec::new();
    for n in names.iter().flat_map(|n| n.split(',')) {
        let n = n.trim();
        if n.eq_ignore_ascii_case("all") {
            out.extend(canonical.iter().map(|s| s.to_string()));
            continue;
        }
        let spec: RootSystemSpec = n.parse().map_err(|e| format!("bad root system {n:?}: {e}"))?;
        let name = spec.to_string();
        if !canonical.iter().any(|c| *c == name) {
            return Err(format!("{name} is not one of {}", canonical.join(", ")));
        }
        out.push(name);
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|n| seen.insert(n.clone()));
    out.iter().map(|n| n.parse().map_err(|e| format!("{e}"))).collect()
}

fn cache_dir(global: &Global) -> Option<PathBuf> {
    if global.no_cache {
        return None;
    }
    if let Some(d) = &global.cache_dir {
        return Some(d.clone());
    }
    if let Some(d) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        return Some(d.into());
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|d| !d.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("rootlift"))
}

fn parse_forms(raw: &[String]) -> Result<Vec<Vec<i64>>, String> {
    raw.iter()
        .map(|f| {
            f.split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("bad --form {f:?}: {e}"))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    if let Some(j) = g.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let start = Instant::now();
    let cache = match cache_dir(g) {
        Some(d) => Cache::open(&d),
        None => Cache::disabled(),
    };

    let (sys, q_prec, xi_prec) = match &cli.command {
        Command::Classify | Command::Block { .. } => (None, 0, 0),
        Command::LatticeReport { sys } | Command::Invariants { sys } | Command::Structure { sys } => (Some(sys), 0, 0),
        Command::ThetaR { sys, q_prec } | Command::Specialize { sys, q_prec, .. } => (Some(sys), *q_prec, 0),
        Command::Decompose { sys, prec, .. }
        | Command::Verify { sys, prec }
        | Command::PrincipalParts { sys, prec }
        | Command::Reflectivity { sys, prec, .. }
        | Command::Divisors { sys, prec, .. } => {
            let (q, x) = if prec.deep { (4, 4) } else { (prec.q_prec, prec.xi_prec) };
            (Some(sys), q, x)
        }
        Command::Suite { sys, prec, quick } => {
            let (q, x) = if *quick {
                (2, 2)
            } else if prec.deep {
                (4, 4)
            } else {
                (prec.q_prec, prec.xi_prec)
            };
            (Some(sys), q, x)
        }
    };
    if q_prec < 0 || (sys.is_some() && q_prec == 0 && xi_prec > 0) {
        eprintln!("error: precision must be positive");
        return ExitCode::from(2);
    }
    let systems = match sys.map(|s| resolve_systems(&s.roots)).transpose() {
        Ok(s) => s.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let ctx = Ctx { systems, q_prec, xi_prec, engine: Engine::new(&cache) };

    let (name, checks) = match &cli.command {
        Command::Classify => ("classify", commands::classify()),
        Command::LatticeReport { .. } => ("lattice-report", commands::lattice_report(&ctx)),
        Command::Block { eta_power, forms, table, x, q_prec } => {
            let forms = match parse_forms(forms) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            ("block", commands::block(*eta_power, &forms, table.as_deref(), x.as_deref(), *q_prec))
        }
        Command::ThetaR { .. } => ("theta-r", commands::theta_r_cmd(&ctx)),
        Command::Specialize { x, .. } => ("specialize", commands::specialize_cmd(&ctx, x.as_deref())),
        Command::Decompose { psi, .. } => ("decompose", commands::decompose(&ctx, *psi)),
        Command::Verify { .. } => ("verify", commands::verify(&ctx)),
        Command::PrincipalParts { .. } => ("principal-parts", commands::principal_parts(&ctx)),
        Command::Reflectivity { norm_bound, .. } => ("reflectivity", commands::reflectivity(&ctx, *norm_bound)),
        Command::Divisors { norm_bound, .. } => ("divisors", commands::divisors(&ctx, *norm_bound)),
        Command::Invariants { .. } => ("invariants", commands::invariants(&ctx)),
        Command::Structure { .. } => ("structure", commands::structure(&ctx)),
        Command::Suite { .. } => ("suite", commands::suite(&ctx)),
    };

    let config = ConfigSummary {
        root_systems: ctx.systems.iter().map(|s| s.to_string()).collect(),
        q_prec,
        xi_prec,
    };
    let mut report = VerificationReport::new(name, config, checks);
    if g.stats {
        report.stats = Some(Stats {
            wall_clock_ms: start.elapsed().as_millis(),
            cache_hits: cache.hits(),
            cache_misses: cache.misses(),
            cache_writes: cache.writes(),
            cache_enabled: cache.is_enabled(),
        });
    }
    let json = g.json || matches!(g.format, Format::Json);
    print!("{}", if json { report.to_json() } else { report.to_text() });
    if report.verdict.is_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
