use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ringlat::catalog::{self, Params};
use ringlat::harness::{self, HarnessConfig, HarnessSummary};
use ringlat::io::Extension;
use ringlat::lattice;
use ringlat::random::{self, RandomProfile};
use ringlat::report::{self, ExtensionReport};
use ringlat::{Error, Options};

#[derive(Parser)]
#[command(name = "ringlat", version, about = "Classify extensions of finite-dimensional commutative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a JSON classification report for an extension file.
    Analyze {
        input: PathBuf,
        /// Skip lattice enumeration.
        #[arg(long)]
        no_lattice: bool,
        /// Include wall-clock timings (the report is then not reproducible).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Write a catalog instance as an extension file.
    Examples {
        /// One of ex1, ex2, split, ff, ex5, remark7151, ex3-two-var, prop7170,
        /// tower-partition; `list` prints the names.
        name: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Export the Hasse diagram of the interval [R, S].
    Lattice {
        input: PathBuf,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Label DOT nodes with their bases.
        #[arg(long)]
        basis: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Write seeded random extension files.
    Random {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// default (p in {2,3}, dim <= 6), small (p = 2, dim <= 4) or wide
        /// (p in {2,3,5}, dim <= 8).
        #[arg(long, default_value = "default")]
        profile: String,
        #[arg(long, default_value = ".")]
        outdir: PathBuf,
    },
    /// Run the cross-check harness and print a JSON summary.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value = "default")]
        profile: String,
        /// Check the catalog instances instead of random ones.
        #[arg(long)]
        catalog: bool,
        /// Also run this many seeded R + J constructions.
        #[arg(long, default_value_t = 0)]
        builder: usize,
        /// Directory receiving one certificate file per failure.
        #[arg(long, default_value = "ringlat-certificates")]
        certificates: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Args, Clone)]
struct Caps {
    #[arg(long)]
    sample_budget: Option<usize>,
    #[arg(long)]
    scan_cap: Option<u64>,
    #[arg(long)]
    node_cap: Option<usize>,
}

impl Caps {
    fn options(&self, seed: Option<u64>) -> Options {
        let mut o = Options::default();
        if let Some(v) = self.sample_budget {
            o.sample_budget = v;
        }
        if let Some(v) = seed {
            o.seed = v;
        }
        if let Some(v) = self.scan_cap {
            o.scan_cap = v;
        }
        if let Some(v) = self.node_cap {
            o.node_cap = v;
        }
        o
    }
}

#[derive(Args, Clone)]
struct Budgets {
    /// Seed for sampling over rational function fields.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    caps: Caps,
}

impl Budgets {
    fn options(&self) -> Options {
        self.caps.options(self.seed)
    }
}

/// Error with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_cap() => 3,
            Error::Field(_)
            | Error::NotCommutative(..)
            | Error::NotAssociative(..)
            | Error::BadUnit(_)
            | Error::ParentMismatch(_)
            | Error::NotClosed
            | Error::NotAnIdeal(_)
            | Error::InvalidPrecondition(_)
            | Error::UnknownExample(_)
            | Error::Parse(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {}", path.display(), e) }
}

fn load(path: &Path) -> Result<Extension, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Extension::from_json(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure { code: 1, message: e.to_string() })
        }
    }
}

fn print_tallies(s: &HarnessSummary) {
    eprintln!("{:<32} {:>6} {:>6} {:>6} {:>12}", "check", "pass", "fail", "n/a", "unconfirmed");
    for (name, t) in &s.tallies {
        eprintln!("{:<32} {:>6} {:>6} {:>6} {:>12}", name, t.pass, t.fail, t.not_applicable, t.unconfirmed);
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Analyze { input, no_lattice, timings, budgets } => {
            let ext = load(&input)?;
            let a = report::analyze(&ext, &budgets.options(), !no_lattice)?;
            write_out(None, &ExtensionReport::new(&ext, &a, timings).to_json_pretty())?;
        }
        Command::Examples { name, m, n, q, e, seed, output } => {
            if name == "list" {
                write_out(None, &(catalog::NAMES.join("\n") + "\n"))?;
                return Ok(ExitCode::SUCCESS);
            }
            let ext = catalog::build(&name, &Params { m, n, q, e, seed })?;
            write_out(output.as_deref(), &ext.to_json())?;
        }
        Command::Lattice { input, dot, json, basis, budgets } => {
            let ext = load(&input)?;
            if !ext.alg.field().is_finite() {
                return Err(Failure { code: 2, message: "lattice enumeration needs a finite field".into() });
            }
            let lat = lattice::enumerate_interval(&ext.alg, &ext.r, &ext.s, &budgets.options())?;
            let text = if json && !dot {
                let mut s = serde_json::to_string_pretty(&lat.to_json(&ext.alg)).expect("serializable");
                s.push('\n');
                s
            } else {
                lat.to_dot(&ext.alg, basis)
            };
            write_out(None, &text)?;
        }
        Command::Random { seed, count, profile, outdir } => {
            let profile = RandomProfile::by_name(&profile)?;
            fs::create_dir_all(&outdir).map_err(|e| io_failure(&outdir, e))?;
            for ext in random::random_instances(&profile, seed, count)? {
                let path = outdir.join(format!("{}.json", ext.id));
                write_out(Some(&path), &ext.to_json())?;
            }
        }
        Command::Verify { seed, count, profile, catalog: use_catalog, builder, certificates, caps } => {
            let cfg = HarnessConfig { opts: caps.options(None), ..HarnessConfig::default() };
            let mut summary = if use_catalog {
                harness::run_batch(&catalog::standard()?, &cfg, seed, "catalog")
            } else {
                harness::run_random(&RandomProfile::by_name(&profile)?, seed, count, &cfg)?
            };
            if builder > 0 {
                let (t, certs) = harness::run_jacobson_builder(seed, builder, &cfg.opts);
                harness::add_builder_suite(&mut summary, t, certs);
            }
            print_tallies(&summary);
            write_out(None, &summary.to_json_pretty())?;
            if summary.fails() > 0 {
                fs::create_dir_all(&certificates).map_err(|e| io_failure(&certificates, e))?;
                for (i, c) in summary.certificates.iter().enumerate() {
                    let path = certificates.join(format!("{:03}_{}_{}.json", i, c.check, c.instance_id));
                    let text = serde_json::to_string_pretty(c).expect("serializable") + "\n";
                    write_out(Some(&path), &text)?;
                }
                eprintln!("{} failing checks; certificates in {}", summary.fails(), certificates.display());
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("RINGLAT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
