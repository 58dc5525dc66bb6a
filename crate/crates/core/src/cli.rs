//! Batch front end behind the `wright` binary.
//!
//! Exit codes are part of the interface:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (for `prove`: every subinterval proved) |
//! | 1 | a negative result (`prove` false, `seed-check` non-empty, simulation did not settle) |
//! | 2 | `prove` stopped on a resource limit somewhere |
//! | 64 | bad command line, config or range |
//! | 66 | missing input |
//! | 73 | output cannot be written |

use std::fs::{self, File, OpenOptions};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::prover::{
    global_verdict, partition, read_certificates, simulate_sops, sweep, write_certificates,
    ProofConfig, SimError,
};
use crate::seed::{seed_long, AprioriParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_NO_VERDICT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_CANT_CREATE: i32 = 73;

/// File names inside the output directory.
pub const CERTIFICATES: &str = "certificates.jsonl";
pub const FLOQUET_CSV: &str = "floquet_report.csv";

#[derive(Debug, Parser)]
#[command(name = "wright", version, about = "Uniqueness proofs for slowly oscillating periodic solutions of Wright's equation")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Proof configuration (TOML with exactly the ProofConfig field names).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; created if missing.
    #[arg(long, global = true, default_value = "wright-out")]
    pub out: PathBuf,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Override the lower end of the α range (for `simulate`, the α value).
    #[arg(long, global = true, visible_alias = "alpha", allow_negative_numbers = true)]
    pub alpha_lo: Option<f64>,
    /// Override the upper end of the α range.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha_hi: Option<f64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the proof over the configured α range and append certificates.
    Prove,
    /// Check that no SOPS with q̄ >= 3 exists on width-0.1 subintervals.
    SeedCheck {
        /// Time resolution of the bounding functions.
        #[arg(long, default_value_t = 128)]
        n_time: u32,
        #[arg(long, default_value_t = 10)]
        n_period: u32,
    },
    /// Turn stored certificates into a CSV of multiplier bounds.
    FloquetReport,
    /// Simulate the attracting SOPS and write one period as CSV.
    Simulate {
        #[arg(long, default_value_t = 400.0)]
        horizon: f64,
        /// Integration steps per unit of time.
        #[arg(long, default_value_t = 256)]
        steps_per_unit: u32,
    },
}

/// Everything a subcommand needs, resolved from the command line.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub jobs: Option<usize>,
    pub alpha_lo: Option<f64>,
    pub alpha_hi: Option<f64>,
}

impl From<RunArgs> for RunManifest {
    fn from(a: RunArgs) -> Self {
        RunManifest {
            config: a.config,
            out: a.out,
            jobs: a.jobs,
            alpha_lo: a.alpha_lo,
            alpha_hi: a.alpha_hi,
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

impl RunManifest {
    /// The config file with range overrides applied, validated.
    fn load_config(&self) -> Result<ProofConfig, Failure> {
        let path = self
            .config
            .as_ref()
            .ok_or_else(|| fail(EXIT_USAGE, "--config is required"))?;
        let text = fs::read_to_string(path)
            .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
        let mut cfg: ProofConfig = toml::from_str(&text)
            .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
        if let Some(lo) = self.alpha_lo {
            cfg.alpha_lo = lo;
        }
        if let Some(hi) = self.alpha_hi {
            cfg.alpha_hi = hi;
        }
        cfg.validate()
            .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
        Ok(cfg)
    }

    fn ensure_out(&self) -> Result<(), Failure> {
        fs::create_dir_all(&self.out)
            .map_err(|e| fail(EXIT_CANT_CREATE, format!("{}: {e}", self.out.display())))
    }

    fn with_pool<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T, Failure> {
        match self.jobs {
            None => Ok(job()),
            Some(0) => Err(fail(EXIT_USAGE, "--jobs must be positive")),
            Some(j) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
                Ok(pool.install(job))
            }
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    let m = RunManifest::from(cli.run);
    let res = match cli.command {
        Command::Prove => cmd_prove(&m),
        Command::SeedCheck { n_time, n_period } => cmd_seed_check(&m, n_time, n_period),
        Command::FloquetReport => cmd_floquet_report(&m),
        Command::Simulate {
            horizon,
            steps_per_unit,
        } => cmd_simulate(&m, horizon, steps_per_unit),
    };
    match res {
        Ok(code) => code,
        Err(f) => {
            eprintln!("wright: {}", f.msg);
            f.code
        }
    }
}

fn cmd_prove(m: &RunManifest) -> Result<i32, Failure> {
    let cfg = m.load_config()?;
    m.ensure_out()?;
    let certs = m.with_pool(|| sweep(&cfg))?;

    let path = m.out.join(CERTIFICATES);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(|e| fail(EXIT_CANT_CREATE, format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    write_certificates(&mut w, &certs)
        .and_then(|_| w.flush())
        .map_err(|e| fail(EXIT_CANT_CREATE, format!("{}: {e}", path.display())))?;

    for c in &certs {
        let verdict = match c.verdict {
            Some(true) => "proved",
            Some(false) => "not proved",
            None => "no verdict",
        };
        let worst = c.worst_outcome().map_or("-", |k| k.as_str());
        println!(
            "[{}, {}] {verdict}: {} regions, worst {worst}, {:.1} s{}",
            c.alpha_lo,
            c.alpha_hi,
            c.region_count,
            c.wall_seconds,
            c.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default()
        );
    }
    println!("certificates appended to {}", path.display());
    Ok(match global_verdict(&certs) {
        Some(true) => EXIT_OK,
        Some(false) => EXIT_FALSE,
        None => EXIT_NO_VERDICT,
    })
}

fn cmd_seed_check(m: &RunManifest, n_time: u32, n_period: u32) -> Result<i32, Failure> {
    let lo = m.alpha_lo.unwrap_or(1.57);
    let hi = m.alpha_hi.unwrap_or(2.07);
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(fail(EXIT_USAGE, format!("bad range [{lo}, {hi}]")));
    }
    if n_time == 0 || n_period == 0 {
        return Err(fail(EXIT_USAGE, "--n-time and --n-period must be positive"));
    }
    let p = match &m.config {
        Some(_) => m.load_config()?.apriori(),
        None => AprioriParams::default(),
    };
    let mut all_empty = true;
    for a in partition(lo, hi, 0.1) {
        match seed_long(a, p, n_time, n_period) {
            None => println!("{a}: empty"),
            Some(r) => {
                all_empty = false;
                println!("{a}: q in {}, qbar in {}, M in {}", r.i_q, r.i_qbar, r.i_m);
            }
        }
    }
    Ok(if all_empty { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_floquet_report(m: &RunManifest) -> Result<i32, Failure> {
    let input = m.out.join(CERTIFICATES);
    let file = File::open(&input)
        .map_err(|e| fail(EXIT_NO_INPUT, format!("{}: {e}", input.display())))?;
    let certs = read_certificates(BufReader::new(file))
        .map_err(|e| fail(EXIT_NO_INPUT, format!("{}: {e}", input.display())))?;
    let path = m.out.join(FLOQUET_CSV);
    write_floquet_csv(&path, &certs)
        .map_err(|e| fail(EXIT_CANT_CREATE, format!("{}: {e}", path.display())))?;
    println!("{} rows written to {}", certs.len(), path.display());
    Ok(EXIT_OK)
}

fn write_floquet_csv(path: &Path, certs: &[crate::prover::ProofCertificate]) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "alpha_lo,alpha_hi,lambda_max_worst,outcome_kind")?;
    for c in certs {
        let lambda = c.lambda_max_worst.map(|l| l.to_string()).unwrap_or_default();
        let kind = c.worst_outcome().map_or("", |k| k.as_str());
        writeln!(w, "{},{},{lambda},{kind}", c.alpha_lo, c.alpha_hi)?;
    }
    w.flush()
}

fn cmd_simulate(m: &RunManifest, horizon: f64, steps_per_unit: u32) -> Result<i32, Failure> {
    let alpha = m
        .alpha_lo
        .ok_or_else(|| fail(EXIT_USAGE, "--alpha is required"))?;
    if steps_per_unit < 4 {
        return Err(fail(EXIT_USAGE, "--steps-per-unit must be at least 4"));
    }
    let sim = match simulate_sops(alpha, horizon, 1.0 / steps_per_unit as f64) {
        Ok(s) => s,
        Err(e @ (SimError::BadAlpha | SimError::BadStep)) => return Err(fail(EXIT_USAGE, e.to_string())),
        Err(e @ SimError::NonConvergence(_)) => {
            eprintln!("wright: alpha = {alpha}: {e}");
            return Ok(EXIT_FALSE);
        }
    };
    m.ensure_out()?;
    let path = m.out.join(format!("trajectory_alpha_{alpha}.csv"));
    let write = || -> io::Result<()> {
        let mut w = BufWriter::new(File::create(&path)?);
        writeln!(w, "t,x")?;
        for (t, x) in sim.trajectory() {
            writeln!(w, "{t},{x}")?;
        }
        w.flush()
    };
    write().map_err(|e| fail(EXIT_CANT_CREATE, format!("{}: {e}", path.display())))?;
    println!(
        "alpha = {alpha}: q = {:.6}, qbar = {:.6}, max = {:.6}, min = {:.6}",
        sim.q, sim.qbar, sim.max, sim.min
    );
    println!("trajectory written to {}", path.display());
    Ok(EXIT_OK)
}

