mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Failure;
use config::{Config, Threads};

#[derive(Parser, Debug)]
#[command(name = "siegel", version, about = "Exact computations with genus-1 and genus-2 modular forms")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Directory holding census caches
    #[arg(long, env = "SIEGEL_CACHE_DIR", default_value = ".siegel-cache", global = true)]
    cache_dir: PathBuf,
    /// Largest genus-2 field size the census may enumerate
    #[arg(long, default_value_t = 7, global = true)]
    max_q_g2: u64,
    /// Working precision for L-value reports
    #[arg(long, default_value_t = 256, global = true)]
    precision_bits: u32,
    #[arg(long, global = true)]
    enable_char2: bool,
    /// Worker threads for census partitions: a count or "auto"
    #[arg(long, default_value = "auto", global = true)]
    threads: Threads,
    /// Emit JSON
    #[arg(long, global = true)]
    json: bool,
    /// Also print which published table the output reproduces
    #[arg(long, global = true)]
    cite: bool,
    /// Never compute a census; fail if it is not cached
    #[arg(long, global = true)]
    cached_only: bool,
    /// Continue an interrupted census from its checkpoints
    #[arg(long, global = true)]
    resume: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count curves over F_q weighted by automorphisms
    Census {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        genus: u8,
        #[arg(long)]
        q: u64,
        /// Use the field of q^E elements
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Trace of T(p) on S_{j,k}(Sp4(Z)) from point counts
    Trace {
        #[arg(long)]
        j: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        p: u64,
        /// Report the eigenvalue of T(p^2) instead
        #[arg(long)]
        psq: bool,
    },
    /// Fourier coefficients of a genus-2 Siegel modular form
    Igusa {
        #[arg(long, value_parser = ["E4", "E6", "E10", "E12", "chi10", "chi12"])]
        form: String,
        #[arg(long)]
        max_disc: i64,
    },
    /// Elliptic modular forms of level one
    G1 {
        #[arg(long)]
        weight: i64,
        #[command(flatten)]
        mode: G1Mode,
    },
    /// Satake transform checks, spinor Euler factors and slopes
    Satake {
        #[command(flatten)]
        mode: SatakeMode,
    },
    /// Congruences between Siegel and elliptic eigenvalues
    Harder {
        #[command(flatten)]
        mode: HarderMode,
        /// Check primes p up to this bound
        #[arg(long, default_value_t = 37)]
        pmax: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct G1Mode {
    /// Eigenvalues a(p) for primes p up to P
    #[arg(long, value_name = "P")]
    hecke: Option<u64>,
    /// Normalized critical L-value ratios
    #[arg(long)]
    ratios: bool,
    /// Primes dividing critical values, as (l, t, j, k)
    #[arg(long)]
    congruence_primes: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SatakeMode {
    /// Check the Hecke-algebra identities
    #[arg(long)]
    verify_all: bool,
    /// Spinor Euler factor from λ(p) and λ(p²)
    #[arg(long, num_args = 5, value_names = ["J", "K", "P", "LAMBDA", "LAMBDAP2"], allow_hyphen_values = true)]
    spin: Option<Vec<String>>,
    /// Newton slopes of the spinor Euler factor
    #[arg(long, num_args = 5, value_names = ["J", "K", "P", "LAMBDA", "LAMBDAP2"], allow_hyphen_values = true)]
    slopes: Option<Vec<String>>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct HarderMode {
    /// One congruence: weight r, (j, k) and prime l
    #[arg(long, num_args = 4, value_names = ["R", "J", "K", "L"], allow_hyphen_values = true)]
    row: Option<Vec<i64>>,
    /// Every listed congruence
    #[arg(long)]
    all: bool,
}

pub struct Flags {
    pub json: bool,
    pub cite: bool,
    pub cached_only: bool,
    pub resume: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = cli.global;
    let config = Config {
        cache_dir: g.cache_dir,
        max_q_g2: g.max_q_g2,
        precision_bits: g.precision_bits,
        enable_char2: g.enable_char2,
        threads: g.threads,
    };
    let flags = Flags { json: g.json, cite: g.cite, cached_only: g.cached_only, resume: g.resume };
    match run(&config, &flags, &cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(config: &Config, flags: &Flags, cmd: &Command) -> Result<(), Failure> {
    config.validate().map_err(Failure::config)?;
    if let Threads::Fixed(n) = config.threads {
        siegel_core::census::configure_threads(n).map_err(Failure::config)?;
    }
    commands::dispatch(config, flags, cmd)
}
