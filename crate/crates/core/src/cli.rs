//! Argument parsing for the `fermat-periods` binary.
//!
//! Exit status: 0 on success, 1 when a value disagrees with an embedded or golden
//! expectation, 2 on usage errors, 3 on any other failure.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::hodge_locus::{Budget, FamilyChoice};
use crate::report::{run_command, Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "fermat-periods", version, about = "Periods of linear cycles on Fermat hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List every linear cycle and check the count.
    Cycles(Common),
    /// Nonzero periods of P (or r·P + ř·P̌ with --m).
    Periods(Common),
    /// Exact rank of the period matrix.
    Rank(Common),
    /// H (matrix rank for the standard pair) next to K (closed form).
    Hdim(Common),
    /// K from the closed form.
    Kdim(Common),
    /// Codimension C for a complete-intersection type (--type 1,1,2).
    Cformula(Common),
    /// Reproduce the cubic (H, K) grid, five-tuples and Hodge numbers.
    Table1(Common),
    /// Reproduce the complete-intersection codimension table.
    CodimTable(Common),
    /// Truncated Taylor series of one form.
    Taylor(Common),
    /// N-reducedness of the Hodge locus of r·P + ř·P̌.
    Nreduced(Common),
    /// Concatenated-rank test on random pairs of cycle sums.
    SweepKernels(Common),
    /// Generic rank of P + x·P̌ and its rational exceptional points.
    ConstantRank(Common),
    /// Bicycles of the standard pair.
    Bicycles(Common),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    Full,
    Split,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// n, d and m may also be given positionally in that order.
    #[arg(value_name = "N D [M]", allow_negative_numbers = true)]
    pub positional: Vec<i64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<i64>,
    /// Coefficient(s) of P, comma-separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "1")]
    pub r: Vec<i64>,
    /// Coefficient(s) of P̌, comma-separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "1")]
    pub rcheck: Vec<i64>,
    /// Truncation order N.
    #[arg(long, default_value_t = 3)]
    pub order: u32,
    #[arg(long, value_enum, default_value = "auto")]
    pub family: FamilyArg,
    /// Largest number of parameter monomials allowed in a series.
    #[arg(long, default_value_t = Budget::default().max_monomials)]
    pub budget: u128,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
    /// Compare results with this report; write it instead with --bless.
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[arg(long, requires = "golden")]
    pub bless: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of primes for the modular rank cross-check.
    #[arg(long, default_value_t = 0)]
    pub primes: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Include the slow table rows.
    #[arg(long)]
    pub slow: bool,
    /// Complete-intersection degrees.
    #[arg(long = "type", value_delimiter = ',')]
    pub degrees: Vec<u32>,
    /// Exponent vector of the form for `taylor`.
    #[arg(long, value_delimiter = ',')]
    pub beta: Option<Vec<u32>>,
    /// Print wall-clock time to stderr.
    #[arg(long)]
    pub timing: bool,
}

impl Command {
    pub fn parts(&self) -> (&'static str, &Common) {
        match self {
            Command::Cycles(c) => ("cycles", c),
            Command::Periods(c) => ("periods", c),
            Command::Rank(c) => ("rank", c),
            Command::Hdim(c) => ("hdim", c),
            Command::Kdim(c) => ("kdim", c),
            Command::Cformula(c) => ("cformula", c),
            Command::Table1(c) => ("table1", c),
            Command::CodimTable(c) => ("codim-table", c),
            Command::Taylor(c) => ("taylor", c),
            Command::Nreduced(c) => ("nreduced", c),
            Command::SweepKernels(c) => ("sweep-kernels", c),
            Command::ConstantRank(c) => ("constant-rank", c),
            Command::Bicycles(c) => ("bicycles", c),
        }
    }
}

impl Common {
    pub fn to_config(&self) -> Result<RunConfig, Error> {
        if self.positional.len() > 3 {
            return Err(Error::InvalidParameters("at most three positional values (n d m)".into()));
        }
        let pos = |k: usize| self.positional.get(k).copied();
        let unsigned = |v: Option<i64>, name: &str| -> Result<Option<u32>, Error> {
            v.map(|x| u32::try_from(x).map_err(|_| Error::InvalidParameters(format!("{name} = {x} out of range"))))
                .transpose()
        };
        Ok(RunConfig {
            n: self.n.or(unsigned(pos(0), "n")?),
            d: self.d.or(unsigned(pos(1), "d")?),
            m: self.m.or(pos(2)),
            r: self.r.clone(),
            rcheck: self.rcheck.clone(),
            order: self.order,
            family: match self.family {
                FamilyArg::Full => FamilyChoice::Full,
                FamilyArg::Split => FamilyChoice::Split,
                FamilyArg::Auto => FamilyChoice::Auto,
            },
            budget: Budget {
                max_monomials: self.budget,
            },
            primes: self.primes,
            seed: self.seed,
            samples: self.samples,
            slow: self.slow,
            degrees: self.degrees.clone(),
            beta: self.beta.clone(),
        })
    }
}

/// Runs a parsed command line, writing to `out`; returns the exit status.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (name, common) = cli.command.parts();
    if let Some(j) = common.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let started = Instant::now();
    let result = common.to_config().and_then(|cfg| run_command(name, &cfg));
    let mut rep = match result {
        Ok(r) => r,
        Err(e @ (Error::InvalidParameters(_) | Error::MOutOfRange { .. } | Error::WrongDegree { .. })) => {
            let _ = writeln!(err, "usage error: {e}");
            return 2;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 3;
        }
    };
    if let Some(path) = &common.golden {
        if common.bless {
            if let Err(e) = std::fs::write(path, rep.to_json()) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 3;
            }
        } else if let Err(e) = rep.compare_golden(path) {
            let _ = writeln!(err, "usage error: {e}");
            return 2;
        }
    }
    let format = match common.format {
        FormatArg::Table => Format::Table,
        FormatArg::Json => Format::Json,
    };
    let _ = out.write_all(rep.render(format).as_bytes());
    if common.timing {
        let _ = writeln!(err, "elapsed: {:.3} s", started.elapsed().as_secs_f64());
    }
    if rep.failed {
        1
    } else {
        0
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    execute(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
