use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use expdio::solver::Mode;
use expdio::verify::Suite;

/// Solve, sieve and verify instances of a^x + b^y = c^z.
#[derive(Parser, Debug, Clone)]
#[command(name = "expdio", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Write records to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,

    /// Skip (p, q) pairs already present in --out.
    #[arg(long, global = true)]
    pub resume: bool,

    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub workers: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// a, b, c distinct primes, a < b
    #[value(name = "S")]
    S,
    /// gcd(a, b) = 1, 1 < a < b, no perfect powers
    #[value(name = "N")]
    N,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::S => Mode::Prime,
            ModeArg::N => Mode::Coprime,
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Enumerate solutions (x, y, z) within bounds.
    Solve(SolveArgs),
    /// Evaluate the necessary conditions on prime pairs (p, q).
    Sieve(SieveArgs),
    /// Continued fraction of sqrt(D) and its convergents.
    Cf(CfArgs),
    /// Run a property suite.
    Verify(VerifyArgs),
    /// Quality of an abc triple.
    Abcq(AbcArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[arg(long)]
    pub c: String,
    #[arg(long, value_enum, default_value_t = ModeArg::S)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 25)]
    pub max_z: u32,
    #[arg(long, default_value_t = 512)]
    pub max_bits: u64,
}

#[derive(Args, Debug, Clone)]
pub struct SieveArgs {
    #[arg(long, requires = "q", conflicts_with_all = ["p_range", "q_range"])]
    pub p: Option<String>,
    #[arg(long, requires = "p")]
    pub q: Option<String>,
    /// Inclusive range LO:HI; odd primes in it are used for p.
    #[arg(long, requires = "q_range", value_name = "LO:HI")]
    pub p_range: Option<String>,
    #[arg(long, requires = "p_range", value_name = "LO:HI")]
    pub q_range: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct CfArgs {
    #[arg(long, conflicts_with = "lemma35", required_unless_present = "lemma35")]
    pub d: Option<String>,
    /// Number of convergents; defaults to one period.
    #[arg(long)]
    pub terms: Option<usize>,
    /// Compare D = p^(2n) + 4 with its closed-form expansion.
    #[arg(long, requires_all = ["p", "n"])]
    pub lemma35: bool,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: Suite,
    #[arg(long)]
    pub max: Option<u64>,
    #[arg(long)]
    pub p_max: Option<u64>,
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long)]
    pub k_max: Option<u64>,
    #[arg(long = "box")]
    pub box_size: Option<u64>,
    #[arg(long)]
    pub d_max: Option<u64>,
    #[arg(long)]
    pub y_bound: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct AbcArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[arg(long)]
    pub c: String,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Sieve(_) => "sieve",
            Command::Cf(_) => "cf",
            Command::Verify(_) => "verify",
            Command::Abcq(_) => "abcq",
        }
    }

    /// Parameters echoed into every record. Output location, format,
    /// resume and worker count are left out so they cannot change the output.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        match self {
            Command::Solve(a) => {
                put("a", Some(a.a.clone()));
                put("b", Some(a.b.clone()));
                put("c", Some(a.c.clone()));
                put("mode", Some(Mode::from(a.mode).to_string()));
                put("max_z", Some(a.max_z.to_string()));
                put("max_bits", Some(a.max_bits.to_string()));
            }
            Command::Sieve(a) => {
                put("p", a.p.clone());
                put("q", a.q.clone());
                put("p_range", a.p_range.clone());
                put("q_range", a.q_range.clone());
            }
            Command::Cf(a) => {
                put("d", a.d.clone());
                put("terms", a.terms.map(|t| t.to_string()));
                put("lemma35", a.lemma35.then(|| "true".to_string()));
                put("p", a.p.clone());
                put("n", a.n.map(|n| n.to_string()));
            }
            Command::Verify(a) => {
                put("suite", Some(a.suite.to_string()));
                put("max", a.max.map(|v| v.to_string()));
                put("p_max", a.p_max.map(|v| v.to_string()));
                put("n_max", a.n_max.map(|v| v.to_string()));
                put("k_max", a.k_max.map(|v| v.to_string()));
                put("box", a.box_size.map(|v| v.to_string()));
                put("d_max", a.d_max.map(|v| v.to_string()));
                put("y_bound", a.y_bound.map(|v| v.to_string()));
            }
            Command::Abcq(a) => {
                put("a", Some(a.a.clone()));
                put("b", Some(a.b.clone()));
                put("c", Some(a.c.clone()));
            }
        }
        m
    }
}
