use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use catminors::combinatorics::IntPartition;
use catminors::exactla::{CertificationMode, Verdict};

#[derive(Parser, Debug)]
#[command(name = "catminors", version, about = "Ideals of minors of catalecticant matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Scalar mode for rank computations.
    #[arg(long, value_enum, default_value_t = Mode::Modular, global = true)]
    pub mode: Mode,
    /// Number of random primes in modular mode.
    #[arg(long, default_value_t = 3, global = true)]
    pub primes: usize,
    /// Shorthand for `--mode exact`.
    #[arg(long, global = true)]
    pub exact: bool,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "CATMINORS_THREADS", default_value_t = 0, global = true)]
    pub threads: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Allow generic computations beyond N = 12.
    #[arg(long, global = true)]
    pub force: bool,
}

impl Common {
    pub fn certification(&self) -> CertificationMode {
        if self.exact || self.mode == Mode::Exact {
            CertificationMode::Exact
        } else {
            CertificationMode::modular(self.seed, self.primes.max(1))
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Modular,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Catalecticant matrices and their minor ideals.
    #[command(subcommand)]
    Cat(CatCommand),
    /// The symmetric-group model W_d^r.
    #[command(subcommand)]
    Generic(GenericCommand),
    /// Verification suites with built-in expectations.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
pub enum CatCommand {
    /// Row and column labels and entries of Cat(t,d−t;n).
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
    },
    /// Hilbert function of a random form, or of a sum of `--summands` powers.
    Hilbert {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        summands: Option<usize>,
    },
    /// The k×k minors of Cat(t,d−t;n).
    Minors {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        /// Print at most this many minors.
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Compares the degree-r pieces of I_k(Cat(t,d−t;n)) for several t.
    Compare {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Degree of the pieces (defaults to k).
        #[arg(long)]
        r: Option<usize>,
        /// Comma-separated list of t (defaults to 1..d−1).
        #[arg(long, value_delimiter = ',')]
        t: Vec<usize>,
        /// Exit with status 1 unless every verdict is this one.
        #[arg(long, value_parser = parse_verdict)]
        expect: Option<Verdict>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenericCommand {
    /// Compares I_k^r(a,b) ⊂ W_d^r for several pairs, shape by shape.
    Compare {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        /// Pairs `a:b`, comma-separated (defaults to all with a,b ≥ 1).
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        pairs: Vec<(usize, usize)>,
        /// Consecutive dependent samples that end the sampling.
        #[arg(long, default_value_t = catminors::symgrp::DEFAULT_PLATEAU)]
        plateau: usize,
        /// Exit with status 1 unless every module verdict is this one.
        #[arg(long, value_parser = parse_verdict)]
        expect: Option<Verdict>,
    },
    /// Multiplicities m_λ(W_d^r).
    Multiplicity {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        /// A single shape such as `5,3,1` (defaults to all shapes).
        #[arg(long, value_parser = parse_partition)]
        lambda: Option<IntPartition>,
        #[arg(long, value_enum, default_value_t = MethodArg::Character)]
        method: MethodArg,
    },
    /// Expands a generic flattening, optionally with its circled tableau.
    Flatten {
        /// Row blocks, `;`-separated lists of 1-based elements, e.g. `1,2;4,6;5,8`.
        #[arg(long)]
        alphas: String,
        #[arg(long)]
        betas: String,
        #[arg(long, default_value = "")]
        gammas: String,
        #[arg(long, value_parser = parse_partition)]
        lambda: Option<IntPartition>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Rank,
    Character,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Expect {
    /// Exit with status 1 unless every check matches its expectation.
    #[arg(long)]
    pub expect: bool,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// I_2(Cat(t,d−t;n)) in degree 2 is the same for all t.
    Pucci {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        expect: Expect,
    },
    /// I_3 in degree 3: equal for 2 ≤ t ≤ d−2, strictly larger than for t = 1.
    ThmMain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        expect: Expect,
    },
    /// Random instances of the 2×2 rewriting identity.
    Rel2x2 {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        expect: Expect,
    },
    /// 3×3 minors vanish on forms of rank at most 2.
    Secant {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[command(flatten)]
        expect: Expect,
    },
    /// The worked examples in W_3^3 and the subtableau construction.
    Examples {
        #[command(flatten)]
        expect: Expect,
    },
    /// dim I_k^r(1,d−1) equals the dimension of the shapes with ≥ k parts.
    OneFlattening {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        expect: Expect,
    },
}

pub fn parse_verdict(s: &str) -> Result<Verdict> {
    Ok(match s {
        "equal" => Verdict::Equal,
        "strictly_contained" => Verdict::StrictlyContained,
        "strictly_contains" => Verdict::StrictlyContains,
        "incomparable" => Verdict::Incomparable,
        _ => bail!("unknown verdict `{s}`"),
    })
}

pub fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(':').ok_or_else(|| anyhow!("expected `a:b`, got `{s}`"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

pub fn parse_partition(s: &str) -> Result<IntPartition> {
    let parts = s.split(',').map(|p| p.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>()?;
    IntPartition::new(parts).context("not a partition")
}

pub fn parse_blocks(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .filter(|b| !b.trim().is_empty())
        .map(|b| b.split(',').map(|x| x.trim().parse::<usize>().map_err(Into::into)).collect())
        .collect()
}
