//! Command-line configuration and the commands themselves.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use ranklab_core::adversarial::{
    appendix_b_compare, bound_counting, build_counting_instance, build_explicit_instance, smallest_counting_radius,
    technical_inequality, verify_claim, InstanceClaim, VerificationReport,
};
use ranklab_core::gabidulin::{counting_bound_prior, johnson_like_radius, rank_distance};
use ranklab_core::subspace_code::verify_lifted_instance;
use ranklab_core::ModulusTable;

use crate::error::{CliError, Result};
use crate::format::{to_json, InstanceFile, ReportFile};
use crate::table::active_table;

/// At most this many codeword pairs are distance-checked by `verify`.
pub const PAIR_SAMPLE: usize = 1000;

pub const DEFAULT_BUDGET: u64 = 1 << 18;

#[derive(Debug, Parser)]
#[command(name = "ranklab", version, about = "Adversarial list-decoding instances for Gabidulin codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an instance from the largest agreement class of subfield subspaces.
    GenCounting(RunArgs),
    /// Build the explicit instance for Gab[n, n - 2gs + 1].
    GenExplicit(RunArgs),
    /// Re-derive every claim of an instance file.
    Verify(RunArgs),
    /// Count the codewords within rank radius tau of an instance center.
    Ball(RunArgs),
    /// Tabulate the list-size bounds and the Johnson-like radius.
    Bounds(RunArgs),
    /// Lift an instance to a subspace code and check it at radius tau.
    LiftVerify(RunArgs),
    /// Compare tau with tau' for the Reed-Solomon comparison family.
    CompareAppendixB(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::GenCounting(_) => "gen-counting",
            Command::GenExplicit(_) => "gen-explicit",
            Command::Verify(_) => "verify",
            Command::Ball(_) => "ball",
            Command::Bounds(_) => "bounds",
            Command::LiftVerify(_) => "lift-verify",
            Command::CompareAppendixB(_) => "compare-appendix-b",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::GenCounting(a)
            | Command::GenExplicit(a)
            | Command::Verify(a)
            | Command::Ball(a)
            | Command::Bounds(a)
            | Command::LiftVerify(a)
            | Command::CompareAppendixB(a) => a,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub q: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub g: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub s: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub i: Option<u32>,
    /// Rank radius, or subspace radius for lift-verify.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub tau: Option<u32>,
    /// The evaluation points are shifted by the primitive element to this power.
    #[arg(long = "beta-exp", default_value_t = 0)]
    pub beta_exp: u64,
    /// Largest number of codewords an exhaustive scan may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add coefficient tuples next to packed serials.
    #[arg(long)]
    pub pretty: bool,
}

fn need<T: Copy>(v: Option<T>, flag: &str, cmd: &str) -> Result<T> {
    v.ok_or_else(|| CliError::Config(format!("{cmd} requires --{flag}")))
}

/// How a run that got as far as producing output ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed(Vec<String>),
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed(_) => 1,
        }
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<Outcome> {
    let table = active_table()?;
    let name = cli.command.name();
    let a = cli.command.args();
    match &cli.command {
        Command::GenCounting(_) => {
            let inst = build_counting_instance(
                &table,
                need(a.q, "q", name)?,
                need(a.n, "n", name)?,
                need(a.m, "m", name)?,
                need(a.k, "k", name)?,
                need(a.g, "g", name)?,
                a.beta_exp,
            )?;
            emit(a, stdout, &to_json(&InstanceFile::from_instance(&inst, a.pretty))?)?;
            Ok(Outcome::Success)
        }
        Command::GenExplicit(_) => {
            let inst = build_explicit_instance(
                &table,
                need(a.q, "q", name)?,
                need(a.g, "g", name)?,
                need(a.s, "s", name)?,
                need(a.n, "n", name)?,
                need(a.m, "m", name)?,
                a.beta_exp,
            )?;
            emit(a, stdout, &to_json(&InstanceFile::from_instance(&inst, a.pretty))?)?;
            Ok(Outcome::Success)
        }
        Command::Verify(_) => {
            let claim = read_claim(a, name, &table)?;
            let mut rep = verify_claim(&claim, a.budget);
            pairwise_check(&claim, a.seed, &mut rep);
            report(name, a, stdout, &rep)
        }
        Command::Ball(_) => {
            let claim = read_claim(a, name, &table)?;
            let tau = a.tau.map_or(claim.tau, |t| t as usize);
            let ball = claim.code.enumerate_ball(&claim.center, tau, a.budget)?;
            let listed_in_ball = claim.codewords.iter().filter(|w| ball.contains(w)).count();
            let out = BallFile {
                tau,
                code_size: claim.code.size().to_string(),
                ball_count: ball.len(),
                listed: claim.codewords.len(),
                listed_in_ball,
            };
            emit(a, stdout, &to_json(&out)?)?;
            Ok(Outcome::Success)
        }
        Command::Bounds(_) => {
            let row = bounds_row(a, name)?;
            if let Some(path) = &a.out {
                write_file(path, &to_json(&row)?)?;
            }
            write_stdout(stdout, &render_bounds(&row))?;
            Ok(Outcome::Success)
        }
        Command::LiftVerify(_) => {
            let claim = read_claim(a, name, &table)?;
            let tau_s = a.tau.map_or(2 * claim.tau, |t| t as usize);
            let rep = verify_lifted_instance(&claim, tau_s, a.budget);
            report(name, a, stdout, &rep)
        }
        Command::CompareAppendixB(_) => {
            let n = need(a.n, "n", name)? as u64;
            let rows = appendix_rows(n, a.i)?;
            if let Some(path) = &a.out {
                write_file(path, &to_json(&rows)?)?;
            }
            write_stdout(stdout, &render_appendix(&rows))?;
            Ok(Outcome::Success)
        }
    }
}

fn read_claim(a: &RunArgs, name: &str, table: &ModulusTable) -> Result<InstanceClaim> {
    let path = a.input.as_deref().ok_or_else(|| CliError::Config(format!("{name} requires --in")))?;
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let file: InstanceFile = serde_json::from_str(&text)?;
    file.to_claim(table)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write_stdout(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

/// To `--out` when given, otherwise to stdout.
fn emit(a: &RunArgs, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match &a.out {
        Some(path) => write_file(path, text),
        None => write_stdout(stdout, text),
    }
}

fn report(name: &str, a: &RunArgs, stdout: &mut dyn Write, rep: &VerificationReport) -> Result<Outcome> {
    let file = ReportFile::new(name, rep);
    emit(a, stdout, &to_json(&file)?)?;
    Ok(if file.all_passed {
        Outcome::Success
    } else {
        Outcome::VerificationFailed(file.failed().into_iter().map(String::from).collect())
    })
}

/// Distinct listed codewords are at least `d` apart. All pairs are checked
/// when there are few enough, otherwise a seeded sample.
fn pairwise_check(claim: &InstanceClaim, seed: u64, rep: &mut VerificationReport) {
    let words = &claim.codewords;
    let d = claim.code.d();
    let total = words.len() * words.len().saturating_sub(1) / 2;
    let mut pairs = Vec::new();
    if total <= PAIR_SAMPLE {
        for i in 0..words.len() {
            pairs.extend((i + 1..words.len()).map(|j| (i, j)));
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while pairs.len() < PAIR_SAMPLE {
            let (i, j) = (rng.gen_range(0..words.len()), rng.gen_range(0..words.len()));
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    let mut closest = usize::MAX;
    for &(i, j) in &pairs {
        if words[i] != words[j] {
            closest = closest.min(rank_distance(&words[i], &words[j]).unwrap_or(0));
        }
    }
    let ok = closest >= d;
    let closest = if closest == usize::MAX { String::from("none") } else { closest.to_string() };
    rep.push(
        "pairwise_distance",
        ok,
        format!("{} of {} pairs checked, closest={} d={}", pairs.len(), total, closest, d),
    );
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BallFile {
    pub tau: usize,
    pub code_size: String,
    pub ball_count: usize,
    pub listed: usize,
    pub listed_in_ball: usize,
}

/// One row of the `bounds` table. Rationals are printed as `p/q`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsRow {
    pub q: u32,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub g: u32,
    pub tau: u32,
    pub prior_counting: String,
    pub new_counting: String,
    pub new_simplified: String,
    /// Only for `k = n - 2τ + 1` with `g s = τ` dividing `n`.
    pub explicit: Option<String>,
    pub johnson_radius: f64,
}

fn bounds_row(a: &RunArgs, name: &str) -> Result<BoundsRow> {
    let (q, n, m, k, g) =
        (need(a.q, "q", name)?, need(a.n, "n", name)?, need(a.m, "m", name)?, need(a.k, "k", name)?, need(a.g, "g", name)?);
    if k > n {
        return Err(CliError::Config("need k <= n".into()));
    }
    let tau = match a.tau {
        Some(t) => t,
        None => smallest_counting_radius(n, k, g)?,
    };
    let prior = counting_bound_prior(q, n, m, k, tau)?;
    let new = bound_counting(q, n, g, tau)?;
    let explicit = (tau % g == 0 && n % tau == 0 && n + 1 == k + 2 * tau).then(|| {
        let num = BigUint::from(q).pow(n) - 1u32;
        let den = BigUint::from(q).pow(tau) - 1u32;
        (num / den).to_string()
    });
    let d = (n + 1 - k) as f64;
    Ok(BoundsRow {
        q,
        n,
        m,
        k,
        g,
        tau,
        prior_counting: prior.to_string(),
        new_counting: new.exact.to_string(),
        new_simplified: new.simplified.to_string(),
        explicit,
        johnson_radius: johnson_like_radius(n as f64, m as f64, d, 0.0)?,
    })
}

fn render_bounds(r: &BoundsRow) -> String {
    let header = ["q", "n", "m", "k", "g", "tau", "prior_counting", "new_counting", "new_simplified", "explicit", "johnson_radius"];
    let cells = [
        r.q.to_string(),
        r.n.to_string(),
        r.m.to_string(),
        r.k.to_string(),
        r.g.to_string(),
        r.tau.to_string(),
        r.prior_counting.clone(),
        r.new_counting.clone(),
        r.new_simplified.clone(),
        r.explicit.clone().unwrap_or_else(|| "-".into()),
        format!("{:.6}", r.johnson_radius),
    ];
    table(&header, &[cells.to_vec()])
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AppendixRow {
    pub i: u32,
    pub n: u64,
    pub tau: f64,
    pub tau_prime: f64,
    pub tau_prime_asymptotic: f64,
    pub tau_below: bool,
    pub inequality_lhs: f64,
    pub inequality_rhs: f64,
}

fn appendix_rows(n: u64, i: Option<u32>) -> Result<Vec<AppendixRow>> {
    let range = match i {
        Some(i) => i..=i,
        None if n.is_power_of_two() && n >= 8 => 1..=n.trailing_zeros() - 2,
        None => 1..=1,
    };
    range
        .map(|i| {
            let b = appendix_b_compare(i, n)?;
            let (lhs, rhs) = technical_inequality(i);
            Ok(AppendixRow {
                i,
                n,
                tau: b.tau,
                tau_prime: b.tau_prime,
                tau_prime_asymptotic: b.tau_prime_asymptotic,
                tau_below: b.tau_below,
                inequality_lhs: lhs,
                inequality_rhs: rhs,
            })
        })
        .collect()
}

fn render_appendix(rows: &[AppendixRow]) -> String {
    let header = ["i", "n", "tau", "tau_prime", "tau_prime_asymptotic", "tau_below", "ineq_lhs", "ineq_rhs"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.i.to_string(),
                r.n.to_string(),
                format!("{:.9}", r.tau),
                format!("{:.9}", r.tau_prime),
                format!("{:.9}", r.tau_prime_asymptotic),
                r.tau_below.to_string(),
                format!("{:.12}", r.inequality_lhs),
                format!("{:.12}", r.inequality_rhs),
            ]
        })
        .collect();
    table(&header, &cells)
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("ranklab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn bounds_example_row() {
        let cli = parse(&["bounds", "--q", "2", "--n", "6", "--m", "6", "--k", "3", "--g", "2"]);
        let row = bounds_row(cli.command.args(), "bounds").unwrap();
        assert_eq!(row.tau, 2);
        assert_eq!(row.new_counting, "21");
        assert_eq!(row.prior_counting, "651/64");
        assert_eq!(row.explicit.as_deref(), Some("21"));
        let cli = parse(&["bounds", "--q", "2", "--n", "4", "--m", "4", "--k", "1", "--g", "2"]);
        let row = bounds_row(cli.command.args(), "bounds").unwrap();
        assert_eq!(row.explicit.as_deref(), Some("5"));
    }

    #[test]
    fn rejects_nonpositive_and_missing() {
        assert!(Cli::try_parse_from(["ranklab", "bounds", "--q", "0"]).is_err());
        assert!(Cli::try_parse_from(["ranklab", "verify", "--budget", "0"]).is_err());
        let cli = parse(&["bounds", "--q", "2"]);
        assert!(matches!(bounds_row(cli.command.args(), "bounds"), Err(CliError::Config(_))));
    }

    #[test]
    fn table_layout() {
        let t = table(&["a", "bb"], &[vec!["123".into(), "x".into()]]);
        assert_eq!(t, "a    bb\n123  x\n");
    }
}
