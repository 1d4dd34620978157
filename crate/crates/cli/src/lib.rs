//! `klsym` command-line front end: `compute`, `verify` and `scan`.

pub mod record;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use klsym_core::arith::is_prime;
use klsym_core::epsilon::{
    constant_c_closed, eps_infinity_assembled, evans_sign, laumon_constant, sign_of,
};
use klsym_core::local_data::{delta_degree, h1c_degree, infinity_invariant_eigenvalues};
use klsym_core::lseries::{k7_root_residual, DEFAULT_BUDGET};
use klsym_core::{Engine, EngineOptions, Error, Kernel};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use record::{run_cell, RunRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const SLOW_BUDGET: u64 = 1_000_000_000_000;

#[derive(Parser, Debug)]
#[command(name = "klsym", version, about = "Symmetric-power Kloosterman L-polynomials and their functional equations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute M_k(p, T) for one (p, k) and check it.
    Compute(ComputeArgs),
    /// Run the closed-form identity suite and/or full pipelines on a grid.
    Verify(VerifyArgs),
    /// Compare sign(c) with the predicted sign for k = 7 or 11.
    Scan(ScanArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Pairs,
    Orbits,
}

#[derive(Args, Debug, Clone)]
pub struct EngineArgs {
    /// Extra series coefficients past the degree (default: by field size).
    #[arg(long)]
    pub guard: Option<u32>,
    /// Largest number of kernel visits allowed for one field.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Worker threads (default: KLSYM_THREADS or available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Raise the default budget to 10^12 visits.
    #[arg(long)]
    pub slow: bool,
    #[arg(long, value_enum, default_value = "pairs")]
    pub kernel: KernelArg,
    /// Directory for cached field tables.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Include wall-clock timings in the output.
    #[arg(long)]
    pub timings: bool,
}

impl EngineArgs {
    fn engine(&self) -> anyhow::Result<Engine> {
        let threads = match self.threads {
            Some(t) => t,
            None => match std::env::var("KLSYM_THREADS") {
                Ok(v) => v.parse().context("KLSYM_THREADS must be a number")?,
                Err(_) => 0,
            },
        };
        let budget = self
            .budget
            .unwrap_or(if self.slow { SLOW_BUDGET } else { DEFAULT_BUDGET });
        Ok(Engine::new(EngineOptions {
            threads,
            budget,
            kernel: match self.kernel {
                KernelArg::Pairs => Kernel::Pairs,
                KernelArg::Orbits => Kernel::Orbits,
            },
            cache_dir: self.cache_dir.clone(),
            ..EngineOptions::default()
        }))
    }
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,
    /// Write the Kloosterman histograms used to this directory.
    #[arg(long)]
    pub dump_histograms: Option<PathBuf>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Closed-form identities only (no enumeration).
    #[arg(long)]
    pub identities: bool,
    /// Full pipelines on the affordable part of the grid.
    #[arg(long)]
    pub full: bool,
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',')]
    pub pset: Option<Vec<u64>>,
    #[arg(long)]
    pub pmax: Option<u64>,
    #[arg(long)]
    pub kmax: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub pmax: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub emit: Emit,
    #[command(flatten)]
    pub engine: EngineArgs,
}

/// Runs a parsed command, writing data to `out` and logs to stderr.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Scan(a) => scan(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Verification { .. }) => EXIT_VERIFY,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn odd_primes(pset: &Option<Vec<u64>>, pmax: Option<u64>, default: &[u64]) -> anyhow::Result<Vec<u64>> {
    let primes = match (pset, pmax) {
        (Some(s), _) => s.clone(),
        (None, Some(m)) => (3..=m).filter(|&p| is_prime(p)).collect(),
        (None, None) => default.to_vec(),
    };
    for &p in &primes {
        klsym_core::arith::require_odd_prime(p)?;
    }
    Ok(primes)
}

fn compute(a: ComputeArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let engine = a.engine.engine()?;
    let rec = run_cell(&engine, a.p, a.k, a.engine.guard, a.engine.timings)?;
    if let Some(dir) = &a.dump_histograms {
        fs::create_dir_all(dir)?;
        for j in 1..=rec.delta + rec.guard {
            let h = engine.histogram(a.p, j)?;
            let path = dir.join(format!("kl-p{}-n{j}.csv", a.p));
            h.write_csv(std::io::BufWriter::new(fs::File::create(&path)?))?;
        }
    }
    match a.emit {
        Emit::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rec)?)?,
        Emit::Csv => write_records_csv(std::slice::from_ref(&rec), out)?,
    }
    Ok(report_failures(std::slice::from_ref(&rec)))
}

fn report_failures(records: &[RunRecord]) -> i32 {
    let mut code = EXIT_OK;
    for r in records {
        let failing = r.failing();
        if !failing.is_empty() {
            eprintln!("p={} k={}: failed checks: {}", r.p, r.k, failing.join(", "));
            code = EXIT_VERIFY;
        }
    }
    code
}

#[derive(Serialize)]
struct CsvCell<'a> {
    p: u64,
    k: u32,
    delta: u32,
    guard: u32,
    coeffs: String,
    c_computed: &'a str,
    c_closed: &'a str,
    all_pass: bool,
    failing: String,
}

fn write_records_csv(records: &[RunRecord], out: &mut dyn Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvCell {
            p: r.p,
            k: r.k,
            delta: r.delta,
            guard: r.guard,
            coeffs: r.coeffs.as_ref().map_or(String::new(), |c| c.join(" ")),
            c_computed: r.c_computed.as_deref().unwrap_or(""),
            c_closed: &r.c_closed,
            all_pass: r.all_pass(),
            failing: r.failing().join(" "),
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Failures of the closed-form identities at one `(p, k)`.
pub fn identity_failures(p: u64, k: u32) -> Vec<String> {
    let mut fails = Vec::new();
    let mut check = |name: &str, ok: Result<bool, Error>| match ok {
        Ok(true) => {}
        Ok(false) => fails.push(format!("p={p} k={k}: {name}")),
        Err(e) => fails.push(format!("p={p} k={k}: {name}: {e}")),
    };
    check("laumon_product", laumon_constant(p, k).map(|_| true));
    check("eps_infinity_assembly", eps_infinity_assembled(p, k).map(|_| true));
    let c = constant_c_closed(p, k);
    let delta = delta_degree(p, k);
    check(
        "c_squared",
        c.as_ref()
            .map_err(Clone::clone)
            .and_then(|c| Ok(c * c == BigInt::from(p).pow((k + 1) * delta.clone()?))),
    );
    check(
        "degree_cross_check",
        (|| {
            let lhs = h1c_degree(p, k)? as i64 - 1 - infinity_invariant_eigenvalues(p, k)?.len() as i64;
            Ok(lhs == delta.clone()? as i64)
        })(),
    );
    if k % 2 == 0 {
        check("even_k_positive_c", c.as_ref().map_err(Clone::clone).map(|c| c.is_positive()));
    } else {
        let (k, p) = (k as u64, p);
        check("odd_k_floor_identity", Ok(k / p - k / (2 * p) == (k + p) / (2 * p)));
    }
    if (k == 7 || k == 11) && p > k as u64 {
        check(
            "evans_sign",
            c.as_ref()
                .map_err(Clone::clone)
                .and_then(|c| Ok(sign_of(c) == evans_sign(p, k)?)),
        );
    }
    fails
}

#[derive(Serialize)]
struct IdentitySummary {
    cells: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct Skipped {
    p: u64,
    k: u32,
    reason: String,
}

#[derive(Serialize)]
struct FullSummary {
    records: Vec<RunRecord>,
    skipped: Vec<Skipped>,
}

#[derive(Serialize)]
struct VerifySummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    identities: Option<IdentitySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    full: Option<FullSummary>,
    pass: bool,
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (run_ids, run_full) = match (a.identities, a.full) {
        (false, false) => (true, true),
        flags => flags,
    };
    let mut pass = true;
    let identities = if run_ids {
        let primes = odd_primes(&a.pset, a.pmax.or(Some(97)), &[])?;
        let kmax = a.kmax.unwrap_or(50);
        let mut failures = Vec::new();
        for &p in &primes {
            for k in 1..=kmax {
                failures.extend(identity_failures(p, k));
            }
        }
        for f in &failures {
            eprintln!("identity failure: {f}");
        }
        pass &= failures.is_empty();
        Some(IdentitySummary {
            cells: primes.len() * kmax as usize,
            failures,
        })
    } else {
        None
    };
    let full = if run_full {
        let primes = odd_primes(&a.pset, a.pmax, &[3, 5, 7, 11, 13])?;
        let kmax = a.kmax.unwrap_or(10);
        let engine = a.engine.engine()?;
        let mut records = Vec::new();
        let mut skipped = Vec::new();
        for &p in &primes {
            for k in 1..=kmax {
                match run_cell(&engine, p, k, a.engine.guard, a.engine.timings) {
                    Ok(r) => records.push(r),
                    Err(e @ Error::Resource { .. }) => skipped.push(Skipped {
                        p,
                        k,
                        reason: e.to_string(),
                    }),
                    Err(e) => return Err(e.into()),
                }
            }
            engine.clear_cache();
        }
        pass &= report_failures(&records) == EXIT_OK;
        Some(FullSummary { records, skipped })
    } else {
        None
    };
    match a.emit {
        Emit::Json => {
            let summary = VerifySummary { identities, full, pass };
            writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
        }
        Emit::Csv => {
            let records = full.map(|f| f.records).unwrap_or_default();
            write_records_csv(&records, out)?;
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY })
}

#[derive(Serialize, Clone, Debug)]
pub struct ScanRow {
    pub p: u64,
    pub delta: Option<u32>,
    pub c: Option<String>,
    pub sign_c: Option<i32>,
    pub evans_sign: i32,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub a_p: Option<String>,
    /// `M_7` vanishes at `(p|105)·p^{−4}` (k = 7 only).
    pub root_ok: Option<bool>,
    pub error: Option<String>,
}

fn scan(a: ScanArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    if a.k != 7 && a.k != 11 {
        anyhow::bail!(Error::Domain(format!("scan supports k = 7 or 11, not {}", a.k)));
    }
    let engine = a.engine.engine()?;
    let primes: Vec<u64> = ((a.k as u64 + 1)..=a.pmax).filter(|&p| is_prime(p)).collect();
    let mut rows = Vec::new();
    let mut code = EXIT_OK;
    for p in primes {
        let evans = evans_sign(p, a.k)?;
        let row = match run_cell(&engine, p, a.k, a.engine.guard, false) {
            Ok(rec) => {
                let m = rec.polynomial.as_ref();
                let c = m.map(|m| m.leading().clone());
                let sign_c = c.as_ref().map(sign_of);
                let root_ok = match (a.k, m) {
                    (7, Some(m)) => Some(k7_root_residual(m)?.is_zero()),
                    _ => None,
                };
                let matches = sign_c.map(|s| s == evans);
                if matches != Some(true) || root_ok == Some(false) || !rec.all_pass() {
                    code = EXIT_VERIFY;
                }
                ScanRow {
                    p,
                    delta: Some(rec.delta),
                    c: c.map(|c| c.to_string()),
                    sign_c,
                    evans_sign: evans,
                    matches,
                    a_p: m.and_then(|m| m.coeffs.get(1)).map(|a| a.to_string()),
                    root_ok,
                    error: (!rec.all_pass()).then(|| format!("failed checks: {}", rec.failing().join(" "))),
                }
            }
            Err(e) => {
                if code == EXIT_OK {
                    code = EXIT_USAGE;
                }
                ScanRow {
                    p,
                    delta: delta_degree(p, a.k).ok(),
                    c: None,
                    sign_c: None,
                    evans_sign: evans,
                    matches: None,
                    a_p: None,
                    root_ok: None,
                    error: Some(e.to_string()),
                }
            }
        };
        if let Some(err) = &row.error {
            eprintln!("p={p}: {err}");
        }
        rows.push(row);
        engine.clear_cache();
    }
    match a.emit {
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Emit::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
    }
    Ok(code)
}
