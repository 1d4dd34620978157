//! Kloosterman sums, Gauss sums and symmetric-power traces.
//!
//! Sums are kept as histograms: `n_x[c]` counts the `λ ∈ F_q^*` with
//! `Tr(λ + x/λ) = c`, so `Kl₂(F_q, x) = Σ_c n_x[c]·ζ^c`. Two batch kernels
//! fill the table for every `x` at once:
//!
//! * `Pairs` walks unordered pairs `{λ, μ}` in the log domain and bins
//!   `x = λμ` by `Tr(λ) + Tr(μ)`.
//! * `Orbits` evaluates one row per orbit of `x ↦ t²·x^{p^a}` (`t ∈ F_p^*`)
//!   and fills the rest of the orbit from `n_{t²x}[t·c] = n_x[c]`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::legendre;
use crate::cyclotomic::{wide, CycInt, EmbeddingTable};
use crate::error::{Error, Result};
use crate::finite_field::{Elem, FqTable};

/// Per-`x` evaluation straight from the definition.
pub fn kloosterman_sum(field: &FqTable, x: Elem) -> Result<CycInt> {
    let row = kloosterman_row(field, x)?;
    Ok(CycInt::from_exponent_weights(field.p(), &row))
}

/// `n_x[c]` for a single `x`, computed in element arithmetic.
pub fn kloosterman_row(field: &FqTable, x: Elem) -> Result<Vec<u32>> {
    if x == 0 || x >= field.q() {
        return Err(Error::domain("Kloosterman sums need a unit argument"));
    }
    let mut row = vec![0u32; field.p() as usize];
    for lambda in 1..field.q() {
        let other = field.mul(x, field.inverse(lambda)?);
        row[field.trace(field.add(lambda, other)) as usize] += 1;
    }
    Ok(row)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    #[default]
    Pairs,
    Orbits,
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Pairs => "pairs",
            Kernel::Orbits => "orbits",
        })
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pairs" => Ok(Kernel::Pairs),
            "orbits" => Ok(Kernel::Orbits),
            other => Err(Error::domain(format!("unknown kernel '{other}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HistogramOptions {
    pub kernel: Kernel,
    /// Worker count; 0 means the available parallelism.
    pub threads: usize,
    /// Largest number of inner-loop visits the kernel may spend.
    pub budget: u64,
}

impl Default for HistogramOptions {
    fn default() -> Self {
        HistogramOptions {
            kernel: Kernel::Pairs,
            threads: 0,
            budget: 10_000_000_000,
        }
    }
}

/// Kloosterman counts for every unit of a field, indexed by element.
#[derive(Clone, Debug)]
pub struct KloostermanHistogram {
    field: Arc<FqTable>,
    // row x at [x*p .. (x+1)*p]; row 0 is unused and zero
    counts: Vec<u32>,
}

impl KloostermanHistogram {
    pub fn field(&self) -> &FqTable {
        &self.field
    }

    pub fn row(&self, x: Elem) -> &[u32] {
        let p = self.field.p() as usize;
        &self.counts[x as usize * p..(x as usize + 1) * p]
    }

    pub fn kloosterman_sum(&self, x: Elem) -> CycInt {
        CycInt::from_exponent_weights(self.field.p(), self.row(x))
    }

    pub fn frob_trace(&self, x: Elem) -> FrobTrace {
        FrobTrace {
            a: self.kloosterman_sum(x).neg(),
            q: BigInt::from(self.field.q()),
        }
    }

    /// Iterates `(x, row)` over the units.
    pub fn rows(&self) -> impl Iterator<Item = (Elem, &[u32])> {
        let p = self.field.p() as usize;
        self.counts
            .chunks_exact(p)
            .enumerate()
            .skip(1)
            .map(|(x, row)| (x as Elem, row))
    }

    /// Plain-text dump: one line `x,n_x[0],…,n_x[p−1]` per unit.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        write!(out, "x")?;
        for c in 0..self.field.p() {
            write!(out, ",c{c}")?;
        }
        writeln!(out)?;
        for (x, row) in self.rows() {
            write!(out, "{x}")?;
            for n in row {
                write!(out, ",{n}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Inner-loop visits the kernel will make on this field.
pub fn kernel_cost(field: &FqTable, kernel: Kernel) -> u64 {
    let m = field.unit_count() as u64;
    match kernel {
        Kernel::Pairs => m * (m + 1) / 2,
        Kernel::Orbits => orbit_representatives(field).len() as u64 * m,
    }
}

/// Batch histogram over all units.
pub fn kloosterman_histogram_all(
    field: Arc<FqTable>,
    opts: &HistogramOptions,
) -> Result<KloostermanHistogram> {
    let resource = |detail: String| Error::Resource {
        p: field.p() as u64,
        n: field.n(),
        detail,
    };
    if !field.has_tables() {
        return Err(resource("histogram kernels need log tables for this field".into()));
    }
    let cost = kernel_cost(&field, opts.kernel);
    if cost > opts.budget {
        return Err(resource(format!(
            "{} kernel needs {cost} visits, over the budget of {}",
            opts.kernel, opts.budget
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| resource(format!("thread pool: {e}")))?;
    let tl = log_traces(&field);
    let by_log = pool.install(|| match opts.kernel {
        Kernel::Pairs => pairs_kernel(&tl, field.p() as usize, pool.current_num_threads()),
        Kernel::Orbits => orbits_kernel(&field, &tl),
    });

    let p = field.p() as usize;
    let exp = field.exp_table().expect("checked above");
    let mut counts = vec![0u32; field.q() as usize * p];
    for (s, row) in by_log.chunks_exact(p).enumerate() {
        let x = exp[s] as usize;
        counts[x * p..(x + 1) * p].copy_from_slice(row);
    }
    Ok(KloostermanHistogram { field, counts })
}

// tl[i] = Tr(g^i)
fn log_traces(field: &FqTable) -> Vec<u32> {
    let exp = field.exp_table().expect("tables present");
    exp.iter().map(|&x| field.trace(x)).collect()
}

fn pairs_kernel(tl: &[u32], p: usize, workers: usize) -> Vec<u32> {
    let m = tl.len();
    let workers = workers.max(1);
    (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut hist = vec![0u32; m * p];
            let mut i = w;
            while i < m {
                pair_row(tl, p, i, &mut hist);
                i += workers;
            }
            hist
        })
        .reduce_with(|mut a, b| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            a
        })
        .unwrap_or_default()
}

// pairs (i, j) with j >= i, weighted 2 off the diagonal
#[inline]
fn pair_row(tl: &[u32], p: usize, i: usize, hist: &mut [u32]) {
    let m = tl.len();
    let ti = tl[i] as usize;
    let bin = |c: usize| if c >= p { c - p } else { c };
    let s = (2 * i) % m;
    hist[s * p + bin(2 * ti)] += 1;
    // j in (i, m − i): s = i + j < m
    let split = (m - i).max(i + 1);
    for (j, &tj) in tl.iter().enumerate().take(split).skip(i + 1) {
        hist[(i + j) * p + bin(ti + tj as usize)] += 2;
    }
    for (j, &tj) in tl.iter().enumerate().skip(split) {
        hist[(i + j - m) * p + bin(ti + tj as usize)] += 2;
    }
}

/// One log-index per orbit of `s ↦ p^a·s + 2k·(m/(p−1))` on `Z/m`.
fn orbit_representatives(field: &FqTable) -> Vec<u32> {
    let m = field.unit_count() as usize;
    let mut seen = vec![false; m];
    let mut reps = Vec::new();
    for s in 0..m {
        if seen[s] {
            continue;
        }
        reps.push(s as u32);
        for (t, _) in orbit_moves(field) {
            for f in frobenius_images(field, s) {
                seen[(f + t) % m] = true;
            }
        }
    }
    reps
}

// (log shift of t², t as a residue) for t in a set of representatives of F_p^*/±1
fn orbit_moves(field: &FqTable) -> Vec<(usize, u32)> {
    let m = field.unit_count() as usize;
    let p = field.p() as usize;
    let exp = field.exp_table().expect("tables present");
    let step = m / (p - 1);
    (0..(p - 1) / 2)
        .map(|k| ((2 * k * step) % m, exp[k * step]))
        .collect()
}

fn frobenius_images(field: &FqTable, s: usize) -> Vec<usize> {
    let m = field.unit_count() as usize;
    let p = field.p() as usize;
    let mut out = Vec::with_capacity(field.n() as usize);
    let mut cur = s;
    for _ in 0..field.n() {
        out.push(cur);
        cur = (cur * p) % m;
    }
    out
}

fn orbits_kernel(field: &FqTable, tl: &[u32]) -> Vec<u32> {
    let m = tl.len();
    let p = field.p() as usize;
    let reps = orbit_representatives(field);
    let rows: Vec<Vec<u32>> = reps
        .par_iter()
        .map(|&s| {
            let s = s as usize;
            let mut row = vec![0u32; p];
            // λ = g^i, x/λ = g^{s−i}
            for i in 0..m {
                let j = if i <= s { s - i } else { s + m - i };
                let c = tl[i] as usize + tl[j] as usize;
                row[if c >= p { c - p } else { c }] += 1;
            }
            row
        })
        .collect();
    let mut hist = vec![0u32; m * p];
    let mut done = vec![false; m];
    let moves = orbit_moves(field);
    for (&s, row) in reps.iter().zip(&rows) {
        for &(shift, t) in &moves {
            for f in frobenius_images(field, s as usize) {
                let target = (f + shift) % m;
                if done[target] {
                    continue;
                }
                done[target] = true;
                let dst = &mut hist[target * p..(target + 1) * p];
                for (c, &n) in row.iter().enumerate() {
                    dst[(t as usize * c) % p] = n;
                }
            }
        }
    }
    hist
}

/// `g(χ, ψ) = −Σ_{x ∈ F_p^*} (x|p)·ζ^x`.
pub fn gauss_sum(p: u32) -> CycInt {
    let weights: Vec<i64> = (0..p as i64)
        .map(|x| -(legendre(x, p as u64) as i64))
        .collect();
    CycInt::from_exponent_weights(p, &weights)
}

/// Frobenius trace `α + β` at a point together with `αβ = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobTrace {
    pub a: CycInt,
    pub q: BigInt,
}

impl FrobTrace {
    pub fn sym_power(&self, k: u32) -> CycInt {
        sym_power_trace(&self.a, &self.q, k)
    }

    /// Largest `|σ_t(a)|` over all embeddings, minus `2√q`.
    pub fn weil_excess(&self, table: &EmbeddingTable) -> f64 {
        let bound = 2.0 * self.q.to_string().parse::<f64>().unwrap_or(f64::INFINITY).sqrt();
        (1..self.a.p())
            .map(|t| table.embed_conjugate(&self.a, t).abs_f64() - bound)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `h_k(α, β) = Σ_{i ≤ k} α^i β^{k−i}` from `α + β = a`, `αβ = q`.
pub fn sym_power_trace(a: &CycInt, q: &BigInt, k: u32) -> CycInt {
    let p = a.p();
    let mut prev = CycInt::one(p);
    if k == 0 {
        return prev;
    }
    let mut cur = a.clone();
    for _ in 1..k {
        let next = a
            .mul(&cur)
            .and_then(|x| x.sub(&prev.scale(q)))
            .expect("same p throughout");
        prev = cur;
        cur = next;
    }
    cur
}

/// `[h_0, …, h_k]` in the `i128` representation, `None` on overflow.
pub(crate) fn sym_power_traces_wide(a: &[i128], q: i128, k: u32, p: usize) -> Option<Vec<wide::Wide>> {
    let mut one = vec![0i128; p - 1];
    one[0] = 1;
    let mut out = vec![one];
    if k == 0 {
        return Some(out);
    }
    out.push(a.to_vec());
    let mut scratch = vec![0i128; p];
    for m in 2..=k as usize {
        let next = wide::mul_sub_scaled(a, &out[m - 1], q, &out[m - 2], p, &mut scratch)?;
        out.push(next);
    }
    Some(out)
}
