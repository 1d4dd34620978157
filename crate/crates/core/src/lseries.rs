//! Reconstruction of `M_k(p, T)` from point counts.
//!
//! `log M_k(T) = Σ_j Λ_j T^j / j` with `Λ_j = S_j + 1 + Σ λ^j`, where `S_j`
//! sums `h_k(a_x, p^j)` over `x ∈ F_{p^j}^*`, the `1` is the invariant line
//! at `0` and the `λ` run over the invariant eigenvalues at `∞`.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{checked_pow, require_odd_prime};
use crate::char_sums::{kloosterman_histogram_all, sym_power_traces_wide, HistogramOptions, Kernel, KloostermanHistogram};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::finite_field::{FieldOptions, FqTable, DEFAULT_MAX_ELEMENTS, DEFAULT_TABLE_THRESHOLD};
use crate::local_data::{delta_degree, infinity_invariant_eigenvalues};

/// Pair count the default guard rule is measured against.
pub const GUARD_LIMIT: u64 = 10_000_000_000;
pub const DEFAULT_BUDGET: u64 = 10_000_000_000;
pub const DEFAULT_PURITY_TOL: f64 = 1e-6;

/// Extra coefficients past `δ` to compute: 2 when `p^{2(δ+2)} ≤ 10¹⁰`, 1 when
/// `p^{2(δ+1)} ≤ 10¹⁰`, else 0.
pub fn default_guard(p: u64, delta: u32) -> u32 {
    let fits = |g: u32| checked_pow(p, 2 * (delta + g)).is_some_and(|v| v <= GUARD_LIMIT);
    if fits(2) {
        2
    } else if fits(1) {
        1
    } else {
        0
    }
}

/// `M_k(p, T)` with integer coefficients `m_0 … m_δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub p: u64,
    pub k: u32,
    pub delta: u32,
    #[serde(serialize_with = "decimal_strings")]
    pub coeffs: Vec<BigInt>,
}

fn decimal_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl LPolynomial {
    pub fn new(p: u64, k: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.first() != Some(&BigInt::one()) {
            return Err(Error::domain("an L-polynomial has constant term 1"));
        }
        let delta = coeffs.len() as u32 - 1;
        Ok(LPolynomial { p, k, delta, coeffs })
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[self.delta as usize]
    }

    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
    }

    /// `|m_i| ≤ C(δ, i)·p^{(k+1)i/2}`, compared exactly through squares.
    pub fn coefficient_bounds_hold(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, m)| {
            let b = binomial(BigInt::from(self.delta), BigInt::from(i));
            let w = BigInt::from(self.p).pow((self.k + 1) * i as u32);
            m * m <= &b * &b * w
        })
    }
}

/// Power-series expansion of `exp(Σ Λ_j T^j / j)` up to `δ + guard`.
#[derive(Clone, Debug)]
pub struct SeriesExpansion {
    pub p: u64,
    pub k: u32,
    pub delta: u32,
    pub lambdas: Vec<BigInt>,
    pub coeffs: Vec<BigRational>,
}

impl SeriesExpansion {
    /// `n·m_n = Σ_{j=1}^{n} Λ_j m_{n−j}`, one coefficient per supplied `Λ`.
    pub fn expand(p: u64, k: u32, delta: u32, lambdas: Vec<BigInt>) -> Self {
        let mut coeffs = vec![BigRational::one()];
        for n in 1..=lambdas.len() {
            let sum = (1..=n).fold(BigRational::zero(), |acc, j| {
                acc + BigRational::from_integer(lambdas[j - 1].clone()) * &coeffs[n - j]
            });
            coeffs.push(sum / BigRational::from_integer(BigInt::from(n)));
        }
        SeriesExpansion { p, k, delta, lambdas, coeffs }
    }

    pub fn guard(&self) -> u32 {
        (self.coeffs.len() as u32 - 1).saturating_sub(self.delta)
    }

    /// `m_0 … m_δ` are integers.
    pub fn check_integrality(&self) -> Result<()> {
        for (n, m) in self.coeffs.iter().enumerate().take(self.delta as usize + 1) {
            if !m.is_integer() {
                return Err(Error::verification(
                    "integrality",
                    format!("p={}, k={}: m_{n} = {m} is not an integer (Λ = {:?})", self.p, self.k, self.lambda_strings()),
                ));
            }
        }
        Ok(())
    }

    /// The computed coefficients past `δ` vanish.
    pub fn check_truncation(&self) -> Result<()> {
        for (n, m) in self.coeffs.iter().enumerate().skip(self.delta as usize + 1) {
            if !m.is_zero() {
                return Err(Error::verification(
                    "truncation",
                    format!("p={}, k={}: m_{n} = {m} beyond degree {}", self.p, self.k, self.delta),
                ));
            }
        }
        Ok(())
    }

    pub fn polynomial(&self) -> Result<LPolynomial> {
        self.check_integrality()?;
        let coeffs = self.coeffs[..=self.delta as usize].iter().map(|m| m.to_integer()).collect();
        LPolynomial::new(self.p, self.k, coeffs)
    }

    fn lambda_strings(&self) -> Vec<String> {
        self.lambdas.iter().map(|l| l.to_string()).collect()
    }
}

/// Outcome of comparing `M` with its functional-equation mirror.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalConstant {
    pub c: BigInt,
    /// `m_{δ−i} − c·m_i·p^{−(k+1)i}` for `i = 0 … δ`.
    pub residuals: Vec<BigRational>,
    pub c_squared_ok: bool,
}

impl FunctionalConstant {
    pub fn residuals_vanish(&self) -> bool {
        self.residuals.iter().all(Zero::is_zero)
    }
}

/// `c = m_δ` with the full residual list, without failing.
pub fn functional_constant(m: &LPolynomial) -> FunctionalConstant {
    let c = m.leading().clone();
    let d = m.delta as usize;
    let residuals = (0..=d)
        .map(|i| {
            let scale = BigRational::new(BigInt::one(), BigInt::from(m.p).pow((m.k + 1) * i as u32));
            BigRational::from_integer(m.coeffs[d - i].clone())
                - BigRational::from_integer(&c * &m.coeffs[i]) * scale
        })
        .collect();
    let c_squared_ok = &c * &c == BigInt::from(m.p).pow((m.k + 1) * m.delta);
    FunctionalConstant { c, residuals, c_squared_ok }
}

/// `c` together with residuals, failing unless all residuals vanish and
/// `c² = p^{(k+1)δ}`.
pub fn extract_functional_constant(m: &LPolynomial) -> Result<FunctionalConstant> {
    let fc = functional_constant(m);
    if let Some((i, r)) = fc.residuals.iter().enumerate().find(|(_, r)| !r.is_zero()) {
        return Err(Error::verification(
            "functional_equation",
            format!("p={}, k={}: residual at i={i} is {r}", m.p, m.k),
        ));
    }
    if !fc.c_squared_ok {
        return Err(Error::verification(
            "c_squared",
            format!("p={}, k={}: c = {} but c² != p^{}", m.p, m.k, fc.c, (m.k + 1) * m.delta),
        ));
    }
    Ok(fc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PurityReport {
    /// `p^{(k+1)/2}`.
    pub target: f64,
    /// Moduli of the reciprocal roots.
    pub moduli: Vec<f64>,
    pub tol: f64,
}

impl PurityReport {
    pub fn passes(&self) -> bool {
        self.moduli.iter().all(|m| ((m - self.target) / self.target).abs() <= self.tol)
    }
}

/// Moduli of the reciprocal roots of `M` against `p^{(k+1)/2}`.
pub fn purity_report(m: &LPolynomial, tol: f64) -> PurityReport {
    let w = (m.p as f64).powf((m.k + 1) as f64 / 2.0);
    // reciprocal roots α = w·β with β a root of Σ_i (m_i / w^i) β^{δ−i}
    let monic: Vec<Complex64> = m
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| Complex64::new(scaled(c, m.p, m.k, i as u32), 0.0))
        .collect();
    let moduli = durand_kerner(&monic).into_iter().map(|b| b.norm() * w).collect();
    PurityReport { target: w, moduli, tol }
}

pub fn purity_check(m: &LPolynomial, tol: f64) -> Result<PurityReport> {
    let report = purity_report(m, tol);
    if !report.passes() {
        return Err(Error::verification(
            "purity",
            format!(
                "p={}, k={}: reciprocal root moduli {:?}, expected {}",
                m.p, m.k, report.moduli, report.target
            ),
        ));
    }
    Ok(report)
}

// m_i / p^{(k+1)i/2} as a float, dividing exactly first
fn scaled(c: &BigInt, p: u64, k: u32, i: u32) -> f64 {
    let e = (k + 1) * i;
    let q = BigRational::new(c.clone(), BigInt::from(p).pow(e / 2));
    let v = q.to_f64().unwrap_or(f64::NAN);
    if e % 2 == 1 {
        v / (p as f64).sqrt()
    } else {
        v
    }
}

/// Roots of `z^d + a_1 z^{d−1} + ⋯ + a_d` given `[1, a_1, …, a_d]`.
fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let eval = |z: Complex64| coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let denom = (0..d)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (roots[i] - roots[j]));
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    // Newton polish
    let deriv: Vec<Complex64> = coeffs[..d]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (d - i) as f64)
        .collect();
    let eval_d = |z: Complex64| deriv.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    for r in roots.iter_mut() {
        for _ in 0..5 {
            let dv = eval_d(*r);
            if dv.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / dv;
        }
    }
    roots
}

#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub threads: usize,
    /// Largest number of kernel visits spent on one field.
    pub budget: u64,
    pub kernel: Kernel,
    pub table_threshold: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            threads: 0,
            budget: DEFAULT_BUDGET,
            kernel: Kernel::Pairs,
            table_threshold: DEFAULT_TABLE_THRESHOLD,
            cache_dir: None,
        }
    }
}

/// Distinct Kloosterman histogram rows of one field with multiplicities.
#[derive(Clone, Debug)]
struct RowClasses {
    p: u64,
    q: u64,
    classes: Vec<(Vec<u32>, u64)>,
}

impl RowClasses {
    fn from_histogram(hist: &KloostermanHistogram) -> Self {
        let mut counts: HashMap<&[u32], u64> = HashMap::new();
        for (_, row) in hist.rows() {
            *counts.entry(row).or_default() += 1;
        }
        let mut classes: Vec<(Vec<u32>, u64)> = counts.into_iter().map(|(r, n)| (r.to_vec(), n)).collect();
        classes.sort();
        RowClasses {
            p: hist.field().p() as u64,
            q: hist.field().q() as u64,
            classes,
        }
    }

    // S for k = 0..=kmax, with every ψ value conjugated by σ_t
    fn power_sums(&self, kmax: u32, t: i64) -> Result<Vec<BigInt>> {
        let (p, pu) = (self.p, self.p as usize);
        if t.rem_euclid(p as i64) == 0 {
            return Err(Error::domain("conjugation index must be a unit mod p"));
        }
        let rows: Vec<(Vec<i128>, u64)> = self
            .classes
            .iter()
            .map(|(row, n)| {
                let mut group = vec![0i128; pu];
                for (c, &cnt) in row.iter().enumerate() {
                    let e = ((c as i64 * t).rem_euclid(p as i64)) as usize;
                    group[e] -= cnt as i128;
                }
                (crate::cyclotomic::wide::from_group_ring(&group), *n)
            })
            .collect();
        let sums = match wide_power_sums(&rows, self.q as i128, kmax, pu) {
            Some(s) => s,
            None => exact_power_sums(&rows, &BigInt::from(self.q), kmax, p as u32)?,
        };
        sums.into_iter()
            .enumerate()
            .map(|(k, s)| {
                s.as_rational_integer().map_err(|_| {
                    Error::verification("integrality", format!("power sum over F_{} for k={k} is {s}, not rational", self.q))
                })
            })
            .collect()
    }
}

/// `S` for `k = 0 … kmax` over the field of `hist`.
pub fn histogram_power_sums(hist: &KloostermanHistogram, kmax: u32) -> Result<Vec<BigInt>> {
    RowClasses::from_histogram(hist).power_sums(kmax, 1)
}

/// Computes and caches per-field data for the power sums.
pub struct Engine {
    opts: EngineOptions,
    rows: Mutex<HashMap<(u64, u32), Arc<RowClasses>>>,
}

impl Engine {
    pub fn new(opts: EngineOptions) -> Self {
        Engine {
            opts,
            rows: Mutex::new(HashMap::new()),
        }
    }

    pub fn options(&self) -> &EngineOptions {
        &self.opts
    }

    fn field_options(&self) -> FieldOptions {
        FieldOptions {
            table_threshold: self.opts.table_threshold,
            max_elements: DEFAULT_MAX_ELEMENTS,
            cache_dir: self.opts.cache_dir.clone(),
        }
    }

    /// Full histogram of `F_{p^j}`.
    pub fn histogram(&self, p: u64, j: u32) -> Result<KloostermanHistogram> {
        let field = Arc::new(FqTable::build(p, j, &self.field_options())?);
        let opts = HistogramOptions {
            kernel: self.opts.kernel,
            threads: self.opts.threads,
            budget: self.opts.budget,
        };
        kloosterman_histogram_all(field, &opts)
    }

    fn row_classes(&self, p: u64, j: u32) -> Result<Arc<RowClasses>> {
        if let Some(r) = self.rows.lock().expect("cache lock").get(&(p, j)) {
            return Ok(r.clone());
        }
        let rc = Arc::new(RowClasses::from_histogram(&self.histogram(p, j)?));
        self.rows.lock().expect("cache lock").insert((p, j), rc.clone());
        Ok(rc)
    }

    /// Kernel visits needed for `F_{p^j}`, or `None` if the field is too big
    /// to build.
    pub fn field_cost(&self, p: u64, j: u32) -> Option<u64> {
        let q = checked_pow(p, j)?;
        let m = q - 1;
        Some(match self.opts.kernel {
            Kernel::Pairs => m * (m + 1) / 2,
            // one full row per orbit; at least q/(j(p−1)/2) orbits
            Kernel::Orbits => m * (m / (j as u64 * (p - 1) / 2)).max(1),
        })
    }

    pub fn affordable(&self, p: u64, j: u32) -> bool {
        self.field_cost(p, j).is_some_and(|c| c <= self.opts.budget)
    }

    /// `S_j` for every `k` in `0..=kmax`, conjugating every `ψ` value by
    /// `σ_t` first.
    pub fn power_sums_conjugated(&self, p: u64, kmax: u32, j: u32, t: i64) -> Result<Vec<BigInt>> {
        require_odd_prime(p)?;
        if j == 0 {
            return Err(Error::domain("extension degree j must be at least 1"));
        }
        self.row_classes(p, j)?.power_sums(kmax, t)
    }

    /// `S_j = Σ_{x ∈ F_{p^j}^*} h_k(a_x, p^j)`.
    pub fn power_sum(&self, p: u64, k: u32, j: u32) -> Result<BigInt> {
        Ok(self.power_sums_conjugated(p, k, j, 1)?.swap_remove(k as usize))
    }

    /// `Λ_j = S_j + 1 + Σ λ^j`.
    pub fn lambda_coefficient(&self, p: u64, k: u32, j: u32) -> Result<BigInt> {
        Ok(self.lambda_from_power_sum(p, k, j, self.power_sum(p, k, j)?)?)
    }

    fn lambda_from_power_sum(&self, p: u64, k: u32, j: u32, s: BigInt) -> Result<BigInt> {
        let inv: BigInt = infinity_invariant_eigenvalues(p, k)?.iter().map(|l| l.pow(j)).sum();
        Ok(s + 1 + inv)
    }

    /// `Λ_1 … Λ_n`.
    pub fn lambdas(&self, p: u64, k: u32, n: u32) -> Result<Vec<BigInt>> {
        (1..=n).map(|j| self.lambda_coefficient(p, k, j)).collect()
    }

    /// Resolved guard: the requested one, or the default rule.
    pub fn guard_for(&self, p: u64, k: u32, guard: Option<u32>) -> Result<u32> {
        let delta = delta_degree(p, k)?;
        Ok(guard.unwrap_or_else(|| default_guard(p, delta)))
    }

    /// Expansion up to `δ + guard`, refusing fields past the budget.
    pub fn expansion(&self, p: u64, k: u32, guard: Option<u32>) -> Result<SeriesExpansion> {
        let delta = delta_degree(p, k)?;
        let guard = self.guard_for(p, k, guard)?;
        let n = delta + guard;
        if n > 0 && !self.affordable(p, n) {
            return Err(Error::Resource {
                p,
                n,
                detail: format!(
                    "{} kernel on F_{p}^{n} needs about {} visits, budget is {}",
                    self.opts.kernel,
                    self.field_cost(p, n).map_or("too many".into(), |c| c.to_string()),
                    self.opts.budget
                ),
            });
        }
        Ok(SeriesExpansion::expand(p, k, delta, self.lambdas(p, k, n)?))
    }

    /// `M_k(p, T)` with integrality and truncation enforced.
    pub fn reconstruct_lpolynomial(&self, p: u64, k: u32, guard: Option<u32>) -> Result<LPolynomial> {
        let series = self.expansion(p, k, guard)?;
        series.check_integrality()?;
        series.check_truncation()?;
        series.polynomial()
    }

    pub fn clear_cache(&self) {
        self.rows.lock().expect("cache lock").clear();
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineOptions::default())
    }
}

// Σ n·h_k(a) over the classes for all k ≤ kmax, None on i128 overflow
fn wide_power_sums(rows: &[(Vec<i128>, u64)], q: i128, kmax: u32, p: usize) -> Option<Vec<CycInt>> {
    let mut acc = vec![vec![0i128; p - 1]; kmax as usize + 1];
    for (a, n) in rows {
        let hs = sym_power_traces_wide(a, q, kmax, p)?;
        for (slot, h) in acc.iter_mut().zip(&hs) {
            for (s, &v) in slot.iter_mut().zip(h) {
                *s = s.checked_add(v.checked_mul(*n as i128)?)?;
            }
        }
    }
    Some(
        acc.into_iter()
            .map(|c| CycInt::new(p as u32, c.into_iter().map(BigInt::from).collect()).expect("length p−1"))
            .collect(),
    )
}

fn exact_power_sums(rows: &[(Vec<i128>, u64)], q: &BigInt, kmax: u32, p: u32) -> Result<Vec<CycInt>> {
    let mut acc = vec![CycInt::zero(p); kmax as usize + 1];
    for (a, n) in rows {
        let a = CycInt::new(p, a.iter().map(|&c| BigInt::from(c)).collect())?;
        let n = BigInt::from(*n);
        let mut prev = CycInt::one(p);
        let mut cur = a.clone();
        for (k, slot) in acc.iter_mut().enumerate() {
            let h = match k {
                0 => prev.clone(),
                1 => cur.clone(),
                _ => {
                    let next = a.mul(&cur)?.sub(&prev.scale(q))?;
                    prev = std::mem::replace(&mut cur, next);
                    cur.clone()
                }
            };
            *slot = slot.add(&h.scale(&n))?;
        }
    }
    Ok(acc)
}

/// `M_7(p, (p|105)·p^{−4})`.
pub fn k7_root_residual(m: &LPolynomial) -> Result<BigRational> {
    let s = crate::epsilon::jacobi_symbol(m.p as i64, 105)?;
    let t = BigRational::new(BigInt::from(s), BigInt::from(m.p).pow(4));
    Ok(m.evaluate(&t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn poly(p: u64, k: u32, v: &[i64]) -> LPolynomial {
        LPolynomial::new(p, k, ints(v)).unwrap()
    }

    #[test]
    fn power_sum_examples() {
        let e = Engine::default();
        assert_eq!(e.power_sum(3, 1, 1).unwrap(), BigInt::from(-1));
        assert_eq!(e.power_sum(3, 2, 1).unwrap(), BigInt::from(-1));
        assert_eq!(e.power_sum(5, 3, 1).unwrap(), BigInt::from(24));
        assert_eq!(e.lambda_coefficient(3, 1, 1).unwrap(), BigInt::zero());
        assert_eq!(e.lambda_coefficient(3, 2, 1).unwrap(), BigInt::zero());
        assert_eq!(e.lambda_coefficient(5, 3, 1).unwrap(), BigInt::from(25));
    }

    #[test]
    fn lambda_oracle_values() {
        let e = Engine::default();
        assert_eq!(e.lambdas(5, 3, 3).unwrap(), ints(&[25, -625, 15625]));
        assert_eq!(e.lambdas(7, 5, 3).unwrap(), ints(&[0, -235298, 0]));
        assert_eq!(e.lambdas(5, 6, 3).unwrap(), ints(&[-150, 133750, 31781250]));
        assert_eq!(e.lambdas(3, 7, 4).unwrap(), ints(&[-90, 5022, 1042470, 60872958]));
        assert_eq!(e.lambdas(3, 9, 4).unwrap(), ints(&[54, 115182, -9408474, -6293324322]));
    }

    #[test]
    fn reconstruction_examples() {
        let e = Engine::default();
        assert_eq!(e.reconstruct_lpolynomial(3, 1, Some(1)).unwrap(), poly(3, 1, &[1]));
        assert_eq!(e.reconstruct_lpolynomial(5, 3, Some(1)).unwrap(), poly(5, 3, &[1, 25]));
        assert_eq!(e.reconstruct_lpolynomial(7, 2, Some(1)).unwrap(), poly(7, 2, &[1]));
        assert_eq!(e.reconstruct_lpolynomial(7, 5, None).unwrap(), poly(7, 5, &[1, 0, -117649]));
        assert_eq!(e.reconstruct_lpolynomial(5, 6, None).unwrap(), poly(5, 6, &[1, -150, 78125]));
        assert_eq!(e.reconstruct_lpolynomial(3, 7, None).unwrap(), poly(3, 7, &[1, -90, 6561]));
        assert_eq!(e.reconstruct_lpolynomial(5, 5, None).unwrap(), poly(5, 5, &[1, -125]));
        assert_eq!(e.reconstruct_lpolynomial(3, 5, None).unwrap(), poly(3, 5, &[1, 27]));
        assert_eq!(e.reconstruct_lpolynomial(3, 10, None).unwrap(), poly(3, 10, &[1, -252, 177147]));
    }

    #[test]
    fn default_guard_rule() {
        assert_eq!(default_guard(5, 1), 2);
        assert_eq!(default_guard(11, 3), 1);
        assert_eq!(default_guard(19, 3), 0);
        assert_eq!(default_guard(47, 3), 0);
        assert_eq!(default_guard(3, 0), 2);
    }

    #[test]
    fn functional_constant_examples() {
        let fc = extract_functional_constant(&poly(3, 1, &[1])).unwrap();
        assert_eq!(fc.c, BigInt::one());
        let fc = extract_functional_constant(&poly(5, 3, &[1, 25])).unwrap();
        assert_eq!(fc.c, BigInt::from(25));
        assert!(fc.residuals_vanish());
        let m7 = LPolynomial::new(
            11,
            7,
            vec![1.into(), (-14641).into(), (-214358881).into(), BigInt::from(11).pow(12)],
        )
        .unwrap();
        assert_eq!(extract_functional_constant(&m7).unwrap().c, BigInt::from(11).pow(12));
        assert!(k7_root_residual(&m7).unwrap().is_zero());
        assert!(extract_functional_constant(&poly(5, 3, &[1, 24])).is_err());
    }

    #[test]
    fn purity_examples() {
        let r = purity_check(&poly(5, 3, &[1, 25]), DEFAULT_PURITY_TOL).unwrap();
        assert!((r.moduli[0] - 25.0).abs() < 1e-9);
        assert!(purity_check(&poly(5, 3, &[1]), DEFAULT_PURITY_TOL).unwrap().moduli.is_empty());
        assert!(matches!(
            purity_check(&poly(5, 3, &[1, 1]), DEFAULT_PURITY_TOL),
            Err(Error::Verification { .. })
        ));
        let r = purity_check(&poly(3, 11, &[1, 621, -452709, -387420489]), DEFAULT_PURITY_TOL).unwrap();
        assert_eq!(r.moduli.len(), 3);
        assert!(poly(3, 11, &[1, 621, -452709, -387420489]).coefficient_bounds_hold());
        assert!(!poly(5, 3, &[1, 51]).coefficient_bounds_hold());
    }

    #[test]
    fn galois_conjugation_leaves_sums_fixed() {
        let e = Engine::default();
        for (p, j) in [(5u64, 2u32), (7, 2), (3, 4)] {
            let base = e.power_sums_conjugated(p, 8, j, 1).unwrap();
            for t in 2..p as i64 {
                assert_eq!(e.power_sums_conjugated(p, 8, j, t).unwrap(), base);
            }
        }
    }

    #[test]
    fn exact_and_wide_sums_agree() {
        let rows = vec![(vec![3i128, -1, 4, 1], 2u64), (vec![-5i128, 9, 2, 6], 3)];
        let wide = wide_power_sums(&rows, 25, 6, 5).unwrap();
        let exact = exact_power_sums(&rows, &BigInt::from(25), 6, 5).unwrap();
        assert_eq!(wide, exact);
    }

    #[test]
    fn kernels_give_same_polynomials() {
        let orbit = Engine::new(EngineOptions {
            kernel: Kernel::Orbits,
            ..EngineOptions::default()
        });
        let pairs = Engine::default();
        for (p, k) in [(3u64, 9u32), (5, 6), (7, 5)] {
            assert_eq!(
                orbit.reconstruct_lpolynomial(p, k, None).unwrap(),
                pairs.reconstruct_lpolynomial(p, k, None).unwrap()
            );
        }
    }

    #[test]
    fn budget_refusal_names_field() {
        let e = Engine::new(EngineOptions {
            budget: 1000,
            ..EngineOptions::default()
        });
        match e.reconstruct_lpolynomial(5, 3, Some(2)) {
            Err(Error::Resource { p: 5, n: 3, .. }) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }
}
