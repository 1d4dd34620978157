//! Finite fields `F_{p^n}` over odd primes, with elements stored as dense
//! indices `0..q`.
//!
//! The element with index `c_0 + c_1·p + ⋯ + c_{n−1}·p^{n−1}` is the class of
//! `c_0 + c_1·x + ⋯ + c_{n−1}·x^{n−1}` modulo the defining polynomial, so
//! the prime field sits at indices `0..p` with its natural values.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::arith::{checked_pow, prime_factors, require_odd_prime};
use crate::error::{Error, Result};

/// Dense element index in `0..q`.
pub type Elem = u32;

/// Fields up to this many elements get log/exp/Zech tables.
pub const DEFAULT_TABLE_THRESHOLD: u64 = 1 << 22;
/// Largest field the builder will construct by default.
pub const DEFAULT_MAX_ELEMENTS: u64 = 1 << 26;

const CACHE_VERSION: u64 = 1;
const NO_LOG: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct FieldOptions {
    pub table_threshold: u64,
    pub max_elements: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions {
            table_threshold: DEFAULT_TABLE_THRESHOLD,
            max_elements: DEFAULT_MAX_ELEMENTS,
            cache_dir: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct LogTables {
    // exp[i] = g^i for 0 <= i < q-1
    exp: Vec<u32>,
    // log[x] for x != 0; log[0] = NO_LOG
    log: Vec<u32>,
    // g^zech[i] = 1 + g^i, NO_LOG where 1 + g^i = 0
    zech: Vec<u32>,
}

/// A constructed finite field. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqTable {
    p: u32,
    n: u32,
    q: u32,
    // monic, low to high, length n + 1
    modulus: Vec<u32>,
    generator: Elem,
    trace: Vec<u32>,
    tables: Option<LogTables>,
}

/// `F_{p^n}` with the default modulus and options.
pub fn build_field(p: u64, n: u32) -> Result<FqTable> {
    FqTable::build(p, n, &FieldOptions::default())
}

impl FqTable {
    /// Builds `F_{p^n}` from the smallest monic irreducible of degree `n`,
    /// ordering candidates by `Σ c_i p^i` over their lower coefficients.
    /// The prime field uses the modulus `x`.
    pub fn build(p: u64, n: u32, opts: &FieldOptions) -> Result<Self> {
        let q = Self::check_size(p, n, opts)?;
        if let Some(dir) = &opts.cache_dir {
            if let Some(table) = cache::load(dir, p as u32, n)? {
                return Ok(table);
            }
        }
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p as u32, n)
        };
        let table = Self::assemble(p as u32, n, q, modulus, opts)?;
        if let Some(dir) = &opts.cache_dir {
            if table.tables.is_some() {
                cache::store(dir, &table)?;
            }
        }
        Ok(table)
    }

    /// Builds `F_{p^n}` from a caller-supplied monic modulus given by its
    /// lower coefficients `c_0..c_{n−1}`.
    pub fn with_modulus(p: u64, lower: &[u32], opts: &FieldOptions) -> Result<Self> {
        let n = lower.len() as u32;
        let q = Self::check_size(p, n, opts)?;
        let p32 = p as u32;
        if lower.iter().any(|&c| c >= p32) {
            return Err(Error::domain("modulus coefficients must lie in 0..p"));
        }
        let mut modulus = lower.to_vec();
        modulus.push(1);
        if n > 1 && !poly::is_irreducible(&to_u64(&modulus), p) {
            return Err(Error::domain(format!(
                "modulus {lower:?} is reducible over F_{p}"
            )));
        }
        Self::assemble(p32, n, q, modulus, opts)
    }

    fn check_size(p: u64, n: u32, opts: &FieldOptions) -> Result<u32> {
        require_odd_prime(p)?;
        if n == 0 {
            return Err(Error::domain("extension degree must be at least 1"));
        }
        let limit = opts.max_elements.min(u32::MAX as u64);
        match checked_pow(p, n) {
            Some(q) if q <= limit => Ok(q as u32),
            _ => Err(Error::Resource {
                p,
                n,
                detail: format!("p^n exceeds the field size budget of {limit} elements"),
            }),
        }
    }

    fn assemble(p: u32, n: u32, q: u32, modulus: Vec<u32>, opts: &FieldOptions) -> Result<Self> {
        let mut table = FqTable {
            p,
            n,
            q,
            modulus,
            generator: 0,
            trace: Vec::new(),
            tables: None,
        };
        table.generator = table.find_generator();
        table.trace = table.build_trace();
        if q as u64 <= opts.table_threshold {
            table.tables = Some(table.build_log_tables());
        }
        Ok(table)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the unit group.
    pub fn unit_count(&self) -> u32 {
        self.q - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `Σ c_i p^i` over the lower coefficients of the modulus.
    pub fn modulus_encoding(&self) -> u64 {
        self.modulus[..self.n as usize]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut v = x;
        for _ in 0..self.n {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        digits
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + (c % self.p))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let d: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let m = (self.q - 1) as u64;
                let s = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % m;
                t.exp[s as usize]
            }
            None => self.poly_mul(a, b),
        }
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        match &self.tables {
            Some(t) => {
                let m = (self.q - 1) as u64;
                let s = (t.log[a as usize] as u64 % m) * (e % m) % m;
                t.exp[s as usize]
            }
            None => self.poly_pow(a, e),
        }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inverse(&self, x: Elem) -> Result<Elem> {
        if x == 0 {
            return Err(Error::domain("zero has no multiplicative inverse"));
        }
        Ok(match &self.tables {
            Some(t) => {
                let m = self.q - 1;
                t.exp[((m - t.log[x as usize]) % m) as usize]
            }
            None => self.poly_pow(x, self.q as u64 - 2),
        })
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, x: Elem) -> u32 {
        self.trace[x as usize]
    }

    /// Traces of every element, indexed by element.
    pub fn trace_table(&self) -> &[u32] {
        &self.trace
    }

    /// `g^i` for `0 <= i < q − 1` (requires tables).
    pub fn exp_table(&self) -> Option<&[u32]> {
        self.tables.as_ref().map(|t| t.exp.as_slice())
    }

    pub fn log(&self, x: Elem) -> Option<u32> {
        match &self.tables {
            Some(t) if x != 0 => Some(t.log[x as usize]),
            Some(_) => None,
            None => None,
        }
    }

    /// Zech logarithm: `g^z = 1 + g^i`, or `None` when `1 + g^i = 0`.
    pub fn zech(&self, i: u32) -> Option<u32> {
        let t = self.tables.as_ref()?;
        let z = t.zech[(i % (self.q - 1)) as usize];
        (z != NO_LOG).then_some(z)
    }

    /// Addition carried out in the log domain via the Zech table.
    pub fn add_logs(&self, la: u32, lb: u32) -> Option<u32> {
        let m = self.q - 1;
        let d = (lb + m - la % m) % m;
        self.zech(d).map(|z| (la % m + z) % m)
    }

    fn poly_mul(&self, a: Elem, b: Elem) -> Elem {
        let pa = to_u64(&self.digits(a));
        let pb = to_u64(&self.digits(b));
        let r = poly::mul_mod(&pa, &pb, &to_u64(&self.modulus), self.p as u64);
        self.from_poly(&r)
    }

    fn poly_pow(&self, a: Elem, e: u64) -> Elem {
        let pa = to_u64(&self.digits(a));
        let r = poly::pow_mod(&pa, e, &to_u64(&self.modulus), self.p as u64);
        self.from_poly(&r)
    }

    fn from_poly(&self, r: &[u64]) -> Elem {
        let mut d = vec![0u32; self.n as usize];
        for (i, &c) in r.iter().enumerate().take(self.n as usize) {
            d[i] = c as u32;
        }
        self.from_digits(&d)
    }

    fn find_generator(&self) -> Elem {
        let m = (self.q - 1) as u64;
        let factors = prime_factors(m);
        (1..self.q)
            .find(|&g| factors.iter().all(|&l| self.poly_pow(g, m / l) != 1))
            .expect("the unit group of a finite field is cyclic")
    }

    fn build_trace(&self) -> Vec<u32> {
        let p = self.p as u64;
        let f = to_u64(&self.modulus);
        // Tr(x^i) for the basis monomials; trace is F_p-linear
        let basis: Vec<u64> = (0..self.n as usize)
            .map(|i| {
                let mut mono = vec![0u64; i + 1];
                mono[i] = 1;
                let mut y = poly::rem(&mono, &f, p);
                let mut acc = vec![0u64; self.n as usize];
                for _ in 0..self.n {
                    for (a, &c) in acc.iter_mut().zip(y.iter()) {
                        *a = (*a + c) % p;
                    }
                    y = poly::pow_mod(&y, p, &f, p);
                }
                debug_assert!(acc[1..].iter().all(|&c| c == 0));
                acc[0]
            })
            .collect();
        (0..self.q)
            .map(|x| {
                let mut v = x;
                let mut t = 0u64;
                for &b in &basis {
                    t += (v % self.p) as u64 * b;
                    v /= self.p;
                }
                (t % p) as u32
            })
            .collect()
    }

    fn build_log_tables(&self) -> LogTables {
        let m = self.q - 1;
        let mut exp = Vec::with_capacity(m as usize);
        let mut log = vec![NO_LOG; self.q as usize];
        let g = to_u64(&self.digits(self.generator));
        let f = to_u64(&self.modulus);
        let mut cur = vec![1u64];
        for i in 0..m {
            let x = self.from_poly(&cur);
            exp.push(x);
            log[x as usize] = i;
            cur = poly::mul_mod(&cur, &g, &f, self.p as u64);
        }
        let zech = exp
            .iter()
            .map(|&x| {
                let c0 = x % self.p;
                let y = x - c0 + (c0 + 1) % self.p;
                log[y as usize]
            })
            .collect();
        LogTables { exp, log, zech }
    }
}

fn to_u64(v: &[u32]) -> Vec<u64> {
    v.iter().map(|&c| c as u64).collect()
}

fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let q = checked_pow(p as u64, n).expect("size checked") as u32;
    (0..q)
        .map(|code| {
            let mut f: Vec<u32> = (0..n).map(|i| (code / p.pow(i)) % p).collect();
            f.push(1);
            f
        })
        .find(|f| poly::is_irreducible(&to_u64(f), p as u64))
        .expect("irreducible polynomials exist in every degree")
}

/// Dense polynomials over `F_p`, coefficients low to high.
pub(crate) mod poly {
    use crate::arith::{pow_mod as int_pow_mod, prime_factors};

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        if v.is_empty() {
            v.push(0);
        }
        v
    }

    fn degree(v: &[u64]) -> Option<usize> {
        v.iter().rposition(|&c| c != 0)
    }

    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let df = degree(f).expect("nonzero modulus");
        let lead_inv = int_pow_mod(f[df], p - 2, p);
        let mut r: Vec<u64> = a.iter().map(|&c| c % p).collect();
        while let Some(dr) = degree(&r) {
            if dr < df {
                break;
            }
            let c = r[dr] * lead_inv % p;
            for i in 0..=df {
                let idx = dr - df + i;
                r[idx] = (r[idx] + p - c * f[i] % p) % p;
            }
        }
        r.truncate(df.max(1));
        trim(r)
    }

    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, f, p)
    }

    pub fn pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y % p) % p
            })
            .collect();
        trim(out)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while degree(&b).is_some() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test: `f | x^{p^n} − x` and `gcd(f, x^{p^{n/ℓ}} − x) = 1`
    /// for every prime `ℓ | n`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = match degree(f) {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if n == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let frob_power = |k: usize| {
            let mut y = x.clone();
            for _ in 0..k {
                y = pow_mod(&y, p, f, p);
            }
            y
        };
        if degree(&sub(&frob_power(n), &x, p)).is_some() {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|l| {
            let h = sub(&frob_power(n / l as usize), &x, p);
            degree(&gcd(f, &h, p)) == Some(0)
        })
    }
}

/// On-disk table cache: a little-endian `u64` header `(p, n, q, modulus
/// encoding)` followed by the exp, log, Zech and trace tables as `u32`.
mod cache {
    use super::*;

    pub fn path(dir: &Path, p: u32, n: u32) -> PathBuf {
        dir.join(format!("fq-{p}-{n}-v{CACHE_VERSION}.bin"))
    }

    fn io_err(e: std::io::Error) -> Error {
        Error::Cache(e.to_string())
    }

    pub fn store(dir: &Path, t: &FqTable) -> Result<()> {
        let tables = t.tables.as_ref().expect("only tabulated fields are cached");
        fs::create_dir_all(dir).map_err(io_err)?;
        let final_path = path(dir, t.p, t.n);
        let tmp = final_path.with_extension("tmp");
        {
            let mut w = BufWriter::new(fs::File::create(&tmp).map_err(io_err)?);
            for v in [t.p as u64, t.n as u64, t.q as u64, t.modulus_encoding()] {
                w.write_all(&v.to_le_bytes()).map_err(io_err)?;
            }
            for table in [&tables.exp, &tables.log, &tables.zech, &t.trace] {
                for v in table.iter() {
                    w.write_all(&v.to_le_bytes()).map_err(io_err)?;
                }
            }
            w.flush().map_err(io_err)?;
        }
        fs::rename(&tmp, &final_path).map_err(io_err)
    }

    fn read_u32s(r: &mut impl Read, len: usize) -> std::io::Result<Vec<u32>> {
        let mut buf = vec![0u8; len * 4];
        r.read_exact(&mut buf)?;
        Ok(buf
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect())
    }

    /// `Ok(None)` when no usable cache entry exists.
    pub fn load(dir: &Path, p: u32, n: u32) -> Result<Option<FqTable>> {
        let file = match fs::File::open(path(dir, p, n)) {
            Ok(f) => f,
            Err(_) => return Ok(None),
        };
        let mut r = BufReader::new(file);
        let mut header = [0u64; 4];
        for h in header.iter_mut() {
            let mut b = [0u8; 8];
            if r.read_exact(&mut b).is_err() {
                return Ok(None);
            }
            *h = u64::from_le_bytes(b);
        }
        let [hp, hn, hq, enc] = header;
        if hp != p as u64 || hn != n as u64 || checked_pow(p as u64, n) != Some(hq) {
            return Ok(None);
        }
        let q = hq as usize;
        let read = |r: &mut BufReader<fs::File>, len| read_u32s(r, len).ok();
        let (Some(exp), Some(log), Some(zech), Some(trace)) = (
            read(&mut r, q - 1),
            read(&mut r, q),
            read(&mut r, q - 1),
            read(&mut r, q),
        ) else {
            return Ok(None);
        };
        let mut modulus: Vec<u32> = (0..n).map(|i| ((enc / (p as u64).pow(i)) % p as u64) as u32).collect();
        modulus.push(1);
        let table = FqTable {
            p,
            n,
            q: q as u32,
            modulus,
            generator: exp.get(1).copied().unwrap_or(1),
            trace,
            tables: Some(LogTables { exp, log, zech }),
        };
        if !table.tables_consistent() {
            return Ok(None);
        }
        Ok(Some(table))
    }
}

impl FqTable {
    fn tables_consistent(&self) -> bool {
        let Some(t) = &self.tables else { return false };
        let m = self.q as usize - 1;
        t.exp.len() == m
            && t.log.len() == m + 1
            && t.zech.len() == m
            && self.trace.len() == m + 1
            && t.exp.iter().enumerate().all(|(i, &x)| {
                (x as usize) < self.q as usize && t.log[x as usize] as usize == i
            })
    }

    /// Path of the cache entry this field would use inside `dir`.
    pub fn cache_path(dir: &Path, p: u32, n: u32) -> PathBuf {
        cache::path(dir, p, n)
    }
}
