//! Exact arithmetic in `Z[ζ_p]` and its complex embeddings.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{p−2}`, reduced after
//! every operation with `1 + ζ + ⋯ + ζ^{p−1} = 0`, so two values are equal
//! exactly when their coefficient vectors are.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::require_odd_prime;
use crate::error::{Error, Result};

/// An element of `Z[ζ_p]` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// Builds an element from its `p − 1` basis coefficients.
    pub fn new(p: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        require_odd_prime(p as u64)?;
        if coeffs.len() != p as usize - 1 {
            return Err(Error::domain(format!(
                "expected {} coefficients for p = {p}, got {}",
                p - 1,
                coeffs.len()
            )));
        }
        Ok(CycInt { p, coeffs })
    }

    pub fn zero(p: u32) -> Self {
        CycInt {
            p,
            coeffs: vec![BigInt::zero(); p as usize - 1],
        }
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = n.into();
        out
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    /// `ζ^e` for any integer exponent.
    pub fn zeta_pow(p: u32, e: i64) -> Self {
        let mut group = vec![BigInt::zero(); p as usize];
        group[e.rem_euclid(p as i64) as usize] = BigInt::one();
        Self::from_group_ring(p, group)
    }

    /// `Σ_c weights[c]·ζ^c` for a length-`p` weight vector.
    pub fn from_exponent_weights<T: Into<BigInt> + Copy>(p: u32, weights: &[T]) -> Self {
        assert_eq!(weights.len(), p as usize, "weight vector must have length p");
        Self::from_group_ring(p, weights.iter().map(|&w| w.into()).collect())
    }

    /// Reduces a length-`p` vector of `Z[C_p]` (ζ^p = 1) to canonical form.
    fn from_group_ring(p: u32, mut group: Vec<BigInt>) -> Self {
        debug_assert_eq!(group.len(), p as usize);
        let top = group.pop().expect("p >= 3");
        if !top.is_zero() {
            for c in group.iter_mut() {
                *c -= &top;
            }
        }
        CycInt { p, coeffs: group }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::domain(format!(
                "mismatched cyclotomic rings: p = {} vs p = {}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn neg(&self) -> Self {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Canonical product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let p = self.p as usize;
        let mut group = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = (i + j) % p;
                group[idx] += a * b;
            }
        }
        Ok(Self::from_group_ring(self.p, group))
    }

    /// The Galois automorphism `σ_t : ζ ↦ ζ^t`.
    pub fn galois_apply(&self, t: i64) -> Result<Self> {
        let p = self.p as i64;
        let t = t.rem_euclid(p);
        if t == 0 {
            return Err(Error::domain(format!(
                "σ_t needs t to be a unit mod {p}; got t ≡ 0"
            )));
        }
        let mut group = vec![BigInt::zero(); p as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            group[((i as i64 * t) % p) as usize] = c.clone();
        }
        Ok(Self::from_group_ring(self.p, group))
    }

    /// Returns `n` when the element is `n·ζ^0`.
    pub fn as_rational_integer(&self) -> Result<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Absolute trace `Σ_t σ_t(a)` down to `Z`.
    pub fn trace(&self) -> BigInt {
        let p1 = BigInt::from(self.p - 1);
        let rest: BigInt = self.coeffs[1..].iter().sum();
        &self.coeffs[0] * p1 - rest
    }

    /// Value at `ζ ↦ exp(2πi/p)` to `precision` bits.
    pub fn embed_complex(&self, precision: u32) -> ComplexApprox {
        EmbeddingTable::new(self.p, precision).embed(self)
    }
}

/// `a·b` in `Z[ζ_p]`.
pub fn cyc_mul(a: &CycInt, b: &CycInt) -> Result<CycInt> {
    a.mul(b)
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("ζ")?,
                (1, false) => write!(f, "{mag}ζ")?,
                (_, true) => write!(f, "ζ^{i}")?,
                (_, false) => write!(f, "{mag}ζ^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[p={}]({self})", self.p)
    }
}

#[derive(Serialize, Deserialize)]
struct CycIntWire {
    p: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycIntWire {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = CycIntWire::deserialize(d)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycInt::new(wire.p, coeffs).map_err(D::Error::custom)
    }
}

/// A complex number in binary fixed point: `(re + i·im)·2^{−precision}`,
/// within `error_units·2^{−precision}` of the exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexApprox {
    re: BigInt,
    im: BigInt,
    precision: u32,
    error_units: BigInt,
}

impl ComplexApprox {
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn re_f64(&self) -> f64 {
        fixed_to_f64(&self.re, self.precision)
    }

    pub fn im_f64(&self) -> f64 {
        fixed_to_f64(&self.im, self.precision)
    }

    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    /// Upper bound on the distance to the exact value.
    pub fn error_bound(&self) -> f64 {
        fixed_to_f64(&self.error_units, self.precision)
    }

    pub fn mul(&self, other: &ComplexApprox) -> ComplexApprox {
        assert_eq!(self.precision, other.precision);
        let w = self.precision;
        let re = (&self.re * &other.re - &self.im * &other.im) >> w;
        let im = (&self.re * &other.im + &self.im * &other.re) >> w;
        // |ab − a'b'| ≤ |a|·e_b + |b|·e_a + e_a·e_b, plus two rounding units.
        let mag = |z: &ComplexApprox| z.re.abs() + z.im.abs();
        let err = ((mag(self) * &other.error_units + mag(other) * &self.error_units
            + &self.error_units * &other.error_units)
            >> w)
            + BigInt::from(3);
        ComplexApprox {
            re,
            im,
            precision: w,
            error_units: err,
        }
    }
}

fn fixed_to_f64(v: &BigInt, precision: u32) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        v.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(precision as i32))
    } else {
        let shift = bits - 64;
        (v >> shift).to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32 - precision as i32)
    }
}

const GUARD_BITS: u32 = 48;

/// Fixed-point powers of `exp(2πi/p)`, reusable across many embeddings.
///
/// Every table entry is within one unit of `2^{−precision}` of the exact
/// root of unity: the series below are evaluated with 48 guard bits and
/// accumulate far fewer than `2^40` rounding units.
#[derive(Clone, Debug)]
pub struct EmbeddingTable {
    p: u32,
    precision: u32,
    cos: Vec<BigInt>,
    sin: Vec<BigInt>,
}

impl EmbeddingTable {
    pub fn new(p: u32, precision: u32) -> Self {
        let precision = precision.max(64);
        let w = precision + GUARD_BITS;
        let pi = fixed_pi(w);
        let mut cos = Vec::with_capacity(p as usize);
        let mut sin = Vec::with_capacity(p as usize);
        for i in 0..p {
            // fold into [0, π] and use parity of cos/sin
            let (j, flip) = if 2 * i <= p { (i, false) } else { (p - i, true) };
            let theta = (&pi * BigInt::from(2 * j)) / BigInt::from(p);
            let (c, s) = fixed_cos_sin(&theta, w);
            cos.push(round_shift(&c, GUARD_BITS));
            sin.push(round_shift(&if flip { -s } else { s }, GUARD_BITS));
        }
        EmbeddingTable {
            p,
            precision,
            cos,
            sin,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `Σ c_i ζ^{t·i}` evaluated at the distinguished embedding, i.e. the
    /// embedding of `σ_t(a)`.
    pub fn embed_conjugate(&self, a: &CycInt, t: u32) -> ComplexApprox {
        assert_eq!(a.p, self.p, "embedding table built for another p");
        let p = self.p as u64;
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        let mut weight = BigInt::one();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((i as u64 * t as u64) % p) as usize;
            re += c * &self.cos[idx];
            im += c * &self.sin[idx];
            weight += c.abs();
        }
        ComplexApprox {
            re,
            im,
            precision: self.precision,
            error_units: weight,
        }
    }

    pub fn embed(&self, a: &CycInt) -> ComplexApprox {
        self.embed_conjugate(a, 1)
    }
}

fn round_shift(v: &BigInt, bits: u32) -> BigInt {
    let half = BigInt::one() << (bits - 1);
    if v.sign() == Sign::Minus {
        -((-v + half) >> bits)
    } else {
        (v + half) >> bits
    }
}

/// `atan(1/x)·2^w` by the alternating Gregory series.
fn fixed_atan_inv(x: u64, w: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << w) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `π·2^w` from Machin's formula.
fn fixed_pi(w: u32) -> BigInt {
    let a = fixed_atan_inv(5, w + 8);
    let b = fixed_atan_inv(239, w + 8);
    (a * 16 - b * 4) >> 8u32
}

/// `(cos θ, sin θ)·2^w` for `0 ≤ θ ≤ π` given as `θ·2^w`.
fn fixed_cos_sin(theta: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let theta2 = (theta * theta) >> w;
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut cterm = one;
    let mut sterm = theta.clone();
    let mut n: u64 = 1;
    loop {
        cterm = -((&cterm * &theta2) >> w) / BigInt::from((2 * n - 1) * (2 * n));
        sterm = -((&sterm * &theta2) >> w) / BigInt::from((2 * n) * (2 * n + 1));
        if cterm.is_zero() && sterm.is_zero() {
            break;
        }
        cos += &cterm;
        sin += &sterm;
        n += 1;
    }
    (cos, sin)
}

/// Fixed-width mirror of `CycInt` for hot loops: the same canonical basis in
/// `i128`, with every operation checked so callers can fall back to
/// `CycInt` when a value leaves the range.
pub(crate) mod wide {
    pub type Wide = Vec<i128>;

    /// Canonical `Σ_c w[c]ζ^c` from a length-`p` vector.
    pub fn from_group_ring(group: &[i128]) -> Wide {
        let top = *group.last().expect("p >= 3");
        group[..group.len() - 1].iter().map(|&c| c - top).collect()
    }

    pub fn mul(a: &[i128], b: &[i128], p: usize, scratch: &mut [i128]) -> Option<Wide> {
        debug_assert_eq!(scratch.len(), p);
        scratch.iter_mut().for_each(|v| *v = 0);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let idx = if i + j >= p { i + j - p } else { i + j };
                scratch[idx] = scratch[idx].checked_add(x.checked_mul(y)?)?;
            }
        }
        let top = scratch[p - 1];
        scratch[..p - 1].iter().map(|&c| c.checked_sub(top)).collect()
    }

    /// `a·b − q·c`, all canonical.
    pub fn mul_sub_scaled(
        a: &[i128],
        b: &[i128],
        q: i128,
        c: &[i128],
        p: usize,
        scratch: &mut [i128],
    ) -> Option<Wide> {
        let mut prod = mul(a, b, p, scratch)?;
        for (x, &y) in prod.iter_mut().zip(c) {
            *x = x.checked_sub(q.checked_mul(y)?)?;
        }
        Some(prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(p: u32, v: &[i64]) -> CycInt {
        CycInt::new(p, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn small_products() {
        // p = 3: ζ·ζ = ζ², which reduces to −1 − ζ
        let z = CycInt::zeta_pow(3, 1);
        assert_eq!(z.mul(&z).unwrap(), CycInt::zeta_pow(3, 2));
        assert_eq!(CycInt::zeta_pow(3, 2), cyc(3, &[-1, -1]));

        let a = CycInt::one(3).add(&CycInt::zeta_pow(3, 1)).unwrap();
        let b = CycInt::one(3).add(&CycInt::zeta_pow(3, 2)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), CycInt::one(3));

        let z2 = CycInt::zeta_pow(5, 2);
        let z4 = CycInt::zeta_pow(5, 4);
        assert_eq!(cyc_mul(&z2, &z4).unwrap(), CycInt::zeta_pow(5, 1));
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = CycInt::one(3);
        let b = CycInt::one(5);
        assert!(matches!(a.mul(&b), Err(Error::Domain(_))));
        assert!(matches!(a.add(&b), Err(Error::Domain(_))));
        assert!(CycInt::new(5, vec![BigInt::one(); 3]).is_err());
        assert!(CycInt::new(4, vec![BigInt::one(); 3]).is_err());
    }

    #[test]
    fn galois_examples() {
        let z = CycInt::zeta_pow(3, 1);
        assert_eq!(z.galois_apply(2).unwrap(), CycInt::zeta_pow(3, 2));

        let a = CycInt::from_int(5, 2)
            .add(&CycInt::zeta_pow(5, 2))
            .unwrap()
            .add(&CycInt::zeta_pow(5, 3))
            .unwrap();
        let expected = CycInt::from_int(5, 2)
            .add(&CycInt::zeta_pow(5, 4))
            .unwrap()
            .add(&CycInt::zeta_pow(5, 1))
            .unwrap();
        assert_eq!(a.galois_apply(2).unwrap(), expected);
        assert_eq!(a.galois_apply(1).unwrap(), a);
        assert!(matches!(a.galois_apply(10), Err(Error::Domain(_))));
    }

    #[test]
    fn rational_extraction() {
        let s = CycInt::zeta_pow(3, 1).add(&CycInt::zeta_pow(3, 2)).unwrap();
        assert_eq!(s.as_rational_integer().unwrap(), BigInt::from(-1));
        match CycInt::zeta_pow(3, 1).as_rational_integer() {
            Err(Error::NotRational(msg)) => assert!(msg.contains('ζ')),
            other => panic!("expected NotRational, got {other:?}"),
        }
        assert_eq!(
            CycInt::from_int(5, 7).as_rational_integer().unwrap(),
            BigInt::from(7)
        );
    }

    #[test]
    fn full_sum_of_roots_vanishes() {
        for p in [3u32, 5, 7, 11, 13] {
            let mut s = CycInt::zero(p);
            for i in 0..p {
                s = s.add(&CycInt::zeta_pow(p, i as i64)).unwrap();
            }
            assert!(s.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn embedding_examples() {
        let s = CycInt::zeta_pow(3, 1).add(&CycInt::zeta_pow(3, 2)).unwrap();
        let e = s.embed_complex(64);
        assert!((e.re_f64() + 1.0).abs() < 1e-15);
        assert!(e.im_f64().abs() < 1e-15);
        assert!(e.error_bound() < 1e-15);

        let e0 = CycInt::zero(3).embed_complex(64);
        assert_eq!(e0.abs_f64(), 0.0);

        let z = CycInt::zeta_pow(7, 1).embed_complex(128);
        let angle = 2.0 * std::f64::consts::PI / 7.0;
        assert!((z.re_f64() - angle.cos()).abs() < 1e-15);
        assert!((z.im_f64() - angle.sin()).abs() < 1e-15);
    }

    #[test]
    fn high_precision_root_is_on_unit_circle() {
        // |ζ|² − 1 evaluated in fixed point at 200 bits
        let t = EmbeddingTable::new(11, 200);
        let z = t.embed(&CycInt::zeta_pow(11, 3));
        let norm: BigInt = &z.re * &z.re + &z.im * &z.im;
        let one: BigInt = BigInt::one() << 400u32;
        let diff = num_traits::Signed::abs(&(norm - one));
        assert!(diff.bits() < 200 + 8, "error too large: {} bits", diff.bits());
    }

    #[test]
    fn trace_matches_conjugate_sum() {
        let a = cyc(7, &[3, -1, 4, 1, -5, 9]);
        let mut s = CycInt::zero(7);
        for t in 1..7 {
            s = s.add(&a.galois_apply(t).unwrap()).unwrap();
        }
        assert_eq!(s.as_rational_integer().unwrap(), a.trace());
    }

    #[test]
    fn json_wire_format() {
        let a = cyc(3, &[5, -7]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"p":3,"coeffs":["5","-7"]}"#);
        let back: CycInt = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<CycInt>(r#"{"p":3,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn wide_mul_agrees_with_exact() {
        let a = cyc(5, &[3, -2, 0, 7]);
        let b = cyc(5, &[-1, 4, 2, 2]);
        let wa: Vec<i128> = a.coeffs().iter().map(|c| c.to_i128().unwrap()).collect();
        let wb: Vec<i128> = b.coeffs().iter().map(|c| c.to_i128().unwrap()).collect();
        let mut scratch = vec![0i128; 5];
        let prod = wide::mul(&wa, &wb, 5, &mut scratch).unwrap();
        let exact: Vec<i128> = a
            .mul(&b)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| c.to_i128().unwrap())
            .collect();
        assert_eq!(prod, exact);
        let big = vec![i128::MAX / 2; 4];
        assert!(wide::mul(&big, &big, 5, &mut scratch).is_none());
    }

    fn arb_cyc(p: u32) -> impl Strategy<Value = CycInt> {
        prop::collection::vec(-50i64..50, p as usize - 1).prop_map(move |v| cyc(p, &v))
    }

    fn rational_by_exhaustion(a: &CycInt) -> bool {
        (1..a.p() as i64).all(|t| &a.galois_apply(t).unwrap() == a)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_cyc(7), b in arb_cyc(7), c in arb_cyc(7)) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn galois_is_multiplicative(a in arb_cyc(5), b in arb_cyc(5), t in 1i64..5, s in 1i64..5) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(
                ab.galois_apply(t).unwrap(),
                a.galois_apply(t).unwrap().mul(&b.galois_apply(t).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.galois_apply(t).unwrap().galois_apply(s).unwrap(),
                a.galois_apply(s * t).unwrap()
            );
        }

        #[test]
        fn embedding_is_multiplicative(a in arb_cyc(5), b in arb_cyc(5)) {
            let t = EmbeddingTable::new(5, 96);
            let ea = t.embed(&a);
            let eb = t.embed(&b);
            let prod = ea.mul(&eb);
            let direct = t.embed(&a.mul(&b).unwrap());
            let tol = prod.error_bound() + direct.error_bound() + 1e-9;
            prop_assert!((prod.re_f64() - direct.re_f64()).abs() <= tol);
            prop_assert!((prod.im_f64() - direct.im_f64()).abs() <= tol);
        }
    }

    #[test]
    fn rationality_exhaustive_small() {
        // every element of Z[ζ_5] with coefficients in {−1, 0, 1}
        let p = 5u32;
        let mut count_rational = 0;
        for code in 0..81u32 {
            let mut v = Vec::new();
            let mut c = code;
            for _ in 0..4 {
                v.push((c % 3) as i64 - 1);
                c /= 3;
            }
            let a = cyc(p, &v);
            let ok = a.as_rational_integer().is_ok();
            assert_eq!(ok, rational_by_exhaustion(&a), "{a}");
            count_rational += ok as u32;
        }
        assert_eq!(count_rational, 3);
    }
}
