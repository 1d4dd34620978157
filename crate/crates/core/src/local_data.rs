//! Local data of `Sym^k(Kl₂)` at `0` and `∞`: the degree of the L-polynomial,
//! the summand decomposition at `∞`, and the inertia invariants that feed the
//! Euler-factor bookkeeping.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{legendre, modp, require_odd_prime};
use crate::error::{Error, Result};

fn check_args(p: u64, k: u32) -> Result<()> {
    require_odd_prime(p)?;
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    Ok(())
}

/// Degree `δ_k(p)` of `M_k(p, T)`.
pub fn delta_degree(p: u64, k: u32) -> Result<u32> {
    check_args(p, k)?;
    let (k, p) = (k as i64, p as i64);
    let d = if k % 2 == 1 {
        (k - 1) / 2 - (k + p) / (2 * p)
    } else {
        2 * ((k - 2) / 4 - k / (2 * p))
    };
    u32::try_from(d).map_err(|_| Error::domain(format!("degree formula is negative ({d}) at p={p}, k={k}")))
}

/// One summand of `Sym^k` restricted to the inertia group at `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Summand {
    /// Rank one: `L_{χ^r} ⊗ L_{θ₀^{2r} θ₁^r}` (k even).
    TameLine {
        character_parity: u32,
        twist_g_exponent: u32,
        twist_theta1_exponent: u32,
    },
    /// Rank two: `[2]_* L_ψ(a t)` (times `χ` when `inner_quadratic`) with an
    /// unramified twist. Tame exactly when `wild_coeff == 0`.
    Pair {
        i: u32,
        wild_coeff: u64,
        inner_quadratic: bool,
        twist_g_exponent: u32,
        twist_theta1_exponent: u32,
    },
}

impl Summand {
    pub fn rank(&self) -> u32 {
        match self {
            Summand::TameLine { .. } => 1,
            Summand::Pair { .. } => 2,
        }
    }

    pub fn is_wild(&self) -> bool {
        matches!(self, Summand::Pair { wild_coeff, .. } if *wild_coeff != 0)
    }

    /// Whether inertia fixes a line in this summand.
    pub fn has_invariant_line(&self) -> bool {
        match self {
            Summand::TameLine { character_parity, .. } => *character_parity == 0,
            Summand::Pair { wild_coeff, inner_quadratic, .. } => *wild_coeff == 0 && !inner_quadratic,
        }
    }

    fn twist_theta1_exponent(&self) -> u32 {
        match self {
            Summand::TameLine { twist_theta1_exponent, .. }
            | Summand::Pair { twist_theta1_exponent, .. } => *twist_theta1_exponent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinityDecomposition {
    pub p: u64,
    pub k: u32,
    pub r: u32,
    pub summands: Vec<Summand>,
}

impl InfinityDecomposition {
    pub fn total_rank(&self) -> u32 {
        self.summands.iter().map(Summand::rank).sum()
    }

    pub fn wild_count(&self) -> u32 {
        self.summands.iter().filter(|s| s.is_wild()).count() as u32
    }

    /// The pair with index `i`, if present.
    pub fn pair(&self, i: u32) -> Option<&Summand> {
        self.summands
            .iter()
            .find(|s| matches!(s, Summand::Pair { i: j, .. } if *j == i))
    }

    pub fn tame_line(&self) -> Option<&Summand> {
        self.summands
            .iter()
            .find(|s| matches!(s, Summand::TameLine { .. }))
    }
}

pub fn infinity_decomposition(p: u64, k: u32) -> Result<InfinityDecomposition> {
    check_args(p, k)?;
    let r = k / 2;
    let mut summands = Vec::new();
    if k % 2 == 0 {
        summands.push(Summand::TameLine {
            character_parity: r % 2,
            twist_g_exponent: 2 * r,
            twist_theta1_exponent: r,
        });
        for i in 0..r {
            summands.push(Summand::Pair {
                i,
                wild_coeff: modp(4 * i as i64 - 4 * r as i64, p),
                inner_quadratic: false,
                twist_g_exponent: 2 * r,
                twist_theta1_exponent: i,
            });
        }
    } else {
        for i in 0..=r {
            summands.push(Summand::Pair {
                i,
                wild_coeff: modp(4 * i as i64 - 4 * r as i64 - 2, p),
                inner_quadratic: true,
                twist_g_exponent: 2 * r + 1,
                twist_theta1_exponent: i + 1,
            });
        }
    }
    Ok(InfinityDecomposition { p, k, r, summands })
}

/// Frobenius eigenvalues on the inertia invariants at `∞`.
///
/// An invariant line carries the twist `g^{2r}·(−1|p)^e` with `e` the
/// `θ₁` exponent, and `g² = p·(−1|p)` makes that `p^r·(−1|p)^{r+e}`.
pub fn infinity_invariant_eigenvalues(p: u64, k: u32) -> Result<Vec<BigInt>> {
    let decomp = infinity_decomposition(p, k)?;
    let eps = legendre(-1, p);
    let base = BigInt::from(p).pow(decomp.r);
    Ok(decomp
        .summands
        .iter()
        .filter(|s| s.has_invariant_line())
        .map(|s| {
            if (decomp.r + s.twist_theta1_exponent()) % 2 == 1 && eps == -1 {
                -base.clone()
            } else {
                base.clone()
            }
        })
        .collect())
}

/// Degree of `H¹_c(G_m, Sym^k)`: the number of wild pairs, each of Swan
/// conductor one.
pub fn h1c_degree(p: u64, k: u32) -> Result<u32> {
    check_args(p, k)?;
    let (r, p) = (k / 2, p as u32);
    Ok(if k % 2 == 0 {
        r - r / p
    } else {
        (r + 1) - (k / p - k / (2 * p))
    })
}

/// Local model at `0`: unipotent monodromy with a single Jordan block, so a
/// one-dimensional invariant line with eigenvalue 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroStalkModel {
    pub p: u64,
    pub k: u32,
}

impl ZeroStalkModel {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        check_args(p, k)?;
        Ok(ZeroStalkModel { p, k })
    }

    pub fn invariant_dimension(&self) -> u32 {
        1
    }

    pub fn invariant_frobenius_eigenvalue(&self) -> BigInt {
        BigInt::one()
    }

    /// `F(f_i) = p^i f_i` on the graded pieces `f_0, …, f_k`.
    pub fn filtration_eigenvalues(&self) -> Vec<BigInt> {
        (0..=self.k).map(|i| BigInt::from(self.p).pow(i)).collect()
    }
}

/// `|λ|² = p^k` for every invariant eigenvalue.
pub fn invariant_weights_hold(p: u64, k: u32) -> Result<bool> {
    let target = BigInt::from(p).pow(k);
    Ok(infinity_invariant_eigenvalues(p, k)?
        .iter()
        .all(|l| l.abs().pow(2) == target))
}
