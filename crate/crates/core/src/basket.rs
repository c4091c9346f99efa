//! Baskets of cyclic quotient singularities of type `1/r (a, -a, 1)` and
//! their local Riemann–Roch contributions
//!
//! ```text
//! l(Q, m) = Σ_{k=1}^{m-1} bk̄ (r - bk̄) / 2r,        ab ≡ 1 (mod r)
//! ```
//!
//! in three forms: the raw sum, a period-reduced closed form, and the
//! polynomial form valid for weight `a = ±1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{gcd_u64, mod_inverse, Rational};

/// A cyclic quotient singularity `1/r (a, -a, 1)`.
///
/// Stored with `a` reduced to `min(a, r - a)`; the contribution is
/// invariant under `a ↦ r - a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientSingularity {
    r: u64,
    a: u64,
    b: u64,
}

impl QuotientSingularity {
    pub fn new(r: u64, a: u64) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidSingularity {
            r,
            a,
            reason: reason.to_string(),
        };
        if r < 2 {
            return Err(invalid("order must be at least 2"));
        }
        if a < 1 || a >= r {
            return Err(invalid("weight must satisfy 1 <= a < r"));
        }
        if gcd_u64(a, r) != 1 {
            return Err(invalid("weight must be coprime to the order"));
        }
        let a = a.min(r - a);
        let b = mod_inverse(a as i64, r).expect("coprime weight is invertible");
        Ok(QuotientSingularity { r, a, b })
    }

    pub fn order(&self) -> u64 {
        self.r
    }

    /// Canonical weight, `min(a, r - a)`.
    pub fn weight(&self) -> u64 {
        self.a
    }

    /// `a⁻¹ mod r` for the canonical weight.
    pub fn inverse_weight(&self) -> u64 {
        self.b
    }

    /// Every singularity of order `r`, one per `a ↔ r - a` class.
    pub fn all_of_order(r: u64) -> impl Iterator<Item = QuotientSingularity> {
        (1..=r / 2).filter_map(move |a| QuotientSingularity::new(r, a).ok())
    }
}

impl fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}({},-{},1)", self.r, self.a, self.a)
    }
}

/// Integer numerator `Σ_{k=1}^{n} bk̄ (r - bk̄)` of a partial l-sum.
fn partial_numerator(r: u64, b: u64, n: u64) -> BigInt {
    let r = u128::from(r);
    let b = u128::from(b) % r;
    let mut bk = 0u128;
    let mut sum = BigInt::zero();
    for _ in 0..n {
        bk = (bk + b) % r;
        sum += bk * (r - bk);
    }
    sum
}

fn over_2r(num: BigInt, r: u64) -> Rational {
    Rational::new(num, BigInt::from(r) * 2).expect("r >= 1")
}

/// `(r² - 1) / 12`, the contribution of one complete period.
fn period_total(r: u64) -> Rational {
    let r = BigInt::from(r);
    Rational::new(&r * &r - 1, 12).expect("nonzero")
}

/// `l(Q, m)` by direct summation over `k = 1..m-1`.
pub fn l_direct(q: &QuotientSingularity, m: u64) -> Rational {
    over_2r(partial_numerator(q.r, q.b, m.saturating_sub(1)), q.r)
}

/// `l(Q, m)` as complete periods plus a partial sum over the residue.
///
/// `(r² - 1)/12 · (m - m̄)/r + Σ_{k=1}^{m̄-1} bk̄ (r - bk̄)/2r`
pub fn l_closed(q: &QuotientSingularity, m: u64) -> Rational {
    let (periods, rem) = m.div_rem(&q.r);
    let partial = over_2r(partial_numerator(q.r, q.b, rem.saturating_sub(1)), q.r);
    period_total(q.r).scale(periods) + partial
}

/// `l(1/r (1, -1, 1), m)` in polynomial form:
///
/// ```text
/// m̄ (m̄ - 1)(3r + 1 - 2m̄) / 12r + (r² - 1)/12 · ⌊m/r⌋
/// ```
///
/// `r <= 1` is a smooth point and contributes zero.
pub fn l_onewave(r: u64, m: u64) -> Rational {
    if r <= 1 {
        return Rational::zero();
    }
    let (periods, rem) = m.div_rem(&r);
    let rb = BigInt::from(r);
    let mb = BigInt::from(rem);
    let num = &mb * (&mb - 1) * (&rb * 3 + 1 - &mb * 2);
    let head = Rational::new(num, rb * 12).expect("r >= 2");
    head + period_total(r).scale(periods)
}

/// Checks `l(1/α (a,-a,1), m) >= l(1/β (1,-1,1), m)` for every admissible
/// weight `a` of order `α`.
///
/// Defined for `0 <= β <= α` and `1 <= m <= ⌊(α + 1)/2⌋`. Orders `<= 1`
/// are smooth and contribute zero on either side.
pub fn fletcher_dominates(alpha: u64, beta: u64, m: u64) -> Result<bool> {
    if beta > alpha {
        return Err(Error::domain(
            "fletcher_dominates",
            format!("beta = {beta} exceeds alpha = {alpha}"),
        ));
    }
    let m_max = alpha.div_ceil(2);
    if m < 1 || m > m_max {
        return Err(Error::domain(
            "fletcher_dominates",
            format!("m = {m} outside 1..={m_max}"),
        ));
    }
    let rhs = l_onewave(beta, m);
    if alpha <= 1 {
        return Ok(Rational::zero() >= rhs);
    }
    Ok(QuotientSingularity::all_of_order(alpha).all(|q| l_closed(&q, m) >= rhs))
}

/// A finite multiset of quotient singularities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Basket {
    entries: BTreeMap<QuotientSingularity, u64>,
}

/// Serialized form of one basket entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasketEntry {
    pub r: u64,
    pub a: u64,
    pub count: u64,
}

impl Basket {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = BasketEntry>>(entries: I) -> Result<Self> {
        let mut basket = Basket::new();
        for e in entries {
            basket.insert(QuotientSingularity::new(e.r, e.a)?, e.count)?;
        }
        Ok(basket)
    }

    /// Adds `count` copies of `q`.
    pub fn insert(&mut self, q: QuotientSingularity, count: u64) -> Result<()> {
        if count == 0 {
            return Err(Error::domain(
                "basket",
                format!("multiplicity of {q} must be >= 1"),
            ));
        }
        *self.entries.entry(q).or_insert(0) += count;
        Ok(())
    }

    pub fn with(mut self, q: QuotientSingularity, count: u64) -> Result<Self> {
        self.insert(q, count)?;
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&QuotientSingularity, u64)> {
        self.entries.iter().map(|(q, &c)| (q, c))
    }

    pub fn to_entries(&self) -> Vec<BasketEntry> {
        self.iter()
            .map(|(q, count)| BasketEntry {
                r: q.order(),
                a: q.weight(),
                count,
            })
            .collect()
    }

    /// lcm of the entry orders; 1 for the empty basket.
    pub fn index(&self) -> u64 {
        self.entries.keys().fold(1u64, |acc, q| acc.lcm(&q.order()))
    }

    /// Multiplicity-weighted `Σ_Q l(Q, m)`.
    pub fn l_sum(&self, m: u64) -> Rational {
        self.iter()
            .map(|(q, count)| l_closed(q, m).scale(count))
            .sum()
    }
}

impl Serialize for Basket {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_entries().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Basket {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<BasketEntry>::deserialize(deserializer)?;
        Basket::from_entries(entries).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        f.write_str("{")?;
        for (i, (q, count)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{q}×{count}")?;
        }
        f.write_str("}")
    }
}

pub fn basket_index(basket: &Basket) -> u64 {
    basket.index()
}

pub fn basket_l_sum(basket: &Basket, m: u64) -> Rational {
    basket.l_sum(m)
}
