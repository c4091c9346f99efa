//! Effective bounds: birationality exponents for pluricanonical maps,
//! degrees of dual varieties, and map-count bounds of the form
//! `base^(h⁰² - 1)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::basket::l_onewave;
use crate::error::{Error, Result};
use crate::numeric::{as_decimal, digit_count, lcm_range, Rational};
use crate::riemann_roch::ThreefoldData;

/// Reports are expanded only below this many decimal digits by default.
pub const DEFAULT_EXPAND_THRESHOLD: u64 = 1_000_000;

/// Intersection numbers `v[i] = c₁(L)^i · c_{n-i}(Z)` of a line bundle `L`
/// on an `n`-dimensional `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    n: usize,
    v: Vec<BigInt>,
}

impl ChernData {
    pub fn new(n: usize, v: Vec<BigInt>) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("chern_data", "dimension must be at least 1"));
        }
        if v.len() != n + 1 {
            return Err(Error::domain(
                "chern_data",
                format!(
                    "expected {} intersection numbers for n = {n}, got {}",
                    n + 1,
                    v.len()
                ),
            ));
        }
        Ok(ChernData { n, v })
    }

    pub fn from_i64(n: usize, v: &[i64]) -> Result<Self> {
        Self::new(n, v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigInt] {
        &self.v
    }

    /// `deg L = c₁(L)^n`.
    pub fn degree(&self) -> &BigInt {
        &self.v[self.n]
    }
}

/// `h^i(X, O_X)` for every `i` with `2i <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeData {
    n: usize,
    h: Vec<u64>,
}

impl HodgeData {
    pub fn new(n: usize, h: Vec<u64>) -> Result<Self> {
        let expected = n / 2 + 1;
        if h.len() != expected {
            return Err(Error::domain(
                "hodge_data",
                format!(
                    "expected {expected} values h^0..h^{} for n = {n}, got {}",
                    n / 2,
                    h.len()
                ),
            ));
        }
        if h[0] != 1 {
            return Err(Error::domain(
                "hodge_data",
                format!("h^0 = {} but X is connected", h[0]),
            ));
        }
        Ok(HodgeData { n, h })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u64] {
        &self.h
    }
}

/// A bound `base^exponent`, expanded only when it is reasonably small.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(with = "as_decimal")]
    pub base: BigInt,
    #[serde(with = "as_decimal")]
    pub exponent: BigInt,
    /// Decimal digits of `base^exponent`, accurate to within one.
    #[serde(with = "as_decimal")]
    pub digits_estimate: BigUint,
    #[serde(with = "as_decimal::option")]
    pub expanded: Option<BigInt>,
}

impl BoundReport {
    pub fn new(base: BigInt, exponent: BigInt, expand_threshold: u64) -> Result<Self> {
        if base < BigInt::one() {
            return Err(Error::domain(
                "bound",
                format!("base {base} must be at least 1"),
            ));
        }
        if exponent.is_negative() {
            return Err(Error::domain(
                "bound",
                format!("exponent {exponent} is negative"),
            ));
        }
        let digits_estimate = estimate_power_digits(&base, &exponent);
        let expanded = (digits_estimate <= BigUint::from(expand_threshold)).then(|| {
            if base.is_one() {
                return BigInt::one();
            }
            // The digit cap keeps the exponent well inside u64 here.
            Pow::pow(&base, exponent.magnitude())
        });
        Ok(BoundReport {
            base,
            exponent,
            digits_estimate,
            expanded,
        })
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.expanded {
            Some(v) => write!(
                f,
                "{}^{} = {} ({} digits)",
                self.base,
                self.exponent,
                v,
                digit_count(v)
            ),
            None => write!(
                f,
                "{}^{} ({} digits)",
                self.base, self.exponent, self.digits_estimate
            ),
        }
    }
}

/// `log10(x)` for a positive big integer, from its top 64 bits.
fn log10_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("small").log10();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit");
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// `⌊e · log10(b)⌋ + 1`, the digit count of `b^e` for `b >= 1`.
fn estimate_power_digits(base: &BigInt, exponent: &BigInt) -> BigUint {
    if base.is_one() || exponent.is_zero() {
        return BigUint::one();
    }
    let per_factor = log10_big(base);
    if let Some(e) = exponent.to_u64() {
        let log = e as f64 * per_factor;
        if log < 9.0e15 {
            return BigUint::from(log.floor() as u64) + BigUint::one();
        }
    }
    // Past f64's integer range: scale log10(b) to a fixed-point integer and
    // keep the exponent exact.
    let per = (per_factor * 1e15).floor() as u64;
    exponent.magnitude() * BigUint::from(per) / BigUint::from(1_000_000_000_000_000u64)
        + BigUint::one()
}

/// Degree of the dual variety:
/// `Σ_{i=0}^{n} (-1)^{n+i} (1 + i) c₁(L)^i c_{n-i}(Z)`.
///
/// Degenerate inputs can give a nonpositive value; it is returned as is.
pub fn dual_degree(c: &ChernData) -> BigInt {
    c.v.iter()
        .enumerate()
        .map(|(i, v)| {
            let term = v * BigInt::from(i + 1);
            if (c.n + i).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Upper bound `a · d^i` on the total degree of the components of
/// `X ∩ {F_1 = … = F_s = 0}` for `X` of degree `a` and dimension `i` and
/// forms of degree `d`.
pub fn bezout_bound(a: u64, d: u64, i: u32) -> BigInt {
    BigInt::from(a) * BigInt::from(d).pow(i)
}

/// `base^(h0² - 1)`.
pub fn map_count_bound(base: &BigInt, h0: &BigInt, expand_threshold: u64) -> Result<BoundReport> {
    if base < &BigInt::one() {
        return Err(Error::domain(
            "map_count_bound",
            format!("base {base} must be at least 1"),
        ));
    }
    if h0 < &BigInt::one() {
        return Err(Error::domain(
            "map_count_bound",
            format!("h0 = {h0} must be at least 1"),
        ));
    }
    BoundReport::new(base.clone(), h0 * h0 - 1, expand_threshold)
}

/// Map-count bound for a smooth threefold with `sK` very ample.
///
/// The base is the degree of the dual of `X ⊂ P(H⁰(sK))`; the exponent is
/// `h⁰(sK)² - 1` with `h⁰(sK) = χ(sK)` from the plurigenus formula.
pub fn defranchis_threefold_bound(
    s: u64,
    k3: &Rational,
    c1c2: &BigInt,
    c3: &BigInt,
    chi_o: i64,
    expand_threshold: u64,
) -> Result<BoundReport> {
    if s < 2 {
        return Err(Error::domain(
            "defranchis",
            format!("s = {s} must be at least 2"),
        ));
    }
    let x = ThreefoldData::smooth(chi_o, k3.clone())?;
    let k3 = k3.to_integer().ok_or_else(|| {
        Error::Inconsistent(format!(
            "K3 = {k3} must be an integer on a smooth threefold"
        ))
    })?;
    // L = sK, c₁(L) = -s c₁(X), c₁(X)³ = -K³.
    let s = BigInt::from(s);
    let chern = ChernData::new(
        3,
        vec![
            c3.clone(),
            -(&s * c1c2),
            -(&s * &s * &k3),
            &s * &s * &s * &k3,
        ],
    )?;
    let base = dual_degree(&chern);
    if !base.is_positive() {
        return Err(Error::Inconsistent(format!(
            "dual degree {base} is not positive; the Chern data cannot come from sK very ample"
        )));
    }
    let h0 = x.plurigenus(s.to_u64().expect("s fits"))?;
    if h0 < BigInt::one() {
        return Err(Error::Inconsistent(format!(
            "h0(sK) = {h0} is not positive; (chi, K3) is impossible for sK very ample"
        )));
    }
    map_count_bound(&base, &h0, expand_threshold)
}

/// Smallest `m0` such that every `m >= m0` gives a birational pluricanonical
/// map on a threefold of general type whose canonical model has index `r`.
pub fn hanamura_m0(r: u64) -> Result<u64> {
    match r {
        0 => Err(Error::domain("hanamura_m0", "index must be at least 1")),
        1..=2 => Ok(4 * r + 5),
        3..=5 => Ok(4 * r + 4),
        _ => Ok(4 * r + 3),
    }
}

/// `11l + 5`: birational once `h⁰(lK) >= 2`.
pub fn kollar_exponent(l: u64) -> Result<u64> {
    if l < 1 {
        return Err(Error::domain("kollar_exponent", "l must be at least 1"));
    }
    Ok(11 * l + 5)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BirationalityExponent {
    /// `lcm(2, 3, …, 26C - 1)`.
    #[serde(rename = "R", with = "as_decimal")]
    pub r: BigInt,
    /// `lcm(4R + 3, 143C + 5)`.
    #[serde(with = "as_decimal")]
    pub m: BigInt,
}

/// Uniform `m` with `Φ_{mK}` birational for smooth threefolds of general
/// type with `χ(O) <= C`.
pub fn birationality_exponent(c: u64) -> Result<BirationalityExponent> {
    if c < 1 {
        return Err(Error::domain(
            "birationality_exponent",
            "C must be at least 1",
        ));
    }
    let r = lcm_range(2, 26 * c - 1)?;
    let kollar = BigInt::from(kollar_exponent(13 * c)?);
    let m = (&r * BigInt::from(4) + BigInt::from(3)).lcm(&kollar);
    Ok(BirationalityExponent { r, m })
}

/// Lower bound on `h⁰(13C K)` when the index does not divide `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `(1 - 26C) C`.
    pub linear_term: Rational,
    /// `l(1/26C (1,-1,1), 13C)`.
    pub l_term: Rational,
    pub lower_bound: Rational,
    /// `(52C² - 15C - 1) / 24`.
    pub closed_form: Rational,
    /// `lower_bound >= 3/2`, hence `h⁰ >= 2`.
    pub ok: bool,
}

pub fn lower_bound_certificate(c: u64) -> Result<Certificate> {
    if c < 1 {
        return Err(Error::domain("certificate", "C must be at least 1"));
    }
    let cb = BigInt::from(c);
    let linear_term = Rational::from((1 - &cb * 26) * &cb);
    let l_term = l_onewave(26 * c, 13 * c);
    let lower_bound = &linear_term + &l_term;
    let closed_form = Rational::new(&cb * &cb * 52 - &cb * 15 - 1, 24)?;
    if lower_bound != closed_form {
        return Err(Error::Internal(format!(
            "certificate at C = {c}: basket evaluation {lower_bound} differs from closed form {closed_form}"
        )));
    }
    let ok = lower_bound >= Rational::frac(3, 2);
    Ok(Certificate {
        linear_term,
        l_term,
        lower_bound,
        closed_form,
        ok,
    })
}

/// `Σ_{2i <= n} h^i(X, O_X)`, an upper bound for `χ(O_Y)` over images `Y`
/// of `X`.
pub fn chi_upper_bound(h: &HodgeData) -> u64 {
    h.h.iter().take(h.n / 2 + 1).sum()
}

/// `r | p` and `p >= 9r`.
pub fn validate_p(p: u64, r: u64) -> bool {
    r >= 1 && p.is_multiple_of(r) && p >= 9 * r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MappingBounds {
    /// `dim H⁰(9rK) - 1 <= 729 r³k + 3`.
    #[serde(rename = "N_max", with = "as_decimal")]
    pub n_max: BigInt,
    /// Degree of the 9rK-canonical image of X.
    #[serde(rename = "degX_max", with = "as_decimal")]
    pub deg_x_max: BigInt,
    /// Degree of the pK-canonical image of Y.
    #[serde(rename = "degY_max", with = "as_decimal")]
    pub deg_y_max: BigInt,
    /// Degree of the graph of a map between the images.
    #[serde(with = "as_decimal")]
    pub graph_deg_max: BigInt,
}

/// Embedding-dimension and degree bounds for canonical threefolds of index
/// `r` with `K³ = k`, using a pluricanonical multiple `p`.
pub fn mapping_bounds(r: u64, k3: &Rational, p: u64) -> Result<MappingBounds> {
    if r < 1 {
        return Err(Error::domain("mapping-bounds", "index must be at least 1"));
    }
    if !validate_p(p, r) {
        return Err(Error::domain(
            "mapping-bounds",
            format!(
                "p = {p} must be divisible by r = {r} and at least 9r = {}",
                9 * r
            ),
        ));
    }
    if !k3.is_positive() {
        return Err(Error::domain(
            "mapping-bounds",
            format!("K3 = {k3} must be positive"),
        ));
    }
    let cube = |x: u64| {
        let x = BigInt::from(x);
        &x * &x * &x
    };
    let r3k = k3.scale(cube(r)).to_integer().ok_or_else(|| {
        Error::Inconsistent(format!("r^3 K3 = {} is not an integer", k3.scale(cube(r))))
    })?;
    let p3k = k3.scale(cube(p)).to_integer().ok_or_else(|| {
        Error::Inconsistent(format!("p^3 K3 = {} is not an integer", k3.scale(cube(p))))
    })?;
    let deg_x_max = r3k * 729;
    Ok(MappingBounds {
        n_max: &deg_x_max + 3,
        deg_x_max,
        graph_deg_max: &p3k * 8,
        deg_y_max: p3k,
    })
}
