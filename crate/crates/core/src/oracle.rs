//! Brute-force cross-checks for every closed form in the crate.
//!
//! The oracles here never call the routine they check: l-terms are summed
//! term by term with the inverse found by search, lcms come from a prime
//! sieve, powers from repeated multiplication. Only the `Rational` and
//! `BigInt` primitives are shared.
//!
//! Checks are registered by name in a [`CheckRegistry`] and run through
//! the CLI's `verify` subcommand.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basket::{fletcher_dominates, Basket, QuotientSingularity};
use crate::bounds::BoundReport;
use crate::error::Result;
use crate::local_term::{LocalTerm, LocalTermRegistry};
use crate::numeric::{digit_count, lcm_range, Rational};
use crate::riemann_roch::ThreefoldData;

pub const DEFAULT_SEED: u64 = 1729;

/// Outcome of one verification sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub ranges: String,
    pub cases: u64,
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub tallies: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, ranges: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            ranges: ranges.into(),
            cases: 0,
            counterexample: None,
            seed: None,
            tallies: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    fn case(&mut self) {
        self.cases += 1;
    }

    /// Records a failure; only the first one is kept.
    fn fail(&mut self, what: impl FnOnce() -> String) {
        if self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
    }

    fn tally(&mut self, key: &str) {
        *self.tallies.entry(key.to_string()).or_insert(0) += 1;
    }

    fn with_ranges(mut self, ranges: String) -> Self {
        self.ranges = ranges;
        self
    }

    /// Combines two partial sweeps; `self` is the earlier one.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.cases += other.cases;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        for (k, v) in other.tallies {
            *self.tallies.entry(k).or_insert(0) += v;
        }
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} [{}] {} cases",
            self.check, self.ranges, self.cases
        )?;
        if let Some(seed) = self.seed {
            write!(f, ", seed {seed}")?;
        }
        for (k, v) in &self.tallies {
            write!(f, ", {k} {v}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "; counterexample: {c}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Raw oracles

fn inverse_by_search(a: u64, r: u64) -> u64 {
    (1..r).find(|b| (a * b) % r == 1).expect("unit")
}

/// `l(1/r (a,-a,1), m)` for `m = 0..=m_max`, one rational term at a time.
pub fn brute_l_table(r: u64, a: u64, m_max: u64) -> Vec<Rational> {
    let b = inverse_by_search(a % r, r);
    let mut out = Vec::with_capacity(m_max as usize + 1);
    let mut acc = Rational::zero();
    out.push(acc.clone());
    for m in 1..=m_max {
        // l(m) = l(m-1) + term(k = m-1)
        let k = m - 1;
        if k >= 1 {
            let bk = (b * k) % r;
            acc += Rational::new(BigInt::from(bk * (r - bk)), BigInt::from(2 * r)).expect("r >= 2");
        }
        out.push(acc.clone());
    }
    out
}

pub fn brute_l(r: u64, a: u64, m: u64) -> Rational {
    brute_l_table(r, a, m).pop().expect("nonempty")
}

fn sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// `lcm(1..=h)` as the product of the largest prime powers `<= h`.
pub fn lcm_by_factorization(h: u64) -> BigInt {
    sieve(h).into_iter().fold(BigInt::one(), |acc, p| {
        let mut pk = p;
        while pk * p <= h {
            pk *= p;
        }
        acc * pk
    })
}

/// `base^exp` by `exp` successive multiplications.
pub fn naive_pow(base: &BigInt, exp: u64) -> BigInt {
    (0..exp).fold(BigInt::one(), |acc, _| acc * base)
}

/// The second equality as printed, without the division by `r`:
/// `(r² - 1)/12 · (m - m̄) + Σ_{k=1}^{m̄-1} …`.
///
/// Kept only to document that this reading disagrees with the raw sum;
/// it is not part of [`LocalTermRegistry::standard`].
pub struct PrintedClosedForm;

impl LocalTerm for PrintedClosedForm {
    fn name(&self) -> &'static str {
        "printed"
    }

    fn describe(&self) -> &'static str {
        "closed form without the division by r (incorrect)"
    }

    fn eval(&self, q: &QuotientSingularity, m: u64) -> Result<Rational> {
        let r = q.order();
        let rem = m % r;
        let periods = Rational::new(BigInt::from(r) * BigInt::from(r) - 1, 12)?.scale(m - rem);
        let b = q.inverse_weight();
        let partial: Rational = (1..rem)
            .map(|k| {
                let bk = (b * k) % r;
                Rational::new(BigInt::from(bk * (r - bk)), BigInt::from(2 * r)).expect("r >= 2")
            })
            .sum();
        Ok(periods + partial)
    }
}

// ---------------------------------------------------------------------------
// Sweeps

/// Compares every form in `forms` with the raw sum for all `r <= r_max`,
/// every weight class, and `0 <= m <= m_span · r`.
pub fn verify_l_equivalence_with(
    r_max: u64,
    m_span: u64,
    forms: &LocalTermRegistry,
) -> VerificationReport {
    let ranges = format!(
        "r in 2..={r_max}, all weights, m in 0..={m_span}r, forms {}",
        forms.names().join("/")
    );
    let forms: Vec<_> = forms.iter().cloned().collect();
    (2..=r_max.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rep = VerificationReport::new("l-equivalence", "");
            for a in (1..r).filter(|a| a.gcd(&r) == 1) {
                let q = QuotientSingularity::new(r, a).expect("unit weight");
                let table = brute_l_table(r, a, m_span * r);
                for (m, expect) in table.iter().enumerate() {
                    let m = m as u64;
                    for form in forms.iter().filter(|f| f.applies_to(&q)) {
                        rep.case();
                        match form.eval(&q, m) {
                            Ok(got) if &got == expect => {}
                            Ok(got) => rep.fail(|| {
                                format!(
                                    "{} at r={r}, a={a}, m={m}: {got} vs direct sum {expect}",
                                    form.name()
                                )
                            }),
                            Err(e) => rep.fail(|| format!("{} at {q}, m={m}: {e}", form.name())),
                        }
                    }
                }
            }
            rep
        })
        .reduce(
            || VerificationReport::new("l-equivalence", ""),
            VerificationReport::merge,
        )
        .with_ranges(ranges)
}

pub fn verify_l_equivalence(r_max: u64, m_span: u64) -> VerificationReport {
    verify_l_equivalence_with(r_max, m_span, &LocalTermRegistry::standard())
}

/// `l(1/α (a,-a,1), m) >= l(1/β (1,-1,1), m)` for every `2 <= α <= alpha_max`,
/// `0 <= β <= α`, weight `a`, and `1 <= m <= ⌊(α+1)/2⌋`, by raw sums.
/// Also checks that [`fletcher_dominates`] agrees on every `(α, β, m)`.
pub fn verify_domination(alpha_max: u64) -> VerificationReport {
    let ranges =
        format!("alpha in 2..={alpha_max}, beta in 0..=alpha, all weights, m in 1..=(alpha+1)/2");
    let m_cap = alpha_max.div_ceil(2);
    // Right-hand sides by raw sums, indexed [beta][m].
    let rhs: Vec<Vec<Rational>> = (0..=alpha_max)
        .map(|beta| {
            if beta <= 1 {
                vec![Rational::zero(); m_cap as usize + 1]
            } else {
                brute_l_table(beta, 1, m_cap)
            }
        })
        .collect();
    (2..=alpha_max.max(1))
        .into_par_iter()
        .map(|alpha| {
            let mut rep = VerificationReport::new("domination", "");
            let m_max = alpha.div_ceil(2);
            let lhs: Vec<(u64, Vec<Rational>)> = (1..alpha)
                .filter(|a| a.gcd(&alpha) == 1)
                .map(|a| (a, brute_l_table(alpha, a, m_max)))
                .collect();
            for beta in 0..=alpha {
                for m in 1..=m_max {
                    let bound = &rhs[beta as usize][m as usize];
                    let mut all = true;
                    for (a, table) in &lhs {
                        rep.case();
                        let l = &table[m as usize];
                        if l < bound {
                            all = false;
                            rep.fail(|| {
                                format!("alpha={alpha}, a={a}, beta={beta}, m={m}: {l} < {bound}")
                            });
                        } else if l == bound {
                            rep.tally("equalities");
                        }
                    }
                    match fletcher_dominates(alpha, beta, m) {
                        Ok(v) if v == all => {}
                        Ok(v) => rep.fail(|| {
                            format!(
                                "fletcher_dominates({alpha},{beta},{m}) = {v}, sweep says {all}"
                            )
                        }),
                        Err(e) => {
                            rep.fail(|| format!("fletcher_dominates({alpha},{beta},{m}): {e}"))
                        }
                    }
                }
            }
            rep
        })
        .reduce(
            || VerificationReport::new("domination", ""),
            VerificationReport::merge,
        )
        .with_ranges(ranges)
}

pub fn verify_lcm_factorization(hi_max: u64) -> VerificationReport {
    let mut rep = VerificationReport::new(
        "lcm-factorization",
        format!("lcm(2..=h) for h in 2..={hi_max}"),
    );
    for h in 2..=hi_max {
        rep.case();
        let expect = lcm_by_factorization(h);
        match lcm_range(2, h) {
            Ok(got) if got == expect => {}
            Ok(got) => rep.fail(|| format!("h={h}: running lcm {got} vs factorization {expect}")),
            Err(e) => rep.fail(|| format!("h={h}: {e}")),
        }
    }
    rep
}

pub fn verify_power_expansion(base_max: u64, exp_max: u64) -> VerificationReport {
    let mut rep = VerificationReport::new(
        "power-expansion",
        format!("base in 1..={base_max}, exponent in 0..={exp_max}"),
    );
    for base in 1..=base_max {
        let b = BigInt::from(base);
        let mut naive = BigInt::one();
        for e in 0..=exp_max {
            if e > 0 {
                naive *= &b;
            }
            rep.case();
            let report = match BoundReport::new(b.clone(), BigInt::from(e), u64::MAX) {
                Ok(r) => r,
                Err(err) => {
                    rep.fail(|| format!("{base}^{e}: {err}"));
                    continue;
                }
            };
            if report.expanded.as_ref() != Some(&naive) {
                rep.fail(|| format!("{base}^{e}: expansion differs from repeated multiplication"));
            }
            let digits = BigUint::from(digit_count(&naive));
            let gap = if report.digits_estimate > digits {
                &report.digits_estimate - &digits
            } else {
                &digits - &report.digits_estimate
            };
            if gap > BigUint::one() {
                rep.fail(|| {
                    format!(
                        "{base}^{e}: estimate {} vs {digits} digits",
                        report.digits_estimate
                    )
                });
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// Random threefold data

/// A generated `(χ, K³, basket)` with the validity the generator intended.
#[derive(Clone, Debug)]
pub struct Sample {
    pub data: ThreefoldData,
    pub expect_valid: bool,
}

/// Seeded generator of threefold data.
///
/// Draws a basket (orders 2..=7, at most three distinct entries), solves
/// the congruences on `t` that make `χ(mK)` integral for `K³ = t/r³`, then
/// draws `t` in `[1, 100 r³]` from the solution class and `χ(O)` in
/// `[-20, 20]`. About one draw in twenty is a negative control with `t`
/// outside the class that `validate` sweeps.
pub struct ThreefoldSampler {
    rng: ChaCha8Rng,
    negative_rate: f64,
}

impl ThreefoldSampler {
    pub fn new(seed: u64) -> Self {
        ThreefoldSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            negative_rate: 0.05,
        }
    }

    pub fn with_negative_rate(mut self, rate: f64) -> Self {
        self.negative_rate = rate;
        self
    }

    fn draw_basket(&mut self) -> Vec<(u64, u64, u64)> {
        let n = self.rng.gen_range(0..=3);
        (0..n)
            .map(|_| {
                let r = self.rng.gen_range(2..=7u64);
                let units: Vec<u64> = (1..r).filter(|a| a.gcd(&r) == 1).collect();
                let a = units[self.rng.gen_range(0..units.len())];
                (r, a, self.rng.gen_range(1..=3))
            })
            .collect()
    }

    pub fn sample(&mut self) -> Sample {
        loop {
            let raw = self.draw_basket();
            let r = raw.iter().fold(1u64, |acc, (q, _, _)| acc.lcm(q));
            let negative = self.rng.gen_bool(self.negative_rate);
            let span = if negative { 2 } else { 4 };
            let Some((x, modulus)) = integral_k3_class(&raw, r, span) else {
                continue;
            };
            let r3 = i128::from(r).pow(3);
            let hi = 100 * r3;
            let t = if negative {
                if modulus == 1 {
                    continue;
                }
                // A random t outside the class.
                let mut t = self.rng.gen_range(1..=hi);
                if t.rem_euclid(modulus) == x {
                    t = if t > 1 { t - 1 } else { t + 1 };
                }
                t
            } else {
                let first = if x == 0 { modulus } else { x };
                let count = (hi - first) / modulus + 1;
                first + modulus * self.rng.gen_range(0..count)
            };
            let mut basket = Basket::new();
            for (q, a, c) in &raw {
                basket
                    .insert(
                        QuotientSingularity::new(*q, *a).expect("drawn from units"),
                        *c,
                    )
                    .expect("count >= 1");
            }
            let chi = self.rng.gen_range(-20..=20);
            let k3 = Rational::new(BigInt::from(t), BigInt::from(r3)).expect("r >= 1");
            let data = ThreefoldData::new(chi, k3, basket).expect("t >= 1");
            return Sample {
                data,
                expect_valid: !negative,
            };
        }
    }
}

/// Residue class `t ≡ x (mod n)` of those `t` for which `χ(mK)` is integral
/// for `m = 0..=span·r`, when `K³ = t/r³`.
///
/// With `M = 12r³`, each `m` imposes `t·P(m) ≡ -M·L(m) (mod M)` where
/// `P(m) = (2m-1)m(m-1)` and `L(m)` is the basket sum; the congruences are
/// merged by the generalized Chinese remainder theorem.
fn integral_k3_class(raw: &[(u64, u64, u64)], r: u64, span: u64) -> Option<(i128, i128)> {
    let big_m = 12 * i128::from(r).pow(3);
    let m_max = span * r;
    let tables: Vec<(Vec<Rational>, u64)> = raw
        .iter()
        .map(|&(q, a, c)| (brute_l_table(q, a, m_max), c))
        .collect();
    let (mut x, mut modulus) = (0i128, 1i128);
    for m in 0..=m_max {
        let mi = i128::from(m);
        let p = ((2 * mi - 1) * mi * (mi - 1)).rem_euclid(big_m);
        let l: Rational = tables.iter().map(|(t, c)| t[m as usize].scale(*c)).sum();
        let rhs = (-l).scale(BigInt::from(big_m));
        let rhs: i128 = rhs.to_integer()?.try_into().ok()?;
        let rhs = rhs.rem_euclid(big_m);
        // p·t ≡ rhs (mod M)
        let g = p.gcd(&big_m);
        if rhs % g != 0 {
            return None;
        }
        let n = big_m / g;
        let t0 = if n == 1 {
            0
        } else {
            (rhs / g) * inverse_i128(p / g, n) % n
        };
        (x, modulus) = crt_merge(x, modulus, t0, n)?;
    }
    Some((x, modulus))
}

fn inverse_i128(a: i128, n: i128) -> i128 {
    let e = a.rem_euclid(n).extended_gcd(&n);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(n)
}

/// Intersection of `t ≡ x1 (mod n1)` and `t ≡ x2 (mod n2)`.
fn crt_merge(x1: i128, n1: i128, x2: i128, n2: i128) -> Option<(i128, i128)> {
    let g = n1.gcd(&n2);
    if (x2 - x1).rem_euclid(g) != 0 {
        return None;
    }
    let l = n1 / g * n2;
    let step = n2 / g;
    let k = if step == 1 {
        0
    } else {
        ((x2 - x1) / g).rem_euclid(step) * inverse_i128(n1 / g, step) % step
    };
    Some(((x1 + n1 * k).rem_euclid(l), l))
}

/// `χ(mK)` from the formula with raw l-sums, for `m = 0..=m_max`.
fn brute_chi_table(x: &ThreefoldData, m_max: u64) -> Vec<Rational> {
    let mut total = vec![Rational::zero(); m_max as usize + 1];
    for (q, count) in x.basket().iter() {
        let table = brute_l_table(q.order(), q.weight(), m_max);
        for (acc, l) in total.iter_mut().zip(table) {
            *acc += l.scale(count);
        }
    }
    total
        .into_iter()
        .enumerate()
        .map(|(m, l)| {
            let m = BigInt::from(m);
            let cubic = x.k3().scale((&m * 2 - 1) * &m * (&m - 1)) / Rational::from(12);
            cubic - Rational::from((&m * 2 - 1) * x.chi_o()) + l
        })
        .collect()
}

/// Normalization, integrality to `4r`, and Hilbert-coefficient identities
/// for one instance. Non-integral data fails the check.
pub fn verify_chi_instance(x: &ThreefoldData) -> VerificationReport {
    let mut rep = VerificationReport::new("chi-identities", format!("{x}"));
    check_instance(&mut rep, x, true);
    rep
}

fn check_instance(rep: &mut VerificationReport, x: &ThreefoldData, expect_valid: bool) {
    let r = x.index();
    let rb = BigInt::from(r);
    let chi = Rational::from(x.chi_o());
    rep.case();
    if x.chi_mk(0) != chi {
        rep.fail(|| format!("{x}: chi(0K) = {} != chi(O)", x.chi_mk(0)));
    }
    if x.chi_mk(1) != -&chi {
        rep.fail(|| format!("{x}: chi(1K) = {} != -chi(O)", x.chi_mk(1)));
    }
    let brute = brute_chi_table(x, 4 * r);
    for (m, expect) in brute.iter().enumerate() {
        let got = x.chi_mk(m as u64);
        if &got != expect {
            rep.fail(|| format!("{x}: chi({m}K) = {got}, raw formula gives {expect}"));
        }
    }
    let first_non_integral = brute.iter().position(|v| !v.is_integer());
    let validated = x.validate().passed();
    if expect_valid {
        if let Some(m) = first_non_integral {
            rep.fail(|| format!("{x}: chi({m}K) = {} is not an integer", brute[m]));
        }
        if !validated {
            rep.fail(|| format!("{x}: validate rejected data that is integral up to 4r"));
        }
    } else {
        rep.tally("negative_controls");
        if validated {
            rep.fail(|| format!("{x}: negative control passed validate"));
        }
    }
    let h = x.hilbert_coefficients();
    let k3 = x.k3();
    let c3 = k3.scale(&rb * &rb * &rb) / Rational::from(6);
    let c2 = -(k3.scale(&rb * &rb) / Rational::from(4));
    if h.c3 != c3 || h.c2 != c2 {
        rep.fail(|| {
            format!(
                "{x}: leading coefficients ({}, {}) != ({c3}, {c2})",
                h.c3, h.c2
            )
        });
    }
    for t in 1..=4u64 {
        let got = h.eval(t);
        let expect = &brute[(r * t) as usize];
        if &got != expect {
            rep.fail(|| format!("{x}: Hilbert cubic at t={t} gives {got}, chi(rtK) = {expect}"));
        }
    }
}

/// Runs [`verify_chi_instance`]-style checks on `samples` valid random
/// instances plus the negative controls drawn along the way.
pub fn verify_chi_identities(samples: u64, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new(
        "chi-identities",
        format!("{samples} random valid instances, integrality to 4r"),
    );
    rep.seed = Some(seed);
    let mut sampler = ThreefoldSampler::new(seed);
    let mut valid = 0;
    while valid < samples {
        let s = sampler.sample();
        if s.expect_valid {
            valid += 1;
        }
        check_instance(&mut rep, &s.data, s.expect_valid);
    }
    rep
}

// ---------------------------------------------------------------------------
// Registry

/// Sweep sizes for the registered checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    pub l_r_max: u64,
    pub l_m_span: u64,
    pub domination_alpha_max: u64,
    pub lcm_hi_max: u64,
    pub chi_samples: u64,
    pub power_base_max: u64,
    pub power_exp_max: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: DEFAULT_SEED,
            l_r_max: 60,
            l_m_span: 3,
            domination_alpha_max: 40,
            lcm_hi_max: 200,
            chi_samples: 200,
            power_base_max: 100,
            power_exp_max: 50,
        }
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, cfg: &SweepConfig) -> VerificationReport;
}

/// Adapts a plain function into a named [`Check`].
struct FnCheck {
    name: &'static str,
    run: fn(&SweepConfig) -> VerificationReport,
}

impl Check for FnCheck {
    fn name(&self) -> &'static str {
        self.name
    }

    fn run(&self, cfg: &SweepConfig) -> VerificationReport {
        (self.run)(cfg)
    }
}

#[derive(Clone, Default)]
pub struct CheckRegistry {
    checks: Vec<Arc<dyn Check>>,
}

impl CheckRegistry {
    pub fn register(&mut self, check: Arc<dyn Check>) -> &mut Self {
        self.checks.retain(|c| c.name() != check.name());
        self.checks.push(check);
        self
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Check>> {
        self.checks.iter().find(|c| c.name() == name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn run_all(&self, cfg: &SweepConfig) -> Vec<VerificationReport> {
        self.checks.iter().map(|c| c.run(cfg)).collect()
    }

    pub fn standard() -> Self {
        type SweepFn = fn(&SweepConfig) -> VerificationReport;
        let mut reg = CheckRegistry::default();
        let checks: [(&'static str, SweepFn); 5] = [
            ("l-equivalence", |c| {
                verify_l_equivalence(c.l_r_max, c.l_m_span)
            }),
            ("domination", |c| verify_domination(c.domination_alpha_max)),
            ("lcm-factorization", |c| {
                verify_lcm_factorization(c.lcm_hi_max)
            }),
            ("chi-identities", |c| {
                verify_chi_identities(c.chi_samples, c.seed)
            }),
            ("power-expansion", |c| {
                verify_power_expansion(c.power_base_max, c.power_exp_max)
            }),
        ];
        for (name, run) in checks {
            reg.register(Arc::new(FnCheck { name, run }));
        }
        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_oracle_values() {
        assert_eq!(lcm_by_factorization(2), BigInt::from(2));
        assert_eq!(lcm_by_factorization(10), BigInt::from(2520));
        assert_eq!(lcm_by_factorization(25), BigInt::from(26_771_144_400u64));
    }

    #[test]
    fn brute_l_values() {
        assert_eq!(brute_l(2, 1, 2), Rational::frac(1, 4));
        assert_eq!(brute_l(26, 1, 13), Rational::frac(53, 2));
        assert_eq!(brute_l(3, 1, 5), Rational::one());
        assert_eq!(brute_l_table(3, 1, 5).len(), 6);
    }

    #[test]
    fn printed_form_disagrees() {
        let q = QuotientSingularity::new(3, 1).unwrap();
        assert_eq!(PrintedClosedForm.eval(&q, 5).unwrap(), Rational::frac(7, 3));
        let mut forms = LocalTermRegistry::empty();
        forms.register(Arc::new(PrintedClosedForm));
        let rep = verify_l_equivalence_with(3, 2, &forms);
        assert!(!rep.passed());
        assert_ne!(brute_l(3, 1, 5), Rational::frac(7, 3));
    }

    #[test]
    fn small_sweeps() {
        let rep = verify_l_equivalence(2, 1);
        assert!(rep.passed(), "{rep}");
        // r = 2, a = 1, m in 0..=2, three forms.
        assert_eq!(rep.cases, 9);
        // r = 3 adds a in {1, 2}, m in 0..=3, three forms each.
        assert_eq!(verify_l_equivalence(3, 1).cases, 9 + 24);
        let rep = verify_domination(2);
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.cases, 3);
        let rep = verify_lcm_factorization(10);
        assert!(rep.passed());
        let rep = verify_power_expansion(5, 5);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn domination_counts_equalities() {
        let rep = verify_domination(26);
        assert!(rep.passed());
        assert!(rep.tallies["equalities"] >= 13);
    }

    #[test]
    fn crt_merge_cases() {
        assert_eq!(crt_merge(2, 3, 3, 5), Some((8, 15)));
        assert_eq!(crt_merge(0, 4, 2, 6), Some((8, 12)));
        assert_eq!(crt_merge(1, 4, 2, 6), None);
        assert_eq!(crt_merge(5, 7, 0, 1), Some((5, 7)));
    }

    #[test]
    fn sampler_is_deterministic_and_valid() {
        let mut a = ThreefoldSampler::new(7);
        let mut b = ThreefoldSampler::new(7);
        for _ in 0..30 {
            let (x, y) = (a.sample(), b.sample());
            assert_eq!(x.data, y.data);
            assert_eq!(x.expect_valid, x.data.validate().passed(), "{}", x.data);
        }
    }

    #[test]
    fn negative_control_instance_fails() {
        let x = ThreefoldData::smooth(-1, Rational::one()).unwrap();
        let rep = verify_chi_instance(&x);
        assert!(!rep.passed());
        assert!(rep.counterexample.unwrap().contains("chi(2K)"));
        let y = ThreefoldData::smooth(-1, Rational::from(2)).unwrap();
        assert!(verify_chi_instance(&y).passed());
    }

    #[test]
    fn registry_names() {
        let reg = CheckRegistry::standard();
        assert_eq!(
            reg.names(),
            vec![
                "l-equivalence",
                "domination",
                "lcm-factorization",
                "chi-identities",
                "power-expansion"
            ]
        );
        assert!(reg.get("nope").is_none());
    }
}
