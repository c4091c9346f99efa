//! Plurigenus formula for projective threefolds with canonical singularities:
//!
//! ```text
//! χ(mK) = (2m - 1) m (m - 1) K³ / 12  -  (2m - 1) χ(O)  +  Σ_Q l(Q, m)
//! ```

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::basket::Basket;
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// The inputs of the plurigenus formula: `χ(O)`, `K³` and a basket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreefoldData {
    #[serde(rename = "chi_O")]
    chi_o: i64,
    #[serde(rename = "K3")]
    k3: Rational,
    basket: Basket,
}

impl ThreefoldData {
    /// Rejects `K³ <= 0`.
    pub fn new(chi_o: i64, k3: Rational, basket: Basket) -> Result<Self> {
        if !k3.is_positive() {
            return Err(Error::domain(
                "threefold",
                format!("K3 = {k3} must be positive"),
            ));
        }
        Ok(ThreefoldData { chi_o, k3, basket })
    }

    pub fn smooth(chi_o: i64, k3: Rational) -> Result<Self> {
        Self::new(chi_o, k3, Basket::new())
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn k3(&self) -> &Rational {
        &self.k3
    }

    pub fn basket(&self) -> &Basket {
        &self.basket
    }

    pub fn index(&self) -> u64 {
        self.basket.index()
    }

    /// `r³ K³` with `r` the index.
    pub fn cube_of_index_multiple(&self) -> Rational {
        let r = BigInt::from(self.index());
        self.k3.scale(&r * &r * &r)
    }

    /// The `K³` term `(2m - 1) m (m - 1) K³ / 12`.
    fn cubic_term(&self, m: u64) -> Rational {
        let m = BigInt::from(m);
        let p = (&m * 2 - 1) * &m * (&m - 1);
        self.k3.scale(p) / Rational::from(12)
    }

    pub fn chi_mk(&self, m: u64) -> Rational {
        self.cubic_term(m) + self.lower_terms_at(m)
    }

    /// `-(2m - 1) χ(O) + Σ l(Q, m)`: everything except the `K³` term.
    fn lower_terms_at(&self, m: u64) -> Rational {
        let linear =
            -(BigInt::from(m) * BigInt::from(2) - BigInt::from(1)) * BigInt::from(self.chi_o);
        Rational::from(linear) + self.basket.l_sum(m)
    }

    /// `h⁰(mK) = χ(mK)` for `m >= 2`.
    pub fn plurigenus(&self, m: u64) -> Result<BigInt> {
        if m < 2 {
            return Err(Error::domain(
                "plurigenus",
                format!("m = {m} must be at least 2"),
            ));
        }
        let chi = self.chi_mk(m);
        chi.to_integer().ok_or_else(|| {
            Error::Inconsistent(format!("chi({m}K) = {chi} is not an integer for {self}"))
        })
    }

    /// Conservative lower bound for `h⁰(mK)`: drops the positive `K³` term
    /// and rounds up to the next integer.
    pub fn plurigenus_lower_bound(&self, m: u64) -> Result<BigInt> {
        if m < 2 {
            return Err(Error::domain(
                "plurigenus",
                format!("m = {m} must be at least 2"),
            ));
        }
        Ok(self.lower_terms_at(m).ceil())
    }

    /// Integrality and normalization checks, stopping at the first failure.
    pub fn validate(&self) -> ValidationReport {
        self.validate_up_to(2 * self.index())
    }

    /// As [`validate`](Self::validate) with the integrality sweep running
    /// over `m = 0..=m_max`.
    pub fn validate_up_to(&self, m_max: u64) -> ValidationReport {
        let fail = |failure| ValidationReport {
            failure: Some(failure),
        };
        let cube = self.cube_of_index_multiple();
        if !cube.is_integer() {
            return fail(ValidationFailure::CubeNotIntegral { value: cube });
        }
        let chi0 = self.chi_mk(0);
        if chi0 != Rational::from(self.chi_o) {
            return fail(ValidationFailure::ChiAtZero { value: chi0 });
        }
        let chi1 = self.chi_mk(1);
        if chi1 != Rational::from(-self.chi_o) {
            return fail(ValidationFailure::ChiAtOne { value: chi1 });
        }
        for m in 0..=m_max {
            let v = self.chi_mk(m);
            if !v.is_integer() {
                return fail(ValidationFailure::NotIntegral { m, value: v });
            }
        }
        ValidationReport { failure: None }
    }

    /// Coefficients of the cubic `t ↦ χ(rtK)`, `r` the index.
    ///
    /// Every `l(Q, rt)` is linear in `t` because `r_Q | r`.
    pub fn hilbert_coefficients(&self) -> HilbertCoefficients {
        let r = BigInt::from(self.index());
        let r2 = &r * &r;
        let c3 = self.k3.scale(&r2 * &r) / Rational::from(6);
        let c2 = -(self.k3.scale(r2) / Rational::from(4));
        let chi = BigInt::from(self.chi_o);
        let mut c1 = self.k3.scale(r.clone()) / Rational::from(12) - Rational::from(&r * 2 * &chi);
        for (q, count) in self.basket.iter() {
            let rq = BigInt::from(q.order());
            let per_period = Rational::new(&rq * &rq - 1, 12).expect("nonzero");
            c1 += per_period.scale((&r / &rq) * count);
        }
        HilbertCoefficients {
            c3,
            c2,
            c1,
            c0: Rational::from(chi),
        }
    }
}

impl fmt::Display for ThreefoldData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(chi = {}, K3 = {}, basket {})",
            self.chi_o, self.k3, self.basket
        )
    }
}

impl<'de> Deserialize<'de> for ThreefoldData {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(rename = "chi_O")]
            chi_o: i64,
            #[serde(rename = "K3")]
            k3: Rational,
            #[serde(default)]
            basket: Basket,
        }
        let raw = Raw::deserialize(deserializer)?;
        ThreefoldData::new(raw.chi_o, raw.k3, raw.basket).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum ValidationFailure {
    /// `r³ K³` is not an integer.
    CubeNotIntegral {
        value: Rational,
    },
    ChiAtZero {
        value: Rational,
    },
    ChiAtOne {
        value: Rational,
    },
    NotIntegral {
        m: u64,
        value: Rational,
    },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::CubeNotIntegral { value } => {
                write!(f, "r^3 K^3 = {value} is not an integer")
            }
            ValidationFailure::ChiAtZero { value } => {
                write!(f, "chi(0K) = {value} differs from chi(O)")
            }
            ValidationFailure::ChiAtOne { value } => {
                write!(f, "chi(1K) = {value} differs from -chi(O)")
            }
            ValidationFailure::NotIntegral { m, value } => {
                write!(f, "chi({m}K) = {value} is not an integer")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failure: Option<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// `χ(rtK) = c3 t³ + c2 t² + c1 t + c0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCoefficients {
    pub c3: Rational,
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl HilbertCoefficients {
    pub fn eval(&self, t: u64) -> Rational {
        let t = Rational::from(BigInt::from(t));
        ((&self.c3 * &t + &self.c2) * &t + &self.c1) * &t + &self.c0
    }
}

pub fn chi_mk(x: &ThreefoldData, m: u64) -> Rational {
    x.chi_mk(m)
}

pub fn plurigenus(x: &ThreefoldData, m: u64) -> Result<BigInt> {
    x.plurigenus(m)
}

pub fn validate(x: &ThreefoldData) -> ValidationReport {
    x.validate()
}

pub fn hilbert_coefficients(x: &ThreefoldData) -> HilbertCoefficients {
    x.hilbert_coefficients()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basket::QuotientSingularity;
    use proptest::prelude::*;

    fn one_26() -> ThreefoldData {
        let basket = Basket::new()
            .with(QuotientSingularity::new(26, 1).unwrap(), 1)
            .unwrap();
        ThreefoldData::new(1, Rational::frac(1, 26), basket).unwrap()
    }

    fn smooth(chi: i64, k3: i64) -> ThreefoldData {
        ThreefoldData::smooth(chi, Rational::from(k3)).unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(smooth(-1, 2).chi_mk(0), Rational::from(-1));
        assert_eq!(smooth(-1, 2).chi_mk(2), Rational::from(4));
        assert_eq!(one_26().chi_mk(13), Rational::from(14));
    }

    #[test]
    fn nonpositive_k3_is_rejected() {
        assert!(ThreefoldData::smooth(0, Rational::zero()).is_err());
        assert!(ThreefoldData::smooth(0, Rational::frac(-1, 2)).is_err());
    }

    #[test]
    fn plurigenus_examples() {
        assert_eq!(one_26().plurigenus(13).unwrap(), BigInt::from(14));
        assert_eq!(smooth(-1, 2).plurigenus(2).unwrap(), BigInt::from(4));
        assert!(matches!(
            smooth(-1, 2).plurigenus(1),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            smooth(-1, 1).plurigenus(2),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn lower_bound_drops_cubic_term() {
        // -(25)·1 + 53/2 = 3/2, rounded up.
        assert_eq!(
            one_26().plurigenus_lower_bound(13).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            smooth(-1, 2).plurigenus_lower_bound(2).unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn validate_examples() {
        assert!(smooth(-1, 2).validate().passed());
        assert_eq!(
            smooth(-1, 1).validate().failure,
            Some(ValidationFailure::NotIntegral {
                m: 2,
                value: Rational::frac(7, 2)
            })
        );
        // chi(2K) = 1/52 - 3 + 25/52 = -5/2, so this triple is not realizable.
        assert_eq!(
            one_26().validate().failure,
            Some(ValidationFailure::NotIntegral {
                m: 2,
                value: Rational::frac(-5, 2)
            })
        );
        let half = Basket::new()
            .with(QuotientSingularity::new(2, 1).unwrap(), 1)
            .unwrap();
        let x = ThreefoldData::new(2, Rational::frac(3, 2), half).unwrap();
        assert!(x.validate_up_to(40).passed());
        let bad_cube = ThreefoldData::smooth(0, Rational::frac(1, 2)).unwrap();
        assert!(matches!(
            bad_cube.validate().failure,
            Some(ValidationFailure::CubeNotIntegral { .. })
        ));
    }

    #[test]
    fn hilbert_examples() {
        let h = smooth(-1, 2).hilbert_coefficients();
        assert_eq!(h.c3, Rational::frac(1, 3));
        assert_eq!(h.c2, Rational::frac(-1, 2));
        assert_eq!(h.eval(2), Rational::from(4));
        let h = one_26().hilbert_coefficients();
        assert_eq!(h.c3, Rational::frac(338, 3));
        assert_eq!(h.c2, Rational::frac(-13, 2));
        for t in 0..=6 {
            assert_eq!(h.eval(t), one_26().chi_mk(26 * t));
        }
    }

    #[test]
    fn document_round_trip() {
        let json = r#"{"chi_O": 1, "K3": "1/26", "basket": [{"r": 26, "a": 25, "count": 1}]}"#;
        let x: ThreefoldData = serde_json::from_str(json).unwrap();
        assert_eq!(x, one_26());
        let back: ThreefoldData =
            serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<ThreefoldData>(r#"{"chi_O": 1, "K3": "-1"}"#).is_err());
        assert!(serde_json::from_str::<ThreefoldData>(r#"{"chi_O": 1, "K3": 0.5}"#).is_err());
    }

    fn arb_threefold() -> impl Strategy<Value = ThreefoldData> {
        let entry = (2u64..14, 1u64..14, 1u64..4);
        (-20i64..=20, 1i64..2000, prop::collection::vec(entry, 0..4)).prop_map(|(chi, t, raw)| {
            let mut basket = Basket::new();
            for (r, a, c) in raw {
                if let Ok(q) = QuotientSingularity::new(r, a % r) {
                    basket.insert(q, c).unwrap();
                }
            }
            let r = basket.index() as i64;
            ThreefoldData::new(chi, Rational::frac(t, r * r * r), basket).unwrap()
        })
    }

    proptest! {
        #[test]
        fn normalization_identities(x in arb_threefold()) {
            prop_assert_eq!(x.chi_mk(0), Rational::from(x.chi_o()));
            prop_assert_eq!(x.chi_mk(1), Rational::from(-x.chi_o()));
        }

        #[test]
        fn hilbert_cubic_reconstructs_chi(x in arb_threefold()) {
            let h = x.hilbert_coefficients();
            let r = x.index();
            for t in 1..=6 {
                prop_assert_eq!(h.eval(t), x.chi_mk(r * t));
            }
        }

        #[test]
        fn leading_coefficients_ignore_basket(x in arb_threefold(), chi in -20i64..=20) {
            // Same index and r³K³, different basket contents and χ(O).
            let r = x.index();
            let q = if r == 1 { None } else { Some(QuotientSingularity::new(r, 1).unwrap()) };
            let mut other = Basket::new();
            if let Some(q) = q {
                other.insert(q, 2).unwrap();
            }
            let y = ThreefoldData::new(chi, x.k3().clone(), other).unwrap();
            let (hx, hy) = (x.hilbert_coefficients(), y.hilbert_coefficients());
            prop_assert_eq!(hx.c3, hy.c3);
            prop_assert_eq!(hx.c2, hy.c2);
        }
    }
}
