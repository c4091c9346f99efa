use num_bigint::BigInt;
use proptest::prelude::*;

use plurigenus::basket::{l_closed, l_direct};
use plurigenus::oracle::{brute_l, ThreefoldSampler};
use plurigenus::{Basket, QuotientSingularity, Rational};

fn singularity() -> impl Strategy<Value = QuotientSingularity> {
    (2u64..=40)
        .prop_flat_map(|r| (Just(r), 1..r))
        .prop_filter_map("weight must be a unit", |(r, a)| {
            QuotientSingularity::new(r, a).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn l_matches_brute_sum(q in singularity(), m in 0u64..200) {
        let brute = brute_l(q.order(), q.weight(), m);
        prop_assert_eq!(l_closed(&q, m), brute.clone());
        prop_assert_eq!(l_direct(&q, m), brute);
    }

    #[test]
    fn l_shift_by_period(q in singularity(), m in 0u64..100, k in 0u64..5) {
        let r = q.order();
        let period = Rational::frac(((r * r - 1) as i64) * k as i64, 12);
        prop_assert_eq!(l_closed(&q, m + k * r), l_closed(&q, m) + period);
    }

    #[test]
    fn basket_sum_is_additive(p in singularity(), q in singularity(), m in 0u64..80) {
        let joint = Basket::new().with(p, 1).unwrap().with(q, 2).unwrap();
        let expected = l_closed(&p, m) + l_closed(&q, m).scale(2);
        prop_assert_eq!(joint.l_sum(m), expected);
        prop_assert_eq!(joint.index(), num_integer::lcm(p.order(), q.order()));
    }

    #[test]
    fn valid_samples_have_integral_plurigenera(seed in any::<u64>()) {
        let sample = ThreefoldSampler::new(seed).with_negative_rate(0.0).sample();
        let x = sample.data;
        prop_assert!(x.validate().passed());
        let r = x.index();
        for m in 2..=4 * r {
            prop_assert!(x.plurigenus(m).is_ok(), "m = {} for {:?}", m, x);
        }
        let h = x.hilbert_coefficients();
        for t in 0..=3 {
            prop_assert_eq!(h.eval(t), x.chi_mk(t * r));
        }
    }
}

/// P_m is not monotone in general for these formal inputs, so this only
/// reports how often it decreases.
#[test]
fn plurigenus_monotonicity_is_observed() {
    let mut sampler = ThreefoldSampler::new(7).with_negative_rate(0.0);
    let (mut pairs, mut drops) = (0u64, 0u64);
    for _ in 0..100 {
        let x = sampler.sample().data;
        let values: Vec<BigInt> = (2..=30).map(|m| x.plurigenus(m).unwrap()).collect();
        for w in values.windows(2) {
            pairs += 1;
            if w[1] < w[0] {
                drops += 1;
            }
        }
    }
    println!("plurigenus decreases in {drops} of {pairs} consecutive pairs");
    assert!(pairs > 0);
}
