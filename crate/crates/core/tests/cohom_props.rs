use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use siegel_core::census::CensusStore;
use siegel_core::cohom::{lambda_psq, sp_char, trace_t_sjk};
use siegel_core::exact_arith::{rat, Rat};
use siegel_core::harder::data::{dims_table, known_dim};
use siegel_core::hecke_satake::{newton_slopes, spin_factor};

/// Weyl character of Sp4 from explicit Frobenius eigenvalues α₁, α₂, q/α₁, q/α₂.
fn weyl_oracle(l: i64, m: i64, a1: i64, a2: i64, q: u64) -> f64 {
    let q = q as f64;
    let alpha = |a: i64| {
        let a = a as f64;
        Complex64::new(a / 2.0, (q - a * a / 4.0).sqrt())
    };
    let sq = q.sqrt();
    let x = [alpha(a1) / sq, alpha(a2) / sq];
    let d = |n: i64, z: Complex64| z.powi(n as i32) - z.powi(-n as i32);
    let (e1, e2) = (l + 2, m + 1);
    let num = d(e1, x[0]) * d(e2, x[1]) - d(e2, x[0]) * d(e1, x[1]);
    let den = d(2, x[0]) * d(1, x[1]) - d(1, x[0]) * d(2, x[1]);
    (num / den).re * q.powf((l + m) as f64 / 2.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sp_char_matches_weyl_formula(
        (q, l, m, a1, a2) in prop::sample::select(vec![3u64, 5, 7])
            .prop_flat_map(|q| {
                let b = (2.0 * (q as f64).sqrt()).floor() as i64;
                (Just(q), 0i64..=12, -b..=b, -b..=b)
            })
            .prop_flat_map(|(q, l, a1, a2)| (Just(q), Just(l), 0..=l, Just(a1), Just(a2)))
    ) {
        prop_assume!(a1 != a2);
        let exact = sp_char(l, m, &rat(a1 + a2, 1), &rat(a1 * a2, 1), q).to_f64().unwrap();
        let approx = weyl_oracle(l, m, a1, a2, q);
        let scale = exact.abs().max((q as f64).powf((l + m) as f64 / 2.0));
        prop_assert!((exact - approx).abs() <= 1e-9 * scale, "{} vs {}", exact, approx);
    }
}

#[test]
fn empty_spaces_have_zero_trace() {
    let store = CensusStore::shared();
    let mut cells = 0;
    for (j, k, d) in dims_table() {
        if d != 0 || j < 2 || j % 2 != 0 || k < 4 {
            continue;
        }
        for p in [3, 5, 7] {
            assert!(trace_t_sjk(j, k, p, store).unwrap().result.is_zero(), "({j}, {k}) at {p}");
            cells += 1;
        }
    }
    assert!(cells >= 20);
}

#[test]
fn spin_slopes_sum_to_twice_the_weight() {
    let store = CensusStore::shared();
    let mut checked = 0;
    for (j, k) in [(6, 8), (4, 10), (8, 8), (12, 6), (18, 5), (28, 4), (10, 9)] {
        assert_eq!(known_dim(j, k), Some(1));
        let lp = trace_t_sjk(j, k, 3, store).unwrap().result;
        let lp2 = lambda_psq(j, k, 3, store).unwrap();
        let w = j + 2 * k - 3;
        let slopes = newton_slopes(&spin_factor(j, k, &lp, &lp2, 3)).unwrap();
        assert_eq!(slopes.len(), 4);
        assert_eq!(slopes.iter().sum::<Rat>(), rat(2 * w, 1), "({j}, {k})");
        checked += 1;
    }
    assert_eq!(checked, 7);
}
