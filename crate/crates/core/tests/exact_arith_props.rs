use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use siegel_core::exact_arith::{
    bernoulli, int, kronecker, rat, rational_reconstruct, BigFloat, FiniteField, QuadElem, Rat,
};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
}

fn quad(d: u64) -> impl Strategy<Value = QuadElem> {
    (small_rat(), small_rat()).prop_map(move |(a, b)| QuadElem::new(d, a, b).unwrap())
}

#[test]
fn odd_bernoulli_numbers_vanish() {
    for n in (3..60).step_by(2) {
        assert!(bernoulli(n).is_zero(), "B_{n}");
    }
    assert_eq!(bernoulli(1), rat(-1, 2));
}

#[test]
fn quadratic_extensions_satisfy_frobenius_identity() {
    let mut rng = StdRng::seed_from_u64(11);
    for p in [2u32, 3, 5, 7, 11, 13] {
        let f = FiniteField::quadratic_ext(&FiniteField::prime(p).unwrap()).unwrap();
        let q = f.q() as u64;
        let elems: Vec<_> = f.elements().collect();
        for _ in 0..1000 {
            let x = elems[rng.gen_range(0..elems.len())];
            assert_eq!(f.pow(x, q), x, "p = {p}");
        }
    }
}

proptest! {
    #[test]
    fn kronecker_is_multiplicative(d in -200i64..200, m in 1i64..500, n in 1i64..500) {
        prop_assume!(d % 4 == 0 || d.rem_euclid(4) == 1);
        prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
    }

    #[test]
    fn quadratic_norm_is_multiplicative(
        (x, y) in prop::sample::select(vec![2u64, 3, 5, 13, 144169]).prop_flat_map(|d| (quad(d), quad(d)))
    ) {
        let xy = x.try_mul(&y).unwrap();
        prop_assert_eq!(xy.norm(), x.norm() * y.norm());
        prop_assert_eq!(xy.conj(), x.conj().try_mul(&y.conj()).unwrap());
        prop_assert_eq!(x.try_add(&y).unwrap().conj(), x.conj().try_add(&y.conj()).unwrap());
    }

    #[test]
    fn reconstruction_inverts_rounding(n in -10_000_000i64..10_000_000, d in 1i64..=1_000_000) {
        let x = rat(n, d);
        let f = BigFloat::from_rat(&x, 256);
        prop_assert_eq!(rational_reconstruct(&f, &int(1_000_000)).unwrap(), x);
    }

    #[test]
    fn inverse_times_element_is_one(a in small_rat(), b in small_rat()) {
        let x = QuadElem::new(5, a, b).unwrap();
        prop_assume!(!x.norm().is_zero());
        prop_assert_eq!(x.try_mul(&x.inv().unwrap()).unwrap(), QuadElem::from_rat(5, Rat::one()).unwrap());
    }
}
