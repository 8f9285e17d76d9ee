use proptest::prelude::*;

use siegel_core::exact_arith::{rat, rational::pow_rat, Rat, Scalar};
use siegel_core::g1_modforms::eigenforms;
use siegel_core::hecke_satake::{
    m_count, m_poly, newton_slopes, satake_ti, satake_tp, satake_tpsq, sk_spin_factor, spin_factor, SatakeElement,
};

fn images(g: u8) -> Vec<SatakeElement> {
    let mut v = vec![satake_tp(g).unwrap(), satake_tpsq(g).unwrap()];
    v.extend((0..=g as usize).map(|i| satake_ti(g, i).unwrap()));
    v
}

#[test]
fn images_are_weyl_invariant() {
    for g in [1, 2] {
        for x in images(g) {
            assert!(x.is_weyl_invariant(), "{x}");
        }
    }
}

#[test]
fn m_counts_agree_with_polynomials() {
    for p in [3u64, 5, 7] {
        for h in 0..=2 {
            for i in 0..=h {
                let poly = m_poly(h, i).unwrap().eval_p(&rat(p as i64, 1));
                assert_eq!(poly, rat(m_count(h, i, p) as i64, 1), "h = {h}, i = {i}, p = {p}");
            }
        }
    }
}

#[test]
fn saito_kurokawa_slopes_contain_zeta_slopes() {
    for k in [10i64, 12] {
        let f = &eigenforms(2 * k - 2).unwrap()[0];
        for p in [2u64, 3, 5] {
            let Scalar::Rat(a) = f.a(p as usize) else { panic!("rational form") };
            let sk = sk_spin_factor(a, k, p).unwrap();
            let slopes = newton_slopes(&sk.factor).unwrap();
            assert!(slopes.contains(&rat(k - 2, 1)) && slopes.contains(&rat(k - 1, 1)), "k = {k}, p = {p}: {slopes:?}");
        }
    }
}

proptest! {
    #[test]
    fn products_of_images_stay_invariant(a in 0usize..5, b in 0usize..5, e in 1u32..3) {
        let im = images(2);
        let x = &im[a] * &im[b].pow(e);
        prop_assert!(x.is_weyl_invariant());
    }

    #[test]
    fn scalar_spin_factor_matches_formula(
        k in 4i64..20,
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        l in -1_000_000i64..1_000_000,
        l2 in -1_000_000_000i64..1_000_000_000,
    ) {
        let pp = |e: i64| pow_rat(&rat(p as i64, 1), e);
        let (lam, lam2) = (rat(l, 1), rat(l2, 1));
        let want = vec![
            Rat::from_integer(1.into()),
            -lam.clone(),
            &lam * &lam - &lam2 - pp(2 * k - 4),
            -&lam * pp(2 * k - 3),
            pp(4 * k - 6),
        ];
        let f = spin_factor(0, k, &lam, &lam2, p);
        prop_assert_eq!(f.rational_coeffs().unwrap(), want);
        prop_assert!(f.has_functional_equation());
    }
}
