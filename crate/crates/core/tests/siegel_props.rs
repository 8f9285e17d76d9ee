use num_traits::Zero;
use proptest::prelude::*;

use siegel_core::exact_arith::{rat, Rat, Scalar};
use siegel_core::g1_modforms::{eigenforms, eisenstein_e};
use siegel_core::hecke_satake::{sk_spin_factor, spin_factor};
use siegel_core::siegel_g2::{
    chi10, diagonal_restriction, eisenstein_coeff, eisenstein_g2, HalfIntegralMatrix,
};

/// Words in the generators of GL₂(ℤ).
fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::collection::vec(0u8..4, 0..8).prop_map(|word| {
        let gens = [[[1, 1], [0, 1]], [[1, -1], [0, 1]], [[0, 1], [1, 0]], [[-1, 0], [0, 1]]];
        word.iter().fold([[1, 0], [0, 1]], |acc: [[i64; 2]; 2], &g| {
            let g = gens[g as usize];
            [
                [acc[0][0] * g[0][0] + acc[0][1] * g[1][0], acc[0][0] * g[0][1] + acc[0][1] * g[1][1]],
                [acc[1][0] * g[0][0] + acc[1][1] * g[1][0], acc[1][0] * g[0][1] + acc[1][1] * g[1][1]],
            ]
        })
    })
}

fn psd_form() -> impl Strategy<Value = HalfIntegralMatrix> {
    (0i64..6, 0i64..6, -10i64..10)
        .prop_map(|(n, m, r)| HalfIntegralMatrix::new(n, r, m))
        .prop_filter("positive semi-definite", |x| x.is_psd())
}

proptest! {
    #[test]
    fn reduction_is_a_class_invariant(x in psd_form(), u in unimodular()) {
        let y = x.transform(u);
        prop_assert_eq!(y.disc(), x.disc());
        prop_assert_eq!(y.reduce(), x.reduce());
        prop_assert!(x.reduce().is_reduced());
    }

    #[test]
    fn coefficients_ignore_the_representative(x in psd_form(), u in unimodular()) {
        let y = x.transform(u);
        prop_assert_eq!(eisenstein_coeff(4, &y), eisenstein_coeff(4, &x.reduce()));
        let c = chi10(16).unwrap();
        prop_assume!(c.covers(&x.reduce()));
        prop_assert_eq!(c.at(&y).unwrap(), c.at(&x).unwrap());
    }

    #[test]
    fn indefinite_coefficients_vanish(n in -5i64..6, r in -12i64..12, m in -5i64..6) {
        let x = HalfIntegralMatrix::new(n, r, m);
        prop_assume!(!x.is_psd());
        let e = eisenstein_g2(4, 8).unwrap();
        prop_assert!(e.get(n, r, m).unwrap().is_zero());
        prop_assert!(eisenstein_coeff(6, &x).is_zero());
    }
}

#[test]
fn diagonal_of_eisenstein_is_a_tensor_square() {
    for k in [4, 6] {
        let d = diagonal_restriction(&eisenstein_g2(k, 16).unwrap(), 2).unwrap();
        let e = eisenstein_e(k, 3).unwrap();
        assert!(d.is_symmetric());
        assert!(d.equals_tensor(&e, &e), "k = {k}");
    }
}

#[test]
fn saito_kurokawa_closure() {
    let f18 = &eigenforms(18).unwrap()[0];
    let Scalar::Rat(a2) = f18.a(2) else { panic!("rational form") };
    assert_eq!(*a2, rat(-528, 1));
    let sk = sk_spin_factor(a2, 10, 2).unwrap();
    // (1 − 2⁸X)(1 − 2⁹X)(1 + 528X + 2¹⁷X²)
    let want: Vec<Rat> = [1i64, -240, -143360, -31457280, 1i64 << 34].iter().map(|&c| rat(c, 1)).collect();
    assert_eq!(sk.factor.rational_coeffs().unwrap(), want);
    let back = spin_factor(0, 10, &sk.lambda_p, &sk.lambda_p2, 2);
    assert_eq!(back, sk.factor);
}
