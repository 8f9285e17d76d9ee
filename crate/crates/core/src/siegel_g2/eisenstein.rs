use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::HalfIntegralMatrix;
use super::table::SiegelCoeffTable;
use super::SiegelError;
use crate::exact_arith::ntheory::{divisors, fundamental_decomposition, kronecker, moebius, sigma_k, zeta_one_minus};
use crate::exact_arith::rational::pow_rat;
use crate::exact_arith::{gen_bernoulli, Rat};

/// Cohen's H(r, N): ζ(1−2r) at N = 0, otherwise L(1−r, χ_D)·Σ_{d|f} μ(d)χ_D(d)d^{r−1}σ_{2r−1}(f/d)
/// for −N = Df² with D fundamental; zero unless N ≡ 0, 3 mod 4.
pub fn cohen_h(r: u64, n: u64) -> Rat {
    assert!(r >= 2, "cohen_h needs r ≥ 2");
    if n == 0 {
        return zeta_one_minus(2 * r);
    }
    let Some((d, f)) = fundamental_decomposition(-(n as i64)) else { return Rat::zero() };
    let l = -gen_bernoulli(r, d).expect("fundamental discriminant") / Rat::from_integer(r.into());
    let mut s = Rat::zero();
    for e in divisors(f) {
        let mu = moebius(e) as i64 * kronecker(d, e as i64) as i64;
        if mu == 0 {
            continue;
        }
        let term = pow_rat(&Rat::from_integer(e.into()), r as i64 - 1)
            * Rat::from_integer(sigma_k((2 * r - 1) as u32, f / e));
        s += Rat::from_integer(mu.into()) * term;
    }
    l * s
}

/// a(N) of the genus-2 Siegel Eisenstein series of weight k:
/// 2/(ζ(1−k)ζ(3−2k)) · Σ_{d|(n,r,m)} d^{k−1}H(k−1, (4nm−r²)/d²), and 1 at N = 0.
pub fn eisenstein_coeff(k: i64, x: &HalfIntegralMatrix) -> Rat {
    if !x.is_psd() {
        return Rat::zero();
    }
    if *x == HalfIntegralMatrix::ZERO {
        return Rat::one();
    }
    let ku = k as u64;
    let c = Rat::from_integer(2.into()) / (zeta_one_minus(ku) * zeta_one_minus(2 * ku - 2));
    let disc = x.disc();
    let mut s = Rat::zero();
    for d in divisors(x.content() as u64) {
        let di = d as i64;
        s += pow_rat(&Rat::from_integer(d.into()), k - 1) * cohen_h(ku - 1, (disc / (di * di)) as u64);
    }
    c * s
}

fn check_weight(k: i64) -> Result<(), SiegelError> {
    if k >= 4 && k % 2 == 0 {
        Ok(())
    } else {
        Err(SiegelError::BadWeight(k))
    }
}

pub fn eisenstein_g2(k: i64, max_disc: i64) -> Result<SiegelCoeffTable, SiegelError> {
    check_weight(k)?;
    SiegelCoeffTable::from_fn(k, max_disc, |x| Ok(eisenstein_coeff(k, x)))
}

fn normalized(t: SiegelCoeffTable) -> Result<SiegelCoeffTable, SiegelError> {
    let a = t.get(1, 1, 1)?;
    if a.is_zero() {
        return Err(SiegelError::DegenerateNormalization);
    }
    Ok(t.scale(&a.recip()))
}

fn factor_bound(max_disc: i64) -> i64 {
    Integer::div_ceil(&(4 * max_disc), &3)
}

/// Multiple of E₄E₆ − E₁₀ with a([1,1,1]) = 1.
pub fn chi10(max_disc: i64) -> Result<SiegelCoeffTable, SiegelError> {
    if max_disc < 3 {
        return Err(SiegelError::InsufficientTable { need: 3, have: max_disc });
    }
    let b = factor_bound(max_disc);
    let e4e6 = eisenstein_g2(4, b)?.product(&eisenstein_g2(6, b)?, max_disc)?;
    let e10 = eisenstein_g2(10, max_disc)?;
    normalized(SiegelCoeffTable::lin_comb(&[(Rat::one(), &e4e6), (-Rat::one(), &e10)])?)
}

/// The cusp form in the span of E₆², E₄³ and E₁₂ with a([1,1,1]) = 1.
/// E₆² − E₁₂ alone has Φ-image e₆² − e₁₂ ≠ 0; the multiple of E₄³ − E₁₂ with the
/// same Φ-image is removed.
pub fn chi12(max_disc: i64) -> Result<SiegelCoeffTable, SiegelError> {
    if max_disc < 3 {
        return Err(SiegelError::InsufficientTable { need: 3, have: max_disc });
    }
    let b = factor_bound(max_disc);
    let e6 = eisenstein_g2(6, b)?;
    let e4 = eisenstein_g2(4, factor_bound(b))?;
    let e6sq = e6.product(&e6, max_disc)?;
    let e4cube = e4.product(&e4, b)?.product(&eisenstein_g2(4, b)?, max_disc)?;
    let e12 = eisenstein_g2(12, max_disc)?;
    let one = Rat::one();
    let u = SiegelCoeffTable::lin_comb(&[(one.clone(), &e6sq), (-one.clone(), &e12)])?;
    let v = SiegelCoeffTable::lin_comb(&[(one.clone(), &e4cube), (-one.clone(), &e12)])?;
    let c = u.get(0, 0, 1)? / v.get(0, 0, 1)?;
    normalized(SiegelCoeffTable::lin_comb(&[(one, &u), (-c, &v)])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn cohen_values() {
        assert_eq!(cohen_h(3, 0), rat(-1, 252));
        assert_eq!(cohen_h(3, 3), rat(-2, 9));
        assert_eq!(cohen_h(3, 4), rat(-1, 2));
        assert_eq!(cohen_h(3, 1), rat(0, 1));
        assert_eq!(cohen_h(3, 5), rat(0, 1));
    }

    #[test]
    fn known_eisenstein_coefficients() {
        let e4 = eisenstein_g2(4, 8).unwrap();
        let e6 = eisenstein_g2(6, 8).unwrap();
        let got = |t: &SiegelCoeffTable, n, r, m| t.get(n, r, m).unwrap();
        assert_eq!(got(&e4, 0, 0, 0), rat(1, 1));
        assert_eq!(got(&e4, 1, 0, 0), rat(240, 1));
        assert_eq!(got(&e4, 2, 0, 0), rat(2160, 1));
        assert_eq!(got(&e4, 1, 1, 1), rat(13440, 1));
        assert_eq!(got(&e4, 1, 0, 1), rat(30240, 1));
        assert_eq!(got(&e4, 1, 2, 1), rat(240, 1));
        assert_eq!(got(&e6, 1, 0, 0), rat(-504, 1));
        assert_eq!(got(&e6, 2, 0, 0), rat(-16632, 1));
        assert_eq!(got(&e6, 1, 1, 1), rat(44352, 1));
        assert_eq!(got(&e6, 1, 0, 1), rat(166320, 1));
        assert!(matches!(eisenstein_g2(5, 4), Err(SiegelError::BadWeight(5))));
    }

    #[test]
    fn cusp_forms() {
        let c10 = chi10(8).unwrap();
        let c12 = chi12(8).unwrap();
        for t in [&c10, &c12] {
            assert!(t.is_cusp_form());
            assert_eq!(t.get(1, 1, 1).unwrap(), rat(1, 1));
        }
        assert_eq!(c10.get(1, 0, 1).unwrap(), rat(-2, 1));
        assert_eq!(c12.get(1, 0, 1).unwrap(), rat(10, 1));
        assert!(matches!(c10.get(5, 1, 5), Err(SiegelError::OutOfBound { .. })));
    }
}
