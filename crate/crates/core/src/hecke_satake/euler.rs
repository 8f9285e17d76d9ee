use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::params::SatakeParams;
use super::SatakeError;
use crate::exact_arith::rational::{pow_rat, val_rat};
use crate::exact_arith::{to_integer_vec, Int, Rat, Scalar};
use crate::g1_modforms::dim_s;

/// 1 + c₁X + ⋯ + c_dX^d at a prime p, with motivic weight w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerFactor {
    pub p: u64,
    pub w: i64,
    /// Constant term first.
    pub coeffs: Vec<Scalar>,
}

impl Serialize for EulerFactor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            p: u64,
            w: i64,
            coeffs: Vec<String>,
        }
        Out { p: self.p, w: self.w, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

pub(crate) fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pp(p: u64, e: i64) -> Rat {
    pow_rat(&Rat::from_integer(p.into()), e)
}

impl EulerFactor {
    pub fn from_rats(p: u64, w: i64, coeffs: Vec<Rat>) -> Self {
        EulerFactor { p, w, coeffs: coeffs.into_iter().map(Scalar::Rat).collect() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn rational_coeffs(&self) -> Option<Vec<Rat>> {
        self.coeffs.iter().map(|c| c.as_rat().cloned()).collect()
    }

    pub fn integer_coeffs(&self) -> Option<Vec<Int>> {
        to_integer_vec(&self.rational_coeffs()?)
    }

    /// c_{d−i} = ε·p^{w(d−2i)/2}·c_i for all i, with ε = ±1 fixed by c_d.
    pub fn has_functional_equation(&self) -> bool {
        let Some(c) = self.rational_coeffs() else { return false };
        let d = self.degree() as i64;
        if (self.w * d) % 2 != 0 || c[0] != Rat::one() {
            return false;
        }
        let eps = &c[d as usize] / pp(self.p, self.w * d / 2);
        if eps.abs() != Rat::one() {
            return false;
        }
        (0..=d).all(|i| c[(d - i) as usize] == &eps * pp(self.p, self.w * (d - 2 * i) / 2) * &c[i as usize])
    }

    pub fn mul(&self, o: &EulerFactor) -> Option<EulerFactor> {
        Some(EulerFactor::from_rats(self.p, self.w, poly_mul(&self.rational_coeffs()?, &o.rational_coeffs()?)))
    }
}

/// 1 − λ(p)X + (λ(p)² − λ(p²) − p^{w−1})X² − λ(p)p^wX³ + p^{2w}X⁴ with w = j + 2k − 3.
pub fn spin_factor(j: i64, k: i64, lp: &Rat, lp2: &Rat, p: u64) -> EulerFactor {
    let w = j + 2 * k - 3;
    let c2 = lp * lp - lp2 - pp(p, w - 1);
    EulerFactor::from_rats(p, w, vec![Rat::one(), -lp, c2, -lp * pp(p, w), pp(p, 2 * w)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkSpin {
    pub factor: EulerFactor,
    pub lambda_p: Rat,
    pub lambda_p2: Rat,
}

/// Spinor factor of the Saito–Kurokawa lift of a weight 2k−2 eigenform with
/// eigenvalue a_p: (1 − p^{k−1}X)(1 − p^{k−2}X)(1 − a_pX + p^{2k−3}X²).
pub fn sk_spin_factor(a_p: &Rat, k: i64, p: u64) -> Result<SkSpin, SatakeError> {
    if k < 2 || dim_s(2 * k - 2) == 0 {
        return Err(SatakeError::NoSkLift { k });
    }
    let w = 2 * k - 3;
    let c = poly_mul(
        &poly_mul(&[Rat::one(), -pp(p, k - 1)], &[Rat::one(), -pp(p, k - 2)]),
        &[Rat::one(), -a_p, pp(p, w)],
    );
    let lambda_p = a_p + pp(p, k - 1) + pp(p, k - 2);
    let lambda_p2 = &lambda_p * &lambda_p - &c[2] - pp(p, w - 1);
    Ok(SkSpin { factor: EulerFactor::from_rats(p, w, c), lambda_p, lambda_p2 })
}

/// (1 − t)∏_{i=1}^g (1 − α_i t)(1 − α_i⁻¹t).
pub fn standard_factor(params: &SatakeParams) -> Result<EulerFactor, SatakeError> {
    let f = params.field();
    let mut poly = vec![f.one(), f.sub(&f.zero(), &f.one())];
    for a in &params.alpha()[1..] {
        let inv = f.inv(a)?;
        let quad = [f.one(), f.sub(&f.zero(), &f.add(a, &inv)), f.one()];
        let mut next = vec![f.zero(); poly.len() + 2];
        for (i, x) in poly.iter().enumerate() {
            for (j, y) in quad.iter().enumerate() {
                next[i + j] = f.add(&next[i + j], &f.mul(x, y));
            }
        }
        poly = next;
    }
    let coeffs = poly.iter().map(|c| f.as_rat(c).ok_or(SatakeError::IrrationalAlpha)).collect::<Result<_, _>>()?;
    Ok(EulerFactor::from_rats(params.p(), 0, coeffs))
}

/// Slopes of the lower convex hull of {(i, v_p(c_i))}, one entry per unit of length.
pub fn newton_slopes(f: &EulerFactor) -> Result<Vec<Rat>, SatakeError> {
    let c = f.rational_coeffs().ok_or(SatakeError::NonRational)?;
    if c[0].is_zero() {
        return Err(SatakeError::ZeroConstantTerm);
    }
    let pts: Vec<(i64, i64)> =
        c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i as i64, val_rat(x, f.p))).collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above the segment a..pt
            if (b.1 - a.1) * (pt.0 - a.0) >= (pt.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::new();
    for s in hull.windows(2) {
        let (dx, dy) = (s[1].0 - s[0].0, s[1].1 - s[0].1);
        out.extend(std::iter::repeat_n(Rat::new(dy.into(), dx.into()), dx as usize));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};

    fn ints(f: &EulerFactor) -> Vec<Int> {
        f.integer_coeffs().unwrap()
    }

    #[test]
    fn s6_8_at_two() {
        let f = spin_factor(6, 8, &rat(0, 1), &rat(-57344, 1), 2);
        assert_eq!(ints(&f), vec![int(1), int(0), int(-204800), int(0), int(1) << 38]);
        assert!(f.has_functional_equation());
        let s = newton_slopes(&f).unwrap();
        assert_eq!(s, vec![rat(13, 2), rat(13, 2), rat(25, 2), rat(25, 2)]);
    }

    #[test]
    fn chi10_at_two() {
        let sk = sk_spin_factor(&rat(-528, 1), 10, 2).unwrap();
        assert_eq!(sk.lambda_p, rat(240, 1));
        let expect = poly_mul(
            &poly_mul(&[rat(1, 1), rat(-256, 1)], &[rat(1, 1), rat(-512, 1)]),
            &[rat(1, 1), rat(528, 1), rat(1 << 17, 1)],
        );
        assert_eq!(sk.factor.rational_coeffs().unwrap(), expect);
        let again = spin_factor(0, 10, &sk.lambda_p, &sk.lambda_p2, 2);
        assert_eq!(again, sk.factor);
        assert!(matches!(sk_spin_factor(&rat(1, 1), 6, 2), Err(SatakeError::NoSkLift { k: 6 })));
    }

    #[test]
    fn trivial_slopes() {
        let f = EulerFactor::from_rats(5, 1, vec![rat(1, 1), rat(-6, 1), rat(5, 1)]);
        assert_eq!(newton_slopes(&f).unwrap(), vec![rat(0, 1), rat(1, 1)]);
        let z = EulerFactor::from_rats(5, 1, vec![rat(0, 1), rat(1, 1)]);
        assert!(matches!(newton_slopes(&z), Err(SatakeError::ZeroConstantTerm)));
    }
}
