use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use super::matrix::HalfIntegralMatrix;
use super::table::SiegelCoeffTable;
use super::SiegelError;
use crate::exact_arith::ntheory::{divisors, zeta_one_minus};
use crate::exact_arith::rational::pow_rat;
use crate::exact_arith::Rat;

/// Jacobi form of weight k and index m, with c(n, r) stored as c(4nm − r², r mod 2m)
/// for 0 ≤ 4nm − r² ≤ max_disc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiFormQ {
    pub k: i64,
    pub index: i64,
    pub max_disc: i64,
    coeffs: BTreeMap<(i64, i64), Rat>,
}

impl JacobiFormQ {
    /// Builds the form from c(n, r) at one representative per class.
    fn from_fn(
        k: i64,
        index: i64,
        max_disc: i64,
        mut f: impl FnMut(i64, i64) -> Result<Rat, SiegelError>,
    ) -> Result<Self, SiegelError> {
        let mut coeffs = BTreeMap::new();
        for d in 0..=max_disc {
            for rho in 0..2 * index {
                if (d + rho * rho) % (4 * index) == 0 {
                    let n = (d + rho * rho) / (4 * index);
                    coeffs.insert((d, rho), f(n, rho)?);
                }
            }
        }
        Ok(JacobiFormQ { k, index, max_disc, coeffs })
    }

    /// c(n, r): zero when r² > 4nm, an error beyond the bound.
    pub fn c(&self, n: i64, r: i64) -> Result<Rat, SiegelError> {
        let d = 4 * n * self.index - r * r;
        if d < 0 {
            return Ok(Rat::zero());
        }
        if d > self.max_disc {
            return Err(SiegelError::OutOfBound { n, r, m: self.index, max_disc: self.max_disc });
        }
        Ok(self.coeffs[&(d, r.rem_euclid(2 * self.index))].clone())
    }

    /// c(D) for index 1, where the class is fixed by D.
    pub fn c_disc(&self, d: i64) -> Result<Rat, SiegelError> {
        if self.index != 1 {
            return Err(SiegelError::BadIndex(self.index));
        }
        if d < 0 || d % 4 == 1 || d % 4 == 2 {
            return Ok(Rat::zero());
        }
        let r = d % 2;
        self.c((d + r) / 4, r)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.coeffs.iter()
    }
}

/// The m-th Fourier–Jacobi coefficient: c(n, r) = a([n, r, m]).
pub fn fourier_jacobi(f: &SiegelCoeffTable, m: i64) -> Result<JacobiFormQ, SiegelError> {
    if m < 1 {
        return Err(SiegelError::BadIndex(m));
    }
    JacobiFormQ::from_fn(f.k, m, f.max_disc, |n, r| f.get(n, r, m))
}

/// φ|V_l: c'(n, r) = Σ_{a|(n,r,l)} a^{k−1} c(nl/a², r/a), for φ of index 1.
pub fn v_l(phi: &JacobiFormQ, l: i64) -> Result<JacobiFormQ, SiegelError> {
    if phi.index != 1 {
        return Err(SiegelError::BadIndex(phi.index));
    }
    if l < 1 {
        return Err(SiegelError::BadIndex(l));
    }
    JacobiFormQ::from_fn(phi.k, l, phi.max_disc, |n, r| {
        let g = n.gcd(&r).gcd(&l) as u64;
        let mut s = Rat::zero();
        for a in divisors(g) {
            let a = a as i64;
            s += pow_rat(&Rat::from_integer(a.into()), phi.k - 1) * phi.c(n * l / (a * a), r / a)?;
        }
        Ok(s)
    })
}

fn lift_coeff(k: i64, x: &HalfIntegralMatrix, c: impl Fn(i64) -> Result<Rat, SiegelError>) -> Result<Rat, SiegelError> {
    if *x == HalfIntegralMatrix::ZERO {
        return Ok(zeta_one_minus(k as u64) / Rat::from_integer(2.into()) * c(0)?);
    }
    let disc = x.disc();
    let mut s = Rat::zero();
    for d in divisors(x.content() as u64) {
        let d = d as i64;
        s += pow_rat(&Rat::from_integer(d.into()), k - 1) * c(disc / (d * d))?;
    }
    Ok(s)
}

/// Σ_m (φ|V_m) e^{2πimτ′}: a([n,r,m]) = Σ_{d|(n,r,m)} d^{k−1}c((4nm − r²)/d²),
/// with a(0) = ζ(1−k)c(0)/2.
pub fn maass_lift(phi: &JacobiFormQ, max_disc: i64) -> Result<SiegelCoeffTable, SiegelError> {
    if phi.index != 1 {
        return Err(SiegelError::BadIndex(phi.index));
    }
    if phi.max_disc < max_disc {
        return Err(SiegelError::InsufficientTable { need: max_disc, have: phi.max_disc });
    }
    SiegelCoeffTable::from_fn(phi.k, max_disc, |x| lift_coeff(phi.k, x, |d| phi.c_disc(d)))
}

/// Whether a([n,r,m]) = Σ_{d|(n,r,m)} d^{k−1}a([1, r/d, mn/d²]) for every stored
/// coefficient other than N = 0.
pub fn maass_check(f: &SiegelCoeffTable) -> bool {
    f.iter().filter(|(x, _)| **x != HalfIntegralMatrix::ZERO).all(|(x, v)| {
        let mut s = Rat::zero();
        for d in divisors(x.content() as u64) {
            let d = d as i64;
            match f.get(1, x.r / d, x.m * x.n / (d * d)) {
                Ok(a) => s += pow_rat(&Rat::from_integer(d.into()), f.k - 1) * a,
                Err(_) => return false,
            }
        }
        s == *v
    })
}

#[cfg(test)]
mod tests {
    use super::super::eisenstein::chi10;
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn chi10_round_trip() {
        let c = chi10(12).unwrap();
        let phi = fourier_jacobi(&c, 1).unwrap();
        assert_eq!(phi.c_disc(3).unwrap(), rat(1, 1));
        assert_eq!(phi.c_disc(4).unwrap(), rat(-2, 1));
        assert_eq!(phi.c(0, 1).unwrap(), rat(0, 1));
        assert_eq!(maass_lift(&phi, 12).unwrap(), c);
        assert!(maass_check(&c));
        assert_eq!(v_l(&phi, 1).unwrap(), phi);
        assert_eq!(v_l(&phi, 2).unwrap(), fourier_jacobi(&c, 2).unwrap());
    }

    #[test]
    fn perturbed_table_fails_check() {
        // [2,1,2] is tied to [1,1,4] by the d = 1 term
        let mut c = chi10(16).unwrap();
        let x = HalfIntegralMatrix::new(2, 1, 2);
        let v = c.at(&x).unwrap();
        c.set(&x, v + rat(1, 1)).unwrap();
        assert!(!maass_check(&c));
    }
}
