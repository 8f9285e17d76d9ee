use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::local::{satake_ti, satake_tp};
use super::{SatakeElement, SatakeError};
use crate::exact_arith::rational::{pow_rat, rat_to_f64};
use crate::exact_arith::{Int, Rat};

/// An element of ℚ[X]/(m), coefficients of 1, X, …, X^{d−1}.
pub type NfElem = Vec<Rat>;

/// ℚ[X]/(m) for a monic irreducible m; degree 1 is ℚ itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    /// Monic, constant term first.
    modulus: Vec<Rat>,
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![Rat::zero()], r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![Rat::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, x) in b.iter().enumerate() {
            r[shift + i] -= &c * x;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(Rat::zero());
        }
    }
    (q, r)
}

fn poly_sub_mul(a: &[Rat], q: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let prod = super::euler::poly_mul(q, b);
    let n = a.len().max(prod.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default()).collect())
}

impl NumberField {
    pub fn rational() -> Self {
        NumberField { modulus: vec![Rat::zero(), Rat::one()] }
    }

    /// Quadratic fields are checked for irreducibility; higher degrees are trusted.
    pub fn new(modulus: Vec<Rat>) -> Result<Self, SatakeError> {
        let modulus = trim(modulus);
        if modulus.len() < 2 || !modulus.last().unwrap().is_one() {
            return Err(SatakeError::BadParams("modulus must be monic of degree ≥ 1".into()));
        }
        if modulus.len() == 3 {
            let disc = &modulus[1] * &modulus[1] - Rat::from_integer(4.into()) * &modulus[0];
            let nd: Int = disc.numer() * disc.denom();
            let square = !nd.is_negative() && nd.sqrt().pow(2) == nd;
            if square {
                return Err(SatakeError::BadParams("reducible quadratic modulus".into()));
            }
        }
        Ok(NumberField { modulus })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }

    fn reduce(&self, a: Vec<Rat>) -> NfElem {
        let (_, mut r) = poly_divrem(&a, &self.modulus);
        r.resize(self.degree(), Rat::zero());
        r
    }

    pub fn from_rat(&self, r: Rat) -> NfElem {
        self.reduce(vec![r])
    }

    pub fn zero(&self) -> NfElem {
        self.from_rat(Rat::zero())
    }

    pub fn one(&self) -> NfElem {
        self.from_rat(Rat::one())
    }

    /// The class of X.
    pub fn gen(&self) -> NfElem {
        self.reduce(vec![Rat::zero(), Rat::one()])
    }

    pub fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.reduce(super::euler::poly_mul(a, b))
    }

    pub fn scale(&self, a: &NfElem, c: &Rat) -> NfElem {
        a.iter().map(|x| x * c).collect()
    }

    pub fn inv(&self, a: &NfElem) -> Result<NfElem, SatakeError> {
        // extended Euclid: s·a + t·m = gcd
        let (mut r0, mut r1) = (self.modulus.clone(), trim(a.clone()));
        let (mut s0, mut s1) = (vec![Rat::zero()], vec![Rat::one()]);
        if r1.len() == 1 && r1[0].is_zero() {
            return Err(SatakeError::DivisionByZero);
        }
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return Err(SatakeError::DivisionByZero);
        }
        let c = r0[0].recip();
        Ok(self.reduce(s0.iter().map(|x| x * &c).collect()))
    }

    pub fn pow(&self, a: &NfElem, e: i64) -> Result<NfElem, SatakeError> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        Ok((0..e.unsigned_abs()).fold(self.one(), |acc, _| self.mul(&acc, &base)))
    }

    pub fn as_rat(&self, a: &NfElem) -> Option<Rat> {
        a[1..].iter().all(|x| x.is_zero()).then(|| a[0].clone())
    }

    /// Complex roots of the modulus (Durand–Kerner), one per embedding.
    pub fn embeddings(&self) -> Vec<Complex64> {
        let d = self.degree();
        let c: Vec<f64> = self.modulus.iter().map(rat_to_f64).collect();
        let f = |z: Complex64| c.iter().rev().fold(Complex64::zero(), |acc, &x| acc * z + x);
        let mut roots: Vec<Complex64> = (0..d).map(|i| Complex64::new(0.4, 0.9).powu(i as u32)).collect();
        let scale = c.iter().map(|x| x.abs()).fold(1.0, f64::max);
        roots.iter_mut().for_each(|r| *r *= scale.powf(1.0 / d as f64));
        for _ in 0..500 {
            let prev = roots.clone();
            for i in 0..d {
                let den = (0..d).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (roots[i] - roots[j]));
                let ri = roots[i];
                roots[i] = ri - f(ri) / den;
            }
            if roots.iter().zip(&prev).all(|(a, b)| (a - b).norm() <= 1e-15 * a.norm().max(1.0)) {
                break;
            }
        }
        roots
    }

    pub fn embed(&self, a: &NfElem, root: Complex64) -> Complex64 {
        a.iter().rev().fold(Complex64::zero(), |acc, x| acc * root + rat_to_f64(x))
    }

    fn eval(&self, x: &SatakeElement, p: u64, vars: &[NfElem; 4]) -> Result<NfElem, SatakeError> {
        let pr = Rat::from_integer(p.into());
        let mut out = self.zero();
        for (m, c) in x.terms() {
            let mut t = self.from_rat(c * pow_rat(&pr, m[0] as i64));
            for (v, &e) in vars.iter().zip(&m[1..]) {
                if e != 0 {
                    t = self.mul(&t, &self.pow(v, e as i64)?);
                }
            }
            out = self.add(&out, &t);
        }
        Ok(out)
    }
}

/// Satake parameters (α₀, α₁, …, α_g) at p, all in one number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParams {
    g: u8,
    p: u64,
    weight_sum: i64,
    field: NumberField,
    alpha: Vec<NfElem>,
}

impl SatakeParams {
    /// Checks α₀²α₁⋯α_g = p^{Σλ_i − g(g+1)/2}, where `weight_sum` is Σλ_i.
    pub fn new(g: u8, p: u64, weight_sum: i64, field: NumberField, alpha: Vec<NfElem>) -> Result<Self, SatakeError> {
        if g != 1 && g != 2 {
            return Err(SatakeError::UnsupportedGenus(g));
        }
        if alpha.len() != g as usize + 1 || alpha.iter().any(|a| a.len() != field.degree()) {
            return Err(SatakeError::BadParams(format!("need {} parameters in the field", g + 1)));
        }
        let prod = alpha[1..].iter().fold(field.mul(&alpha[0], &alpha[0]), |acc, a| field.mul(&acc, a));
        let e = weight_sum - (g as i64) * (g as i64 + 1) / 2;
        let expect = pow_rat(&Rat::from_integer(p.into()), e);
        if field.as_rat(&prod) != Some(expect) {
            return Err(SatakeError::Invariant { g, p, e });
        }
        Ok(SatakeParams { g, p, weight_sum, field, alpha })
    }

    /// Siegel Eisenstein series of weight k: α₀ = 1, α_i = p^{k−i}.
    pub fn eisenstein(g: u8, k: i64, p: u64) -> Result<Self, SatakeError> {
        let f = NumberField::rational();
        let pr = Rat::from_integer(p.into());
        let mut alpha = vec![f.one()];
        alpha.extend((1..=g as i64).map(|i| f.from_rat(pow_rat(&pr, k - i))));
        Self::new(g, p, g as i64 * k, f, alpha)
    }

    /// Genus 1 eigenform of weight k with eigenvalue a_p: α₀ = β, α₁ = β̄/β
    /// where β, β̄ are the roots of X² − a_pX + p^{k−1}.
    pub fn from_g1(a_p: &Rat, k: i64, p: u64) -> Result<Self, SatakeError> {
        let pk = pow_rat(&Rat::from_integer(p.into()), k - 1);
        let f = NumberField::new(vec![pk, -a_p, Rat::one()])?;
        let beta = f.gen();
        let bar = f.sub(&f.from_rat(a_p.clone()), &beta);
        let a1 = f.mul(&bar, &f.inv(&beta)?);
        Self::new(1, p, k, f, vec![beta, a1])
    }

    pub fn g(&self) -> u8 {
        self.g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn weight_sum(&self) -> i64 {
        self.weight_sum
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn alpha(&self) -> &[NfElem] {
        &self.alpha
    }

    /// Torus values with v₁⋯v_g = α₀ and u_i/v_i = α_i.
    fn torus_point(&self) -> [NfElem; 4] {
        let f = &self.field;
        let v1 = self.alpha[0].clone();
        let u1 = f.mul(&v1, &self.alpha[1]);
        match self.g {
            1 => [u1, f.one(), v1, f.one()],
            _ => [u1, self.alpha[2].clone(), v1, f.one()],
        }
    }

    /// Value of a Satake image at these parameters.
    pub fn evaluate(&self, x: &SatakeElement) -> Result<NfElem, SatakeError> {
        self.field.eval(x, self.p, &self.torus_point())
    }
}

/// λ(p) and λ_i(p²) for i = 0..g, read off by substituting the parameters.
pub fn eigen_from_params(params: &SatakeParams) -> Result<(Rat, Vec<Rat>), SatakeError> {
    let f = params.field();
    let g = params.g();
    let rat = |x: NfElem| f.as_rat(&x).ok_or(SatakeError::NonRational);
    // λ(p) = α₀(1 + σ₁ + ⋯ + σ_g)
    let mut sig = vec![f.one()];
    for a in &params.alpha()[1..] {
        let mut next = sig.clone();
        next.push(f.zero());
        for i in 1..next.len() {
            next[i] = f.add(&next[i], &f.mul(&sig[i - 1], a));
        }
        sig = next;
    }
    let total = sig.iter().fold(f.zero(), |acc, s| f.add(&acc, s));
    let lambda = rat(f.mul(&params.alpha()[0], &total))?;
    let via_image = rat(params.evaluate(&satake_tp(g)?)?)?;
    if via_image != lambda {
        return Err(SatakeError::BadParams(format!("T(p) paths disagree: {lambda} vs {via_image}")));
    }
    let lp2 = (0..=g as usize).map(|i| rat(params.evaluate(&satake_ti(g, i)?)?)).collect::<Result<_, _>>()?;
    Ok((lambda, lp2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn field_inverse() {
        let f = NumberField::new(vec![rat(2, 1), rat(0, 1), rat(1, 1)]).unwrap();
        let x = f.add(&f.gen(), &f.one());
        let y = f.inv(&x).unwrap();
        assert_eq!(f.mul(&x, &y), f.one());
        assert!(NumberField::new(vec![rat(-4, 1), rat(0, 1), rat(1, 1)]).is_err());
        assert!(matches!(f.inv(&f.zero()), Err(SatakeError::DivisionByZero)));
    }

    #[test]
    fn g1_recovers_eigenvalues() {
        // τ(2) = −24
        let s = SatakeParams::from_g1(&rat(-24, 1), 12, 2).unwrap();
        let (l, t) = eigen_from_params(&s).unwrap();
        assert_eq!(l, rat(-24, 1));
        // T(4) = τ(2)² − 2¹¹ = τ(4)
        assert_eq!(&t[0] + &t[1], rat(-1472, 1));
    }

    #[test]
    fn eisenstein_eigenvalue() {
        let s = SatakeParams::eisenstein(2, 4, 2).unwrap();
        let (l, _) = eigen_from_params(&s).unwrap();
        assert_eq!(l, rat(45, 1));
    }

    #[test]
    fn invariant_is_enforced() {
        let f = NumberField::rational();
        let bad = SatakeParams::new(2, 2, 8, f.clone(), vec![f.one(), f.from_rat(rat(8, 1)), f.from_rat(rat(8, 1))]);
        assert!(matches!(bad, Err(SatakeError::Invariant { .. })));
    }
}
