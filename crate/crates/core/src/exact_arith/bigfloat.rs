use super::rational::{Int, Rat};
use super::ArithError;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

pub const DEFAULT_PREC: u32 = 256;

/// Binary floating point value `man · 2^exp`, with |man| < 2^prec.
/// Every operation rounds to nearest at the larger operand precision.
#[derive(Clone, Debug)]
pub struct BigFloat {
    man: BigInt,
    exp: i64,
    prec: u32,
}

fn round_shift(man: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return man.clone();
    }
    let half = BigInt::one() << (shift - 1);
    let mag = (man.abs() + half) >> shift;
    if man.is_negative() {
        -mag
    } else {
        mag
    }
}

impl BigFloat {
    fn make(man: BigInt, exp: i64, prec: u32) -> Self {
        if man.is_zero() {
            return BigFloat { man, exp: 0, prec };
        }
        let bits = man.bits();
        if bits > prec as u64 {
            let shift = bits - prec as u64;
            let m = round_shift(&man, shift);
            return Self::make(m, exp + shift as i64, prec);
        }
        BigFloat { man, exp, prec }
    }

    pub fn zero(prec: u32) -> Self {
        BigFloat { man: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        BigFloat { man: BigInt::one(), exp: 0, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::make(self.man.clone(), self.exp, prec)
    }

    pub fn from_int(n: &Int, prec: u32) -> Self {
        Self::make(n.clone(), 0, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::make(BigInt::from(n), 0, prec)
    }

    pub fn from_rat(x: &Rat, prec: u32) -> Self {
        Self::from_int(x.numer(), prec + 8).div(&Self::from_int(x.denom(), prec + 8)).with_prec(prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, ex) = if e == 0 { (frac, -1074) } else { (frac | (1 << 52), e - 1075) };
        Self::make(BigInt::from(m) * sign, ex, prec)
    }

    /// Exact rational value.
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.man << self.exp as u64)
        } else {
            Rat::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.man.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let shift = bits.saturating_sub(60);
        let m = (&self.man >> shift).to_f64().unwrap();
        let e = self.exp + shift as i64;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// floor(log2 |x|) + 1, or i64::MIN for zero.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat { man: -&self.man, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { man: self.man.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return o.with_prec(prec);
        }
        if o.is_zero() {
            return self.with_prec(prec);
        }
        let (hi, lo) = if self.magnitude() >= o.magnitude() { (self, o) } else { (o, self) };
        if hi.magnitude() - lo.magnitude() > prec as i64 + 4 {
            // lo is below half an ulp of hi
            return hi.with_prec(prec);
        }
        let e = hi.exp.min(lo.exp);
        let a = &hi.man << (hi.exp - e) as u64;
        let b = &lo.man << (lo.exp - e) as u64;
        Self::make(a + b, e, prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::make(&self.man * &o.man, self.exp + o.exp, self.prec.max(o.prec))
    }

    pub fn mul_int(&self, n: &Int) -> Self {
        Self::make(&self.man * n, self.exp, self.prec)
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = (prec as i64 + 2 + o.man.bits() as i64 - self.man.bits() as i64).max(0) as u64;
        let num = &self.man << shift;
        let (q, r) = num.div_rem(&o.man);
        // two guard bits plus sticky
        let q = (q << 2u32) + if r.is_zero() { BigInt::zero() } else { num.signum() * o.man.signum()  };
        Self::make(q, self.exp - o.exp - shift as i64 - 2, prec)
    }

    pub fn div_int(&self, n: &Int) -> Self {
        self.div(&Self::from_int(n, self.prec))
    }

    pub fn sqr(&self) -> Self {
        self.mul(self)
    }

    pub fn powi(&self, n: i64) -> Self {
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            Self::one(self.prec).div(&acc)
        } else {
            acc
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.man.is_negative(), "sqrt of negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let want = 2 * self.prec as i64 + 4;
        let mut s = (want - self.man.bits() as i64).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = (&self.man << s as u64).sqrt();
        Self::make(m, (self.exp - s) / 2, self.prec)
    }

    pub fn ldexp(&self, k: i64) -> Self {
        BigFloat { man: self.man.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn pi(prec: u32) -> Self {
        static CACHE: OnceLock<Mutex<HashMap<u32, BigFloat>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = cache.lock().unwrap().get(&prec) {
            return v.clone();
        }
        let w = prec as u64 + 32;
        let one = BigInt::one() << w;
        // atan(1/x) in fixed point
        let atan_inv = |x: u64| -> BigInt {
            let x2 = BigInt::from(x * x);
            let mut term = &one / x;
            let mut sum = BigInt::zero();
            let mut k = 0u64;
            while !term.is_zero() {
                let t = &term / (2 * k + 1);
                if k.is_multiple_of(2) {
                    sum += t;
                } else {
                    sum -= t;
                }
                term /= &x2;
                k += 1;
            }
            sum
        };
        let v = atan_inv(5) * 16 - atan_inv(239) * 4;
        let r = Self::make(v, -(w as i64), prec);
        cache.lock().unwrap().insert(prec, r.clone());
        r
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.is_zero() {
            return Self::one(prec);
        }
        let s = (self.magnitude() + 20).max(0);
        let w = prec + 64 + s as u32;
        let r = self.with_prec(w).ldexp(-s);
        let mut sum = Self::one(w);
        let mut term = Self::one(w);
        let mut k = 1i64;
        loop {
            term = term.mul(&r).div_int(&BigInt::from(k));
            if term.is_zero() || term.magnitude() < sum.magnitude() - w as i64 - 2 {
                break;
            }
            sum = sum.add(&term);
            k += 1;
        }
        for _ in 0..s {
            sum = sum.sqr();
        }
        sum.with_prec(prec)
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let r = self.to_rat().abs();
        let mut e10 = ((self.magnitude() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let scaled = |e: i64| -> BigInt {
            let t = digits as i64 - 1 - e;
            let v = if t >= 0 {
                &r * Rat::from_integer(num_traits::pow(BigInt::from(10), t as usize))
            } else {
                &r / Rat::from_integer(num_traits::pow(BigInt::from(10), (-t) as usize))
            };
            v.round().to_integer()
        };
        let mut n = scaled(e10);
        let lim = num_traits::pow(BigInt::from(10), digits);
        while n >= lim {
            e10 += 1;
            n = scaled(e10);
        }
        while n < &lim / 10 {
            e10 -= 1;
            n = scaled(e10);
        }
        let s = n.to_string();
        let sign = if self.signum() < 0 { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_value(o) == Ordering::Equal
    }
}

impl BigFloat {
    pub fn cmp_value(&self, o: &Self) -> Ordering {
        self.to_rat().cmp(&o.to_rat())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_sci(digits.clamp(1, 40)))
    }
}

/// Best continued-fraction convergent p/q with q ≤ max_den; the residual must
/// not exceed max(1,|x|)·2^{−guard_bits}.
pub fn rational_reconstruct_tol(x: &BigFloat, max_den: &Int, guard_bits: u32) -> Result<Rat, ArithError> {
    let target = x.to_rat();
    let (mut p0, mut q0, mut p1, mut q1) = (Int::zero(), Int::one(), Int::one(), Int::zero());
    let mut rest = target.clone();
    let mut best: Option<Rat> = None;
    loop {
        let a = rest.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if &q2 > max_den {
            break;
        }
        best = Some(Rat::new(p2.clone(), q2.clone()));
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &rest - Rat::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    let best = best.ok_or(ArithError::NoConvergent)?;
    let scale = if target.abs() > Rat::one() { target.abs() } else { Rat::one() };
    let tol = scale / Rat::from_integer(BigInt::one() << guard_bits as u64);
    if (&target - &best).abs() > tol {
        return Err(ArithError::NoConvergent);
    }
    Ok(best)
}

/// Reconstruction with a guard derived from the working precision: the residual
/// must sit within (prec − 2·log₂ max_den)/2 bits of the rounding level.
pub fn rational_reconstruct(x: &BigFloat, max_den: &Int) -> Result<Rat, ArithError> {
    let need = 2 * max_den.bits() as u32;
    if x.prec() <= need + 16 {
        return Err(ArithError::InsufficientPrecision { prec: x.prec(), need: need + 16 });
    }
    let slack = (x.prec() - need) / 2;
    rational_reconstruct_tol(x, max_den, x.prec() - slack)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::rat;

    #[test]
    fn basic_ops_match_f64() {
        let a = BigFloat::from_f64(1.2345, 128);
        let b = BigFloat::from_f64(-7.5e-3, 128);
        assert!((a.add(&b).to_f64() - (1.2345 - 7.5e-3)).abs() < 1e-15);
        assert!((a.mul(&b).to_f64() - (1.2345 * -7.5e-3)).abs() < 1e-15);
        assert!((a.div(&b).to_f64() - (1.2345 / -7.5e-3)).abs() < 1e-12);
        assert!((a.sqrt().to_f64() - 1.2345f64.sqrt()).abs() < 1e-15);
        assert!((BigFloat::from_f64(2.5, 128).exp().to_f64() - 2.5f64.exp()).abs() < 1e-12);
        assert!((BigFloat::from_f64(-30.0, 128).exp().to_f64() / (-30f64).exp() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pi_digits() {
        let p = BigFloat::pi(256);
        assert!(p.to_sci(50).starts_with("3.14159265358979323846264338327950288419716939937"));
    }

    #[test]
    fn exp_identities() {
        let prec = 256;
        let x = BigFloat::from_rat(&rat(7, 3), prec);
        let lhs = x.exp().mul(&x.neg().exp());
        let err = lhs.sub(&BigFloat::one(prec)).abs();
        assert!(err.is_zero() || err.magnitude() < -240);
        // e^{2π} * e^{−2π} and a large argument
        let y = BigFloat::pi(prec).ldexp(1).mul_int(&BigInt::from(300));
        let z = y.exp().mul(&y.neg().exp()).sub(&BigFloat::one(prec)).abs();
        assert!(z.is_zero() || z.magnitude() < -230);
    }

    #[test]
    fn sqrt_exact_squares() {
        let x = BigFloat::from_rat(&rat(144169 * 144169, 1), 256);
        assert_eq!(x.sqrt().to_rat(), rat(144169, 1));
        let two = BigFloat::from_i64(2, 256).sqrt();
        let err = two.sqr().sub(&BigFloat::from_i64(2, 256)).abs();
        assert!(err.magnitude() < -250);
    }

    #[test]
    fn reconstruct_examples() {
        let half = BigFloat::from_rat(&rat(1, 2), 256);
        assert_eq!(rational_reconstruct(&half, &BigInt::from(10)).unwrap(), rat(1, 2));
        let x = BigFloat::from_rat(&rat(25, 48), 200);
        assert_eq!(rational_reconstruct(&x, &BigInt::from(1_000_000)).unwrap(), rat(25, 48));
        let pi = BigFloat::pi(200);
        assert!(matches!(rational_reconstruct(&pi, &BigInt::from(10)), Err(ArithError::NoConvergent)));
        assert!(matches!(
            rational_reconstruct_tol(&pi, &BigInt::from(10), 20),
            Err(ArithError::NoConvergent)
        ));
        assert_eq!(rational_reconstruct_tol(&pi, &BigInt::from(10), 8).unwrap(), rat(22, 7));
        let neg = BigFloat::from_rat(&rat(-691, 2730), 256);
        assert_eq!(rational_reconstruct(&neg, &BigInt::from(10_000)).unwrap(), rat(-691, 2730));
    }

    #[test]
    fn sci_format() {
        assert_eq!(BigFloat::from_i64(-27000, 64).to_sci(3), "-2.70e4");
        assert_eq!(BigFloat::from_rat(&rat(1, 3), 64).to_sci(2), "3.3e-1");
    }
}
