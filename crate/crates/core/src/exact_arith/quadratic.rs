use super::bigfloat::BigFloat;
use super::rational::{rat_to_string, serde_rat, Int, Rat};
use super::ArithError;
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// a + b√D in a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadElem {
    pub disc: u64,
    #[serde(with = "serde_rat")]
    pub a: Rat,
    #[serde(with = "serde_rat")]
    pub b: Rat,
}

pub fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

impl QuadElem {
    pub fn new(disc: u64, a: Rat, b: Rat) -> Result<Self, ArithError> {
        if is_square(disc) {
            return Err(ArithError::SquareDisc(disc));
        }
        Ok(QuadElem { disc, a, b })
    }

    pub fn from_rat(disc: u64, a: Rat) -> Result<Self, ArithError> {
        Self::new(disc, a, Rat::zero())
    }

    pub fn conj(&self) -> Self {
        QuadElem { disc: self.disc, a: self.a.clone(), b: -&self.b }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(BigInt::from(self.disc)) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check(&self, o: &Self) -> Result<(), ArithError> {
        if self.disc != o.disc {
            Err(ArithError::MixedDisc(self.disc, o.disc))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ArithError> {
        self.check(o)?;
        Ok(QuadElem { disc: self.disc, a: &self.a + &o.a, b: &self.b + &o.b })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ArithError> {
        self.check(o)?;
        Ok(QuadElem { disc: self.disc, a: &self.a - &o.a, b: &self.b - &o.b })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ArithError> {
        self.check(o)?;
        let d = Rat::from_integer(BigInt::from(self.disc));
        Ok(QuadElem {
            disc: self.disc,
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        })
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(QuadElem { disc: self.disc, a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, ArithError> {
        self.try_mul(&o.inv()?)
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        QuadElem { disc: self.disc, a: &self.a + r, b: self.b.clone() }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QuadElem { disc: self.disc, a: &self.a * r, b: &self.b * r }
    }

    /// Monic minimal polynomial over ℚ, constant term first.
    pub fn min_poly(&self) -> Vec<Rat> {
        if self.b.is_zero() {
            vec![-&self.a, Rat::one()]
        } else {
            vec![self.norm(), -self.trace(), Rat::one()]
        }
    }

    /// Value under the real embedding √D ↦ +√D.
    pub fn embed(&self, prec: u32) -> BigFloat {
        let s = BigFloat::from_int(&Int::from(self.disc), prec).sqrt();
        BigFloat::from_rat(&self.a, prec).add(&BigFloat::from_rat(&self.b, prec).mul(&s))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap() + self.b.to_f64().unwrap() * (self.disc as f64).sqrt()
    }

    /// Valuations of a nonzero element at the primes above an odd prime ℓ.
    /// Split primes come as [𝔭, 𝔭′] with 𝔭 ∋ √D − s for the least square root
    /// s of D modulo ℓ; inert and ramified primes give a single entry.
    pub fn valuations_above(&self, l: u64) -> Vec<i64> {
        use super::ntheory::kronecker;
        use super::rational::{val_int, val_rat};
        use num_integer::Integer;
        assert!(l % 2 == 1, "odd primes only");
        let n = self.norm();
        assert!(!n.is_zero(), "valuation of zero");
        let vn = val_rat(&n, l);
        let d = self.disc as i64;
        match kronecker(d, l as i64) {
            0 => vec![vn],
            -1 => vec![vn / 2],
            _ => {
                let den = self.a.denom().lcm(self.b.denom());
                let big_a = (&self.a * Rat::from_integer(den.clone())).to_integer();
                let big_b = (&self.b * Rat::from_integer(den.clone())).to_integer();
                let vden = val_int(&den, l) as i64;
                let vn_int = vn + 2 * vden;
                let k = (vn_int + 1) as usize;
                let modulus = num_traits::pow(BigInt::from(l), k);
                let dm = BigInt::from(d).mod_floor(&BigInt::from(l));
                let s0 = (0..l).find(|&x| BigInt::from(x * x % l) == dm).expect("split prime");
                let mut s = BigInt::from(s0);
                for _ in 0..k {
                    let f = (&s * &s - BigInt::from(d)).mod_floor(&modulus);
                    let two_s = (&s * BigInt::from(2)).mod_floor(&modulus);
                    let inv = two_s.extended_gcd(&modulus).x.mod_floor(&modulus);
                    s = (&s - f * inv).mod_floor(&modulus);
                }
                let r = (&big_a + &big_b * &s).mod_floor(&modulus);
                let vpi = if r.is_zero() { k as i64 } else { val_int(&r, l) as i64 }.min(vn_int);
                vec![vpi - vden, vn_int - vpi - vden]
            }
        }
    }

    pub fn is_integral(&self) -> bool {
        let t = self.trace();
        let n = self.norm();
        t.is_integer() && n.is_integer()
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{} {} {}*sqrt({})",
            rat_to_string(&self.a),
            sign,
            rat_to_string(&self.b.abs()),
            self.disc
        )
    }
}

macro_rules! quad_op {
    ($tr:ident, $m:ident, $tm:ident) => {
        impl $tr for &QuadElem {
            type Output = QuadElem;
            fn $m(self, o: &QuadElem) -> QuadElem {
                self.$tm(o).expect("mixed-discriminant arithmetic")
            }
        }
        impl $tr for QuadElem {
            type Output = QuadElem;
            fn $m(self, o: QuadElem) -> QuadElem {
                (&self).$tm(&o).expect("mixed-discriminant arithmetic")
            }
        }
    };
}
quad_op!(Add, add, try_add);
quad_op!(Sub, sub, try_sub);
quad_op!(Mul, mul, try_mul);

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { disc: self.disc, a: -self.a, b: -self.b }
    }
}

/// A value that is either rational or lies in one real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Rat(#[serde(with = "serde_rat")] Rat),
    Quad(QuadElem),
}

impl Scalar {
    pub fn from_i64(n: i64) -> Self {
        Scalar::Rat(Rat::from_integer(n.into()))
    }

    pub fn disc(&self) -> Option<u64> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Quad(q) => Some(q.disc),
        }
    }

    fn lift(&self, disc: u64) -> QuadElem {
        match self {
            Scalar::Rat(r) => QuadElem { disc, a: r.clone(), b: Rat::zero() },
            Scalar::Quad(q) => q.clone(),
        }
    }

    fn binop(
        &self,
        o: &Self,
        fr: impl Fn(&Rat, &Rat) -> Rat,
        fq: impl Fn(&QuadElem, &QuadElem) -> Result<QuadElem, ArithError>,
    ) -> Result<Self, ArithError> {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(fr(a, b))),
            _ => {
                let d = self.disc().or(o.disc()).unwrap();
                Ok(Scalar::Quad(fq(&self.lift(d), &o.lift(d))?))
            }
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ArithError> {
        self.binop(o, |a, b| a + b, |a, b| a.try_add(b))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ArithError> {
        self.binop(o, |a, b| a - b, |a, b| a.try_sub(b))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ArithError> {
        self.binop(o, |a, b| a * b, |a, b| a.try_mul(b))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a * r),
            Scalar::Quad(q) => Scalar::Quad(q.scale(r)),
        }
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a + r),
            Scalar::Quad(q) => Scalar::Quad(q.add_rat(r)),
        }
    }

    pub fn norm(&self) -> Rat {
        match self {
            Scalar::Rat(a) => a.clone(),
            Scalar::Quad(q) => q.norm(),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.clone()),
            Scalar::Quad(q) => Scalar::Quad(q.conj()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Quad(q) => q.a.is_zero() && q.b.is_zero(),
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Rat(a) => Some(a),
            Scalar::Quad(q) if q.b.is_zero() => Some(&q.a),
            Scalar::Quad(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(a) => super::rational::rat_to_f64(a),
            Scalar::Quad(q) => q.to_f64(),
        }
    }

    pub fn embed(&self, prec: u32) -> BigFloat {
        match self {
            Scalar::Rat(a) => BigFloat::from_rat(a, prec),
            Scalar::Quad(q) => q.embed(prec),
        }
    }

    pub fn min_poly(&self) -> Vec<Rat> {
        match self {
            Scalar::Rat(a) => vec![-a, Rat::one()],
            Scalar::Quad(q) => q.min_poly(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(a) => write!(f, "{}", rat_to_string(a)),
            Scalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::rat;

    #[test]
    fn mixed_disc_rejected() {
        let x = QuadElem::new(18209, rat(1, 1), rat(1, 1)).unwrap();
        let y = QuadElem::new(25249, rat(1, 1), rat(1, 1)).unwrap();
        assert!(matches!(x.try_mul(&y), Err(ArithError::MixedDisc(18209, 25249))));
        assert!(QuadElem::new(49, rat(1, 1), rat(1, 1)).is_err());
    }

    #[test]
    fn norm_example() {
        // 4320 + 96√51349 + 2^24 + 2^5 + 32736
        let x = QuadElem::new(51349, rat(4320 + (1 << 24) + 32 + 32736, 1), rat(96, 1)).unwrap();
        assert_eq!(x.norm(), rat(282720345772032, 1));
    }

    #[test]
    fn valuations() {
        // 7 splits in ℚ(√2): 3² ≡ 2 mod 7; 3 + √2 has norm 7
        let x = QuadElem::new(2, rat(3, 1), rat(1, 1)).unwrap();
        assert_eq!(x.valuations_above(7), vec![0, 1]);
        assert_eq!(x.conj().valuations_above(7), vec![1, 0]);
        let y = x.try_mul(&x).unwrap().scale(&rat(1, 7));
        assert_eq!(y.valuations_above(7), vec![-1, 1]);
        // 5 is inert in ℚ(√2)
        let z = QuadElem::new(2, rat(25, 1), rat(5, 1)).unwrap();
        assert_eq!(z.valuations_above(5), vec![1]);
        // 3 ramifies in ℚ(√3)
        let w = QuadElem::new(3, rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(w.valuations_above(3), vec![1]);
    }

    #[test]
    fn serde_shape() {
        let x = QuadElem::new(5, rat(1, 2), rat(-3, 4)).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"disc":5,"a":"1/2","b":"-3/4"}"#);
        let y: QuadElem = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
