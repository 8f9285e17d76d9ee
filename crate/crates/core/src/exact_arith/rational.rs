use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<Int>) -> Rat {
    Rat::from_integer(n.into())
}

/// `num/den` with den > 0, or just `num` when the denominator is 1.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
    }
}

pub fn pow_int(base: i64, e: u32) -> Int {
    num_traits::pow(BigInt::from(base), e as usize)
}

pub fn pow_rat(base: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// p-adic valuation of a nonzero integer.
pub fn val_int(n: &Int, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val_rat(x: &Rat, p: u64) -> i64 {
    val_int(x.numer(), p) as i64 - val_int(x.denom(), p) as i64
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Integer value of a rational known to be integral.
pub fn to_integer(x: &Rat) -> Option<Int> {
    if x.denom().is_one() {
        Some(x.numer().clone())
    } else {
        None
    }
}

pub fn to_integer_vec(xs: &[Rat]) -> Option<Vec<Int>> {
    xs.iter().map(to_integer).collect()
}

pub fn lcm_den<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Int {
    xs.into_iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

pub mod serde_rat {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_str(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod serde_int {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(&s).map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
    }
}

pub mod serde_rat_vec {
    use super::*;
    use serde::{ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&rat_to_string(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| {
                rat_from_str(s)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for x in [rat(-691, 2730), rat(5, 1), rat(0, 7), rat(3, -9)] {
            assert_eq!(rat_from_str(&rat_to_string(&x)).unwrap(), x);
        }
        assert_eq!(rat_to_string(&rat(3, -9)), "-1/3");
        assert!(rat_from_str("1/0").is_none());
    }

    #[test]
    fn valuations() {
        assert_eq!(val_int(&int(-204800), 2), 13);
        assert_eq!(val_rat(&rat(9, 8), 2), -3);
        assert_eq!(val_rat(&rat(9, 8), 3), 2);
    }
}
