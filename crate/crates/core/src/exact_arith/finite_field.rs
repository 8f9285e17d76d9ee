use super::ntheory::prime_power;
use super::ArithError;

/// Elements are indices `0..q`; 0 is zero and 1 is one. A quadratic extension
/// of a field with `b` elements encodes c₀ + c₁y as `c₀ + c₁·b`, so the base
/// field sits inside as the indices below `b`.
pub type Fq = u16;

pub const MAX_TABLE_Q: u32 = 2401;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    q: u32,
    base_q: u32,
    modulus: Option<(Fq, Fq)>,
    add: Vec<Fq>,
    mul: Vec<Fq>,
    neg: Vec<Fq>,
    inv: Vec<Fq>,
    chi: Vec<i8>,
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Self, ArithError> {
        if !super::ntheory::is_prime(p as u64) || p > MAX_TABLE_Q {
            return Err(ArithError::UnsupportedField(p as u64));
        }
        let q = p as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = ((a + b) % q) as Fq;
                mul[a * q + b] = ((a * b) % q) as Fq;
            }
        }
        Ok(Self::finish(p, 1, p, p, None, add, mul))
    }

    fn finish(p: u32, degree: u32, q: u32, base_q: u32, modulus: Option<(Fq, Fq)>, add: Vec<Fq>, mul: Vec<Fq>) -> Self {
        let n = q as usize;
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as Fq;
                }
                if mul[a * n + b] == 1 {
                    inv[a] = b as Fq;
                }
            }
        }
        let mut chi = vec![-1i8; n];
        chi[0] = 0;
        for x in 1..n {
            chi[mul[x * n + x] as usize] = 1;
        }
        FiniteField { p, degree, q, base_q, modulus, add, mul, neg, inv, chi }
    }

    /// Quadratic extension by the lexicographically smallest monic irreducible
    /// x² + ax + b over `base`, ordered by (a, b).
    pub fn quadratic_ext(base: &FiniteField) -> Result<Self, ArithError> {
        let b0 = base.q;
        let q = b0 * b0;
        if q > MAX_TABLE_Q {
            return Err(ArithError::UnsupportedField(q as u64));
        }
        let mut modulus = None;
        'search: for a in 0..b0 as Fq {
            for b in 0..b0 as Fq {
                let has_root = (0..b0 as Fq).any(|x| {
                    let v = base.add(base.add(base.mul(x, x), base.mul(a, x)), b);
                    v == 0
                });
                if !has_root {
                    modulus = Some((a, b));
                    break 'search;
                }
            }
        }
        let (ma, mb) = modulus.expect("an irreducible quadratic exists");
        let n = q as usize;
        let split = |x: usize| ((x % b0 as usize) as Fq, (x / b0 as usize) as Fq);
        let join = |c0: Fq, c1: Fq| c0 as usize + c1 as usize * b0 as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        let (na, nb) = (base.neg(ma), base.neg(mb));
        for x in 0..n {
            let (x0, x1) = split(x);
            for y in 0..n {
                let (y0, y1) = split(y);
                add[x * n + y] = join(base.add(x0, y0), base.add(x1, y1)) as Fq;
                // y² = −a·y − b
                let c0 = base.mul(x0, y0);
                let c1 = base.add(base.mul(x0, y1), base.mul(x1, y0));
                let c2 = base.mul(x1, y1);
                let r0 = base.add(c0, base.mul(c2, nb));
                let r1 = base.add(c1, base.mul(c2, na));
                mul[x * n + y] = join(r0, r1) as Fq;
            }
        }
        Ok(Self::finish(base.p, base.degree * 2, q, b0, Some((ma, mb)), add, mul))
    }

    /// 𝔽_q for q = p, p², or p⁴ (the latter as a tower of quadratic extensions).
    pub fn new(q: u64) -> Result<Self, ArithError> {
        let (p, e) = prime_power(q).ok_or(ArithError::UnsupportedField(q))?;
        if q > MAX_TABLE_Q as u64 {
            return Err(ArithError::UnsupportedField(q));
        }
        let base = Self::prime(p as u32)?;
        match e {
            1 => Ok(base),
            2 => Self::quadratic_ext(&base),
            4 => Self::quadratic_ext(&Self::quadratic_ext(&base)?),
            _ => Err(ArithError::UnsupportedField(q)),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    /// Size of the field this one was built over (q itself for a prime field).
    pub fn base_q(&self) -> u32 {
        self.base_q
    }
    pub fn modulus(&self) -> Option<(Fq, Fq)> {
        self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }
    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: Fq) -> Fq {
        self.inv[a as usize]
    }
    /// Quadratic character, χ(0) = 0.
    #[inline]
    pub fn chi(&self, a: Fq) -> i8 {
        self.chi[a as usize]
    }
    pub fn chi_table(&self) -> &[i8] {
        &self.chi
    }
    pub fn add_table(&self) -> &[Fq] {
        &self.add
    }
    pub fn mul_table(&self) -> &[Fq] {
        &self.mul
    }

    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.p as i64) as Fq
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut r: Fq = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q as Fq
    }

    pub fn is_square(&self, a: Fq) -> bool {
        self.chi(a) >= 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 4, 5, 7, 9, 16, 25, 49, 81] {
            let f = FiniteField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            // distributivity on a sample
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    for c in f.elements().step_by(7) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_order_and_character() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for p in [2u32, 3, 5, 7, 11, 13] {
            let f = FiniteField::new((p * p) as u64).unwrap();
            for _ in 0..1000 {
                let x: Fq = rng.gen_range(0..f.q()) as Fq;
                assert_eq!(f.pow(x, (p * p) as u64), x);
                let y = rng.gen_range(0..f.q()) as Fq;
                assert_eq!(f.frobenius(f.mul(x, y)), f.mul(f.frobenius(x), f.frobenius(y)));
                assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
                if x != 0 {
                    assert_eq!(f.chi(f.mul(x, x)), 1);
                }
            }
            assert_eq!(f.chi(0), 0);
            if p > 2 {
                let squares = f.elements().filter(|&x| f.chi(x) == 1).count();
                assert_eq!(squares as u32, (f.q() - 1) / 2);
            }
            // the prime field is fixed by Frobenius
            for x in 0..p as Fq {
                assert_eq!(f.frobenius(x), x);
            }
        }
    }

    #[test]
    fn smallest_modulus() {
        // over F_3, x² + 1 is the first irreducible in (a,b) order
        assert_eq!(FiniteField::new(9).unwrap().modulus(), Some((0, 1)));
        // over F_2, x² + x + 1
        assert_eq!(FiniteField::new(4).unwrap().modulus(), Some((1, 1)));
        // over F_5, x² + 2
        assert_eq!(FiniteField::new(25).unwrap().modulus(), Some((0, 2)));
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(27).is_err());
    }

    #[test]
    fn tower_embeds_base() {
        let f9 = FiniteField::new(9).unwrap();
        let f81 = FiniteField::new(81).unwrap();
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(f81.mul(a, b), f9.mul(a, b));
                assert_eq!(f81.add(a, b), f9.add(a, b));
            }
            // base elements are squares in the extension
            if a != 0 {
                assert_eq!(f81.chi(a), 1);
            }
        }
    }
}
