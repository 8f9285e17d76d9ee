use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exact_arith::{rat_to_string, Rat};

/// Exponents of (P, u₁, u₂, v₁, v₂).
pub type Monomial = [i32; 5];

const NAMES: [&str; 5] = ["P", "u1", "u2", "v1", "v2"];

/// Laurent polynomial in P, u₁..u_g, v₁..v_g with rational coefficients.
///
/// Coefficients that are rational functions of P only ever have powers of
/// P in the denominator here, so P is carried as one more Laurent variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeElement {
    g: u8,
    terms: BTreeMap<Monomial, Rat>,
}

impl SatakeElement {
    pub fn zero(g: u8) -> Self {
        SatakeElement { g, terms: BTreeMap::new() }
    }

    pub fn constant(g: u8, c: Rat) -> Self {
        Self::monomial(g, [0; 5], c)
    }

    pub fn monomial(g: u8, m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SatakeElement { g, terms }
    }

    /// P^e.
    pub fn p_pow(g: u8, e: i32) -> Self {
        Self::monomial(g, [e, 0, 0, 0, 0], Rat::one())
    }

    /// The polynomial Σ c_e P^e with coefficients listed from e = 0.
    pub fn p_poly(g: u8, coeffs: &[i64]) -> Self {
        let mut out = Self::zero(g);
        for (e, &c) in coeffs.iter().enumerate() {
            out = out + Self::monomial(g, [e as i32, 0, 0, 0, 0], Rat::from_integer(c.into()));
        }
        out
    }

    /// u_i for 1 ≤ i ≤ g.
    pub fn u(g: u8, i: usize) -> Self {
        assert!(i >= 1 && i <= g as usize);
        let mut m = [0; 5];
        m[i] = 1;
        Self::monomial(g, m, Rat::one())
    }

    /// v_i for 1 ≤ i ≤ g.
    pub fn v(g: u8, i: usize) -> Self {
        assert!(i >= 1 && i <= g as usize);
        let mut m = [0; 5];
        m[2 + i] = 1;
        Self::monomial(g, m, Rat::one())
    }

    pub fn g(&self) -> u8 {
        self.g
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.g);
        }
        SatakeElement { g: self.g, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.g, Rat::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let mut out = Self::zero(self.g);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// The substitution u_i ↔ v_i.
    pub fn swap_uv(&self, i: usize) -> Self {
        self.map_monomials(|m| {
            let mut n = *m;
            n.swap(i, 2 + i);
            n
        })
    }

    /// The index transposition 1 ↔ 2 (identity for g = 1).
    pub fn permute(&self) -> Self {
        if self.g < 2 {
            return self.clone();
        }
        self.map_monomials(|m| [m[0], m[2], m[1], m[4], m[3]])
    }

    /// Images under each generator of the Weyl group.
    pub fn weyl_images(&self) -> Vec<Self> {
        let mut out: Vec<Self> = (1..=self.g as usize).map(|i| self.swap_uv(i)).collect();
        if self.g == 2 {
            out.push(self.permute());
        }
        out
    }

    pub fn is_weyl_invariant(&self) -> bool {
        self.weyl_images().iter().all(|w| w == self)
    }

    /// Evaluates at P = p with all other variables set to 1, which for the
    /// P-only coefficients m_h(i) is numeric substitution.
    pub fn eval_p(&self, p: &Rat) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, (m, c)| acc + c * crate::exact_arith::rational::pow_rat(p, m[0] as i64))
    }
}

impl Add for &SatakeElement {
    type Output = SatakeElement;
    fn add(self, o: &SatakeElement) -> SatakeElement {
        let mut out = self.clone();
        out.g = out.g.max(o.g);
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &SatakeElement {
    type Output = SatakeElement;
    fn sub(self, o: &SatakeElement) -> SatakeElement {
        self + &(-o)
    }
}

impl Neg for &SatakeElement {
    type Output = SatakeElement;
    fn neg(self) -> SatakeElement {
        self.scale(&-Rat::one())
    }
}

impl Mul for &SatakeElement {
    type Output = SatakeElement;
    fn mul(self, o: &SatakeElement) -> SatakeElement {
        let mut out = SatakeElement::zero(self.g.max(o.g));
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let m = std::array::from_fn(|i| a[i] + b[i]);
                out.add_term(m, x * y);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for SatakeElement {
            type Output = SatakeElement;
            fn $f(self, o: SatakeElement) -> SatakeElement {
                $tr::$f(&self, &o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for SatakeElement {
    type Output = SatakeElement;
    fn neg(self) -> SatakeElement {
        -&self
    }
}

impl fmt::Display for SatakeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if n > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mut parts = Vec::new();
            let a = c.abs();
            if !a.is_one() || m.iter().all(|&e| e == 0) {
                parts.push(rat_to_string(&a));
            }
            for (name, &e) in NAMES.iter().zip(m) {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
