//! Frobenius traces on the compactly supported Euler characteristic of the
//! local systems 𝕍_{l,m} over 𝒜₂, assembled from curve censuses, and the
//! Eisenstein and endoscopic corrections that turn them into Hecke traces on
//! S_{j,k}(Γ₂).

use num_traits::{One, Zero};
use serde::Serialize;

use crate::census::{CensusError, CensusStore};
use crate::exact_arith::{int, rational::serde_rat, ArithError, Int, Rat, Scalar};
use crate::g1_modforms::{dim_s, motive_trace};

#[derive(Debug, thiserror::Error)]
pub enum CohomError {
    #[error("(l, m) = ({l}, {m}) is not regular")]
    NotRegular { l: i64, m: i64 },
    #[error("invalid local system ({l}, {m})")]
    BadIndex { l: i64, m: i64 },
    #[error("dim S_{{{j},{k}}} is {dim:?}, not 1")]
    DimNotOne { j: i64, k: i64, dim: Option<u32> },
    #[error("census unavailable: {0}")]
    MissingCensus(#[from] CensusError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSystemIndex {
    pub l: i64,
    pub m: i64,
}

impl LocalSystemIndex {
    pub fn new(l: i64, m: i64) -> Result<Self, CohomError> {
        if l < m || m < 0 {
            return Err(CohomError::BadIndex { l, m });
        }
        Ok(Self { l, m })
    }

    /// 𝕍_{j+k−3, k−3}, whose interior cohomology carries S_{j,k}.
    pub fn from_jk(j: i64, k: i64) -> Result<Self, CohomError> {
        Self::new(j + k - 3, k - 3)
    }

    pub fn is_regular(&self) -> bool {
        self.l > self.m && self.m > 0
    }

    pub fn weight(&self) -> i64 {
        self.l + self.m
    }

    pub fn jk(&self) -> (i64, i64) {
        (self.l - self.m, self.m + 3)
    }
}

/// D₁ = 1, D₂ = a, Dₙ = a·Dₙ₋₁ − q·Dₙ₋₂, so Dₙ = (αⁿ − ᾱⁿ)/(α − ᾱ) when α + ᾱ = a, αᾱ = q.
pub fn cheb_d(n: usize, a: &Rat, q: &Rat) -> Rat {
    assert!(n >= 1);
    let (mut prev, mut cur) = (Rat::zero(), Rat::one());
    for _ in 1..n {
        let next = a * &cur - q * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// [`cheb_d`] with a possibly quadratic irrational argument.
pub fn cheb_d_scalar(n: usize, a: &Scalar, q: &Rat) -> Result<Scalar, ArithError> {
    assert!(n >= 1);
    let (mut prev, mut cur) = (Scalar::from_i64(0), Scalar::from_i64(1));
    for _ in 1..n {
        let next = a.try_mul(&cur)?.try_sub(&prev.scale(q))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Polynomial Dₙ(x) ∈ ℤ[x] for a fixed numeric q, constant term first.
fn cheb_poly(n: usize, q: &Int) -> Vec<Int> {
    let mut prev: Vec<Int> = vec![];
    let mut cur: Vec<Int> = vec![int(1)];
    for _ in 1..n {
        let mut next = vec![Int::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= q * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// The symplectic Weyl character of highest weight (l, m) at a fixed q,
/// precomputed as a symmetric polynomial B(x, y) with
/// (x − y)·B = D_{l+2}(x)D_{m+1}(y) − D_{m+1}(x)D_{l+2}(y).
#[derive(Clone, Debug)]
pub struct SpChar {
    /// b[i][j] is the coefficient of xⁱyʲ.
    b: Vec<Vec<Int>>,
}

impl SpChar {
    pub fn new(l: i64, m: i64, q: u64) -> Self {
        assert!(l >= m && m >= 0);
        let q = Int::from(q);
        let da = cheb_poly((l + 2) as usize, &q);
        let db = cheb_poly((m + 1) as usize, &q);
        let n = da.len() - 1;
        // A as a polynomial in x with coefficients in ℤ[y]
        let coeff = |p: &Vec<Int>, i: usize| p.get(i).cloned().unwrap_or_else(Int::zero);
        let a: Vec<Vec<Int>> = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| coeff(&da, i) * coeff(&db, j) - coeff(&db, i) * coeff(&da, j))
                    .collect()
            })
            .collect();
        // synthetic division by (x − y)
        let mut b = vec![vec![Int::zero(); n + 1]; n.max(1)];
        if n >= 1 {
            b[n - 1] = a[n].clone();
            for i in (1..n).rev() {
                let mut row = a[i].clone();
                for j in 0..n {
                    row[j + 1] += &b[i][j];
                }
                b[i - 1] = row;
            }
        }
        Self { b }
    }

    /// Evaluates at the pair of real Weil numbers with sum t₁ and product e.
    pub fn eval(&self, t1: &Rat, e: &Rat) -> Rat {
        let n = self.b.len();
        let mut pw = vec![Rat::from_integer(int(2)), t1.clone()];
        while pw.len() < n + 1 {
            let k = pw.len();
            let next = t1 * &pw[k - 1] - e * &pw[k - 2];
            pw.push(next);
        }
        let mut total = Rat::zero();
        let mut epow = Rat::one();
        for i in 0..n {
            let mut s = Rat::from_integer(self.b[i][i].clone());
            for j in i + 1..self.b[i].len() {
                if !self.b[i][j].is_zero() {
                    s += Rat::from_integer(self.b[i][j].clone()) * &pw[j - i];
                }
            }
            total += s * &epow;
            epow *= e;
        }
        total
    }

    /// Integer evaluation for census keys.
    pub fn eval_int(&self, t1: i64, e: i64) -> Int {
        let n = self.b.len();
        let (t1, e) = (Int::from(t1), Int::from(e));
        let mut pw = vec![int(2), t1.clone()];
        while pw.len() < n + 1 {
            let k = pw.len();
            let next = &t1 * &pw[k - 1] - &e * &pw[k - 2];
            pw.push(next);
        }
        let mut total = Int::zero();
        let mut epow = Int::one();
        for i in 0..n {
            let mut s = self.b[i][i].clone();
            for j in i + 1..self.b[i].len() {
                if !self.b[i][j].is_zero() {
                    s += &self.b[i][j] * &pw[j - i];
                }
            }
            total += s * &epow;
            epow *= &e;
        }
        total
    }
}

/// Symplectic Weyl character of 𝕍_{l,m} at Frobenius data (t₁, e).
pub fn sp_char(l: i64, m: i64, t1: &Rat, e: &Rat, q: u64) -> Rat {
    SpChar::new(l, m, q).eval(t1, e)
}

/// Contributions of Jacobians and of products of elliptic curves to
/// Tr(Frob_q | e_c(𝒜₂, 𝕍_{l,m})).
pub fn ec_full_a2(l: i64, m: i64, q: u64, store: &CensusStore) -> Result<(Rat, Rat), CohomError> {
    LocalSystemIndex::new(l, m)?;
    let ch = SpChar::new(l, m, q);
    let g2 = store.g2(q)?;
    let mut jac = Rat::zero();
    for (&(t1, e), mass) in &g2.masses {
        jac += mass * Rat::from_integer(ch.eval_int(t1, e));
    }
    let ell = store.ell(q)?;
    let ell2 = store.ell(q * q)?;
    let mut untwisted = Rat::zero();
    for (&t, n) in &ell.masses {
        for (&u, n2) in &ell.masses {
            untwisted += n * n2 * Rat::from_integer(ch.eval_int(t + u, t * u));
        }
    }
    let mut twisted = Rat::zero();
    for (&t, n) in &ell2.masses {
        twisted += n * Rat::from_integer(ch.eval_int(0, -(t + 2 * q as i64)));
    }
    let prod = (untwisted + twisted) / Rat::from_integer(int(2));
    Ok((jac, prod))
}

fn pow_q(p: u64, i: u32, e: i64) -> Rat {
    Rat::from_integer(num_traits::pow(Int::from(p), (i as i64 * e) as usize))
}

fn s_dim(n: i64) -> Rat {
    Rat::from_integer(Int::from(dim_s(n)))
}

/// Tr(Frob_{p^i} | e_Eis(𝒜₂, 𝕍_{l,m})) for regular (l, m) of even weight.
pub fn eis_correction(l: i64, m: i64, p: u64, i: u32) -> Result<Rat, CohomError> {
    let idx = LocalSystemIndex::new(l, m)?;
    if !idx.is_regular() {
        return Err(CohomError::NotRegular { l, m });
    }
    let mut r = -motive_trace(l + 3, p, i) - s_dim(l + m + 4) * pow_q(p, i, m + 1) + motive_trace(m + 2, p, i)
        + s_dim(l - m + 2);
    if l % 2 == 0 {
        r += Rat::one();
    }
    Ok(r)
}

/// −s_{l+m+4}·Tr(Frob_{p^i} | S[l−m+2])·q^{m+1}; rests on the endoscopy conjecture.
pub fn endo_correction(l: i64, m: i64, p: u64, i: u32) -> Result<Rat, CohomError> {
    let idx = LocalSystemIndex::new(l, m)?;
    if !idx.is_regular() {
        return Err(CohomError::NotRegular { l, m });
    }
    Ok(-s_dim(l + m + 4) * motive_trace(l - m + 2, p, i) * pow_q(p, i, m + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub index: LocalSystemIndex,
    pub j: i64,
    pub k: i64,
    pub p: u64,
    /// Frobenius power: the report concerns q = p^i.
    pub i: u32,
    pub q: u64,
    #[serde(with = "serde_rat")]
    pub full_sum: Rat,
    #[serde(with = "serde_rat")]
    pub jac_part: Rat,
    #[serde(with = "serde_rat")]
    pub prod_part: Rat,
    #[serde(with = "serde_rat")]
    pub eis: Rat,
    #[serde(with = "serde_rat")]
    pub endo: Rat,
    #[serde(with = "serde_rat")]
    pub result: Rat,
    /// Always true: the endoscopic term is conjectural.
    pub conditional: bool,
    /// dim S_{j,k} from the bundled table, when listed.
    pub dim: Option<u32>,
}

impl TraceReport {
    /// The result is a single eigenvalue when the space is one-dimensional.
    pub fn is_eigenvalue(&self) -> bool {
        self.dim == Some(1)
    }
}

/// Tr(Frob_{p^i} | S[j,k]) from the census pipeline; for i = 1 this is the
/// trace of T(p) on S_{j,k}(Γ₂).
pub fn trace_frob(j: i64, k: i64, p: u64, i: u32, store: &CensusStore) -> Result<TraceReport, CohomError> {
    let idx = LocalSystemIndex::from_jk(j, k)?;
    if j <= 0 || j % 2 != 0 || !idx.is_regular() {
        return Err(CohomError::NotRegular { l: idx.l, m: idx.m });
    }
    let (l, m) = (idx.l, idx.m);
    let q = p.pow(i);
    let (jac, prod) = ec_full_a2(l, m, q, store)?;
    let full = &jac + &prod;
    let eis = eis_correction(l, m, p, i)?;
    let endo = endo_correction(l, m, p, i)?;
    let result = -(&full - &eis) + &endo;
    Ok(TraceReport {
        index: idx,
        j,
        k,
        p,
        i,
        q,
        full_sum: full,
        jac_part: jac,
        prod_part: prod,
        eis,
        endo,
        result,
        conditional: true,
        dim: crate::harder::data::known_dim(j, k),
    })
}

pub fn trace_t_sjk(j: i64, k: i64, p: u64, store: &CensusStore) -> Result<TraceReport, CohomError> {
    trace_frob(j, k, p, 1, store)
}

/// λ(p²) on a one-dimensional S_{j,k} from the traces over 𝔽_p and 𝔽_{p²}.
pub fn lambda_psq(j: i64, k: i64, p: u64, store: &CensusStore) -> Result<Rat, CohomError> {
    let dim = crate::harder::data::known_dim(j, k);
    if dim != Some(1) {
        return Err(CohomError::DimNotOne { j, k, dim });
    }
    let lp = trace_frob(j, k, p, 1, store)?.result;
    let t2 = trace_frob(j, k, p, 2, store)?.result;
    let w = j + 2 * k - 3;
    Ok((&lp * &lp + t2) / Rat::from_integer(int(2)) - pow_q(p, 1, w - 1))
}
