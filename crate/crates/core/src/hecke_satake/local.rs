use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::{SatakeElement, SatakeError};
use crate::exact_arith::Rat;

fn check_g(g: u8) -> Result<(), SatakeError> {
    if g == 1 || g == 2 {
        Ok(())
    } else {
        Err(SatakeError::UnsupportedGenus(g))
    }
}

/// φ_j = Σ_{|I| = j} ∏_{i∈I} u_i ∏_{i∉I} v_i, the image of the j-th
/// Levi generator in the torus algebra.
pub fn phi(g: u8, j: usize) -> SatakeElement {
    let mut out = SatakeElement::zero(g);
    for mask in 0u32..(1 << g) {
        if mask.count_ones() as usize != j {
            continue;
        }
        let mut m = [0; 5];
        for i in 1..=g as usize {
            if mask & (1 << (i - 1)) != 0 {
                m[i] = 1;
            } else {
                m[2 + i] = 1;
            }
        }
        out = out + SatakeElement::monomial(g, m, Rat::one());
    }
    out
}

/// Number of symmetric h×h matrices over 𝔽_P of corank i, as a polynomial in P.
pub fn m_poly(h: usize, i: usize) -> Option<SatakeElement> {
    m_coeffs(h, i).map(|c| SatakeElement::p_poly(h.max(1) as u8, c))
}

fn m_coeffs(h: usize, i: usize) -> Option<&'static [i64]> {
    let c: &'static [i64] = match (h, i) {
        (0, 0) => &[1],
        (1, 0) => &[-1, 1],
        (1, 1) => &[1],
        (2, 0) => &[0, 0, -1, 1],
        (2, 1) => &[-1, 0, 1],
        (2, 2) => &[1],
        _ => return None,
    };
    Some(c)
}

fn rank_mod(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let n = a.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = crate::exact_arith::ntheory::pow_mod(a[rank][col], p - 2, p);
        for r in 0..n {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col] * inv % p;
                for c in 0..n {
                    a[r][c] = (a[r][c] + p * p - f * a[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Brute-force count of symmetric h×h matrices over 𝔽_p of corank i.
pub fn m_count(h: usize, i: usize, p: u64) -> u64 {
    assert!(h <= 3, "m_count supports h ≤ 3");
    if i > h {
        return 0;
    }
    let slots: Vec<(usize, usize)> = (0..h).flat_map(|r| (r..h).map(move |c| (r, c))).collect();
    let total = p.pow(slots.len() as u32);
    let mut count = 0;
    for code in 0..total {
        let mut a = vec![vec![0u64; h]; h];
        let mut x = code;
        for &(r, c) in &slots {
            a[r][c] = x % p;
            a[c][r] = x % p;
            x /= p;
        }
        if h - rank_mod(a, p) == i {
            count += 1;
        }
    }
    count
}

/// Image of the Levi double coset of p²-type matching φ_j·φ_j. For 0 < j < g
/// the square φ_j² also contains the coset of p·1 with multiplicity P+1,
/// whose image is φ₀φ₂/P, so it is removed.
pub fn levi_square(g: u8, j: usize) -> SatakeElement {
    let sq = phi(g, j).pow(2);
    if g == 2 && j == 1 {
        let c = SatakeElement::p_poly(2, &[1]) + SatakeElement::p_pow(2, -1);
        &sq - &(&c * &(&phi(2, 0) * &phi(2, 2)))
    } else {
        sq
    }
}

/// Image of T(p): φ₀ + ⋯ + φ_g.
pub fn satake_tp(g: u8) -> Result<SatakeElement, SatakeError> {
    check_g(g)?;
    Ok((0..=g as usize).fold(SatakeElement::zero(g), |acc, j| acc + phi(g, j)))
}

/// Image of T_i(p²) = Σ_{j+i ≤ k} m_{k−j}(i) P^{−(k−j+1 choose 2)} φ_jφ_k, for 0 ≤ i ≤ g.
pub fn satake_ti(g: u8, i: usize) -> Result<SatakeElement, SatakeError> {
    check_g(g)?;
    if i > g as usize {
        return Err(SatakeError::BadIndex { g, i });
    }
    let mut out = SatakeElement::zero(g);
    for j in 0..=g as usize {
        for k in (j + i)..=g as usize {
            let h = k - j;
            let m = SatakeElement::p_poly(g, m_coeffs(h, i).expect("h ≤ 2"));
            let c = &m * &SatakeElement::p_pow(g, -((h * (h + 1) / 2) as i32));
            let prod = if j == k { levi_square(g, j) } else { &phi(g, j) * &phi(g, k) };
            out = out + &c * &prod;
        }
    }
    Ok(out)
}

/// Image of T(p²) = T₀(p²) + ⋯ + T_g(p²).
pub fn satake_tpsq(g: u8) -> Result<SatakeElement, SatakeError> {
    check_g(g)?;
    (0..=g as usize).try_fold(SatakeElement::zero(g), |acc, i| Ok(acc + satake_ti(g, i)?))
}

/// Coefficients (constant first) of X⁴ − T X³ + (P T₁ + (P³+P) T₂) X² − P³ T T₂ X + P⁶ T₂².
pub fn hecke_quartic() -> [SatakeElement; 5] {
    let t = satake_tp(2).unwrap();
    let t1 = satake_ti(2, 1).unwrap();
    let t2 = satake_ti(2, 2).unwrap();
    let p = |e| SatakeElement::p_pow(2, e);
    [
        &p(6) * &t2.pow(2),
        -(&p(3) * &(&t * &t2)),
        &(&p(1) * &t1) + &(&(&p(3) + &p(1)) * &t2),
        -t,
        SatakeElement::constant(2, Rat::one()),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    SquareRelation,
    QuarticPhi0,
    QuarticRewrite,
    SeriesConsistency,
}

impl Identity {
    pub const ALL: [Identity; 4] =
        [Identity::SquareRelation, Identity::QuarticPhi0, Identity::QuarticRewrite, Identity::SeriesConsistency];

    pub fn name(self) -> &'static str {
        match self {
            Identity::SquareRelation => "square_relation",
            Identity::QuarticPhi0 => "quartic_phi0",
            Identity::QuarticRewrite => "quartic_rewrite",
            Identity::SeriesConsistency => "series_consistency",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = SatakeError;
    fn from_str(s: &str) -> Result<Self, SatakeError> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| SatakeError::UnknownIdentity(s.to_string()))
    }
}

fn square_relation(g: u8) -> bool {
    // T(p)² = Σ_i c_i T_i(p²) with c = 1, P+1, (P+1)(P²+1)
    let weights: [&[i64]; 3] = [&[1], &[1, 1], &[1, 1, 1, 1]];
    let t = satake_tp(g).unwrap();
    let rhs = (0..=g as usize).fold(SatakeElement::zero(g), |acc, i| {
        acc + &SatakeElement::p_poly(g, weights[i]) * &satake_ti(g, i).unwrap()
    });
    t.pow(2) == rhs
}

fn quartic_phi0() -> bool {
    // ∏_{I ⊆ {1,2}} (X − ∏_{i∈I} u_i ∏_{i∉I} v_i), coefficients constant first
    let roots: Vec<SatakeElement> = (0..=2).flat_map(|j| split_terms(&phi(2, j))).collect();
    let mut poly = vec![SatakeElement::constant(2, Rat::one())];
    for r in &roots {
        let mut next = vec![SatakeElement::zero(2); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] = &next[d + 1] + c;
            next[d] = &next[d] - &(c * r);
        }
        poly = next;
    }
    let phi0 = phi(2, 0);
    let at_phi0 = poly.iter().rev().fold(SatakeElement::zero(2), |acc, c| &(&acc * &phi0) + c);
    at_phi0.is_zero() && poly.iter().zip(hecke_quartic()).all(|(a, b)| *a == b)
}

fn split_terms(x: &SatakeElement) -> Vec<SatakeElement> {
    x.terms().map(|(m, c)| SatakeElement::monomial(x.g(), *m, c.clone())).collect()
}

fn quartic_rewrite() -> bool {
    // the X² coefficient T² − T(p²) − P²T₂ of the second form
    let t = satake_tp(2).unwrap();
    let t2 = satake_ti(2, 2).unwrap();
    let alt = &(&t.pow(2) - &satake_tpsq(2).unwrap()) - &(&SatakeElement::p_pow(2, 2) * &t2);
    let q = hecke_quartic();
    alt == q[2]
}

fn series_consistency() -> bool {
    // 1/(z⁴F(1/z)) to order z², times 1 − P²T₂z²
    let q = hecke_quartic();
    let d: Vec<SatakeElement> = (0..3).map(|n| q[4 - n].clone()).collect();
    let mut b = vec![SatakeElement::constant(2, Rat::one())];
    for n in 1..3 {
        let s = (1..=n).fold(SatakeElement::zero(2), |acc, i| &acc + &(&d[i] * &b[n - i]));
        b.push(-s);
    }
    let t2 = satake_ti(2, 2).unwrap();
    let c2 = &b[2] - &(&SatakeElement::p_pow(2, 2) * &t2);
    b[0] == SatakeElement::constant(2, Rat::one()) && b[1] == satake_tp(2).unwrap() && c2 == satake_tpsq(2).unwrap()
}

/// Checks one of the local Hecke algebra identities on Satake images.
pub fn verify_identity(id: Identity) -> bool {
    match id {
        Identity::SquareRelation => square_relation(1) && square_relation(2),
        Identity::QuarticPhi0 => quartic_phi0(),
        Identity::QuarticRewrite => quartic_rewrite(),
        Identity::SeriesConsistency => series_consistency(),
    }
}
