use crate::exact_arith::ntheory::{bernoulli, sigma_k};
use crate::exact_arith::rational::{serde_rat_vec, Int, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::G1Error;

/// Truncated q-expansion a(0) + a(1)q + … + a(N−1)q^{N−1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QExpansion {
    pub weight: i64,
    #[serde(with = "serde_rat_vec")]
    pub coeffs: Vec<Rat>,
}

fn conv_int(a: &[Int], b: &[Int], n: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

impl QExpansion {
    pub fn new(weight: i64, coeffs: Vec<Rat>) -> Self {
        QExpansion { weight, coeffs }
    }

    pub fn constant(c: Rat, prec: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); prec];
        if prec > 0 {
            coeffs[0] = c;
        }
        QExpansion { weight: 0, coeffs }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn is_cusp(&self) -> bool {
        self.coeffs.first().is_none_or(|c| c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        QExpansion { weight: self.weight, coeffs: self.coeffs[..prec.min(self.prec())].to_vec() }
    }

    /// Product; the result's precision is the smaller operand precision.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.prec().min(o.prec());
        let integral = |v: &[Rat]| v.iter().all(|c| c.is_integer());
        let coeffs = if integral(&self.coeffs) && integral(&o.coeffs) {
            let a: Vec<Int> = self.coeffs.iter().map(|c| c.to_integer()).collect();
            let b: Vec<Int> = o.coeffs.iter().map(|c| c.to_integer()).collect();
            conv_int(&a, &b, n).into_iter().map(Rat::from_integer).collect()
        } else {
            let mut out = vec![Rat::zero(); n];
            for i in 0..n {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                for j in 0..n - i {
                    out[i + j] += &self.coeffs[i] * &o.coeffs[j];
                }
            }
            out
        };
        QExpansion { weight: self.weight + o.weight, coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QExpansion::constant(Rat::one(), self.prec());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn zip(&self, o: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        let n = self.prec().min(o.prec());
        QExpansion {
            weight: self.weight,
            coeffs: (0..n).map(|i| f(&self.coeffs[i], &o.coeffs[i])).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QExpansion { weight: self.weight, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }
}

/// e_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ.
pub fn eisenstein_e(k: i64, prec: usize) -> Result<QExpansion, G1Error> {
    if k < 4 || k % 2 != 0 {
        return Err(G1Error::BadWeight(k));
    }
    let c = -Rat::from_integer(BigInt::from(2 * k)) / bernoulli(k as u64);
    let mut coeffs = Vec::with_capacity(prec);
    for n in 0..prec {
        coeffs.push(if n == 0 {
            Rat::one()
        } else {
            &c * Rat::from_integer(sigma_k((k - 1) as u32, n as u64))
        });
    }
    Ok(QExpansion { weight: k, coeffs })
}

/// Δ = (e₄³ − e₆²)/1728.
pub fn delta(prec: usize) -> QExpansion {
    let e4 = eisenstein_e(4, prec).unwrap();
    let e6 = eisenstein_e(6, prec).unwrap();
    let mut d = e4.pow(3).sub(&e6.pow(2)).scale(&Rat::new(1.into(), 1728.into()));
    d.weight = 12;
    d
}

/// dim S_k(SL₂(ℤ)); zero for odd or negative k.
pub fn dim_s(k: i64) -> usize {
    if k < 12 || k % 2 != 0 {
        return 0;
    }
    let base = (k / 12) as usize;
    if k % 12 == 2 {
        base - 1
    } else {
        base
    }
}

/// Exponents (c, a, b) with 12c + 4a + 6b = k and c ≥ 1, in lexicographic order.
pub fn cusp_monomials(k: i64) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    if k < 12 || k % 2 != 0 {
        return out;
    }
    for c in 1..=(k / 12) {
        let rest = k - 12 * c;
        for a in 0..=(rest / 4) {
            let r2 = rest - 4 * a;
            if r2 % 6 == 0 {
                out.push((c as u32, a as u32, (r2 / 6) as u32));
            }
        }
    }
    out
}

/// Reduced row echelon form with pivot entries 1; rows sorted by pivot.
pub fn echelonize(mut rows: Vec<Vec<Rat>>) -> Vec<(usize, Vec<Rat>)> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut out: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        out.push((col, Vec::new()));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    for (i, o) in out.iter_mut().enumerate() {
        o.1 = rows[i].clone();
    }
    out
}

/// Echelonized basis of S_k built from Δ^c e₄^a e₆^b.
pub fn basis_s(k: i64, prec: usize) -> Vec<QExpansion> {
    let mons = cusp_monomials(k);
    if mons.is_empty() {
        return Vec::new();
    }
    let work = prec.max(mons.len() + 2);
    let e4 = eisenstein_e(4, work).unwrap();
    let e6 = eisenstein_e(6, work).unwrap();
    let d = delta(work);
    let rows: Vec<Vec<Rat>> = mons
        .iter()
        .map(|&(c, a, b)| d.pow(c).mul(&e4.pow(a)).mul(&e6.pow(b)).coeffs)
        .collect();
    echelonize(rows)
        .into_iter()
        .map(|(_, coeffs)| QExpansion { weight: k, coeffs }.truncate(prec))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::rat;

    fn ints(q: &QExpansion) -> Vec<i64> {
        q.coeffs.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(ints(&eisenstein_e(4, 3).unwrap()), vec![1, 240, 2160]);
        assert_eq!(ints(&eisenstein_e(6, 2).unwrap()), vec![1, -504]);
        assert_eq!(ints(&eisenstein_e(10, 1).unwrap()), vec![1]);
        assert!(eisenstein_e(5, 3).is_err());
        assert!(eisenstein_e(2, 3).is_err());
        // e₄² = e₈ is an independent identity on the formula
        let e4 = eisenstein_e(4, 30).unwrap();
        assert_eq!(e4.mul(&e4).coeffs, eisenstein_e(8, 30).unwrap().coeffs);
    }

    #[test]
    fn delta_coefficients() {
        assert_eq!(ints(&delta(3)), vec![0, 1, -24]);
        let d = ints(&delta(12));
        assert_eq!(&d[..6], &[0, 1, -24, 252, -1472, 4830]);
        // τ multiplicativity: τ(6) = τ(2)τ(3), τ(4) = τ(2)² − 2¹¹
        assert_eq!(d[6], d[2] * d[3]);
        assert_eq!(d[4], d[2] * d[2] - 2048);
    }

    #[test]
    fn basis_sizes() {
        for k in (0..=60).step_by(2) {
            assert_eq!(basis_s(k, dim_s(k) + 3).len(), dim_s(k), "k={k}");
        }
        assert_eq!(basis_s(12, 5)[0].coeffs, delta(5).coeffs);
        assert!(basis_s(10, 5).is_empty());
        let b24 = basis_s(24, 5);
        assert_eq!(b24.len(), 2);
        assert_eq!(b24[0].coeffs[1], rat(1, 1));
        assert_eq!(b24[0].coeffs[2], rat(0, 1));
        assert_eq!(b24[1].coeffs[2], rat(1, 1));
        assert!(b24.iter().all(|f| f.is_cusp()));
    }

    #[test]
    fn product_precision_is_minimum() {
        let a = eisenstein_e(4, 5).unwrap();
        let b = eisenstein_e(6, 9).unwrap();
        assert_eq!(a.mul(&b).prec(), 5);
        assert_eq!(a.mul(&b).weight, 10);
    }
}
