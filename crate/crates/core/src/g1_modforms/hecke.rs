use super::qexp::{basis_s, dim_s, echelonize, QExpansion};
use super::G1Error;
use crate::exact_arith::ntheory::divisors;
use crate::exact_arith::rational::Rat;
use crate::exact_arith::RatMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// T(m) on a weight-k expansion: b(n) = Σ_{d | (m,n)} d^{k−1} a(mn/d²).
pub fn hecke_apply(f: &QExpansion, k: i64, m: u64) -> QExpansion {
    let n_out = (f.prec() - 1) / m as usize + 1;
    let mut coeffs = Vec::with_capacity(n_out);
    for n in 0..n_out as u64 {
        let g = if n == 0 { m } else { m.gcd(&n) };
        let mut s = Rat::zero();
        for d in divisors(g) {
            let idx = (m * n / (d * d)) as usize;
            let w = num_traits::pow(BigInt::from(d), (k - 1) as usize);
            s += &f.coeffs[idx] * Rat::from_integer(w);
        }
        coeffs.push(s);
    }
    QExpansion { weight: f.weight, coeffs }
}

/// Matrix of T(m) on the echelonized basis of S_k; column j is the image of b_j.
pub fn hecke_t(k: i64, m: u64, prec: usize) -> Result<RatMatrix, G1Error> {
    let d = dim_s(k);
    let need = m as usize * (d + 1);
    if prec < need {
        return Err(G1Error::InsufficientPrecision { prec, need });
    }
    let basis = basis_s(k, prec);
    let pivots: Vec<usize> = echelonize(basis.iter().map(|b| b.coeffs.clone()).collect())
        .into_iter()
        .map(|(c, _)| c)
        .collect();
    let mut mat = RatMatrix::zero(d);
    for (j, b) in basis.iter().enumerate() {
        let img = hecke_apply(b, k, m);
        for (i, &piv) in pivots.iter().enumerate() {
            mat.rows[i][j] = img.coeffs[piv].clone();
        }
    }
    Ok(mat)
}

fn cached_tp(k: i64, p: u64) -> RatMatrix {
    static CACHE: OnceLock<Mutex<HashMap<(i64, u64), RatMatrix>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&(k, p)) {
        return m.clone();
    }
    let prec = p as usize * (dim_s(k) + 1) + 1;
    let m = hecke_t(k, p, prec).expect("precision chosen to suffice");
    cache.lock().unwrap().insert((k, p), m.clone());
    m
}

/// Trace of Frob_{p^i} on S[k]: Σ_f (β_f^i + β̄_f^i).
pub fn motive_trace(k: i64, p: u64, i: u32) -> Rat {
    let d = dim_s(k);
    if d == 0 {
        return Rat::zero();
    }
    let t = cached_tp(k, p);
    let c = Rat::from_integer(num_traits::pow(BigInt::from(p), (k - 1) as usize));
    let mut prev = RatMatrix::identity(d).scale(&Rat::from_integer(2.into()));
    let mut cur = t.clone();
    if i == 0 {
        return prev.trace();
    }
    for _ in 1..i {
        let next = t.mul(&cur).add(&prev.scale(&-&c));
        prev = cur;
        cur = next;
    }
    cur.trace()
}

/// Trace of T(p) on S_k.
pub fn hecke_trace(k: i64, p: u64) -> Rat {
    if dim_s(k) == 0 {
        return Rat::zero();
    }
    cached_tp(k, p).trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::rat;
    use crate::g1_modforms::qexp::{delta, eisenstein_e};

    #[test]
    fn small_matrices() {
        assert_eq!(hecke_t(12, 2, 10).unwrap().rows, vec![vec![rat(-24, 1)]]);
        assert_eq!(hecke_t(22, 2, 10).unwrap().rows, vec![vec![rat(-288, 1)]]);
        let t24 = hecke_t(24, 2, 10).unwrap();
        let cp = t24.charpoly();
        assert_eq!(cp[1], rat(-1080, 1));
        let disc = &cp[1] * &cp[1] - rat(4, 1) * &cp[0];
        assert_eq!(disc, rat(144169 * 576, 1));
        assert!(matches!(hecke_t(24, 3, 8), Err(G1Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn motive_traces() {
        assert_eq!(motive_trace(12, 2, 1), rat(-24, 1));
        assert_eq!(motive_trace(12, 2, 2), rat(-3520, 1));
        assert_eq!(motive_trace(10, 5, 3), rat(0, 1));
        // u₂ = T² − 2p^{k−1} summed over the space
        for (k, p) in [(24, 3u64), (28, 2), (32, 5), (36, 7)] {
            let t = cached_tp(k, p);
            let d = dim_s(k) as i64;
            let pk = Rat::from_integer(num_traits::pow(BigInt::from(p), (k - 1) as usize));
            assert_eq!(motive_trace(k, p, 2), t.mul(&t).trace() - rat(2 * d, 1) * pk);
        }
    }

    #[test]
    fn delta_e4_e6_is_eigen() {
        let f = delta(40).mul(&eisenstein_e(4, 40).unwrap()).mul(&eisenstein_e(6, 40).unwrap());
        let tf = hecke_apply(&f, 22, 2);
        let g = f.truncate(tf.prec()).scale(&rat(-288, 1));
        assert_eq!(tf.coeffs, g.coeffs);
    }
}
