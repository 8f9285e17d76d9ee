use super::rational::{Int, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::{Mutex, OnceLock};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime(m) {
        m += 1;
    }
    m
}

/// Prime-power decomposition q = p^e, if any.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let (p, e) = factor_u64(q).into_iter().next()?;
    if num_traits::pow(p, e as usize) == q {
        Some((p, e))
    } else {
        None
    }
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out = std::collections::BTreeMap::new();
    let mut stack = vec![n];
    let small = |m: &mut u64, out: &mut std::collections::BTreeMap<u64, u32>| {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            while (*m).is_multiple_of(p) {
                *m /= p;
                *out.entry(p).or_insert(0) += 1;
            }
        }
    };
    while let Some(mut m) = stack.pop() {
        small(&mut m, &mut out);
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.into_iter().collect()
}

/// Trial division by primes below `bound`; returns the factored part and the cofactor.
pub fn factor_trial(n: &Int, bound: u64) -> (Vec<(u64, u32)>, Int) {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return (out, m);
    }
    for p in primes_upto(bound) {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    if let Some(small) = m.to_u64() {
        if small > 1 {
            for (p, e) in factor_u64(small) {
                match out.iter_mut().find(|(q, _)| *q == p) {
                    Some(entry) => entry.1 += e,
                    None => out.push((p, e)),
                }
            }
            out.sort();
            m = Int::one();
        }
    }
    (out, m)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn moebius(n: u64) -> i32 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// σ_k(n) = Σ_{d | n} d^k.
pub fn sigma_k(k: u32, n: u64) -> Int {
    divisors(n)
        .into_iter()
        .map(|d| num_traits::pow(BigInt::from(d), k as usize))
        .sum()
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factor_u64(n).iter().all(|&(_, e)| e == 1)
}

/// Squarefree kernel s of a positive integer n = s·f².
pub fn squarefree_part(n: &Int) -> Int {
    assert!(n.is_positive());
    let (fac, cof) = factor_trial(n, 1_000_000);
    let mut s = Int::one();
    for (p, e) in fac {
        if e % 2 == 1 {
            s *= p;
        }
    }
    let r = cof.sqrt();
    if &r * &r != cof {
        s *= cof;
    }
    s
}

/// Fundamental discriminant test; 1 is accepted as the trivial discriminant.
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Fundamental discriminant D and conductor f with N = D·f² (N ≡ 0, 1 mod 4, N ≠ 0).
pub fn fundamental_decomposition(n: i64) -> Option<(i64, u64)> {
    if n == 0 || !matches!(n.rem_euclid(4), 0 | 1) {
        return None;
    }
    let mut f = 1u64;
    for (p, e) in factor_u64(n.unsigned_abs()) {
        f *= num_traits::pow(p, (e / 2) as usize);
    }
    loop {
        let f2 = (f * f) as i64;
        if n % f2 == 0 && is_fundamental(n / f2) {
            return Some((n / f2, f));
        }
        // Drop one prime from f until the quotient is fundamental.
        let p = factor_u64(f)[0].0;
        f /= p;
        if f == 0 {
            return None;
        }
    }
}

fn jacobi(mut a: i64, mut n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    a = a.rem_euclid(n);
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (D/n).
pub fn kronecker(d: i64, n: i64) -> i32 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut res = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            res = -1;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            res = -res;
        }
        n >>= v;
    }
    res * jacobi(d, n)
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut r = Int::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rat::one()]))
}

/// B_n with B_1 = −1/2, so that ζ(1−k) = −B_k/k for k ≥ 2.
pub fn bernoulli(n: u64) -> Rat {
    let mut cache = bernoulli_cache().lock().unwrap();
    while cache.len() as u64 <= n {
        let m = cache.len() as u64;
        let mut s = Rat::zero();
        for (k, b) in cache.iter().enumerate() {
            s += Rat::from_integer(binomial(m + 1, k as u64)) * b;
        }
        let b = -s / Rat::from_integer(BigInt::from(m + 1));
        cache.push(b);
    }
    cache[n as usize].clone()
}

/// Bernoulli polynomial B_n(x).
pub fn bernoulli_poly(n: u64, x: &Rat) -> Rat {
    let mut s = Rat::zero();
    let mut xp = Rat::one();
    for i in 0..=n {
        // term for B_{n-i} x^i
        s += Rat::from_integer(binomial(n, i)) * bernoulli(n - i) * &xp;
        xp *= x;
    }
    s
}

/// ζ(1 − k) = −B_k / k for k ≥ 2.
pub fn zeta_one_minus(k: u64) -> Rat {
    -bernoulli(k) / Rat::from_integer(BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::rat;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        // Independent oracle: Σ_{k<n+1} C(n+1,k) B_k = 0.
        for n in 1..30u64 {
            let s: Rat = (0..=n)
                .map(|k| Rat::from_integer(binomial(n + 1, k)) * bernoulli(k))
                .sum();
            assert!(s.is_zero(), "recurrence fails at {n}");
        }
        for n in (3..60).step_by(2) {
            assert!(bernoulli(n).is_zero());
        }
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(pow_mod(2, 1, 3), 2); // 2^((3-1)/2) ≡ −1 mod 3
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 1), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(-3, -1), -1);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in primes_upto(200).into_iter().skip(1) {
            for d in [-3i64, -4, 5, -7, 8, 12, -15, 21] {
                let e = pow_mod(d.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let expect = if d.rem_euclid(p as i64) == 0 {
                    0
                } else if e == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(d, p as i64), expect, "({d}/{p})");
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert!(is_fundamental(-3) && is_fundamental(-4) && is_fundamental(5));
        assert!(is_fundamental(8) && is_fundamental(-8) && is_fundamental(12));
        assert!(!is_fundamental(-12) && !is_fundamental(9) && !is_fundamental(-16));
        assert_eq!(fundamental_decomposition(-12), Some((-3, 2)));
        assert_eq!(fundamental_decomposition(-16), Some((-4, 2)));
        assert_eq!(fundamental_decomposition(-27), Some((-3, 3)));
        assert_eq!(fundamental_decomposition(-20), Some((-20, 1)));
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_u64(3779 * 4057 * 8), vec![(2, 3), (3779, 1), (4057, 1)]);
        assert_eq!(factor_u64(1_000_000_007 * 998_244_353), vec![(998_244_353, 1), (1_000_000_007, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(sigma_k(11, 2), BigInt::from(2049));
        assert_eq!(squarefree_part(&BigInt::from(144169u64 * 576)), BigInt::from(144169));
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
    }
}

/// Generalized Bernoulli number B_{r,χ_D}; L(1−r, χ_D) = −B_{r,χ_D}/r.
pub fn gen_bernoulli(r: u64, d: i64) -> Result<Rat, super::ArithError> {
    if r == 0 || !is_fundamental(d) {
        return Err(super::ArithError::NotFundamental(d));
    }
    if d == 1 {
        return Ok(bernoulli(r));
    }
    let f = d.unsigned_abs();
    let mut s = Rat::zero();
    for a in 1..=f {
        let chi = kronecker(d, a as i64);
        if chi != 0 {
            let x = Rat::new(BigInt::from(a), BigInt::from(f));
            let b = bernoulli_poly(r, &x);
            if chi > 0 {
                s += b;
            } else {
                s -= b;
            }
        }
    }
    Ok(s * Rat::from_integer(num_traits::pow(BigInt::from(f), (r - 1) as usize)))
}

#[cfg(test)]
mod gen_tests {
    use super::*;
    use crate::exact_arith::rational::rat;

    #[test]
    fn generalized_bernoulli() {
        // Oracle: B_3(x) = x³ − 3x²/2 + x/2 evaluated by hand at a/|D|.
        let b3 = |x: Rat| &x * &x * &x - rat(3, 2) * &x * &x + &x / Rat::from_integer(2.into());
        let direct = |d: i64| -> Rat {
            let f = d.unsigned_abs();
            let mut s = Rat::zero();
            for a in 1..=f {
                let c = kronecker(d, a as i64);
                s += Rat::from_integer(c.into()) * b3(rat(a as i64, f as i64));
            }
            s * Rat::from_integer(((f * f) as i64).into())
        };
        assert_eq!(direct(-3), rat(2, 3));
        assert_eq!(gen_bernoulli(3, -3).unwrap(), rat(2, 3));
        assert_eq!(gen_bernoulli(3, -4).unwrap(), rat(3, 2));
        assert_eq!(direct(-4), rat(3, 2));
        assert_eq!(gen_bernoulli(1, 1).unwrap(), rat(-1, 2));
        assert!(gen_bernoulli(3, -12).is_err());
        // Class number: B_{1,χ} = −h/(w/2)... h(−23) = 3 gives B_1 = −3.
        assert_eq!(gen_bernoulli(1, -23).unwrap(), rat(-3, 1));
        // Even characters vanish at odd index.
        assert!(gen_bernoulli(3, 5).unwrap().is_zero());
    }
}
