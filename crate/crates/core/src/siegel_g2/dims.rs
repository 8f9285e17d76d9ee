#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Coefficients of t^0..t^N in 1/((1−t⁴)(1−t⁶)(1−t¹⁰)(1−t¹²)), times t³⁵ for odd weights.
pub fn hilbert_series(parity: Parity, n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    let start = match parity {
        Parity::Even => 0,
        Parity::Odd => 35,
    };
    if start <= n {
        c[start] = 1;
    }
    for g in [4usize, 6, 10, 12] {
        for i in g..=n {
            c[i] += c[i - g];
        }
    }
    c
}

/// dim M_k(Γ₂).
pub fn dims_g2(k: usize) -> u64 {
    let parity = if k.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    hilbert_series(parity, k)[k]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_weights() {
        assert_eq!(dims_g2(4), 1);
        assert_eq!(dims_g2(10), 2);
        assert_eq!(dims_g2(12), 3);
        assert_eq!(dims_g2(35), 1);
        assert!((1..35).step_by(2).all(|k| dims_g2(k) == 0));
        assert_eq!(hilbert_series(Parity::Odd, 34), vec![0; 35]);
    }
}
