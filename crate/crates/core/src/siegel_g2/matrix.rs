use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// The half-integral matrix (n, r/2; r/2, m), i.e. the form nx² + rxy + my².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfIntegralMatrix {
    pub n: i64,
    pub r: i64,
    pub m: i64,
}

impl HalfIntegralMatrix {
    pub const ZERO: HalfIntegralMatrix = HalfIntegralMatrix { n: 0, r: 0, m: 0 };

    pub fn new(n: i64, r: i64, m: i64) -> Self {
        HalfIntegralMatrix { n, r, m }
    }

    /// 4nm − r², four times the determinant.
    pub fn disc(&self) -> i64 {
        4 * self.n * self.m - self.r * self.r
    }

    pub fn content(&self) -> i64 {
        self.n.gcd(&self.r).gcd(&self.m)
    }

    pub fn is_psd(&self) -> bool {
        self.n >= 0 && self.m >= 0 && self.disc() >= 0
    }

    pub fn is_definite(&self) -> bool {
        self.n > 0 && self.disc() > 0
    }

    pub fn is_singular(&self) -> bool {
        self.disc() == 0
    }

    pub fn is_reduced(&self) -> bool {
        0 <= self.r && self.r <= self.n && self.n <= self.m
    }

    /// uᵗNu for u = (a b; c d), i.e. the form Q(ax + by, cx + dy).
    pub fn transform(&self, u: [[i64; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = u;
        let q = |x: i64, y: i64| self.n * x * x + self.r * x * y + self.m * y * y;
        HalfIntegralMatrix {
            n: q(a, c),
            r: 2 * self.n * a * b + self.r * (a * d + b * c) + 2 * self.m * c * d,
            m: q(b, d),
        }
    }

    /// GL₂(ℤ)-reduced representative with 0 ≤ r ≤ n ≤ m. Needs a
    /// positive semi-definite form.
    pub fn reduce(&self) -> Self {
        assert!(self.is_psd(), "reduction of an indefinite form {self}");
        let (mut n, mut r, mut m) = (self.n, self.r, self.m);
        loop {
            if n == 0 {
                // semi-definite with n = 0 forces r = 0
                return HalfIntegralMatrix { n: 0, r: 0, m };
            }
            // x ↦ x + ty brings r into (−n, n]
            let t = -Integer::div_floor(&(r + n), &(2 * n));
            let r2 = r + 2 * t * n;
            m += r * t + n * t * t;
            r = r2;
            if n > m {
                std::mem::swap(&mut n, &mut m);
                r = -r;
                continue;
            }
            break;
        }
        HalfIntegralMatrix { n, r: r.abs(), m }
    }
}

impl fmt::Display for HalfIntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.n, self.r, self.m)
    }
}

/// Reduced positive semi-definite forms with 4nm − r² = d.
pub fn reduced_forms_of_disc(d: i64) -> Vec<HalfIntegralMatrix> {
    let mut out = Vec::new();
    if d <= 0 {
        return out;
    }
    let mut n = 1;
    while 3 * n * n <= d {
        for r in 0..=n {
            if (d + r * r) % (4 * n) == 0 {
                let m = (d + r * r) / (4 * n);
                if m >= n {
                    out.push(HalfIntegralMatrix { n, r, m });
                }
            }
        }
        n += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        assert_eq!(HalfIntegralMatrix::new(1, 2, 1).reduce(), HalfIntegralMatrix::new(0, 0, 1));
        assert_eq!(HalfIntegralMatrix::new(1, 0, 0).reduce(), HalfIntegralMatrix::new(0, 0, 1));
        assert_eq!(HalfIntegralMatrix::new(1, -1, 1).reduce(), HalfIntegralMatrix::new(1, 1, 1));
        assert_eq!(HalfIntegralMatrix::new(3, 5, 3).reduce(), HalfIntegralMatrix::new(1, 1, 3));
        let f = HalfIntegralMatrix::new(2, 1, 3);
        assert_eq!(f.transform([[1, 1], [0, 1]]).reduce(), f);
    }

    #[test]
    fn class_numbers() {
        // GL₂(ℤ) classes of discriminant −d
        assert_eq!(reduced_forms_of_disc(3).len(), 1);
        assert_eq!(reduced_forms_of_disc(4).len(), 1);
        assert_eq!(reduced_forms_of_disc(20).len(), 2);
        assert_eq!(reduced_forms_of_disc(23).len(), 2);
    }
}
