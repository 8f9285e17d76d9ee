use super::rational::Rat;
use num_traits::{One, Zero};

/// Dense square matrix over ℚ; `m[i][j]` is row i, column j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: Vec<Vec<Rat>>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix { rows: vec![vec![Rat::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim();
        let mut r = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    r.rows[i][j] += &self.rows[i][k] * &o.rows[k][j];
                }
            }
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (ra, rb) in r.rows.iter_mut().zip(&o.rows) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += b;
            }
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut r = self.clone();
        for row in r.rows.iter_mut() {
            for a in row.iter_mut() {
                *a *= c;
            }
        }
        r
    }

    pub fn trace(&self) -> Rat {
        (0..self.dim()).map(|i| self.rows[i][i].clone()).sum()
    }

    /// det(xI − A), constant term first (Faddeev–LeVerrier).
    pub fn charpoly(&self) -> Vec<Rat> {
        let n = self.dim();
        let mut c = vec![Rat::zero(); n + 1];
        c[n] = Rat::one();
        let mut m = Self::zero(n);
        for k in 1..=n {
            m = self.mul(&m).add(&Self::identity(n).scale(&c[n + 1 - k]));
            let am = self.mul(&m);
            c[n - k] = -am.trace() / Rat::from_integer((k as i64).into());
        }
        c
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Rat {
        let n = self.dim();
        let mut a = self.rows.clone();
        let mut d = Rat::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rat::zero();
            };
            if piv != col {
                a.swap(piv, col);
                d = -d;
            }
            d *= &a[col][col];
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::rat;

    #[test]
    fn charpoly_2x2_and_3x3() {
        let a = RatMatrix { rows: vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]] };
        assert_eq!(a.charpoly(), vec![rat(-2, 1), rat(-5, 1), rat(1, 1)]);
        let b = RatMatrix {
            rows: vec![
                vec![rat(2, 1), rat(0, 1), rat(0, 1)],
                vec![rat(1, 2), rat(3, 1), rat(0, 1)],
                vec![rat(0, 1), rat(7, 1), rat(-1, 1)],
            ],
        };
        // (x−2)(x−3)(x+1) = x³ − 4x² + x + 6
        assert_eq!(b.charpoly(), vec![rat(6, 1), rat(1, 1), rat(-4, 1), rat(1, 1)]);
        assert_eq!(a.det(), rat(-2, 1));
        assert_eq!(b.det(), rat(-6, 1));
    }
}
