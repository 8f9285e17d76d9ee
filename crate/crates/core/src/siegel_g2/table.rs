use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use super::matrix::{reduced_forms_of_disc, HalfIntegralMatrix};
use super::SiegelError;
use crate::exact_arith::{rat_to_string, Rat};
use crate::g1_modforms::QExpansion;

/// Fourier coefficients of a scalar genus-2 form on reduced classes. Definite
/// classes are stored for 4nm − r² ≤ max_disc, singular classes [0,0,m] for
/// m ≤ max_disc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelCoeffTable {
    pub k: i64,
    pub max_disc: i64,
    coeffs: BTreeMap<HalfIntegralMatrix, Rat>,
}

/// Every reduced class covered by a table with this bound.
pub fn reduced_classes(max_disc: i64) -> Vec<HalfIntegralMatrix> {
    let mut out: Vec<_> = (0..=max_disc).map(|m| HalfIntegralMatrix::new(0, 0, m)).collect();
    for d in 1..=max_disc {
        out.extend(reduced_forms_of_disc(d));
    }
    out
}

impl SiegelCoeffTable {
    pub fn from_fn(k: i64, max_disc: i64, mut f: impl FnMut(&HalfIntegralMatrix) -> Result<Rat, SiegelError>) -> Result<Self, SiegelError> {
        let mut coeffs = BTreeMap::new();
        for c in reduced_classes(max_disc) {
            let v = f(&c)?;
            coeffs.insert(c, v);
        }
        Ok(SiegelCoeffTable { k, max_disc, coeffs })
    }

    pub fn covers(&self, red: &HalfIntegralMatrix) -> bool {
        if red.n == 0 {
            red.m <= self.max_disc
        } else {
            red.disc() <= self.max_disc
        }
    }

    /// a(N) for any N; zero off the semi-definite cone, an error beyond the bound.
    pub fn get(&self, n: i64, r: i64, m: i64) -> Result<Rat, SiegelError> {
        let x = HalfIntegralMatrix::new(n, r, m);
        if !x.is_psd() {
            return Ok(Rat::zero());
        }
        let red = x.reduce();
        if !self.covers(&red) {
            return Err(SiegelError::OutOfBound { n, r, m, max_disc: self.max_disc });
        }
        Ok(self.coeffs[&red].clone())
    }

    pub fn at(&self, x: &HalfIntegralMatrix) -> Result<Rat, SiegelError> {
        self.get(x.n, x.r, x.m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HalfIntegralMatrix, &Rat)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Replaces one stored coefficient (given by any representative).
    pub fn set(&mut self, x: &HalfIntegralMatrix, v: Rat) -> Result<(), SiegelError> {
        let red = x.reduce();
        if !self.covers(&red) {
            return Err(SiegelError::OutOfBound { n: x.n, r: x.r, m: x.m, max_disc: self.max_disc });
        }
        self.coeffs.insert(red, v);
        Ok(())
    }

    /// All singular coefficients vanish.
    pub fn is_cusp_form(&self) -> bool {
        self.coeffs.iter().filter(|(x, _)| x.is_singular()).all(|(_, v)| v.is_zero())
    }

    pub fn truncate(&self, max_disc: i64) -> Self {
        let max_disc = max_disc.min(self.max_disc);
        let coeffs = reduced_classes(max_disc).into_iter().map(|c| (c, self.coeffs[&c].clone())).collect();
        SiegelCoeffTable { k: self.k, max_disc, coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        SiegelCoeffTable { k: self.k, max_disc: self.max_disc, coeffs: self.coeffs.iter().map(|(x, v)| (*x, v * c)).collect() }
    }

    /// Σ cᵢFᵢ over forms of one weight, on the smallest common bound.
    pub fn lin_comb(terms: &[(Rat, &SiegelCoeffTable)]) -> Result<Self, SiegelError> {
        let k = terms[0].1.k;
        if terms.iter().any(|(_, t)| t.k != k) {
            return Err(SiegelError::WeightMismatch);
        }
        let bound = terms.iter().map(|(_, t)| t.max_disc).min().unwrap();
        Self::from_fn(k, bound, |x| Ok(terms.iter().map(|(c, t)| c * &t.coeffs[x]).sum()))
    }

    /// Product FG through max_disc; the factors need bound ⌈4·max_disc/3⌉.
    pub fn product(&self, o: &SiegelCoeffTable, max_disc: i64) -> Result<Self, SiegelError> {
        let need = Integer::div_ceil(&(4 * max_disc), &3);
        let have = self.max_disc.min(o.max_disc);
        if have < need {
            return Err(SiegelError::InsufficientTable { need, have });
        }
        Self::from_fn(self.k + o.k, max_disc, |x| {
            let mut acc = Rat::zero();
            for n1 in 0..=x.n {
                for m1 in 0..=x.m {
                    let (n2, m2) = (x.n - n1, x.m - m1);
                    let lim = ((4 * n1 * m1) as f64).sqrt() as i64 + 1;
                    for r1 in -lim..=lim {
                        let a = HalfIntegralMatrix::new(n1, r1, m1);
                        let b = HalfIntegralMatrix::new(n2, x.r - r1, m2);
                        if !a.is_psd() || !b.is_psd() {
                            continue;
                        }
                        let u = self.at(&a)?;
                        if u.is_zero() {
                            continue;
                        }
                        acc += u * o.at(&b)?;
                    }
                }
            }
            Ok(acc)
        })
    }
}

impl Serialize for SiegelCoeffTable {
    /// [[n, r, m, "num/den"], …] sorted by (disc, n, r).
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut rows: Vec<_> = self.coeffs.iter().collect();
        rows.sort_by_key(|(x, _)| (x.disc(), x.n, x.r, x.m));
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for (x, v) in rows {
            seq.serialize_element(&(x.n, x.r, x.m, rat_to_string(v)))?;
        }
        seq.end()
    }
}

/// Siegel's Φ: Σ_n a([n,0,0]) qⁿ through the table bound.
pub fn phi_operator(f: &SiegelCoeffTable) -> QExpansion {
    let coeffs = (0..=f.max_disc).map(|n| f.get(n, 0, 0).expect("singular classes are covered")).collect();
    QExpansion::new(f.k, coeffs)
}

/// Coefficients of q₁ⁿq₂ᵐ at z = 0, for n, m ≤ prec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalExpansion {
    pub k: i64,
    pub coeffs: Vec<Vec<Rat>>,
}

impl DiagonalExpansion {
    pub fn get(&self, n: usize, m: usize) -> &Rat {
        &self.coeffs[n][m]
    }

    pub fn is_symmetric(&self) -> bool {
        let l = self.coeffs.len();
        (0..l).all(|i| (0..l).all(|j| self.coeffs[i][j] == self.coeffs[j][i]))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    /// Whether this equals f ⊗ g through the stored range.
    pub fn equals_tensor(&self, f: &QExpansion, g: &QExpansion) -> bool {
        let l = self.coeffs.len();
        f.prec() >= l && g.prec() >= l && (0..l).all(|i| (0..l).all(|j| self.coeffs[i][j] == f.coeff(i) * g.coeff(j)))
    }
}

/// Restriction to the diagonal: the q₁ⁿq₂ᵐ coefficient is Σ_r a([n,r,m]).
pub fn diagonal_restriction(f: &SiegelCoeffTable, prec: usize) -> Result<DiagonalExpansion, SiegelError> {
    let p = prec as i64;
    let need = 4 * p * p;
    if f.max_disc < need {
        return Err(SiegelError::InsufficientTable { need, have: f.max_disc });
    }
    let mut coeffs = vec![vec![Rat::zero(); prec + 1]; prec + 1];
    for n in 0..=p {
        for m in 0..=p {
            let lim = ((4 * n * m) as f64).sqrt() as i64 + 1;
            coeffs[n as usize][m as usize] = (-lim..=lim).map(|r| f.get(n, r, m)).sum::<Result<Rat, _>>()?;
        }
    }
    Ok(DiagonalExpansion { k: f.k, coeffs })
}
