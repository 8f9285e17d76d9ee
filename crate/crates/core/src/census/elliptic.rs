use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::CensusError;
use crate::cohom::cheb_d;
use crate::exact_arith::{FiniteField, Fq, Rat};

/// Automorphism-weighted distribution of Frobenius traces of elliptic curves
/// over 𝔽_q. The mass at `t` is Σ 1/#Aut over the classes with q+1−t points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllCensus {
    pub q: u64,
    pub masses: BTreeMap<i64, Rat>,
    pub model_count: u64,
}

impl EllCensus {
    pub fn total_mass(&self) -> Rat {
        self.masses.values().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn mass(&self, t: i64) -> Rat {
        self.masses.get(&t).cloned().unwrap_or_else(Rat::zero)
    }

    /// Mass of curves with exactly `n` rational points.
    pub fn mass_by_points(&self, n: i64) -> Rat {
        self.mass(self.q as i64 + 1 - n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Model {
    /// y² = x³ + Ax + B
    Short,
    /// y² = x³ + a₂x² + a₄x + a₆
    Cubic,
    /// y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆
    Long,
}

fn model_for(p: u32) -> Model {
    match p {
        2 => Model::Long,
        3 => Model::Cubic,
        _ => Model::Short,
    }
}

/// Order of the coordinate-change group acting on the chosen model.
fn group_order(model: Model, q: u64) -> u64 {
    match model {
        Model::Short => q - 1,
        Model::Cubic => q * (q - 1),
        Model::Long => q * q * q * (q - 1),
    }
}

/// (Δ, c₄) of the long Weierstrass equation with coefficients (a₁, a₂, a₃, a₄, a₆).
pub(crate) fn invariants(f: &FiniteField, a: [Fq; 5]) -> (Fq, Fq) {
    let [a1, a2, a3, a4, a6] = a;
    let k = |n: i64| f.from_int(n);
    let m = |x: Fq, y: Fq| f.mul(x, y);
    let s = |x: Fq, y: Fq| f.add(x, y);
    let b2 = s(m(a1, a1), m(k(4), a2));
    let b4 = s(m(k(2), a4), m(a1, a3));
    let b6 = s(m(a3, a3), m(k(4), a6));
    let b8 = {
        let t1 = m(m(a1, a1), a6);
        let t2 = m(k(4), m(a2, a6));
        let t3 = f.neg(m(m(a1, a3), a4));
        let t4 = m(a2, m(a3, a3));
        let t5 = f.neg(m(a4, a4));
        s(s(s(t1, t2), s(t3, t4)), t5)
    };
    let c4 = f.sub(m(b2, b2), m(k(24), b4));
    let d1 = f.neg(m(m(b2, b2), b8));
    let d2 = f.neg(m(k(8), m(b4, m(b4, b4))));
    let d3 = f.neg(m(k(27), m(b6, b6)));
    let d4 = m(k(9), m(b2, m(b4, b6)));
    (s(s(d1, d2), s(d3, d4)), c4)
}

/// Visits every nonsingular model as (a₁, a₂, a₃, a₄, a₆) together with its
/// Frobenius trace. Returns the group order used to weight the models.
fn visit_models(f: &FiniteField, mut visit: impl FnMut([Fq; 5], i64)) -> u64 {
    let q = f.q() as usize;
    let model = model_for(f.p());
    let chi = f.chi_table();
    match model {
        Model::Short => {
            // chi_add[v*q + b] = χ(v + b)
            let chi_add: Vec<i8> = (0..q * q).map(|i| chi[f.add((i / q) as Fq, (i % q) as Fq) as usize]).collect();
            let cubes: Vec<Fq> = (0..q as Fq).map(|x| f.mul(x, f.mul(x, x))).collect();
            let mut g = vec![0 as Fq; q];
            for a in 0..q as Fq {
                for x in 0..q {
                    g[x] = f.add(cubes[x], f.mul(a, x as Fq));
                }
                for b in 0..q as Fq {
                    let coeffs = [0, 0, 0, a, b];
                    if invariants(f, coeffs).0 == 0 {
                        continue;
                    }
                    let s: i64 = g.iter().map(|&v| chi_add[v as usize * q + b as usize] as i64).sum();
                    visit(coeffs, -s);
                }
            }
        }
        Model::Cubic => {
            let chi_add: Vec<i8> = (0..q * q).map(|i| chi[f.add((i / q) as Fq, (i % q) as Fq) as usize]).collect();
            let cubes: Vec<Fq> = (0..q as Fq).map(|x| f.mul(x, f.mul(x, x))).collect();
            let squares: Vec<Fq> = (0..q as Fq).map(|x| f.mul(x, x)).collect();
            let mut g = vec![0 as Fq; q];
            for a2 in 0..q as Fq {
                for a4 in 0..q as Fq {
                    for x in 0..q {
                        g[x] = f.add(f.add(cubes[x], f.mul(a2, squares[x])), f.mul(a4, x as Fq));
                    }
                    for a6 in 0..q as Fq {
                        let coeffs = [0, a2, 0, a4, a6];
                        if invariants(f, coeffs).0 == 0 {
                            continue;
                        }
                        let s: i64 = g.iter().map(|&v| chi_add[v as usize * q + a6 as usize] as i64).sum();
                        visit(coeffs, -s);
                    }
                }
            }
        }
        Model::Long => {
            let qq = q as Fq;
            for a1 in 0..qq {
                for a2 in 0..qq {
                    for a3 in 0..qq {
                        for a4 in 0..qq {
                            for a6 in 0..qq {
                                let coeffs = [a1, a2, a3, a4, a6];
                                if invariants(f, coeffs).0 == 0 {
                                    continue;
                                }
                                let mut n = 1i64;
                                for x in 0..qq {
                                    let rhs = f.add(
                                        f.mul(f.add(f.mul(f.add(x, a2), x), a4), x),
                                        a6,
                                    );
                                    let lin = f.add(f.mul(a1, x), a3);
                                    for y in 0..qq {
                                        if f.add(f.mul(y, y), f.mul(lin, y)) == rhs {
                                            n += 1;
                                        }
                                    }
                                }
                                visit(coeffs, q as i64 + 1 - n);
                            }
                        }
                    }
                }
            }
        }
    }
    group_order(model, q as u64)
}

/// Exhaustive mass-formula census of elliptic curves over 𝔽_q.
pub fn ell_census(q: u64) -> Result<EllCensus, CensusError> {
    let f = FiniteField::new(q).map_err(|_| CensusError::UnsupportedField(q))?;
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    let mut models = 0u64;
    let order = visit_models(&f, |_, t| {
        *counts.entry(t).or_default() += 1;
        models += 1;
    });
    let masses = counts
        .into_iter()
        .map(|(t, c)| (t, Rat::new(c.into(), order.into())))
        .collect();
    Ok(EllCensus { q, masses, model_count: models })
}

/// Mass per j-invariant; every entry should be 1.
pub fn j_class_masses(q: u64) -> Result<BTreeMap<Fq, Rat>, CensusError> {
    let f = FiniteField::new(q).map_err(|_| CensusError::UnsupportedField(q))?;
    let mut counts: BTreeMap<Fq, u64> = BTreeMap::new();
    let order = visit_models(&f, |a, _| {
        let (disc, c4) = invariants(&f, a);
        let j = f.mul(f.mul(c4, f.mul(c4, c4)), f.inv(disc));
        *counts.entry(j).or_default() += 1;
    });
    Ok(counts.into_iter().map(|(j, c)| (j, Rat::new(c.into(), order.into()))).collect())
}

/// σ_k(q) = −Σ_E h(k, E)/#Aut(E) with h(k, E) = α^k + α^{k−1}ᾱ + ⋯ + ᾱ^k.
pub fn sigma(k: u32, census: &EllCensus) -> Rat {
    let q = Rat::from_integer(census.q.into());
    let mut s = Rat::zero();
    for (&t, m) in &census.masses {
        s -= m * cheb_d(k as usize + 1, &Rat::from_integer(t.into()), &q);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn f3_frequencies() {
        let c = ell_census(3).unwrap();
        let freq: Vec<Rat> = (1..=7).map(|n| c.mass_by_points(n)).collect();
        let want = [rat(1, 6), rat(1, 2), rat(1, 2), rat(2, 3), rat(1, 2), rat(1, 2), rat(1, 6)];
        assert_eq!(freq, want);
    }

    #[test]
    fn total_mass_small() {
        for q in [2, 3, 4, 5, 7, 9] {
            assert_eq!(ell_census(q).unwrap().total_mass(), rat(q as i64, 1), "q={q}");
        }
    }

    #[test]
    fn sigma10_table() {
        let want = [(2, -23), (3, 253), (5, 4831), (7, -16743), (11, 534613)];
        for (p, s) in want {
            assert_eq!(sigma(10, &ell_census(p).unwrap()), rat(s, 1), "p={p}");
        }
    }

    #[test]
    fn j_classes_have_unit_mass() {
        for q in [3, 5, 7] {
            let m = j_class_masses(q).unwrap();
            assert_eq!(m.len(), q as usize);
            assert!(m.values().all(|v| *v == rat(1, 1)), "q={q}");
        }
    }
}
