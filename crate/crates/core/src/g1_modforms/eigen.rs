use super::hecke::hecke_t;
use super::qexp::{basis_s, dim_s};
use super::G1Error;
use crate::exact_arith::ntheory::{is_prime, squarefree_part};
use crate::exact_arith::quadratic::{QuadElem, Scalar};
use crate::exact_arith::rational::{Int, Rat};
use crate::exact_arith::BigFloat;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;

pub const DEFAULT_EIGEN_PREC: usize = 120;

/// Which root of the T(2) characteristic polynomial gives a(2): `Plus` has
/// b > 0 in a + b√D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Embedding {
    Rational,
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenformG1 {
    pub weight: i64,
    /// 1 for rational coefficients, otherwise the squarefree D of ℚ(√D).
    pub field_disc: u64,
    pub embedding: Embedding,
    /// a(0), a(1), …
    pub coeffs: Vec<Scalar>,
}

impl EigenformG1 {
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn a(&self, n: usize) -> &Scalar {
        &self.coeffs[n]
    }

    pub fn is_rational(&self) -> bool {
        self.field_disc == 1
    }

    pub fn a_p_map(&self, bound: u64) -> BTreeMap<u64, Scalar> {
        (2..=bound.min(self.prec() as u64 - 1))
            .filter(|&p| is_prime(p))
            .map(|p| (p, self.coeffs[p as usize].clone()))
            .collect()
    }

    /// Coefficient under the real embedding √D ↦ +√D.
    pub fn coeff_float(&self, n: usize, sqrt_d: Option<&BigFloat>, prec: u32) -> BigFloat {
        match &self.coeffs[n] {
            Scalar::Rat(r) => BigFloat::from_rat(r, prec),
            Scalar::Quad(q) => {
                let s = sqrt_d.expect("√D needed for a quadratic eigenform");
                BigFloat::from_rat(&q.a, prec).add(&BigFloat::from_rat(&q.b, prec).mul(s))
            }
        }
    }

    pub fn conjugate(&self) -> Self {
        EigenformG1 {
            weight: self.weight,
            field_disc: self.field_disc,
            embedding: match self.embedding {
                Embedding::Plus => Embedding::Minus,
                Embedding::Minus => Embedding::Plus,
                Embedding::Rational => Embedding::Rational,
            },
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn to_json(&self, p_max: u64) -> serde_json::Value {
        let a_p: serde_json::Map<String, serde_json::Value> = self
            .a_p_map(p_max)
            .into_iter()
            .map(|(p, a)| (p.to_string(), serde_json::to_value(a).unwrap()))
            .collect();
        json!({ "weight": self.weight, "disc": self.field_disc, "a_p": a_p })
    }
}

pub fn eigenforms(k: i64) -> Result<Vec<EigenformG1>, G1Error> {
    eigenforms_prec(k, DEFAULT_EIGEN_PREC)
}

/// Normalized eigenforms of S_k with a(0..prec); dim ≤ 2.
pub fn eigenforms_prec(k: i64, prec: usize) -> Result<Vec<EigenformG1>, G1Error> {
    let d = dim_s(k);
    let prec = prec.max(8);
    match d {
        0 => Ok(Vec::new()),
        1 => {
            let b = basis_s(k, prec).remove(0);
            Ok(vec![EigenformG1 {
                weight: k,
                field_disc: 1,
                embedding: Embedding::Rational,
                coeffs: b.coeffs.into_iter().map(Scalar::Rat).collect(),
            }])
        }
        2 => {
            let basis = basis_s(k, prec);
            let (b1, b2) = (&basis[0], &basis[1]);
            // pivots at q and q²
            assert!(b1.coeffs[1] == Rat::from_integer(1.into()) && b1.coeffs[2].is_zero());
            assert!(b2.coeffs[1].is_zero() && b2.coeffs[2] == Rat::from_integer(1.into()));
            let cp = hecke_t(k, 2, 7)?.charpoly();
            let t = -cp[1].clone();
            let disc = &t * &t - Rat::from_integer(4.into()) * &cp[0];
            if !disc.is_integer() || disc <= Rat::zero() {
                return Err(G1Error::NotQuadratic(k));
            }
            let disc = disc.to_integer();
            let dd = squarefree_part(&disc);
            let f2: Int = &disc / &dd;
            let f = f2.sqrt();
            if &f * &f != f2 || dd == Int::from(1) {
                return Err(G1Error::NotQuadratic(k));
            }
            let dd = dd.to_u64().ok_or(G1Error::NotQuadratic(k))?;
            let half_t = &t / Rat::from_integer(2.into());
            let half_f = Rat::new(f, 2.into());
            let make = |sign: i64, emb: Embedding| EigenformG1 {
                weight: k,
                field_disc: dd,
                embedding: emb,
                coeffs: (0..prec)
                    .map(|n| {
                        Scalar::Quad(QuadElem {
                            disc: dd,
                            a: &b1.coeffs[n] + &half_t * &b2.coeffs[n],
                            b: &half_f * &b2.coeffs[n] * Rat::from_integer(sign.into()),
                        })
                    })
                    .collect(),
            };
            Ok(vec![make(1, Embedding::Plus), make(-1, Embedding::Minus)])
        }
        _ => Err(G1Error::DimTooLarge { k, dim: d }),
    }
}
