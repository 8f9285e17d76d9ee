//! Bundled eigenvalue, dimension and congruence-prime tables.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::One;

use crate::exact_arith::{rat_from_str, Int, QuadElem, Rat, Scalar};

pub const DIMS_FILE: &str = "dims_sjk.csv";
pub const S6_8_FILE: &str = "eigen_s6_8.csv";
pub const S18_5_S28_4_FILE: &str = "eigen_s18_5_s28_4.csv";
pub const S8_8_S12_6_FILE: &str = "eigen_s8_8_s12_6.csv";
pub const H22_FILE: &str = "harder_22_4_10.csv";
pub const CONGRUENCE_FILE: &str = "congruence_primes.csv";
pub const CHARPOLY_FILE: &str = "charpolys_p2.csv";

const DIMS: &str = include_str!("../../data/dims_sjk.csv");
const S6_8: &str = include_str!("../../data/eigen_s6_8.csv");
const S18_5_S28_4: &str = include_str!("../../data/eigen_s18_5_s28_4.csv");
const S8_8_S12_6: &str = include_str!("../../data/eigen_s8_8_s12_6.csv");
const H22: &str = include_str!("../../data/harder_22_4_10.csv");
const CONGRUENCE: &str = include_str!("../../data/congruence_primes.csv");
const CHARPOLY: &str = include_str!("../../data/charpolys_p2.csv");

fn records(src: &str) -> Vec<csv::StringRecord> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(src.as_bytes())
        .records()
        .map(|r| r.expect("bundled CSV is well formed"))
        .collect()
}

fn int_field(s: &str) -> Int {
    s.parse().unwrap_or_else(|_| panic!("bad integer {s:?} in bundled data"))
}

/// Parses a signed product such as `-2^3*3*43`.
pub fn parse_factored(s: &str) -> Option<Int> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let mut acc = Int::one();
    for f in body.split('*') {
        let (b, e) = match f.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().ok()?),
            None => (f, 1),
        };
        let b: Int = b.trim().parse().ok()?;
        acc *= num_traits::pow(b, e);
    }
    Some(if neg { -acc } else { acc })
}

fn dims() -> &'static BTreeMap<(i64, i64), u32> {
    static T: OnceLock<BTreeMap<(i64, i64), u32>> = OnceLock::new();
    T.get_or_init(|| {
        records(DIMS)
            .iter()
            .map(|r| ((r[0].parse().unwrap(), r[1].parse().unwrap()), r[2].parse().unwrap()))
            .collect()
    })
}

/// dim S_{j,k}(Γ₂) where the bundled table covers (j, k).
pub fn dim_sjk(j: i64, k: i64) -> Option<u32> {
    dims().get(&(j, k)).copied()
}

/// dim S_{j,k} from the dimension table, else from the congruence-prime table.
pub fn known_dim(j: i64, k: i64) -> Option<u32> {
    dim_sjk(j, k).or_else(|| congruence_rows().into_iter().find(|r| (r.j, r.k) == (j, k)).map(|r| r.dim_sjk))
}

pub fn dims_table() -> Vec<(i64, i64, u32)> {
    dims().iter().map(|(&(j, k), &d)| (j, k, d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S68Row {
    pub p: u64,
    pub lambda: Int,
    pub lambda_p2: Int,
    pub slopes: Vec<Rat>,
}

pub fn s6_8_table() -> Vec<S68Row> {
    records(S6_8)
        .iter()
        .map(|r| S68Row {
            p: r[0].parse().unwrap(),
            lambda: int_field(&r[1]),
            lambda_p2: int_field(&r[2]),
            slopes: r[3].split_whitespace().map(|s| rat_from_str(s).unwrap()).collect(),
        })
        .collect()
}

fn lambda_tables() -> &'static BTreeMap<(i64, i64, u64), (Int, &'static str)> {
    static T: OnceLock<BTreeMap<(i64, i64, u64), (Int, &'static str)>> = OnceLock::new();
    T.get_or_init(|| {
        let mut m = BTreeMap::new();
        for r in s6_8_table() {
            m.insert((6, 8, r.p), (r.lambda, S6_8_FILE));
        }
        for r in records(S18_5_S28_4) {
            let p = r[0].parse().unwrap();
            m.insert((18, 5, p), (int_field(&r[1]), S18_5_S28_4_FILE));
            m.insert((28, 4, p), (int_field(&r[2]), S18_5_S28_4_FILE));
        }
        for r in records(S8_8_S12_6) {
            let p = r[0].parse().unwrap();
            m.insert((8, 8, p), (parse_factored(&r[1]).unwrap(), S8_8_S12_6_FILE));
            m.insert((12, 6, p), (parse_factored(&r[2]).unwrap(), S8_8_S12_6_FILE));
        }
        for r in records(H22) {
            let p = r[0].parse().unwrap();
            m.insert((4, 10, p), (int_field(&r[2]), H22_FILE));
        }
        m
    })
}

/// Tabulated λ(p) on a one-dimensional S_{j,k}, with the file it came from.
pub fn table_lambda(j: i64, k: i64, p: u64) -> Option<(Int, &'static str)> {
    lambda_tables().get(&(j, k, p)).cloned()
}

/// Primes with a tabulated λ(p) on S_{j,k}.
pub fn table_lambda_primes(j: i64, k: i64) -> Vec<u64> {
    lambda_tables().keys().filter(|&&(a, b, _)| (a, b) == (j, k)).map(|&(_, _, p)| p).collect()
}

/// Tabulated a(p) of the weight-22 eigenform.
pub fn table_a22(p: u64) -> Option<Int> {
    records(H22).iter().find(|r| r[0] == *p.to_string()).map(|r| int_field(&r[1]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceRow {
    pub r: i64,
    pub dim_sr: u32,
    pub j: i64,
    pub k: i64,
    pub dim_sjk: u32,
    pub lvalue: Int,
    pub primes: Vec<u64>,
}

pub fn congruence_rows() -> Vec<CongruenceRow> {
    records(CONGRUENCE)
        .iter()
        .map(|r| CongruenceRow {
            r: r[0].parse().unwrap(),
            dim_sr: r[1].parse().unwrap(),
            j: r[2].parse().unwrap(),
            k: r[3].parse().unwrap(),
            dim_sjk: r[4].parse().unwrap(),
            lvalue: parse_factored(&r[5]).unwrap(),
            primes: r[6].split(';').filter(|s| !s.is_empty()).map(|s| s.parse().unwrap()).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharPolyRow {
    pub id: String,
    pub j: i64,
    pub k: i64,
    pub p: u64,
    pub disc: u64,
    pub kind: String,
    /// Constant term first.
    pub coeffs: Vec<Scalar>,
}

fn parse_coeff(tok: &str, disc: u64) -> Scalar {
    match tok.split_once('|') {
        Some((a, b)) => {
            let q = QuadElem::new(disc, int_field(a).into(), int_field(b).into()).expect("real quadratic");
            Scalar::Quad(q)
        }
        None => Scalar::Rat(int_field(tok).into()),
    }
}

pub fn charpolys() -> Vec<CharPolyRow> {
    records(CHARPOLY)
        .iter()
        .map(|r| {
            let disc: u64 = r[4].parse().unwrap();
            CharPolyRow {
                id: r[0].to_string(),
                j: r[1].parse().unwrap(),
                k: r[2].parse().unwrap(),
                p: r[3].parse().unwrap(),
                disc,
                kind: r[5].to_string(),
                coeffs: r[6].split_whitespace().map(|t| parse_coeff(t, disc)).collect(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::int;

    #[test]
    fn tables_load() {
        assert_eq!(dims_table().len(), 170);
        assert_eq!(dim_sjk(6, 8), Some(1));
        assert_eq!(dim_sjk(10, 9), Some(1));
        assert_eq!(dim_sjk(10, 20), Some(15));
        assert_eq!(dim_sjk(20, 5), None);
        assert_eq!(known_dim(20, 5), Some(1));
        assert_eq!(known_dim(32, 4), Some(2));
        assert_eq!(table_lambda(8, 8, 2).unwrap().0, int(1344));
        assert_eq!(table_lambda(12, 6, 3).unwrap().0, int(68040));
        assert_eq!(table_a22(2), Some(int(-288)));
        assert_eq!(congruence_rows().len(), 41);
        assert_eq!(charpolys().len(), 4);
    }

    #[test]
    fn factored_parsing() {
        assert_eq!(parse_factored("-2^3*3*43"), Some(int(-1032)));
        assert_eq!(parse_factored("5*7*97"), Some(int(3395)));
        assert_eq!(parse_factored("x"), None);
    }

    #[test]
    fn dim_column_agrees_with_dim_table() {
        for row in congruence_rows() {
            if let Some(d) = dim_sjk(row.j, row.k) {
                assert_eq!(d, row.dim_sjk, "({}, {})", row.j, row.k);
            }
        }
    }
}
