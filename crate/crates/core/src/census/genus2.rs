use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use super::CensusError;
use crate::exact_arith::{FiniteField, Fq, Rat};

/// Largest field the genus-2 census will enumerate.
pub const G2_HARD_CAP: u64 = 13;

/// Binary sextic Σ cᵢ xⁱ z⁶⁻ⁱ; `c[i]` is the coefficient of xⁱz⁶⁻ⁱ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SexticForm {
    pub c: [Fq; 7],
}

impl SexticForm {
    pub fn new(c: [Fq; 7]) -> Self {
        Self { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2Census {
    pub q: u64,
    /// (t₁, e) ↦ mass, where t₁ = a₁ + a₂ and e = a₁a₂.
    pub masses: BTreeMap<(i64, i64), Rat>,
    pub model_count: u64,
}

impl G2Census {
    pub fn total_mass(&self) -> Rat {
        self.masses.values().fold(Rat::zero(), |a, b| a + b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnumerationOrder {
    #[default]
    Ascending,
    Gray,
}

/// Whether x² − t₁x + e has both roots real and inside [−2√q, 2√q].
pub fn real_weil_pair(t1: i64, e: i64, q: u64) -> bool {
    let (t1, e, q) = (t1 as i128, e as i128, q as i128);
    if t1 * t1 - 4 * e < 0 || t1 * t1 > 16 * q {
        return false;
    }
    // both roots in [−B, B] with B = 2√q ⇔ B² − |t₁|B + e ≥ 0
    let lhs = e + 4 * q;
    lhs >= 0 && lhs * lhs >= 4 * q * t1 * t1
}

fn degree(f: &[Fq]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Degree of gcd(a, b) over 𝔽; `None` when both vanish.
fn gcd_degree(f: &FiniteField, a: &[Fq], b: &[Fq]) -> Option<usize> {
    let mut a: Vec<Fq> = a.to_vec();
    let mut b: Vec<Fq> = b.to_vec();
    loop {
        let Some(db) = degree(&b) else {
            return degree(&a);
        };
        let inv = f.inv(b[db]);
        while let Some(da) = degree(&a) {
            if da < db {
                break;
            }
            let c = f.mul(a[da], inv);
            for i in 0..=db {
                let t = f.mul(c, b[i]);
                a[da - db + i] = f.sub(a[da - db + i], t);
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// True iff F has six distinct roots on ℙ¹ over the algebraic closure.
pub fn squarefree_sextic(form: &SexticForm, f: &FiniteField) -> bool {
    let c = &form.c;
    // z² | F means a multiple root at [1:0]
    if c[6] == 0 && c[5] == 0 {
        return false;
    }
    let deriv: Vec<Fq> = (1..7).map(|i| f.mul(f.from_int(i as i64), c[i])).collect();
    if degree(&deriv).is_none() {
        return false;
    }
    gcd_degree(f, c, &deriv) == Some(0)
}

/// Table-driven point counter for y² = F(x, z) over 𝔽_q and 𝔽_{q²}.
pub struct G2Kernel {
    k: FiniteField,
    l: FiniteField,
    q: usize,
    /// pw[i][x] = xⁱ in 𝔽_{q²}
    pw: Vec<Vec<Fq>>,
}

impl G2Kernel {
    pub fn new(q: u64) -> Result<Self, CensusError> {
        let k = FiniteField::new(q).map_err(|_| CensusError::UnsupportedField(q))?;
        if k.p() == 2 {
            return Err(CensusError::UnsupportedField(q));
        }
        let l = FiniteField::quadratic_ext(&k).map_err(|_| CensusError::UnsupportedField(q * q))?;
        let n = l.q() as usize;
        let mut pw = vec![vec![1 as Fq; n]; 7];
        for i in 1..7 {
            for x in 0..n {
                pw[i][x] = l.mul(pw[i - 1][x], x as Fq);
            }
        }
        Ok(Self { k, l, q: q as usize, pw })
    }

    pub fn base(&self) -> &FiniteField {
        &self.k
    }

    fn eval_all(&self, c: &[Fq; 7], vals: &mut [Fq]) {
        let l = &self.l;
        for (x, v) in vals.iter_mut().enumerate() {
            let mut acc = c[6];
            for i in (0..6).rev() {
                acc = l.add(l.mul(acc, x as Fq), c[i]);
            }
            *v = acc;
        }
    }

    /// (#C(𝔽_q), #C(𝔽_{q²})) from the affine values over 𝔽_{q²} and the leading coefficient.
    fn counts(&self, c6: Fq, vals: &[Fq]) -> (i64, i64) {
        let q = self.q as i64;
        let ck = self.k.chi_table();
        let cl = self.l.chi_table();
        let mut s1 = ck[c6 as usize] as i64;
        for &v in &vals[..self.q] {
            s1 += ck[v as usize] as i64;
        }
        let mut s2 = cl[c6 as usize] as i64;
        for &v in vals {
            s2 += cl[v as usize] as i64;
        }
        (q + 1 + s1, q * q + 1 + s2)
    }

    fn key(&self, n1: i64, n2: i64) -> (i64, i64) {
        let q = self.q as i64;
        let t1 = q + 1 - n1;
        let s2 = q * q + 1 - n2 + 4 * q;
        debug_assert!((t1 * t1 - s2) % 2 == 0);
        (t1, (t1 * t1 - s2) / 2)
    }

    pub fn count_points(&self, form: &SexticForm, ext: u32) -> i64 {
        let mut vals = vec![0 as Fq; self.l.q() as usize];
        self.eval_all(&form.c, &mut vals);
        let (n1, n2) = self.counts(form.c[6], &vals);
        if ext == 1 {
            n1
        } else {
            n2
        }
    }

    /// Frobenius data (t₁, e) of a squarefree sextic.
    pub fn frobenius_key(&self, form: &SexticForm) -> (i64, i64) {
        let mut vals = vec![0 as Fq; self.l.q() as usize];
        self.eval_all(&form.c, &mut vals);
        let (n1, n2) = self.counts(form.c[6], &vals);
        self.key(n1, n2)
    }

    pub fn partitions(&self) -> usize {
        self.q + 1
    }

    /// Counts of normalized squarefree sextics in one partition. Partition
    /// `i < q` fixes c₆ = 1, c₅ = i; partition `q` fixes c₆ = 0, c₅ = 1.
    /// The remaining five coefficients run over 𝔽_q.
    pub fn run_partition(&self, part: usize, order: EnumerationOrder) -> PartCounts {
        let (c6, c5) = if part < self.q { (1, part as Fq) } else { (0, 1) };
        let mut c = [0 as Fq; 7];
        c[6] = c6;
        c[5] = c5;
        let mut out = PartCounts::default();
        let mut vals = vec![0 as Fq; self.l.q() as usize];
        let record = |c: &[Fq; 7], vals: &[Fq], out: &mut PartCounts| {
            if !squarefree_sextic(&SexticForm { c: *c }, &self.k) {
                return;
            }
            let (n1, n2) = self.counts(c[6], vals);
            out.models += 1;
            *out.counts.entry(self.key(n1, n2)).or_default() += 1;
        };
        let q = self.q as Fq;
        match order {
            EnumerationOrder::Ascending => {
                let total = self.q.pow(5);
                for idx in 0..total {
                    let mut r = idx;
                    for slot in c.iter_mut().take(5) {
                        *slot = (r % self.q) as Fq;
                        r /= self.q;
                    }
                    self.eval_all(&c, &mut vals);
                    record(&c, &vals, &mut out);
                }
            }
            EnumerationOrder::Gray => {
                // reflected q-ary Gray code over (c₀..c₄), values updated in place
                self.eval_all(&c, &mut vals);
                let mut dir = [1i32; 5];
                let l = &self.l;
                loop {
                    record(&c, &vals, &mut out);
                    let mut j = 0;
                    while j < 5 {
                        let next = c[j] as i32 + dir[j];
                        if next >= 0 && next < q as i32 {
                            break;
                        }
                        dir[j] = -dir[j];
                        j += 1;
                    }
                    if j == 5 {
                        break;
                    }
                    let old = c[j];
                    c[j] = (old as i32 + dir[j]) as Fq;
                    let delta = l.sub(c[j], old);
                    let pw = &self.pw[j];
                    for (v, &w) in vals.iter_mut().zip(pw) {
                        *v = l.add(*v, l.mul(delta, w));
                    }
                }
            }
        }
        out
    }

    /// Turns merged normalized counts into masses. Each normalized sextic F
    /// stands for the q−1 models λF: half of them give the same curve data,
    /// half the quadratic twist (t₁ ↦ −t₁).
    pub fn finish(&self, merged: &PartCounts) -> G2Census {
        let q = self.q as u64;
        let group = (q * q - 1) * (q * q - q);
        let half = (q - 1) / 2;
        let mut tally: BTreeMap<(i64, i64), u64> = BTreeMap::new();
        for (&(t1, e), &n) in &merged.counts {
            *tally.entry((t1, e)).or_default() += n * half;
            *tally.entry((-t1, e)).or_default() += n * half;
        }
        let masses = tally.into_iter().map(|(k, n)| (k, Rat::new(n.into(), group.into()))).collect();
        G2Census { q, masses, model_count: merged.models * (q - 1) }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartCounts {
    pub counts: HashMap<(i64, i64), u64>,
    pub models: u64,
}

impl PartCounts {
    pub fn merge(&mut self, o: &PartCounts) {
        self.models += o.models;
        for (k, v) in &o.counts {
            *self.counts.entry(*k).or_default() += v;
        }
    }
}

/// #C(𝔽_{q^ext}) for y² = F(x, z); `ext` is 1 or 2.
pub fn count_points_g2(form: &SexticForm, q: u64, ext: u32) -> Result<i64, CensusError> {
    Ok(G2Kernel::new(q)?.count_points(form, ext))
}

pub fn g2_census(q: u64) -> Result<G2Census, CensusError> {
    g2_census_with(q, EnumerationOrder::Ascending, G2_HARD_CAP)
}

pub fn g2_census_with(q: u64, order: EnumerationOrder, max_q: u64) -> Result<G2Census, CensusError> {
    let max = max_q.min(G2_HARD_CAP);
    if q > max {
        return Err(CensusError::FieldTooLarge { q, max });
    }
    let kernel = G2Kernel::new(q)?;
    let parts: Vec<PartCounts> = (0..kernel.partitions())
        .into_par_iter()
        .map(|i| kernel.run_partition(i, order))
        .collect();
    let mut merged = PartCounts::default();
    for p in &parts {
        merged.merge(p);
    }
    Ok(kernel.finish(&merged))
}

/// Reference census over all q⁷ sextics without normalization.
pub fn g2_census_full(q: u64) -> Result<G2Census, CensusError> {
    let kernel = G2Kernel::new(q)?;
    let n = q as usize;
    let group = (q * q - 1) * (q * q - q);
    let mut tally: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    let mut models = 0;
    for idx in 0..n.pow(7) {
        let mut c = [0 as Fq; 7];
        let mut r = idx;
        for slot in c.iter_mut() {
            *slot = (r % n) as Fq;
            r /= n;
        }
        let form = SexticForm { c };
        if !squarefree_sextic(&form, kernel.base()) {
            continue;
        }
        models += 1;
        *tally.entry(kernel.frobenius_key(&form)).or_default() += 1;
    }
    let masses = tally.into_iter().map(|(k, v)| (k, Rat::new(v.into(), group.into()))).collect();
    Ok(G2Census { q, masses, model_count: models })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn squarefree_examples() {
        let f3 = FiniteField::new(3).unwrap();
        let x6_z6 = SexticForm::new([1, 0, 0, 0, 0, 0, 1]);
        let x6_xz5 = SexticForm::new([0, 1, 0, 0, 0, 0, 1]);
        let x2z4 = SexticForm::new([0, 0, 1, 0, 0, 0, 0]);
        assert!(!squarefree_sextic(&x6_z6, &f3));
        assert!(squarefree_sextic(&x6_xz5, &f3));
        assert!(!squarefree_sextic(&x2z4, &f3));
        assert_eq!(count_points_g2(&x6_xz5, 3, 1).unwrap(), 4);
    }

    #[test]
    fn orders_agree_and_match_reference() {
        let a = g2_census_with(3, EnumerationOrder::Ascending, 13).unwrap();
        let g = g2_census_with(3, EnumerationOrder::Gray, 13).unwrap();
        assert_eq!(a, g);
        assert_eq!(a, g2_census_full(3).unwrap());
        assert_eq!(a.total_mass(), rat(27, 1));
        assert!(a.masses.keys().all(|&(t, e)| real_weil_pair(t, e, 3)));
    }

    #[test]
    fn too_large() {
        assert!(matches!(g2_census_with(11, EnumerationOrder::Ascending, 7), Err(CensusError::FieldTooLarge { .. })));
        assert!(g2_census(4).is_err());
    }
}
