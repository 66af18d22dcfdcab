//! Exact sparse linear algebra over the rationals.
//!
//! Rows are kept as primitive integer vectors (fraction-free elimination,
//! each row divided by its content). The pivot of a row is its first column
//! in registry order, so registering some columns first makes them the
//! preferred pivots.

use crate::chain::{Chain, Q};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Column labels in pivot-priority order.
#[derive(Clone, Debug)]
pub struct Registry<K: Ord + Clone> {
    index: BTreeMap<K, usize>,
    labels: Vec<K>,
}

impl<K: Ord + Clone> Default for Registry<K> {
    fn default() -> Self {
        Registry { index: BTreeMap::new(), labels: Vec::new() }
    }
}

impl<K: Ord + Clone> Registry<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_keys(keys: impl IntoIterator<Item = K>) -> Self {
        let mut r = Self::new();
        for k in keys {
            r.register(k);
        }
        r
    }

    pub fn register(&mut self, k: K) -> usize {
        if let Some(&i) = self.index.get(&k) {
            return i;
        }
        self.labels.push(k.clone());
        self.index.insert(k, self.labels.len() - 1);
        self.labels.len() - 1
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn label(&self, i: usize) -> &K {
        &self.labels[i]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Columns of a chain; unknown keys are an error.
    pub fn vector(&self, c: &Chain<K>) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (k, x) in c.iter() {
            let i = self.get(k).ok_or_else(|| Error::Invalid("relator term outside the ambient basis".into()))?;
            v.insert(i, x.clone());
        }
        Ok(v)
    }

    /// Columns of a chain, registering new keys.
    pub fn vector_mut(&mut self, c: &Chain<K>) -> SparseVec {
        c.iter().map(|(k, x)| (self.register(k.clone()), x.clone())).collect()
    }

    pub fn chain(&self, v: &SparseVec) -> Chain<K> {
        v.iter().map(|(&i, x)| (self.labels[i].clone(), x.clone())).collect()
    }
}

pub type SparseVec = BTreeMap<usize, Q>;
type IntRow = BTreeMap<usize, BigInt>;

fn to_primitive(v: &SparseVec) -> (IntRow, Q) {
    let den = v.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut row: IntRow =
        v.iter().filter(|(_, x)| !x.is_zero()).map(|(&i, x)| (i, x.numer() * (&den / x.denom()))).collect();
    let g = content(&row);
    if !g.is_one() && !g.is_zero() {
        for x in row.values_mut() {
            *x /= &g;
        }
    }
    // v = scale * row
    (row, Q::new(g, den))
}

fn content(row: &IntRow) -> BigInt {
    row.values().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Integer row together with the rational combination of inputs it equals.
#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    entries: IntRow,
    combo: Option<SparseVec>,
}

/// Incremental row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    by_pivot: BTreeMap<usize, usize>,
    track: bool,
    inserted: usize,
}

/// `r <- (a*r - b*p) / content`; combinations follow. Returns `a / content`.
fn eliminate(r: &mut IntRow, rc: &mut Option<SparseVec>, p: &Row, col: usize) -> Q {
    let a = p.entries[&col].clone();
    let b = r[&col].clone();
    let g = a.gcd(&b);
    let (a, b) = (&a / &g, &b / &g);
    if !a.is_one() {
        for x in r.values_mut() {
            *x *= &a;
        }
    }
    for (&i, x) in &p.entries {
        let e = r.entry(i).or_insert_with(BigInt::zero);
        *e -= &b * x;
        if e.is_zero() {
            r.remove(&i);
        }
    }
    let qa = Q::from_integer(a);
    let qb = Q::from_integer(b);
    let mut factor = qa.clone();
    if let (Some(c), Some(pc)) = (rc.as_mut(), p.combo.as_ref()) {
        for x in c.values_mut() {
            *x *= &qa;
        }
        for (&i, x) in pc {
            let e = c.entry(i).or_insert_with(Q::zero);
            *e -= &qb * x;
            if e.is_zero() {
                c.remove(&i);
            }
        }
    }
    let g = content(r);
    if !g.is_zero() && !g.is_one() {
        for x in r.values_mut() {
            *x /= &g;
        }
        let qg = Q::from_integer(g);
        if let Some(c) = rc.as_mut() {
            for x in c.values_mut() {
                *x /= &qg;
            }
        }
        factor /= qg;
    }
    factor
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keep, for every row, the combination of inserted vectors it equals.
    pub fn tracking() -> Self {
        Echelon { track: true, ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in insertion order: the rank certificate.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.by_pivot.contains_key(&col)
    }

    /// Eliminate every pivot column from `r`. Returns `m` with
    /// `r_after = m * r_before` modulo the row span.
    fn reduce_row(&self, r: &mut IntRow, rc: &mut Option<SparseVec>) -> Q {
        let mut m = Q::one();
        let mut from = 0;
        loop {
            let next = r.range(from..).map(|(&c, _)| c).find(|c| self.by_pivot.contains_key(c));
            let Some(col) = next else { break };
            m *= eliminate(r, rc, &self.rows[self.by_pivot[&col]], col);
            from = col + 1;
        }
        m
    }

    /// Insert a vector; true if it raised the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (mut r, scale) = to_primitive(v);
        if r.is_empty() {
            return false;
        }
        // v = scale * r, so r = v / scale
        let mut rc = self.track.then(|| SparseVec::from([(id, Q::one() / scale)]));
        self.reduce_row(&mut r, &mut rc);
        let Some((&pivot, _)) = r.iter().next() else { return false };
        if r[&pivot].is_negative() {
            for x in r.values_mut() {
                *x = -x.clone();
            }
            if let Some(c) = rc.as_mut() {
                for x in c.values_mut() {
                    *x = -x.clone();
                }
            }
        }
        self.by_pivot.insert(pivot, self.rows.len());
        self.rows.push(Row { pivot, entries: r, combo: rc });
        true
    }

    /// Normal form of `v` modulo the row span: no pivot column survives.
    pub fn normal_form(&self, v: &SparseVec) -> SparseVec {
        let (mut r, scale) = to_primitive(v);
        let m = self.reduce_row(&mut r, &mut None);
        r.into_iter().map(|(i, x)| (i, Q::from_integer(x) * &scale / &m)).collect()
    }

    /// Coefficients `c` with `Σ c_i v_i = target` over inserted vectors, if any.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solving needs a tracking echelon");
        let (mut r, scale) = to_primitive(target);
        let mut rc = Some(SparseVec::new());
        let m = self.reduce_row(&mut r, &mut rc);
        if !r.is_empty() {
            return None;
        }
        // 0 = m * target / scale + Σ rc_i v_i
        Some(rc.unwrap().into_iter().map(|(i, x)| (i, -x * &scale / &m)).collect())
    }
}

/// Exact rank of a list of chains.
pub fn rank<K: Ord + Clone>(vectors: &[Chain<K>]) -> usize {
    let mut reg = Registry::new();
    let mut ech = Echelon::new();
    for v in vectors {
        let sv = reg.vector_mut(v);
        ech.insert(&sv);
    }
    ech.rank()
}

/// `|ambient| - rank(relators)`; every relator must live on `ambient`.
pub fn quotient_dim<K: Ord + Clone>(ambient: &[K], relators: &[Chain<K>]) -> Result<usize> {
    let reg = Registry::from_keys(ambient.iter().cloned());
    let mut ech = Echelon::new();
    for r in relators {
        ech.insert(&reg.vector(r)?);
    }
    Ok(reg.len() - ech.rank())
}

/// Coefficients expressing `target` in the span, checked by substitution.
pub fn solve_membership<K: Ord + Clone>(span: &[Chain<K>], target: &Chain<K>) -> Option<Vec<Q>> {
    let mut reg = Registry::new();
    let vecs: Vec<SparseVec> = span.iter().map(|c| reg.vector_mut(c)).collect();
    let t = reg.vector_mut(target);
    let mut ech = Echelon::tracking();
    for v in &vecs {
        ech.insert(v);
    }
    let sol = ech.solve(&t)?;
    let coeffs: Vec<Q> = (0..span.len()).map(|i| sol.get(&i).cloned().unwrap_or_else(Q::zero)).collect();
    let mut check = Chain::zero();
    for (c, s) in coeffs.iter().zip(span) {
        check.add_scaled(s, c);
    }
    assert!(check == *target, "membership solution failed re-substitution");
    Some(coeffs)
}

/// Reduces chains modulo a fixed span, keeping `preferred` columns when possible.
pub struct NormalForm<K: Ord + Clone> {
    reg: Registry<K>,
    ech: Echelon,
}

impl<K: Ord + Clone> NormalForm<K> {
    /// `eliminate_first` columns are used as pivots before any other.
    pub fn new(eliminate_first: &[K], relators: &[Chain<K>]) -> Self {
        let mut reg = Registry::from_keys(eliminate_first.iter().cloned());
        let vecs: Vec<SparseVec> = relators.iter().map(|r| reg.vector_mut(r)).collect();
        let mut ech = Echelon::new();
        for v in &vecs {
            ech.insert(v);
        }
        NormalForm { reg, ech }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn reduce(&self, c: &Chain<K>) -> Chain<K> {
        let mut reg = self.reg.clone();
        let v = reg.vector_mut(c);
        reg.chain(&self.ech.normal_form(&v))
    }

    pub fn is_zero(&self, c: &Chain<K>) -> bool {
        self.reduce(c).is_zero()
    }
}
