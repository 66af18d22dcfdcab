//! Formal linear combinations with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Encoded isomorphism class of a decorated graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key(pub Vec<u8>);

impl Key {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Key> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(Key)
    }
}

impl fmt::Debug for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Key({})", self.to_hex())
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Finite sum of keys with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for Chain<K> {
    fn default() -> Self {
        Chain { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Chain<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Q) -> Self {
        let mut ch = Self::zero();
        ch.add_term(k, c);
        ch
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&mut self, other: &Chain<K>) {
        self.add_scaled(other, &Q::one());
    }

    pub fn sub(&mut self, other: &Chain<K>) {
        self.add_scaled(other, &-Q::one());
    }

    pub fn scaled(&self, c: &Q) -> Chain<K> {
        let mut out = Chain::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> Chain<L> {
        let mut out = Chain::zero();
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Apply a linear map given on generators.
    pub fn flat_map<L: Ord + Clone>(&self, f: impl Fn(&K) -> Chain<L>) -> Chain<L> {
        let mut out = Chain::zero();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for Chain<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut c = Chain::zero();
        for (k, v) in iter {
            c.add_term(k, v);
        }
        c
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Chain<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, v)| (k, v.to_string()))).finish()
    }
}

/// Signed `(-2)^k`.
pub fn minus_two_pow(k: usize) -> Q {
    let mut x = BigInt::one();
    for _ in 0..k {
        x *= -2;
    }
    Q::from_integer(x)
}
