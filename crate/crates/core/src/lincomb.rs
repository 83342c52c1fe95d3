//! Finitely supported linear combinations over an ordered basis.

use alloc::collections::btree_map::{self, BTreeMap};
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

/// A map `basis -> coefficient` that never stores zero coefficients.
#[derive(Clone, PartialEq)]
pub struct LinComb<B: Ord, K> {
    terms: BTreeMap<B, K>,
}

impl<B: Ord, K> Default for LinComb<B, K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone, K: Scalar> LinComb<B, K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The combination `1 * b`.
    pub fn basis(b: B) -> Self {
        Self::term(b, K::one())
    }

    pub fn term(b: B, k: K) -> Self {
        let mut x = Self::zero();
        x.add_term(b, k);
        x
    }

    pub fn add_term(&mut self, b: B, k: K) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(e) => {
                e.insert(k);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += k;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &Self, k: &K) {
        for (b, c) in other.iter() {
            self.add_term(b.clone(), c.clone() * k.clone());
        }
    }

    pub fn coeff(&self, b: &B) -> K {
        self.terms.get(b).cloned().unwrap_or_else(K::zero)
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

    pub fn iter(&self) -> impl Iterator<Item = (&B, &K)> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn scale(&self, k: &K) -> Self {
        self.iter().map(|(b, c)| (b.clone(), c.clone() * k.clone())).collect()
    }

    /// Apply a linear map given on basis elements.
    pub fn apply<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C, K>) -> LinComb<C, K> {
        let mut out = LinComb::zero();
        for (b, k) in self.iter() {
            out.add_scaled(&f(b), k);
        }
        out
    }

    /// Re-index every term through `f`, summing coefficients that collide.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> LinComb<C, K> {
        self.iter().map(|(b, k)| (f(b), k.clone())).collect()
    }
}

impl<B: Ord, K> IntoIterator for LinComb<B, K> {
    type Item = (B, K);
    type IntoIter = btree_map::IntoIter<B, K>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<B: Ord + Clone, K: Scalar> FromIterator<(B, K)> for LinComb<B, K> {
    fn from_iter<I: IntoIterator<Item = (B, K)>>(iter: I) -> Self {
        let mut x = Self::zero();
        for (b, k) in iter {
            x.add_term(b, k);
        }
        x
    }
}

impl<B: Ord + Clone, K: Scalar> Add for LinComb<B, K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (b, k) in rhs {
            self.add_term(b, k);
        }
        self
    }
}

impl<B: Ord + Clone, K: Scalar> Add<&LinComb<B, K>> for &LinComb<B, K> {
    type Output = LinComb<B, K>;
    fn add(self, rhs: &LinComb<B, K>) -> LinComb<B, K> {
        self.clone() + rhs.clone()
    }
}

impl<B: Ord + Clone, K: Scalar> Sub for LinComb<B, K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (b, k) in rhs {
            self.add_term(b, -k);
        }
        self
    }
}

impl<B: Ord + Clone, K: Scalar> Sub<&LinComb<B, K>> for &LinComb<B, K> {
    type Output = LinComb<B, K>;
    fn sub(self, rhs: &LinComb<B, K>) -> LinComb<B, K> {
        self.clone() - rhs.clone()
    }
}

impl<B: Ord + Clone, K: Scalar> Neg for LinComb<B, K> {
    type Output = Self;
    fn neg(self) -> Self {
        self.into_iter().map(|(b, k)| (b, -k)).collect()
    }
}

impl<B: Ord + fmt::Debug, K: fmt::Debug> fmt::Debug for LinComb<B, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Prints `c1 b1 + c2 b2 + ...`, or `0`.
impl<B: Ord + fmt::Display, K: fmt::Display> fmt::Display for LinComb<B, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{k} {b}")?;
        }
        Ok(())
    }
}
