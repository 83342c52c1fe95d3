//! Forests and the polynomial algebra they span.

use alloc::vec::Vec;
use core::fmt;

use crate::lincomb::LinComb;
use crate::scalar::Scalar;
use crate::tree::{Bonsai, ParseError, Variant};

/// A multiset of trees, kept sorted. The empty forest is the unit.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest(Vec<Bonsai>);

impl Forest {
    pub fn unit() -> Forest {
        Forest(Vec::new())
    }

    pub fn single(t: Bonsai) -> Forest {
        Forest(alloc::vec![t])
    }

    pub fn from_trees(mut trees: Vec<Bonsai>) -> Forest {
        trees.sort_unstable();
        Forest(trees)
    }

    pub fn trees(&self) -> &[Bonsai] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.0.iter().map(Bonsai::edge_count).sum()
    }

    /// Multiset union, the product of two forests.
    pub fn union(&self, other: &Forest) -> Forest {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i].clone());
                i += 1;
            } else {
                v.push(other.0[j].clone());
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Forest(v)
    }

    /// Parse `tree | tree | ...`, or `1` for the empty forest.
    pub fn parse(text: &str, variant: Variant) -> Result<Forest, ParseError> {
        if text.trim() == "1" {
            return Ok(Forest::unit());
        }
        let mut trees = Vec::new();
        let mut offset = 0;
        for part in text.split('|') {
            let t = Bonsai::parse(part, variant).map_err(|mut e| {
                e.pos += offset;
                e
            })?;
            trees.push(t);
            offset += part.len() + 1;
        }
        Ok(Forest::from_trees(trees))
    }
}

impl From<Bonsai> for Forest {
    fn from(t: Bonsai) -> Forest {
        Forest::single(t)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A basis element of the tensor square.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ForestPair(pub Forest, pub Forest);

impl fmt::Display for ForestPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.0, self.1)
    }
}

pub type AlgebraElement<K> = LinComb<Forest, K>;
pub type TensorElement<K> = LinComb<ForestPair, K>;

/// The unit `1` of the algebra.
pub fn unit<K: Scalar>() -> AlgebraElement<K> {
    LinComb::basis(Forest::unit())
}

/// A single tree as an algebra element.
pub fn tree<K: Scalar>(t: &Bonsai) -> AlgebraElement<K> {
    LinComb::basis(Forest::single(t.clone()))
}

/// Bilinear extension of forest union.
pub fn multiply<K: Scalar>(a: &AlgebraElement<K>, b: &AlgebraElement<K>) -> AlgebraElement<K> {
    let mut out = LinComb::zero();
    for (f, x) in a.iter() {
        for (g, y) in b.iter() {
            out.add_term(f.union(g), x.clone() * y.clone());
        }
    }
    out
}

/// Componentwise product in the tensor square.
pub fn tensor_multiply<K: Scalar>(a: &TensorElement<K>, b: &TensorElement<K>) -> TensorElement<K> {
    let mut out = LinComb::zero();
    for (p, x) in a.iter() {
        for (q, y) in b.iter() {
            out.add_term(ForestPair(p.0.union(&q.0), p.1.union(&q.1)), x.clone() * y.clone());
        }
    }
    out
}
