//! Cochains of determinanted trees and the two differentials.
//!
//! A cochain is a combination of trees, each implicitly paired with the
//! wedge of its edges in traversing order. Differentials re-express every
//! new term in that canonical orientation, picking up a sign.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::lincomb::LinComb;
use crate::scalar::{Gf2, Scalar};
use crate::tree::{branch_fixed_extensions, vertex_appending_extensions, Bonsai, EdgeRef, Extension, Variant};
use crate::TreeElement;

/// Signed tree coefficients relative to the canonical orientation.
pub type Cochain<K> = TreeElement<K>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiffKind {
    /// Splitting a vertex by a new edge, without adding branching.
    BranchFixed,
    /// Hanging a new leaf below a non-tip vertex.
    VertexAppending,
}

impl fmt::Display for DiffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiffKind::BranchFixed => "bf",
            DiffKind::VertexAppending => "va",
        })
    }
}

impl FromStr for DiffKind {
    type Err = alloc::string::String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bf" => Ok(DiffKind::BranchFixed),
            "va" => Ok(DiffKind::VertexAppending),
            _ => Err(alloc::format!("unknown differential `{s}` (expected bf or va)")),
        }
    }
}

/// Sign of a permutation given as a sequence of distinct integers.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign turning `e ∧ (other edges in order)` into the canonical wedge of `t`.
pub fn orientation_sign(t: &Bonsai, e: EdgeRef) -> i64 {
    let mut p = Vec::with_capacity(t.edge_count());
    p.push(e.index);
    p.extend((1..=t.edge_count()).filter(|&k| k != e.index));
    permutation_sign(&p)
}

pub fn extensions(t: &Bonsai, variant: Variant, kind: DiffKind) -> Vec<Extension> {
    match kind {
        DiffKind::BranchFixed => branch_fixed_extensions(t, variant),
        DiffKind::VertexAppending => vertex_appending_extensions(t, variant),
    }
}

/// `(-1)^(j-1)`, equal to [`orientation_sign`] for an edge at index `j`.
fn fast_sign(j: usize) -> i64 {
    if j % 2 == 1 {
        1
    } else {
        -1
    }
}

/// The differential of one basis tree, as `(tree, sign)` pairs before
/// collecting like terms.
pub fn differential_terms(t: &Bonsai, variant: Variant, kind: DiffKind) -> Vec<(Bonsai, i64)> {
    extensions(t, variant, kind)
        .into_iter()
        .map(|(u, e)| (u, fast_sign(e.index)))
        .collect()
}

pub fn differential<K: Scalar>(x: &Cochain<K>, variant: Variant, kind: DiffKind) -> Cochain<K> {
    let mut out = LinComb::zero();
    for (t, k) in x.iter() {
        for (u, s) in differential_terms(t, variant, kind) {
            out.add_term(u, K::from_i64(s) * k.clone());
        }
    }
    out
}

/// Branch-fixed differential.
pub fn d<K: Scalar>(x: &Cochain<K>, variant: Variant) -> Cochain<K> {
    differential(x, variant, DiffKind::BranchFixed)
}

/// Vertex-appending differential.
pub fn vad<K: Scalar>(x: &Cochain<K>, variant: Variant) -> Cochain<K> {
    differential(x, variant, DiffKind::VertexAppending)
}

/// Vertex-appending differential on plain trees mod 2, ignoring orientation.
pub fn vad_gf2(x: &TreeElement<Gf2>, variant: Variant) -> TreeElement<Gf2> {
    let mut out = LinComb::zero();
    for (t, _) in x.iter() {
        for (u, _) in vertex_appending_extensions(t, variant) {
            out.add_term(u, Gf2::ONE);
        }
    }
    out
}

/// The common edge count of all terms, if there is one.
pub fn homogeneous_grade<K: Scalar>(x: &Cochain<K>) -> Option<usize> {
    let mut grades = x.basis_elements().map(Bonsai::edge_count);
    let g = grades.next()?;
    grades.all(|h| h == g).then_some(g)
}
