//! Bounded-arity rooted trees.
//!
//! A [`Bonsai`] is stored as its preorder edge list. Vertex `0` is the root
//! and vertex `k >= 1` is the lower end of the `k`-th edge, so the
//! traversing order of edges coincides with the storage order. Labeled
//! trees keep siblings sorted by label, which makes the edge list a
//! canonical form; clear-edged trees store label `0` and sibling order is
//! the planar order.
//!
//! The variant is not stored in the tree. Operations that depend on it
//! take a [`Variant`] argument.

mod enumerate;
mod extend;
mod shape;
mod text;

use core::fmt;
use core::str::FromStr;

use smallvec::SmallVec;

pub use enumerate::{binomial_u128, count_trees, enumerate, enumerate_upto};
pub use extend::{
    branch_fixed_extensions, contract_edge, vertex_appending_extensions, Contraction, Extension,
};
pub use shape::{structural_predicates, Shape};
pub use text::{ParseError, ParseErrorKind};

pub(crate) use text::Node;

/// Which family of trees is in play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    /// Child edges labeled by distinct integers in `1..=m`.
    Labeled(u16),
    /// Planar, unlabeled, arity at most `m` (or unbounded for `None`).
    Clear(Option<u16>),
}

/// Largest `m` supported for labeled trees (labels are tracked in a bitmask).
pub const MAX_LABELED_M: u16 = 63;

impl Variant {
    pub fn is_labeled(self) -> bool {
        matches!(self, Variant::Labeled(_))
    }

    /// Bound on the number of children at any vertex.
    pub fn max_arity(self) -> Option<usize> {
        match self {
            Variant::Labeled(m) => Some(m as usize),
            Variant::Clear(m) => m.map(usize::from),
        }
    }

    pub(crate) fn arity_ok(self, arity: usize) -> bool {
        self.max_arity().is_none_or(|m| arity <= m)
    }

    /// Labeled `m`, or `0` for clear-edged variants.
    pub fn label_count(self) -> u16 {
        match self {
            Variant::Labeled(m) => m,
            Variant::Clear(_) => 0,
        }
    }

    /// Replace an unbounded arity by `m`; bounded variants are unchanged.
    pub fn bounded_by(self, m: u16) -> Variant {
        match self {
            Variant::Clear(None) => Variant::Clear(Some(m)),
            v => v,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Labeled(m) => write!(f, "labeled:{m}"),
            Variant::Clear(Some(m)) => write!(f, "clear:{m}"),
            Variant::Clear(None) => f.write_str("clear:inf"),
        }
    }
}

/// Error from parsing a variant such as `labeled:3` or `clear:inf`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid variant `{0}` (expected labeled:M, clear:M or clear:inf)")]
pub struct VariantError(pub alloc::string::String);

impl FromStr for Variant {
    type Err = VariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || VariantError(s.into());
        let (kind, m) = s.trim().split_once(':').ok_or_else(err)?;
        let bound = |m: &str| -> Result<u16, VariantError> {
            match m.parse::<u16>() {
                Ok(m) if m >= 1 => Ok(m),
                _ => Err(err()),
            }
        };
        match kind {
            "labeled" => {
                let m = bound(m)?;
                if m > MAX_LABELED_M {
                    return Err(err());
                }
                Ok(Variant::Labeled(m))
            }
            "clear" if m == "inf" => Ok(Variant::Clear(None)),
            "clear" => Ok(Variant::Clear(Some(bound(m)?))),
            _ => Err(err()),
        }
    }
}

/// One edge in preorder: the depth of its lower vertex and its label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub depth: u16,
    pub label: u16,
}

/// An edge of a tree, addressed by its position in the traversing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    /// 1-based position in preorder.
    pub index: usize,
    pub label: Option<u16>,
}

pub(crate) type Edges = SmallVec<[Edge; 12]>;

/// A canonical bounded-arity rooted tree.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bonsai {
    edges: Edges,
}

impl Bonsai {
    /// The one-vertex tree.
    pub fn point() -> Bonsai {
        Bonsai::default()
    }

    pub(crate) fn from_edges(edges: Edges) -> Bonsai {
        Bonsai { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of vertices, the degree of the tree.
    pub fn vertex_count(&self) -> usize {
        self.edges.len() + 1
    }

    pub fn is_point(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn depth(&self, v: usize) -> u16 {
        if v == 0 {
            0
        } else {
            self.edges[v - 1].depth
        }
    }

    /// Label of the edge above `v` (`0` for the root and for clear edges).
    pub fn label(&self, v: usize) -> u16 {
        if v == 0 {
            0
        } else {
            self.edges[v - 1].label
        }
    }

    /// One past the last vertex in the subtree of `v`.
    pub fn subtree_end(&self, v: usize) -> usize {
        let d = self.depth(v);
        let mut w = v + 1;
        while w <= self.edges.len() && self.edges[w - 1].depth > d {
            w += 1;
        }
        w
    }

    /// Children of `v` in sibling order.
    pub fn children(&self, v: usize) -> SmallVec<[usize; 8]> {
        let end = self.subtree_end(v);
        let mut out = SmallVec::new();
        let mut w = v + 1;
        while w < end {
            out.push(w);
            w = self.subtree_end(w);
        }
        out
    }

    pub fn arity(&self, v: usize) -> usize {
        let end = self.subtree_end(v);
        let mut n = 0;
        let mut w = v + 1;
        while w < end {
            n += 1;
            w = self.subtree_end(w);
        }
        n
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v >= self.edges.len() || self.edges[v].depth <= self.depth(v)
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        if v == 0 {
            return None;
        }
        let d = self.edges[v - 1].depth;
        (0..v).rev().find(|&w| self.depth(w) + 1 == d)
    }

    /// Bitmask of labels used by the children of `v`.
    pub fn used_labels(&self, v: usize) -> u64 {
        self.children(v).iter().fold(0, |acc, &w| acc | 1u64 << self.label(w))
    }

    /// The subtree hanging from `v`, re-rooted.
    pub fn subtree(&self, v: usize) -> Bonsai {
        let end = self.subtree_end(v);
        let d = self.depth(v);
        Bonsai::from_edges(
            self.edges[v..end - 1]
                .iter()
                .map(|e| Edge {
                    depth: e.depth - d,
                    label: e.label,
                })
                .collect(),
        )
    }

    /// Remove the subtree of `v` (and the edge above it).
    pub fn without_subtree(&self, v: usize) -> Bonsai {
        debug_assert!(v > 0);
        let end = self.subtree_end(v);
        let mut edges = Edges::with_capacity(self.edges.len() - (end - v));
        edges.extend_from_slice(&self.edges[..v - 1]);
        edges.extend_from_slice(&self.edges[end - 1..]);
        Bonsai::from_edges(edges)
    }

    /// Insert `sub` under a new edge of the given depth and label so that
    /// its root becomes vertex `at`.
    pub(crate) fn with_inserted(&self, at: usize, depth: u16, label: u16, sub: &Bonsai) -> Bonsai {
        let mut edges = Edges::with_capacity(self.edges.len() + sub.edges.len() + 1);
        edges.extend_from_slice(&self.edges[..at - 1]);
        edges.push(Edge { depth, label });
        edges.extend(sub.edges.iter().map(|e| Edge {
            depth: e.depth + depth,
            label: e.label,
        }));
        edges.extend_from_slice(&self.edges[at - 1..]);
        Bonsai::from_edges(edges)
    }

    /// Vertex index a new child of `v` with label `l` would receive.
    pub(crate) fn label_slot(&self, v: usize, l: u16) -> usize {
        let end = self.subtree_end(v);
        let mut w = v + 1;
        while w < end {
            if self.label(w) > l {
                return w;
            }
            w = self.subtree_end(w);
        }
        end
    }

    /// Vertex index a new child of `v` at planar position `p` would receive.
    pub(crate) fn planar_slot(&self, v: usize, p: usize) -> usize {
        let end = self.subtree_end(v);
        let mut w = v + 1;
        let mut i = 0;
        while w < end {
            if i == p {
                return w;
            }
            i += 1;
            w = self.subtree_end(w);
        }
        end
    }

    /// Attach `sub` under `v` by an edge labeled `l`. Returns the tree and
    /// the traversing index of the new edge. The caller checks admissibility.
    pub fn graft_labeled(&self, v: usize, l: u16, sub: &Bonsai) -> (Bonsai, usize) {
        let at = self.label_slot(v, l);
        (self.with_inserted(at, self.depth(v) + 1, l, sub), at)
    }

    /// Attach `sub` as the `p`-th child of `v` by a clear edge.
    pub fn graft_planar(&self, v: usize, p: usize, sub: &Bonsai) -> (Bonsai, usize) {
        let at = self.planar_slot(v, p);
        (self.with_inserted(at, self.depth(v) + 1, 0, sub), at)
    }

    /// Split `v` into an upper vertex keeping the edge above `v` and a lower
    /// vertex keeping the children of `v`, joined by a new edge labeled `l`.
    /// Returns the tree and the traversing index of the new edge.
    pub fn stretch(&self, v: usize, l: u16) -> (Bonsai, usize) {
        let end = self.subtree_end(v);
        let mut edges = Edges::with_capacity(self.edges.len() + 1);
        edges.extend_from_slice(&self.edges[..v]);
        edges.push(Edge {
            depth: self.depth(v) + 1,
            label: l,
        });
        edges.extend(self.edges[v..end - 1].iter().map(|e| Edge {
            depth: e.depth + 1,
            label: e.label,
        }));
        edges.extend_from_slice(&self.edges[end - 1..]);
        (Bonsai::from_edges(edges), v + 1)
    }

    /// Overwrite the label of the edge above `v`. Sibling order is not
    /// repaired, so this is only meant for only-children.
    pub(crate) fn set_label(&mut self, v: usize, l: u16) {
        self.edges[v - 1].label = l;
    }

    pub fn traversing_order(&self) -> alloc::vec::Vec<EdgeRef> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| EdgeRef {
                index: i + 1,
                label: (e.label > 0).then_some(e.label),
            })
            .collect()
    }

    /// Check the variant's invariants: arity bound, and for labeled trees
    /// labels in range, distinct and sorted.
    pub fn is_valid(&self, variant: Variant) -> bool {
        let m = variant.label_count();
        for v in 0..self.vertex_count() {
            let ch = self.children(v);
            if !variant.arity_ok(ch.len()) {
                return false;
            }
            let mut prev = 0;
            for &w in &ch {
                let l = self.label(w);
                if variant.is_labeled() {
                    if l == 0 || l > m || l <= prev {
                        return false;
                    }
                    prev = l;
                } else if l != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Build a canonical tree from nested children, sorting labeled siblings.
    pub(crate) fn from_node(node: &Node, labeled: bool) -> Bonsai {
        fn walk(node: &Node, depth: u16, labeled: bool, out: &mut Edges) {
            let mut order: SmallVec<[usize; 8]> = (0..node.children.len()).collect();
            if labeled {
                order.sort_by_key(|&i| node.children[i].0);
            }
            for i in order {
                let (l, child) = &node.children[i];
                out.push(Edge {
                    depth: depth + 1,
                    label: *l,
                });
                walk(child, depth + 1, labeled, out);
            }
        }
        let mut edges = Edges::new();
        walk(node, 0, labeled, &mut edges);
        Bonsai::from_edges(edges)
    }

    pub(crate) fn to_node(&self) -> Node {
        fn build(t: &Bonsai, v: usize) -> Node {
            Node {
                children: t.children(v).iter().map(|&w| (t.label(w), build(t, w))).collect(),
            }
        }
        build(self, 0)
    }
}

impl fmt::Debug for Bonsai {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
