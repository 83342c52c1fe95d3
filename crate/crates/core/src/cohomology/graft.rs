//! Grafting seedlings of clear-edged trees and their threads.
//!
//! A grafting seedling is a vertex, the one-edge tree, or a root whose
//! children are a sequence of grafting seedlings (other than the vertex)
//! separated by runs of an even number of leaves. Equivalently, a tree in
//! which every vertex with two or more children has only even runs of
//! consecutive leaf children.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::seedling::compact_rank;
use super::{ranks, table_from, CohomologyTable};
use crate::complex::{differential_terms, DiffKind};
use crate::scalar::Q;
use crate::tree::{enumerate_upto, Bonsai, Edge, Edges, Variant};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraftingSeedling {
    Vertex,
    /// Root with `children.len() + 1` runs of leaves around the children;
    /// every run is even, except the single-edge tree `slots = [0, 0]`
    /// with a `Vertex` child.
    Graft {
        slots: Vec<usize>,
        children: Vec<GraftingSeedling>,
    },
}

impl GraftingSeedling {
    /// The single-edge tree.
    pub fn edge() -> GraftingSeedling {
        GraftingSeedling::Graft {
            slots: alloc::vec![0, 0],
            children: alloc::vec![GraftingSeedling::Vertex],
        }
    }

    pub fn realize(&self) -> Bonsai {
        fn walk(s: &GraftingSeedling, depth: u16, out: &mut Edges) {
            let GraftingSeedling::Graft { slots, children } = s else {
                return;
            };
            let leaves = |n: usize, out: &mut Edges| {
                out.extend((0..n).map(|_| Edge { depth: depth + 1, label: 0 }));
            };
            for (k, c) in children.iter().enumerate() {
                leaves(slots[k], out);
                out.push(Edge { depth: depth + 1, label: 0 });
                walk(c, depth + 1, out);
            }
            leaves(slots[children.len()], out);
        }
        let mut edges = Edges::new();
        walk(self, 0, &mut edges);
        Bonsai::from_edges(edges)
    }

    pub fn edge_count(&self) -> usize {
        match self {
            GraftingSeedling::Vertex => 0,
            GraftingSeedling::Graft { slots, children } => {
                slots.iter().sum::<usize>() + children.iter().map(|c| c.edge_count() + 1).sum::<usize>()
            }
        }
    }

    /// Number of children of the root.
    pub fn arity(&self) -> usize {
        match self {
            GraftingSeedling::Vertex => 0,
            GraftingSeedling::Graft { slots, children } => slots.iter().sum::<usize>() + children.len(),
        }
    }

    /// Read a tree as a grafting seedling, if it is one.
    pub fn decompose(t: &Bonsai) -> Option<GraftingSeedling> {
        fn at(t: &Bonsai, v: usize) -> Option<GraftingSeedling> {
            let ch = t.children(v);
            if ch.is_empty() {
                return Some(GraftingSeedling::Vertex);
            }
            if ch.len() == 1 && t.is_leaf(ch[0]) {
                return Some(GraftingSeedling::edge());
            }
            let mut slots = alloc::vec![0];
            let mut children = Vec::new();
            for &w in &ch {
                if t.is_leaf(w) {
                    *slots.last_mut().unwrap() += 1;
                } else {
                    children.push(at(t, w)?);
                    slots.push(0);
                }
            }
            slots.iter().all(|s| s % 2 == 0).then_some(GraftingSeedling::Graft { slots, children })
        }
        at(t, 0)
    }
}

impl fmt::Display for GraftingSeedling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.realize(), f)
    }
}

pub fn is_grafting_seedling(t: &Bonsai) -> bool {
    GraftingSeedling::decompose(t).is_some()
}

/// All grafting seedlings with arity at most `m` and at most `max_edges`
/// edges, ordered by edge count and then by tree.
pub fn grafting_seedlings(m: u16, max_edges: usize) -> Vec<GraftingSeedling> {
    // by_edges[e]: seedlings other than the vertex with e edges.
    let mut by_edges: Vec<Vec<GraftingSeedling>> = alloc::vec![Vec::new(); max_edges + 1];
    for e in 1..=max_edges {
        let mut found = Vec::new();
        if e == 1 && m >= 1 {
            found.push(GraftingSeedling::edge());
        }
        let mut slots = alloc::vec![0];
        let mut children = Vec::new();
        words(&by_edges, m as usize, e, 0, &mut slots, &mut children, &mut found);
        found.sort_by_key(GraftingSeedling::realize);
        by_edges[e] = found;
    }
    let mut out = alloc::vec![GraftingSeedling::Vertex];
    out.extend(by_edges.into_iter().flatten());
    out
}

/// Root child sequences as words over {two leaves, a seedling}.
fn words(
    by_edges: &[Vec<GraftingSeedling>],
    m: usize,
    edges_left: usize,
    arity: usize,
    slots: &mut Vec<usize>,
    children: &mut Vec<GraftingSeedling>,
    out: &mut Vec<GraftingSeedling>,
) {
    if edges_left == 0 {
        if arity > 0 {
            out.push(GraftingSeedling::Graft {
                slots: slots.clone(),
                children: children.clone(),
            });
        }
        return;
    }
    if edges_left >= 2 && arity + 2 <= m {
        *slots.last_mut().unwrap() += 2;
        words(by_edges, m, edges_left - 2, arity + 2, slots, children, out);
        *slots.last_mut().unwrap() -= 2;
    }
    if arity < m {
        for sub in 1..edges_left {
            for c in &by_edges[sub] {
                children.push(c.clone());
                slots.push(0);
                words(by_edges, m, edges_left - 1 - sub, arity + 1, slots, children, out);
                slots.pop();
                children.pop();
            }
        }
    }
}

/// The thread of a seedling: everything reachable from it by repeatedly
/// taking trees with a nonzero coefficient in ∂ (over ℚ).
#[derive(Clone, Debug)]
pub struct Thread {
    pub seedling: Bonsai,
    /// Members by grade, for grades `0..=max_grade`.
    pub members: Vec<Vec<Bonsai>>,
    /// `(i, dim H^i)` for `i < max_grade`.
    pub dims: Vec<(usize, usize)>,
}

impl Thread {
    pub fn dim(&self, i: usize) -> usize {
        self.dims.iter().find(|d| d.0 == i).map_or(0, |d| d.1)
    }
}

fn nonzero_image(t: &Bonsai, variant: Variant) -> Vec<Bonsai> {
    let mut terms = differential_terms(t, variant, DiffKind::VertexAppending);
    terms.sort();
    let mut out = Vec::new();
    let mut i = 0;
    while i < terms.len() {
        let mut s = 0;
        let u = terms[i].0.clone();
        while i < terms.len() && terms[i].0 == u {
            s += terms[i].1;
            i += 1;
        }
        if s != 0 {
            out.push(u);
        }
    }
    out
}

/// Thread of `seed` in clear-edged `m`-bonsais through `max_grade`.
pub fn k_thread(seed: &Bonsai, m: u16, max_grade: usize) -> Thread {
    let variant = Variant::Clear(Some(m));
    let mut members: Vec<BTreeSet<Bonsai>> = alloc::vec![BTreeSet::new(); max_grade + 1];
    if seed.edge_count() <= max_grade {
        members[seed.edge_count()].insert(seed.clone());
    }
    for g in seed.edge_count()..max_grade {
        let next: Vec<Bonsai> = members[g].iter().flat_map(|t| nonzero_image(t, variant)).collect();
        members[g + 1].extend(next);
    }
    let members: Vec<Vec<Bonsai>> = members.into_iter().map(|s| s.into_iter().collect()).collect();
    let ranks: Vec<usize> = (0..max_grade)
        .map(|g| compact_rank(super::build_matrix::<Q>(variant, DiffKind::VertexAppending, &members[g], &members[g + 1]).columns))
        .collect();
    let dims = (0..max_grade)
        .map(|i| {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            (i, members[i].len() - ranks[i] - below)
        })
        .collect();
    Thread {
        seedling: seed.clone(),
        members,
        dims,
    }
}

/// `N = Σ_{k>=0} (-1)^k C(n+1, m-P-n-k)`, the multiplicity of the child
/// cohomology in a grafting-seedling thread.
pub fn multiplicity(n: usize, p: usize, m: usize) -> i128 {
    let top = m as i64 - p as i64 - n as i64;
    let mut acc = 0i128;
    for k in 0..=top.max(-1) {
        let r = top - k;
        let c = crate::tree::binomial_u128(n as u128 + 1, r as u128) as i128;
        acc += if k % 2 == 0 { c } else { -c };
    }
    acc
}

/// Thread dimensions predicted from the children's threads:
/// `dim H^i = N · Σ_{j_1+...+j_n = i-m} Π dim H^{j_k}(S_k)`, with `P` the
/// total number of leaves in the runs.
///
/// `None` for the vertex, for the single edge and whenever a child is the
/// vertex, where runs around children are not separated.
pub fn predicted_thread_dims(s: &GraftingSeedling, m: u16, max_grade: usize) -> Option<Vec<(usize, i128)>> {
    let GraftingSeedling::Graft { slots, children } = s else {
        return None;
    };
    if children.contains(&GraftingSeedling::Vertex) {
        return None;
    }
    let m_us = m as usize;
    let n = children.len();
    let p: usize = slots.iter().sum();
    let big_n = multiplicity(n, p, m_us);
    let child_bound = max_grade.saturating_sub(m_us);
    // conv[j] = Σ_{j_1+...+j_k = j} Π dim H^{j_k}(S_k)
    let mut conv = alloc::vec![0i128; child_bound + 1];
    conv[0] = 1;
    for c in children {
        let th = k_thread(&c.realize(), m, child_bound);
        let mut next = alloc::vec![0i128; child_bound + 1];
        for (a, &x) in conv.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, slot) in next.iter_mut().enumerate().skip(a) {
                if b - a < child_bound {
                    *slot += x * th.dim(b - a) as i128;
                }
            }
        }
        conv = next;
    }
    Some(
        (0..max_grade)
            .map(|i| {
                let d = if i >= m_us && i - m_us <= child_bound { big_n * conv[i - m_us] } else { 0 };
                (i, d)
            })
            .collect(),
    )
}

/// Global clear-edged vertex-appending cohomology over ℚ against the sum
/// over grafting-seedling threads.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub global: CohomologyTable,
    pub threads: Vec<(GraftingSeedling, Thread)>,
    /// `(i, Σ_S dim H^i(S))` for `i < max_grade`.
    pub summed: Vec<(usize, usize)>,
    /// No tree lies in two threads.
    pub disjoint: bool,
    /// Every tree through `max_grade` lies in some thread.
    pub covering: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.disjoint && self.covering && self.global.dims == self.summed
    }
}

pub fn decomposition(m: u16, max_grade: usize) -> Decomposition {
    let variant = Variant::Clear(Some(m));
    let bases = enumerate_upto(variant, max_grade);
    let global = table_from(
        variant,
        DiffKind::VertexAppending,
        <Q as crate::Scalar>::NAME,
        &bases,
        ranks::<Q>(variant, DiffKind::VertexAppending, &bases),
    );
    let threads: Vec<(GraftingSeedling, Thread)> = grafting_seedlings(m, max_grade)
        .into_iter()
        .map(|s| {
            let th = k_thread(&s.realize(), m, max_grade);
            (s, th)
        })
        .collect();
    let mut seen: BTreeSet<&Bonsai> = BTreeSet::new();
    let mut disjoint = true;
    for (_, th) in &threads {
        for t in th.members.iter().flatten() {
            disjoint &= seen.insert(t);
        }
    }
    let covering = bases.iter().flatten().all(|t| seen.contains(t));
    let summed = (0..max_grade)
        .map(|i| (i, threads.iter().map(|(_, th)| th.dim(i)).sum()))
        .collect();
    Decomposition {
        global,
        threads,
        summed,
        disjoint,
        covering,
    }
}
