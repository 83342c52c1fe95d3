//! Classes of trees sharing a vertex-appending seedling.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::build_matrix;
use crate::complex::DiffKind;
use crate::linalg::{RankField, SparseMatrix};
use crate::tree::{enumerate, enumerate_upto, Bonsai, Variant};

/// The seedling a tree grows from, with branch-end labels normalized.
///
/// Twiggy edges (leaves below branching vertices) are removed until none
/// remain. A vertex never loses its last child this way, so the result
/// does not depend on the order of removal except for which leaf survives
/// below a vertex whose children were all leaves; that surviving edge is a
/// branch end, and its label is set to 1.
pub fn va_seedling(t: &Bonsai, variant: Variant) -> Bonsai {
    let mut s = t.clone();
    while let Some(v) = (1..s.vertex_count()).rev().find(|&v| s.is_twiggy(v)) {
        s = s.without_subtree(v);
    }
    if variant.is_labeled() {
        for v in 1..s.vertex_count() {
            if s.is_leaf(v) && s.parent(v).is_some_and(|p| s.arity(p) == 1) {
                s.set_label(v, 1);
            }
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedlingClass {
    pub seedling: Bonsai,
    pub members: Vec<Bonsai>,
}

/// Partition of the grade basis by seedling.
pub fn va_seedling_classes(variant: Variant, grade: usize) -> Vec<SeedlingClass> {
    let mut classes: BTreeMap<Bonsai, Vec<Bonsai>> = BTreeMap::new();
    for t in enumerate(variant, grade) {
        classes.entry(va_seedling(&t, variant)).or_default().push(t);
    }
    classes
        .into_iter()
        .map(|(seedling, members)| SeedlingClass { seedling, members })
        .collect()
}

/// Cohomology of the subcomplex spanned by one seedling class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDims {
    pub seedling: Bonsai,
    /// `(i, dim H^i)` for `i < max_grade`.
    pub dims: Vec<(usize, usize)>,
    /// Whether ∂ kept every basis tree inside the class.
    pub closed: bool,
}

/// Rank of the given columns, with rows renumbered compactly.
pub(crate) fn compact_rank<K: RankField>(columns: Vec<Vec<(u32, K)>>) -> usize {
    let mut index: BTreeMap<u32, u32> = BTreeMap::new();
    for c in &columns {
        for (r, _) in c {
            let n = index.len() as u32;
            index.entry(*r).or_insert(n);
        }
    }
    let columns: Vec<Vec<(u32, K)>> = columns
        .into_iter()
        .map(|c| {
            let mut c: Vec<(u32, K)> = c.into_iter().map(|(r, k)| (index[&r], k)).collect();
            c.sort_by_key(|e| e.0);
            c
        })
        .collect();
    K::rank(&SparseMatrix {
        nrows: index.len(),
        columns,
    })
}

/// Per-class vertex-appending cohomology for `i < max_grade`.
pub fn class_cohomology<K: RankField>(variant: Variant, max_grade: usize) -> Vec<ClassDims> {
    let bases = enumerate_upto(variant, max_grade);
    let mut class_of: Vec<Vec<usize>> = Vec::new();
    let mut keys: BTreeMap<Bonsai, usize> = BTreeMap::new();
    for basis in &bases {
        class_of.push(
            basis
                .iter()
                .map(|t| {
                    let n = keys.len();
                    *keys.entry(va_seedling(t, variant)).or_insert(n)
                })
                .collect(),
        );
    }
    let nclasses = keys.len();
    let mut chain = alloc::vec![alloc::vec![0usize; max_grade + 1]; nclasses];
    for (g, cls) in class_of.iter().enumerate() {
        for &c in cls {
            chain[c][g] += 1;
        }
    }
    let mut rank = alloc::vec![alloc::vec![0usize; max_grade]; nclasses];
    let mut closed = alloc::vec![true; nclasses];
    for g in 0..max_grade {
        let m = build_matrix::<K>(variant, DiffKind::VertexAppending, &bases[g], &bases[g + 1]);
        let mut per_class: Vec<Vec<Vec<(u32, K)>>> = alloc::vec![Vec::new(); nclasses];
        for (j, col) in m.columns.into_iter().enumerate() {
            let c = class_of[g][j];
            if col.iter().any(|(r, _)| class_of[g + 1][*r as usize] != c) {
                closed[c] = false;
            }
            per_class[c].push(col);
        }
        for (c, cols) in per_class.into_iter().enumerate() {
            if !cols.is_empty() {
                rank[c][g] = compact_rank(cols);
            }
        }
    }
    let mut seedlings: Vec<Bonsai> = alloc::vec![Bonsai::point(); nclasses];
    for (k, c) in keys {
        seedlings[c] = k;
    }
    let mut out: Vec<ClassDims> = (0..nclasses)
        .map(|c| ClassDims {
            seedling: seedlings[c].clone(),
            dims: (0..max_grade)
                .map(|i| {
                    let below = if i == 0 { 0 } else { rank[c][i - 1] };
                    (i, chain[c][i] - rank[c][i] - below)
                })
                .collect(),
            closed: closed[c],
        })
        .collect();
    out.sort_by(|a, b| a.seedling.cmp(&b.seedling));
    out
}
