//! Independent reference implementations used only by tests.

#![allow(dead_code)]

use std::collections::HashMap;

use bonsai_core::hopf::apply_cut;
use bonsai_core::linalg::SparseMatrix;
use bonsai_core::scalar::Scalar;
use bonsai_core::tree::{contract_edge, enumerate, structural_predicates};
use bonsai_core::{Bonsai, Gf2, Variant, Q};

/// Number of trees with `n` edges: a root picks a set of child slots
/// (a label subset, or a number of planar children) and distributes the
/// remaining edges among planted subtrees.
pub fn count_trees(variant: Variant, n: usize) -> u128 {
    fn planted_seq(k: usize, e: usize, memo: &mut HashMap<(usize, usize), u128>, trees: &dyn Fn(usize, &mut HashMap<(usize, usize), u128>) -> u128) -> u128 {
        if k == 0 {
            return (e == 0) as u128;
        }
        if let Some(&x) = memo.get(&(k, e)) {
            return x;
        }
        let mut total = 0;
        for first in 1..=e {
            total += trees(first - 1, memo) * planted_seq(k - 1, e - first, memo, trees);
        }
        memo.insert((k, e), total);
        total
    }
    fn trees(variant: Variant, n: usize, cache: &mut Vec<Option<u128>>) -> u128 {
        if let Some(x) = cache[n] {
            return x;
        }
        let mut memo = HashMap::new();
        let known: Vec<u128> = (0..n).map(|s| trees(variant, s, cache)).collect();
        let lookup = |s: usize, _: &mut HashMap<(usize, usize), u128>| known[s];
        let total = match variant {
            Variant::Labeled(m) => (0u64..1 << m)
                .map(|subset| planted_seq(subset.count_ones() as usize, n, &mut memo, &lookup))
                .sum(),
            Variant::Clear(bound) => {
                let max = bound.map_or(n, |m| (m as usize).min(n));
                (0..=max).map(|k| planted_seq(k, n, &mut memo, &lookup)).sum()
            }
        };
        cache[n] = Some(total);
        total
    }
    let mut cache = vec![None; n + 1];
    trees(variant, n, &mut cache)
}

fn branching(t: &Bonsai) -> usize {
    structural_predicates(t).branching_vertices.len()
}

/// Branch-fixed extensions found by contracting every edge of every tree
/// one size up.
pub fn branch_fixed_by_filter(t: &Bonsai, variant: Variant) -> Vec<(Bonsai, usize)> {
    let mut out = Vec::new();
    for big in enumerate(variant, t.edge_count() + 1) {
        for e in 1..=big.edge_count() {
            let c = contract_edge(&big, variant, e).unwrap();
            let upper = big.parent(e).unwrap();
            if c.valid && c.tree == *t && branching(&big) <= branching(t) && big.arity(upper) == 1 {
                out.push((big.clone(), e));
            }
        }
    }
    out.sort();
    out
}

/// Vertex-appending extensions found the same way: the contracted edge
/// must end in a leaf whose parent keeps another child.
pub fn vertex_appending_by_filter(t: &Bonsai, variant: Variant) -> Vec<(Bonsai, usize)> {
    let mut out = Vec::new();
    for big in enumerate(variant, t.edge_count() + 1) {
        for e in 1..=big.edge_count() {
            let upper = big.parent(e).unwrap();
            if !big.is_leaf(e) || big.arity(upper) < 2 {
                continue;
            }
            let c = contract_edge(&big, variant, e).unwrap();
            if c.valid && c.tree == *t {
                out.push((big.clone(), e));
            }
        }
    }
    out.sort();
    out
}

/// All edge subsets with no two edges on one root path.
pub fn cuts_by_subsets(t: &Bonsai) -> Vec<Vec<usize>> {
    let n = t.edge_count();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let edges: Vec<usize> = (1..=n).filter(|e| mask & (1 << (e - 1)) != 0).collect();
        let ok = edges.iter().all(|&e| {
            let mut v = t.parent(e);
            while let Some(p) = v {
                if edges.contains(&p) {
                    return false;
                }
                v = t.parent(p);
            }
            true
        });
        if ok {
            out.push(edges);
        }
    }
    out
}

/// Number of single edges of `t` whose branch is `branch` and trunk `trunk`.
pub fn single_cut_count(branch: &Bonsai, trunk: &Bonsai, t: &Bonsai) -> usize {
    (1..=t.edge_count())
        .filter(|&e| t.subtree(e) == *branch && t.without_subtree(e) == *trunk)
        .count()
}

/// Number of ordered pairs of distinct edges `(e, f)` forming a simple cut
/// of `t` with branches `first` at `e`, `second` at `f`, and trunk `trunk`.
pub fn double_cut_count(first: &Bonsai, second: &Bonsai, trunk: &Bonsai, t: &Bonsai) -> usize {
    let mut n = 0;
    for e in 1..=t.edge_count() {
        for f in 1..=t.edge_count() {
            if e == f || !is_antichain(t, e, f) {
                continue;
            }
            let mut pair = [e, f];
            pair.sort();
            let (_, r) = apply_cut(t, &pair);
            if t.subtree(e) == *first && t.subtree(f) == *second && r == *trunk {
                n += 1;
            }
        }
    }
    n
}

fn is_antichain(t: &Bonsai, e: usize, f: usize) -> bool {
    let above = |a: usize, b: usize| {
        let mut v = t.parent(b);
        while let Some(p) = v {
            if p == a {
                return true;
            }
            v = t.parent(p);
        }
        false
    };
    !above(e, f) && !above(f, e)
}

/// Rank by dense Gaussian elimination over ℚ.
pub fn dense_rank_q(m: &SparseMatrix<Q>) -> usize {
    let mut a: Vec<Vec<Q>> = vec![vec![Q::zero(); m.ncols()]; m.nrows];
    for (c, col) in m.columns.iter().enumerate() {
        for (r, x) in col {
            a[*r as usize][c] = x.clone();
        }
    }
    dense_rank(a)
}

pub fn dense_rank_gf2(m: &SparseMatrix<Gf2>) -> usize {
    let mut a = vec![vec![Gf2::ZERO; m.ncols()]; m.nrows];
    for (c, col) in m.columns.iter().enumerate() {
        for (r, x) in col {
            a[*r as usize][c] = *x;
        }
    }
    dense_rank(a)
}

fn dense_rank<K: Scalar>(mut a: Vec<Vec<K>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][c].inv().unwrap();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone() * inv.clone();
                for k in c..cols {
                    let x = a[rank][k].clone();
                    a[r][k] = a[r][k].clone() - f.clone() * x;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn lab(s: &str, m: u16) -> Bonsai {
    Bonsai::parse(s, Variant::Labeled(m)).unwrap()
}

pub fn clear(s: &str) -> Bonsai {
    Bonsai::parse(s, Variant::Clear(None)).unwrap()
}
