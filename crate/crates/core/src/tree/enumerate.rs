use alloc::vec::Vec;

use super::{Bonsai, Edge, Edges, Variant};

/// All trees of the variant with exactly `edges` edges, sorted.
pub fn enumerate(variant: Variant, edges: usize) -> Vec<Bonsai> {
    enumerate_upto(variant, edges).pop().unwrap_or_default()
}

/// `enumerate(variant, n)` for every `n` in `0..=max_edges`.
pub fn enumerate_upto(variant: Variant, max_edges: usize) -> Vec<Vec<Bonsai>> {
    let mut table: Vec<Vec<Bonsai>> = Vec::with_capacity(max_edges + 1);
    for n in 0..=max_edges {
        let mut out = Vec::new();
        let mut prefix = Edges::new();
        fill(variant, &table, n, 1, 0, &mut prefix, &mut out);
        out.sort_unstable();
        table.push(out);
    }
    table
}

/// Number of trees with `edges` edges, without building them.
pub fn count_trees(variant: Variant, edges: usize) -> u128 {
    let n = edges;
    let max_ar = variant.max_arity().unwrap_or(n).min(n);
    let mut trees = alloc::vec![0u128; n + 1];
    for e in 0..=n {
        if e == 0 {
            trees[0] = 1;
            continue;
        }
        // planted[s]: a child edge plus a subtree, s edges in total.
        let planted: Vec<u128> = (0..=e).map(|s| if s == 0 { 0 } else { trees[s - 1] }).collect();
        let mut conv = alloc::vec![0u128; e + 1];
        conv[0] = 1;
        let mut total = 0u128;
        for k in 1..=max_ar.min(e) {
            let mut next = alloc::vec![0u128; e + 1];
            for a in 0..=e {
                if conv[a] == 0 {
                    continue;
                }
                for b in 1..=e - a {
                    next[a + b] += conv[a] * planted[b];
                }
            }
            conv = next;
            let ways = match variant {
                Variant::Labeled(m) => binomial_u128(m as u128, k as u128),
                Variant::Clear(_) => 1,
            };
            total += ways * conv[e];
        }
        trees[e] = total;
    }
    trees[n]
}

pub fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn fill(
    variant: Variant,
    table: &[Vec<Bonsai>],
    edges_left: usize,
    next_label: u16,
    arity: usize,
    prefix: &mut Edges,
    out: &mut Vec<Bonsai>,
) {
    if edges_left == 0 {
        out.push(Bonsai::from_edges(prefix.clone()));
        return;
    }
    if !variant.arity_ok(arity + 1) {
        return;
    }
    let labels = match variant {
        Variant::Labeled(m) => next_label..=m,
        Variant::Clear(_) => 0..=0,
    };
    for l in labels {
        for s in 0..edges_left {
            for sub in &table[s] {
                let mark = prefix.len();
                prefix.push(Edge { depth: 1, label: l });
                prefix.extend(sub.edges().iter().map(|e| Edge {
                    depth: e.depth + 1,
                    label: e.label,
                }));
                fill(variant, table, edges_left - 1 - s, l + 1, arity + 1, prefix, out);
                prefix.truncate(mark);
            }
        }
    }
}
