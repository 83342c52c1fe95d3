//! Contraction and the two one-edge extension generators.

use alloc::vec::Vec;

use super::{Bonsai, EdgeRef, Node, Variant};

/// Result of contracting an edge. Contraction can break the variant's
/// invariants (label clashes, arity), in which case `valid` is false and
/// `tree` is the raw merged shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub tree: Bonsai,
    pub valid: bool,
}

/// A larger tree together with the new edge, as a traversing index.
pub type Extension = (Bonsai, EdgeRef);

/// Contract the edge with traversing index `e` (1-based).
pub fn contract_edge(t: &Bonsai, variant: Variant, e: usize) -> Option<Contraction> {
    if e == 0 || e > t.edge_count() {
        return None;
    }
    let parent = t.parent(e).expect("non-root vertex has a parent");
    // Path of child positions from the root to `parent`.
    let mut path = Vec::new();
    let mut v = parent;
    while let Some(p) = t.parent(v) {
        path.push(t.children(p).iter().position(|&w| w == v).unwrap());
        v = p;
    }
    path.reverse();
    let pos = t.children(parent).iter().position(|&w| w == e).unwrap();

    let mut root = t.to_node();
    let mut node = &mut root;
    for i in path {
        node = &mut node.children[i].1;
    }
    let (_, merged) = node.children.remove(pos);
    for (k, c) in merged.children.into_iter().enumerate() {
        node.children.insert(pos + k, c);
    }
    let valid = node_valid(&root, variant);
    Some(Contraction {
        tree: Bonsai::from_node(&root, variant.is_labeled()),
        valid,
    })
}

fn node_valid(node: &Node, variant: Variant) -> bool {
    if !variant.arity_ok(node.children.len()) {
        return false;
    }
    if variant.is_labeled() {
        let mut seen = 0u64;
        for (l, _) in &node.children {
            if seen & (1 << l) != 0 {
                return false;
            }
            seen |= 1 << l;
        }
    }
    node.children.iter().all(|(_, c)| node_valid(c, variant))
}

fn edge_ref(t: &Bonsai, index: usize) -> EdgeRef {
    let l = t.label(index);
    EdgeRef {
        index,
        label: (l > 0).then_some(l),
    }
}

/// Trees `T'` with an edge `e'` whose contraction gives `t`, such that
/// `T'` has no more branching vertices than `t` and the upper end of `e'`
/// has exactly one child.
///
/// Each such pair comes from splitting one vertex of `t` into an upper
/// vertex with the single child edge `e'` and a lower vertex carrying the
/// original children, so there are `(edges + 1) * m` of them.
pub fn branch_fixed_extensions(t: &Bonsai, variant: Variant) -> Vec<Extension> {
    let labels = match variant {
        Variant::Labeled(m) => 1..=m,
        Variant::Clear(_) => 0..=0,
    };
    let mut out = Vec::with_capacity(t.vertex_count() * labels.clone().count());
    for v in 0..t.vertex_count() {
        for l in labels.clone() {
            let (u, e) = t.stretch(v, l);
            let r = edge_ref(&u, e);
            out.push((u, r));
        }
    }
    out
}

/// Trees obtained by hanging one new leaf below a non-tip vertex, at every
/// unused label (labeled) or every planar slot (clear-edged).
pub fn vertex_appending_extensions(t: &Bonsai, variant: Variant) -> Vec<Extension> {
    let mut out = Vec::new();
    let leaf = Bonsai::point();
    for v in 0..t.vertex_count() {
        let arity = t.arity(v);
        if arity == 0 || !variant.arity_ok(arity + 1) {
            continue;
        }
        match variant {
            Variant::Labeled(m) => {
                let used = t.used_labels(v);
                for l in 1..=m {
                    if used & (1 << l) == 0 {
                        let (u, e) = t.graft_labeled(v, l, &leaf);
                        let r = edge_ref(&u, e);
                        out.push((u, r));
                    }
                }
            }
            Variant::Clear(_) => {
                for p in 0..=arity {
                    let (u, e) = t.graft_planar(v, p, &leaf);
                    out.push((u, EdgeRef { index: e, label: None }));
                }
            }
        }
    }
    out
}
