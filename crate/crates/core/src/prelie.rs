//! The appending product, its bracket and associator, and partial
//! compositions at appending positions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::lincomb::LinComb;
use crate::scalar::Scalar;
use crate::tree::{enumerate_upto, Bonsai, Variant};
use crate::TreeElement;

/// Every tree obtained by hanging `a` by one new edge below some vertex of
/// `b`, with multiplicity. Labeled: each unused label at each vertex.
/// Clear-edged: each planar slot at each vertex with room.
pub fn graftings(a: &Bonsai, b: &Bonsai, variant: Variant) -> Vec<Bonsai> {
    let mut out = Vec::new();
    for v in 0..b.vertex_count() {
        let arity = b.arity(v);
        if !variant.arity_ok(arity + 1) {
            continue;
        }
        match variant {
            Variant::Labeled(m) => {
                let used = b.used_labels(v);
                for l in (1..=m).filter(|l| used & (1 << l) == 0) {
                    out.push(b.graft_labeled(v, l, a).0);
                }
            }
            Variant::Clear(_) => {
                for p in 0..=arity {
                    out.push(b.graft_planar(v, p, a).0);
                }
            }
        }
    }
    out
}

pub fn star_trees<K: Scalar>(a: &Bonsai, b: &Bonsai, variant: Variant) -> TreeElement<K> {
    graftings(a, b, variant).into_iter().map(|t| (t, K::one())).collect()
}

/// Bilinear extension of [`star_trees`].
pub fn star<K: Scalar>(a: &TreeElement<K>, b: &TreeElement<K>, variant: Variant) -> TreeElement<K> {
    let mut out = LinComb::zero();
    for (s, x) in a.iter() {
        for (t, y) in b.iter() {
            let k = x.clone() * y.clone();
            for u in graftings(s, t, variant) {
                out.add_term(u, k.clone());
            }
        }
    }
    out
}

pub fn bracket<K: Scalar>(a: &TreeElement<K>, b: &TreeElement<K>, variant: Variant) -> TreeElement<K> {
    star(a, b, variant) - star(b, a, variant)
}

/// `A(x, y, z) = x * (y * z) - (x * y) * z`.
pub fn associator<K: Scalar>(
    x: &TreeElement<K>,
    y: &TreeElement<K>,
    z: &TreeElement<K>,
    variant: Variant,
) -> TreeElement<K> {
    star(x, &star(y, z, variant), variant) - star(&star(x, y, variant), z, variant)
}

/// An open slot of a labeled tree: a vertex and a label it does not use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AppendingPosition {
    pub ordinal: usize,
    pub vertex: usize,
    pub label: u16,
}

/// Open slots in broomstick order: at each vertex run through labels
/// `1..=m`, descending into the child with that label if there is one and
/// emitting the slot otherwise.
pub fn appending_positions(t: &Bonsai, m: u16) -> Vec<AppendingPosition> {
    fn walk(t: &Bonsai, v: usize, m: u16, out: &mut Vec<AppendingPosition>) {
        let children = t.children(v);
        let mut next = children.iter().peekable();
        for l in 1..=m {
            match next.peek() {
                Some(&&w) if t.label(w) == l => {
                    next.next();
                    walk(t, w, m, out);
                }
                _ => out.push(AppendingPosition {
                    ordinal: out.len(),
                    vertex: v,
                    label: l,
                }),
            }
        }
    }
    let mut out = Vec::new();
    walk(t, 0, m, &mut out);
    out
}

/// Number of open slots, `Σ_v (m - arity(v))`.
pub fn slot_count(t: &Bonsai, m: u16) -> usize {
    (m as usize) * t.vertex_count() - t.edge_count()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompositionError {
    #[error("slot {index} out of range (tree has {count} slots)")]
    OutOfRange { index: usize, count: usize },
    #[error("partial composition needs a labeled variant")]
    NotLabeled,
}

/// `a ∘_i b`: hang `a` at the `i`-th open slot of `b`.
pub fn compose_at(a: &Bonsai, i: usize, b: &Bonsai, variant: Variant) -> Result<Bonsai, CompositionError> {
    let Variant::Labeled(m) = variant else {
        return Err(CompositionError::NotLabeled);
    };
    let count = slot_count(b, m);
    if i >= count {
        return Err(CompositionError::OutOfRange { index: i, count });
    }
    let slot = appending_positions(b, m)[i];
    Ok(b.graft_labeled(slot.vertex, slot.label, a).0)
}

/// Outcome of checking the pre-Lie system identities.
///
/// With `s(x) = slots(x) - 1`, the identities checked are, for `f`, `g`, `h`
/// and slots `i` of `f`, `j` of `g ∘_i f`:
///
/// * `j < i`: `h ∘_j (g ∘_i f) = g ∘_{i + s(h)} (h ∘_j f)`
/// * `i ≤ j ≤ i + s(g)`: `h ∘_j (g ∘_i f) = (h ∘_{j-i} g) ∘_i f`
/// * `j > i + s(g)`: `h ∘_j (g ∘_i f) = g ∘_i (h ∘_{j-s(g)} f)`
///
/// `unshifted_mismatches` counts instances where the same identities with
/// `slots(x)` in place of `s(x)` fail or index out of range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrelieSystemReport {
    pub triples: usize,
    pub before: usize,
    pub inside: usize,
    pub after: usize,
    pub unshifted_mismatches: usize,
    pub star_pairs: usize,
    pub failures: Vec<String>,
}

impl PrelieSystemReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_prelie_system(variant: Variant, max_edges: usize) -> PrelieSystemReport {
    let mut report = PrelieSystemReport::default();
    let Variant::Labeled(m) = variant else {
        report.failures.push(String::from("pre-Lie system needs a labeled variant"));
        return report;
    };
    let trees: Vec<Bonsai> = enumerate_upto(variant, max_edges).into_iter().flatten().collect();
    let comp = |a: &Bonsai, i: usize, b: &Bonsai| compose_at(a, i, b, variant).ok();

    for f in &trees {
        for g in &trees {
            report.star_pairs += 1;
            let direct: TreeElement<crate::Q> = star_trees(g, f, variant);
            let summed: TreeElement<crate::Q> =
                (0..slot_count(f, m)).map(|i| (comp(g, i, f).unwrap(), crate::Scalar::one())).collect();
            if direct != summed {
                report.failures.push(format!("star != Σ∘ for {g} * {f}"));
            }
            for h in &trees {
                report.triples += 1;
                let sg = slot_count(g, m) - 1;
                let sh = slot_count(h, m) - 1;
                for i in 0..slot_count(f, m) {
                    let gf = comp(g, i, f).unwrap();
                    for j in 0..slot_count(&gf, m) {
                        let lhs = comp(h, j, &gf).unwrap();
                        let rhs = if j < i {
                            report.before += 1;
                            comp(g, i + sh, &comp(h, j, f).unwrap())
                        } else if j <= i + sg {
                            report.inside += 1;
                            comp(&comp(h, j - i, g).unwrap(), i, f)
                        } else {
                            report.after += 1;
                            comp(g, i, &comp(h, j - sg, f).unwrap())
                        };
                        if rhs.as_ref() != Some(&lhs) {
                            report.failures.push(format!("f={f} g={g} h={h} i={i} j={j}"));
                        }
                        let unshifted = if j < i {
                            comp(h, j, f).and_then(|hf| comp(g, i + sh + 1, &hf))
                        } else if j <= i + sg + 1 {
                            comp(h, j - i, g).and_then(|hg| comp(&hg, i, f))
                        } else {
                            comp(h, j - sg - 1, f).and_then(|hf| comp(g, i, &hf))
                        };
                        if unshifted.as_ref() != Some(&lhs) {
                            report.unshifted_mismatches += 1;
                        }
                    }
                }
            }
        }
    }
    report
}
