//! Deviations of the appending product from being compatible with ∂,
//! computed on plain trees mod 2.

use crate::complex::vad_gf2;
use crate::lincomb::LinComb;
use crate::prelie::star;
use crate::scalar::Gf2;
use crate::tree::{Bonsai, Variant};
use crate::TreeElement;

/// `a *₁ b = ∂(a * b) + (∂a) * b + a * (∂b)`.
pub fn star1(a: &TreeElement<Gf2>, b: &TreeElement<Gf2>, variant: Variant) -> TreeElement<Gf2> {
    deviate(1, a, b, variant)
}

/// `a *₂ b = ∂(a *₁ b) + (∂a) *₁ b + a *₁ (∂b)`.
pub fn star2(a: &TreeElement<Gf2>, b: &TreeElement<Gf2>, variant: Variant) -> TreeElement<Gf2> {
    deviate(2, a, b, variant)
}

/// The `k`-th deviation; `k = 0` is the product itself.
pub fn deviate(k: usize, a: &TreeElement<Gf2>, b: &TreeElement<Gf2>, variant: Variant) -> TreeElement<Gf2> {
    if k == 0 {
        return star(a, b, variant);
    }
    let da = vad_gf2(a, variant);
    let db = vad_gf2(b, variant);
    vad_gf2(&deviate(k - 1, a, b, variant), variant) + deviate(k - 1, &da, b, variant) + deviate(k - 1, a, &db, variant)
}

/// `a *₁ b` for labeled trees without expanding ∂: hang `a` from each tip
/// of `b` next to a new leaf, and from each non-tip of `b` through a new
/// two-edge ladder, over all admissible labels.
pub fn star1_closed_form(a: &Bonsai, b: &Bonsai, m: u16) -> TreeElement<Gf2> {
    let mut out = LinComb::zero();
    let leaf = Bonsai::point();
    for v in 0..b.vertex_count() {
        let arity = b.arity(v);
        if arity == 0 {
            for x in 1..=m {
                for y in (1..=m).filter(|&y| y != x) {
                    let (t, _) = b.graft_labeled(v, x, a);
                    let (t, _) = t.graft_labeled(v, y, &leaf);
                    out.add_term(t, Gf2::ONE);
                }
            }
        } else if arity < m as usize {
            let used = b.used_labels(v);
            for x in (1..=m).filter(|x| used & (1 << x) == 0) {
                for y in 1..=m {
                    let (rung, _) = leaf.graft_labeled(0, y, a);
                    let (t, _) = b.graft_labeled(v, x, &rung);
                    out.add_term(t, Gf2::ONE);
                }
            }
        }
    }
    out
}
