//! Simple cuts, coproduct, antipode and counit.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::{multiply, tensor_multiply, AlgebraElement, Forest, ForestPair, TensorElement};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;
use crate::tree::{enumerate_upto, Bonsai, Variant};

/// A set of edges, no two on a common root path, with the pieces it
/// produces: the cut-off branches and the trunk containing the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCut {
    /// Traversing indices of the cut edges, increasing.
    pub cut_edges: Vec<usize>,
    pub pruned: Forest,
    pub trunk: Bonsai,
}

/// Edge sets of all simple cuts of `t`, including the empty cut.
pub fn cut_sets(t: &Bonsai) -> Vec<Vec<usize>> {
    fn below(t: &Bonsai, v: usize) -> Vec<Vec<usize>> {
        let mut acc: Vec<Vec<usize>> = alloc::vec![Vec::new()];
        for w in t.children(v) {
            let mut options = below(t, w);
            options.push(alloc::vec![w]);
            let mut next = Vec::with_capacity(acc.len() * options.len());
            for a in &acc {
                for o in &options {
                    let mut c = a.clone();
                    c.extend_from_slice(o);
                    next.push(c);
                }
            }
            acc = next;
        }
        acc
    }
    let mut cuts = below(t, 0);
    for c in &mut cuts {
        c.sort_unstable();
    }
    cuts
}

/// Split `t` along a set of antichain edges.
pub fn apply_cut(t: &Bonsai, cut: &[usize]) -> (Forest, Bonsai) {
    let pruned = Forest::from_trees(cut.iter().map(|&v| t.subtree(v)).collect());
    let mut trunk = t.clone();
    for &v in cut.iter().rev() {
        trunk = trunk.without_subtree(v);
    }
    (pruned, trunk)
}

pub fn simple_cuts(t: &Bonsai) -> Vec<SimpleCut> {
    cut_sets(t)
        .into_iter()
        .map(|cut_edges| {
            let (pruned, trunk) = apply_cut(t, &cut_edges);
            SimpleCut {
                cut_edges,
                pruned,
                trunk,
            }
        })
        .collect()
}

/// `Δ(t) = t ⊗ 1 + Σ_c P_c ⊗ R_c`, the sum running over all simple cuts.
pub fn coproduct_tree<K: Scalar>(t: &Bonsai) -> TensorElement<K> {
    let mut out = LinComb::basis(ForestPair(Forest::single(t.clone()), Forest::unit()));
    for c in simple_cuts(t) {
        out.add_term(ForestPair(c.pruned, Forest::single(c.trunk)), K::one());
    }
    out
}

pub fn coproduct<K: Scalar>(x: &AlgebraElement<K>) -> TensorElement<K> {
    let mut out = LinComb::zero();
    for (f, k) in x.iter() {
        let mut acc = LinComb::basis(ForestPair(Forest::unit(), Forest::unit()));
        for t in f.trees() {
            acc = tensor_multiply(&acc, &coproduct_tree(t));
        }
        out.add_scaled(&acc, k);
    }
    out
}

/// Coefficient of the empty forest.
pub fn counit<K: Scalar>(x: &AlgebraElement<K>) -> K {
    x.coeff(&Forest::unit())
}

/// Antipode with a memo table local to one evaluation.
#[derive(Default)]
pub struct Antipode<K> {
    memo: BTreeMap<Bonsai, AlgebraElement<K>>,
}

impl<K: Scalar> Antipode<K> {
    pub fn new() -> Self {
        Antipode {
            memo: BTreeMap::new(),
        }
    }

    /// `S(t) = -t - Σ_{c ≠ ∅} S(P_c) R_c`.
    pub fn tree(&mut self, t: &Bonsai) -> AlgebraElement<K> {
        if let Some(s) = self.memo.get(t) {
            return s.clone();
        }
        let mut out: AlgebraElement<K> = LinComb::term(Forest::single(t.clone()), -K::one());
        for c in cut_sets(t).into_iter().filter(|c| !c.is_empty()) {
            let (pruned, trunk) = apply_cut(t, &c);
            let s = self.forest(&pruned);
            let r = LinComb::basis(Forest::single(trunk));
            out.add_scaled(&multiply(&s, &r), &-K::one());
        }
        self.memo.insert(t.clone(), out.clone());
        out
    }

    pub fn forest(&mut self, f: &Forest) -> AlgebraElement<K> {
        let mut acc = LinComb::basis(Forest::unit());
        for t in f.trees() {
            acc = multiply(&acc, &self.tree(t));
        }
        acc
    }

    pub fn apply(&mut self, x: &AlgebraElement<K>) -> AlgebraElement<K> {
        let mut out = LinComb::zero();
        for (f, k) in x.iter() {
            out.add_scaled(&self.forest(f), k);
        }
        out
    }
}

pub fn antipode<K: Scalar>(x: &AlgebraElement<K>) -> AlgebraElement<K> {
    Antipode::new().apply(x)
}

type Triple = (Forest, Forest, Forest);

fn left_coassoc<K: Scalar>(t: &Bonsai) -> LinComb<Triple, K> {
    let mut out = LinComb::zero();
    for (ForestPair(p, r), k) in coproduct_tree::<K>(t) {
        for (ForestPair(a, b), j) in coproduct(&LinComb::<Forest, K>::basis(p)) {
            out.add_term((a, b, r.clone()), k.clone() * j);
        }
    }
    out
}

fn right_coassoc<K: Scalar>(t: &Bonsai) -> LinComb<Triple, K> {
    let mut out = LinComb::zero();
    for (ForestPair(p, r), k) in coproduct_tree::<K>(t) {
        for (ForestPair(a, b), j) in coproduct(&LinComb::<Forest, K>::basis(r)) {
            out.add_term((p.clone(), a, b), k.clone() * j);
        }
    }
    out
}

/// Δ of a forest from cuts of its components: every tree either moves
/// whole to the left factor or is cut, its trunk going right.
fn forest_coproduct_by_cuts<K: Scalar>(f: &Forest) -> TensorElement<K> {
    let mut terms: Vec<(Vec<Bonsai>, Vec<Bonsai>)> = alloc::vec![(Vec::new(), Vec::new())];
    for t in f.trees() {
        let mut next = Vec::new();
        for (l, r) in &terms {
            let mut whole = l.clone();
            whole.push(t.clone());
            next.push((whole, r.clone()));
            for c in cut_sets(t) {
                let (p, trunk) = apply_cut(t, &c);
                let mut l2 = l.clone();
                l2.extend_from_slice(p.trees());
                let mut r2 = r.clone();
                r2.push(trunk);
                next.push((l2, r2));
            }
        }
        terms = next;
    }
    terms
        .into_iter()
        .map(|(l, r)| (ForestPair(Forest::from_trees(l), Forest::from_trees(r)), K::one()))
        .collect()
}

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub input: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HopfReport {
    pub trees_checked: usize,
    pub pairs_checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check coassociativity, both counit laws, both antipode laws on every
/// tree with at most `max_edges` edges, and multiplicativity of Δ on every
/// pair of trees with at most `max_edges` edges together.
pub fn check_hopf_axioms<K: Scalar>(variant: Variant, max_edges: usize) -> HopfReport {
    let table = enumerate_upto(variant, max_edges);
    let mut report = HopfReport::default();
    let mut s = Antipode::<K>::new();
    let fail = |report: &mut HopfReport, axiom, input: String| {
        report.failures.push(AxiomFailure { axiom, input });
    };
    for t in table.iter().flatten() {
        report.trees_checked += 1;
        let x: AlgebraElement<K> = LinComb::basis(Forest::single(t.clone()));
        if left_coassoc::<K>(t) != right_coassoc::<K>(t) {
            fail(&mut report, "coassociativity", t.to_string());
        }
        let delta = coproduct_tree::<K>(t);
        let mut left_unit = LinComb::zero();
        let mut right_unit = LinComb::zero();
        let mut s_id = LinComb::zero();
        let mut id_s = LinComb::zero();
        for (ForestPair(p, r), k) in delta.iter() {
            if p.is_empty() {
                left_unit.add_term(r.clone(), k.clone());
            }
            if r.is_empty() {
                right_unit.add_term(p.clone(), k.clone());
            }
            let pe = LinComb::basis(p.clone());
            let re = LinComb::basis(r.clone());
            s_id.add_scaled(&multiply(&s.forest(p), &re), k);
            id_s.add_scaled(&multiply(&pe, &s.forest(r)), k);
        }
        if left_unit != x {
            fail(&mut report, "left counit", t.to_string());
        }
        if right_unit != x {
            fail(&mut report, "right counit", t.to_string());
        }
        let eps = LinComb::term(Forest::unit(), counit(&x));
        if s_id != eps {
            fail(&mut report, "m(S⊗id)Δ = ε", t.to_string());
        }
        if id_s != eps {
            fail(&mut report, "m(id⊗S)Δ = ε", t.to_string());
        }
    }
    for (n1, row) in table.iter().enumerate() {
        for t1 in row {
            for row2 in &table[..=max_edges - n1] {
                for t2 in row2 {
                    report.pairs_checked += 1;
                    let f = Forest::from_trees(alloc::vec![t1.clone(), t2.clone()]);
                    let product = tensor_multiply(&coproduct_tree::<K>(t1), &coproduct_tree::<K>(t2));
                    let direct = forest_coproduct_by_cuts::<K>(&f);
                    let via_elem = coproduct::<K>(&LinComb::basis(f.clone()));
                    if product != direct || via_elem != direct {
                        fail(&mut report, "Δ multiplicative", f.to_string());
                    }
                }
            }
        }
    }
    report
}
