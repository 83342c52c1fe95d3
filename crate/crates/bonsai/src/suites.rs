//! Verification suites behind `bonsai verify`. Each suite has default
//! bounds and accepts overrides; every check reports the number of inputs
//! it covered and, on failure, the first offending input in enumeration
//! order.

use std::collections::HashMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use bonsai_core::algebra::{multiply, tensor_multiply};
use bonsai_core::cohomology::{
    cohomology_dims, decomposition, grafting_seedlings, k_thread, predicted_thread_dims, predicted_va_dims,
};
use bonsai_core::complex::{d, vad, vad_gf2, DiffKind};
use bonsai_core::deviation::{star1, star1_closed_form, star2};
use bonsai_core::hopf::{antipode, check_hopf_axioms, coproduct, counit, simple_cuts};
use bonsai_core::prelie::{appending_positions, associator, bracket, check_prelie_system, compose_at, slot_count};
use bonsai_core::tree::enumerate_upto;
use bonsai_core::{AlgebraElement, Bonsai, Forest, Gf2, Scalar, TreeElement, Variant, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Hopf,
    Prelie,
    Operad,
    Bf,
    Va,
    Cohomology,
    Deviations,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Hopf, Suite::Prelie, Suite::Operad, Suite::Bf, Suite::Va, Suite::Cohomology, Suite::Deviations];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Prelie => "prelie",
            Suite::Operad => "operad",
            Suite::Bf => "bf",
            Suite::Va => "va",
            Suite::Cohomology => "cohomology",
            Suite::Deviations => "deviations",
        }
    }

    pub fn run(self, o: &Overrides) -> SuiteReport {
        let checks = match self {
            Suite::Hopf => hopf(o),
            Suite::Prelie => prelie(o),
            Suite::Operad => operad(o),
            Suite::Bf => branch_fixed(o),
            Suite::Va => vertex_appending(o),
            Suite::Cohomology => cohomology(o),
            Suite::Deviations => deviations(o),
        };
        SuiteReport { suite: self, checks }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Command-line overrides of a suite's default bounds.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub variant: Option<Variant>,
    pub max_edges: Option<usize>,
    pub max_grade: Option<usize>,
    pub seed: u64,
}

impl Overrides {
    fn variants(&self, defaults: &[Variant]) -> Vec<Variant> {
        match self.variant {
            Some(v) => vec![v],
            None => defaults.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub unit: &'static str,
    pub counterexample: Option<String>,
    pub notes: Vec<String>,
}

impl Check {
    fn new(name: String, unit: &'static str) -> Check {
        Check { name, checked: 0, unit, counterexample: None, notes: Vec::new() }
    }

    /// Record one input; keep the first failure only.
    fn record(&mut self, failure: Option<String>) {
        self.checked += 1;
        if self.counterexample.is_none() {
            self.counterexample = failure;
        }
    }

    fn fail(&mut self, message: String) {
        if self.counterexample.is_none() {
            self.counterexample = Some(message);
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn trees_upto(v: Variant, n: usize) -> Vec<Bonsai> {
    enumerate_upto(v, n).into_iter().flatten().collect()
}

/// Ordered pairs of trees with at most `total` edges between them,
/// smallest totals first.
fn pairs(v: Variant, total: usize) -> Vec<(Bonsai, Bonsai)> {
    let table = enumerate_upto(v, total);
    let mut out = Vec::new();
    for sum in 0..=total {
        for (n, row) in table.iter().enumerate().take(sum + 1) {
            for a in row {
                for b in &table[sum - n] {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

fn hopf(o: &Overrides) -> Vec<Check> {
    let n = o.max_edges.unwrap_or(4);
    let mut checks = Vec::new();
    for v in o.variants(&[Variant::Labeled(2), Variant::Clear(Some(3))]) {
        let report = check_hopf_axioms::<Q>(v, n);
        let mut c = Check::new(format!("Hopf axioms on {v} trees with at most {n} edges"), "trees");
        c.checked = report.trees_checked;
        c.notes.push(format!("{} pairs checked for multiplicativity", report.pairs_checked));
        if let Some(f) = report.failures.first() {
            c.fail(format!("{} fails on {}", f.axiom, f.input));
        }
        checks.push(c);
        checks.push(random_combinations(v, n.min(3), o.seed));
    }
    checks
}

/// Δ, S and ε on random linear combinations of small forests.
fn random_combinations(v: Variant, n: usize, seed: u64) -> Check {
    let mut c = Check::new(format!("random combinations of {v} forests (seed {seed})"), "samples");
    let trees = trees_upto(v, n);
    let mut rng = StdRng::seed_from_u64(seed);
    let sample = |rng: &mut StdRng| {
        let mut x = AlgebraElement::<Q>::zero();
        for _ in 0..rng.random_range(1..=3) {
            let k = rng.random_range(0..=2);
            let f = Forest::from_trees((0..k).map(|_| trees[rng.random_range(0..trees.len())].clone()).collect());
            x.add_term(f, Q::from_i64(rng.random_range(-3..=3)));
        }
        x
    };
    for _ in 0..32 {
        let x = sample(&mut rng);
        let y = sample(&mut rng);
        let xy = multiply(&x, &y);
        let failure = if coproduct(&xy) != tensor_multiply(&coproduct(&x), &coproduct(&y)) {
            Some(format!("Δ(xy) != Δ(x)Δ(y) for x = {x}, y = {y}"))
        } else if antipode(&xy) != multiply(&antipode(&x), &antipode(&y)) {
            Some(format!("S(xy) != S(x)S(y) for x = {x}, y = {y}"))
        } else if counit(&xy) != counit(&x) * counit(&y) {
            Some(format!("ε(xy) != ε(x)ε(y) for x = {x}, y = {y}"))
        } else {
            None
        };
        c.record(failure);
    }
    c
}

/// `(a, b, trunk) -> Σ_t n t`, where `n` counts ordered pairs of cut
/// edges of `t` cutting out `a` and then `b`, leaving `trunk`.
fn double_cuts(v: Variant, n: usize) -> HashMap<(Bonsai, Bonsai, Bonsai), TreeElement<Q>> {
    let mut out: HashMap<_, TreeElement<Q>> = HashMap::new();
    for t in trees_upto(v, 3 * n + 2) {
        for cut in simple_cuts(&t) {
            if cut.cut_edges.len() != 2 || cut.trunk.edge_count() > n {
                continue;
            }
            let [a, b] = cut.pruned.trees() else { unreachable!() };
            if a.edge_count() > n || b.edge_count() > n {
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                out.entry((x.clone(), y.clone(), cut.trunk.clone()))
                    .or_default()
                    .add_term(t.clone(), Q::one());
            }
        }
    }
    out
}

fn prelie(o: &Overrides) -> Vec<Check> {
    let n = o.max_edges.unwrap_or(2);
    let mut checks = Vec::new();
    for v in o.variants(&[Variant::Labeled(2)]) {
        let trees = trees_upto(v, n);
        let expected = double_cuts(v, n);
        let z = |t: &Bonsai| TreeElement::<Q>::basis(t.clone());
        let mut sym = Check::new(format!("associator symmetry on {v} triples, at most {n} edges each"), "triples");
        let mut jac = Check::new(format!("Jacobi identity on {v} triples, at most {n} edges each"), "triples");
        let mut cuts = Check::new(format!("associator against double-cut counts on {v}"), "triples");
        for a in &trees {
            for b in &trees {
                for c in &trees {
                    let abc = associator(&z(a), &z(b), &z(c), v);
                    let bac = associator(&z(b), &z(a), &z(c), v);
                    sym.record((abc != bac).then(|| format!("A({a}, {b}, {c}) != A({b}, {a}, {c})")));
                    let (x, y, w) = (z(a), z(b), z(c));
                    let j = bracket(&x, &bracket(&y, &w, v), v)
                        + bracket(&y, &bracket(&w, &x, v), v)
                        + bracket(&w, &bracket(&x, &y, v), v);
                    jac.record((!j.is_zero()).then(|| format!("Jacobi sum {j} for {a}, {b}, {c}")));
                    let want = expected.get(&(a.clone(), b.clone(), c.clone())).cloned().unwrap_or_default();
                    cuts.record((abc != want).then(|| format!("A({a}, {b}, {c}) = {abc}, cuts give {want}")));
                }
            }
        }
        checks.extend([sym, jac, cuts]);
    }
    checks
}

fn slots(t: &Bonsai, m: u16) -> Vec<(usize, u16)> {
    appending_positions(t, m).into_iter().map(|p| (p.vertex, p.label)).collect()
}

fn operad(o: &Overrides) -> Vec<Check> {
    let l3 = Variant::Labeled(3);
    let parse = |s: &str| Bonsai::parse(s, l3).expect("valid tree");
    let mut fig = Check::new(String::from("appending positions and composition on 3-bonsai examples"), "examples");

    let t = parse("(1:(1:(1:.,2:.),3:.),2:.,3:.)");
    let want = [
        (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (2, 3), (1, 2),
        (5, 1), (5, 2), (5, 3), (6, 1), (6, 2), (6, 3), (7, 1), (7, 2), (7, 3),
    ];
    let got = slots(&t, 3);
    fig.record((got != want).then(|| format!("positions of {t}: {got:?}")));

    let t2 = parse("(1:.,2:.,3:.)");
    let got = slots(&t2, 3);
    let leaves_only = got.len() == 9 && got.iter().all(|&(v, _)| t2.is_leaf(v));
    fig.record((!leaves_only).then(|| format!("positions of {t2}: {got:?}")));

    let t1 = parse("(1:.,3:.)");
    let got = slots(&t1, 3);
    fig.record((got.len() != 7 || got[3] != (0, 2)).then(|| format!("positions of {t1}: {got:?}")));

    let composed = compose_at(&t1, 4, &t2, l3);
    let want = parse("(1:.,2:(2:(1:.,3:.)),3:.)");
    let ok = composed.as_ref().is_ok_and(|c| *c == want && slot_count(c, 3) == 15);
    fig.record((!ok).then(|| format!("{t1} at slot 4 of {t2} gave {composed:?}")));

    let mut checks = vec![fig];
    let n = o.max_edges.unwrap_or(2);
    for v in o.variants(&[Variant::Labeled(2)]) {
        let report = check_prelie_system(v, n);
        let mut c = Check::new(format!("pre-Lie system identities on {v} triples, at most {n} edges each"), "triples");
        c.checked = report.triples;
        c.notes.push(format!(
            "{} compositions before, {} inside, {} after the first slot",
            report.before, report.inside, report.after
        ));
        c.notes.push(format!("{} mismatches without the degree shift", report.unshifted_mismatches));
        if let Some(f) = report.failures.first() {
            c.fail(f.clone());
        }
        let mut star = Check::new(format!("star equals the sum of partial compositions on {v}"), "pairs");
        star.checked = report.star_pairs;
        if let Some(f) = report.failures.iter().find(|f| f.starts_with("star")) {
            star.fail(f.clone());
        }
        checks.extend([star, c]);
    }
    checks
}

fn branch_fixed(o: &Overrides) -> Vec<Check> {
    let n = o.max_edges.unwrap_or(5);
    let grade = o.max_grade.unwrap_or(6);
    let mut checks = Vec::new();
    for v in o.variants(&[Variant::Labeled(2), Variant::Labeled(3)]) {
        let mut sq = Check::new(format!("d² = 0 on {v} trees with at most {n} edges, over q and gf2"), "trees");
        if !v.is_labeled() {
            sq.fail(format!("the branch-fixed differential needs a labeled variant, got {v}"));
            checks.push(sq);
            continue;
        }
        for t in trees_upto(v, n) {
            let q = d(&d(&TreeElement::<Q>::basis(t.clone()), v), v);
            let g = d(&d(&TreeElement::<Gf2>::basis(t.clone()), v), v);
            sq.record((!q.is_zero() || !g.is_zero()).then(|| format!("d²({t}) = {q}")));
        }
        checks.push(sq);
        checks.push(acyclicity(v, grade));
    }
    checks
}

fn acyclicity(v: Variant, grade: usize) -> Check {
    let table = cohomology_dims::<Q>(v, DiffKind::BranchFixed, grade);
    let mut c = Check::new(format!("branch-fixed cohomology of {v} vanishes over q"), "grades");
    for &(i, h) in &table.dims {
        c.record((h != 0).then(|| format!("dim H^{i} = {h}")));
    }
    c
}

fn vertex_appending(o: &Overrides) -> Vec<Check> {
    let n = o.max_edges.unwrap_or(5);
    let defaults = [Variant::Labeled(2), Variant::Labeled(3), Variant::Clear(Some(2)), Variant::Clear(Some(3))];
    let mut checks = Vec::new();
    for v in o.variants(&defaults) {
        let v = bonsai_core::cohomology::effective_variant(v, n);
        let mut c = Check::new(format!("∂² = 0 on {v} trees with at most {n} edges, over q and gf2"), "trees");
        for t in trees_upto(v, n) {
            let q = vad(&vad(&TreeElement::<Q>::basis(t.clone()), v), v);
            let g = vad_gf2(&vad_gf2(&TreeElement::basis(t.clone()), v), v);
            c.record((!q.is_zero() || !g.is_zero()).then(|| format!("∂²({t}) = {q}")));
        }
        checks.push(c);
    }
    checks
}

fn labeled_dims(v: Variant, m: u16, grade: usize) -> Check {
    let table = cohomology_dims::<Q>(v, DiffKind::VertexAppending, grade);
    let predicted = predicted_va_dims(m as u32, grade);
    let mut c = Check::new(format!("vertex-appending cohomology of {v} against m-Catalan numbers"), "grades");
    for &(i, h) in &table.dims {
        if i == 0 {
            c.notes.push(format!("dim H^0 = {h}"));
            continue;
        }
        let want = predicted.iter().find(|p| p.0 == i).map_or(0, |p| p.1);
        c.record((h as u128 != want).then(|| format!("dim H^{i} = {h}, expected {want}")));
    }
    c.notes.push(format!("dims {:?}", table.dims));
    c
}

fn unbounded_dims(grade: usize) -> Check {
    let table = cohomology_dims::<Q>(Variant::Clear(None), DiffKind::VertexAppending, grade);
    let mut c = Check::new(format!("clear-edged cohomology, unbounded arity (run as {})", table.variant), "grades");
    for &(i, h) in &table.dims {
        let want = usize::from(i <= 1);
        c.record((h != want).then(|| format!("dim H^{i} = {h}, expected {want}")));
    }
    c
}

fn threads(m: u16, grade: usize) -> Vec<Check> {
    let dec = decomposition(m, grade);
    let mut sum = Check::new(format!("clear:{m} cohomology as a sum over grafting-seedling threads"), "grades");
    if !dec.disjoint {
        sum.fail(String::from("threads overlap"));
    }
    if !dec.covering {
        sum.fail(String::from("threads miss a tree"));
    }
    for (&(i, g), &(_, s)) in dec.global.dims.iter().zip(&dec.summed) {
        sum.record((g != s).then(|| format!("dim H^{i} = {g}, threads sum to {s}")));
    }
    sum.notes.push(format!("{} threads", dec.threads.len()));
    let mut formula = Check::new(format!("thread multiplicity formula on clear:{m} grafting seedlings"), "seedlings");
    for s in grafting_seedlings(m, grade) {
        let Some(pred) = predicted_thread_dims(&s, m, grade) else {
            continue;
        };
        let th = k_thread(&s.realize(), m, grade);
        let bad = pred.iter().find(|&&(i, p)| th.dim(i) as i128 != p);
        formula.record(bad.map(|&(i, p)| format!("thread of {s}: dim H^{i} = {}, formula gives {p}", th.dim(i))));
    }
    formula.notes.push(String::from("child grades sum to i - m; P counts the leaves of every run"));
    if formula.checked == 0 {
        formula.fail(String::from("no seedling within the bound has a formula instance"));
    }
    vec![sum, formula]
}

fn cohomology(o: &Overrides) -> Vec<Check> {
    match o.variant {
        Some(v @ Variant::Labeled(m)) => vec![labeled_dims(v, m, o.max_grade.unwrap_or(8))],
        Some(Variant::Clear(None)) => vec![unbounded_dims(o.max_grade.unwrap_or(6))],
        Some(Variant::Clear(Some(m))) => threads(m, o.max_grade.unwrap_or(6)),
        None => {
            let g = o.max_grade;
            let mut checks = vec![
                labeled_dims(Variant::Labeled(2), 2, g.unwrap_or(8)),
                labeled_dims(Variant::Labeled(3), 3, g.unwrap_or(7)),
                unbounded_dims(g.unwrap_or(6)),
            ];
            checks.extend(threads(2, g.unwrap_or(6)));
            checks
        }
    }
}

fn deviations(o: &Overrides) -> Vec<Check> {
    let total = o.max_edges.unwrap_or(6);
    let defaults = [Variant::Labeled(2), Variant::Labeled(3), Variant::Clear(Some(3))];
    let mut checks = Vec::new();
    for v in o.variants(&defaults) {
        let v = bonsai_core::cohomology::effective_variant(v, 2 * total + 2);
        let ps = pairs(v, total);
        let results: Vec<[Option<String>; 3]> = ps.par_iter().map(|(a, b)| deviation_pair(a, b, v)).collect();
        let mut names = vec![
            Check::new(format!("second deviation vanishes on {v} pairs, total at most {total} edges"), "pairs"),
            Check::new(format!("∂ is a derivation of the first deviation on {v}"), "pairs"),
        ];
        if v.is_labeled() {
            names.push(Check::new(format!("first deviation against its closed form on {v}"), "pairs"));
        }
        for r in results {
            for (c, f) in names.iter_mut().zip(r) {
                c.record(f);
            }
        }
        checks.extend(names);
    }
    checks
}

fn deviation_pair(a: &Bonsai, b: &Bonsai, v: Variant) -> [Option<String>; 3] {
    let x = TreeElement::<Gf2>::basis(a.clone());
    let y = TreeElement::<Gf2>::basis(b.clone());
    let s2 = star2(&x, &y, v);
    let zero = (!s2.is_zero()).then(|| format!("{a} *₂ {b} = {s2}"));
    let s1 = star1(&x, &y, v);
    let lhs = vad_gf2(&s1, v);
    let rhs = star1(&vad_gf2(&x, v), &y, v) + star1(&x, &vad_gf2(&y, v), v);
    let leibniz = (lhs != rhs).then(|| format!("Leibniz fails for {a} *₁ {b}"));
    let closed = match v {
        Variant::Labeled(m) => {
            let c = star1_closed_form(a, b, m);
            (c != s1).then(|| format!("{a} *₁ {b} = {s1}, closed form {c}"))
        }
        Variant::Clear(_) => None,
    };
    [zero, leibniz, closed]
}
