//! Differential matrices, exact cohomology dimensions and the closed-form
//! predictions they are compared against.

mod graft;
mod seedling;

use alloc::vec::Vec;

use crate::complex::{differential, differential_terms, Cochain, DiffKind};
use crate::linalg::{RankField, SparseMatrix};
use crate::lincomb::LinComb;
use crate::scalar::{Scalar, Q};
use crate::tree::{enumerate, enumerate_upto, Bonsai, Variant};

pub use graft::{
    decomposition, grafting_seedlings, is_grafting_seedling, k_thread, multiplicity, predicted_thread_dims,
    Decomposition, GraftingSeedling, Thread,
};
pub use seedling::{class_cohomology, va_seedling, va_seedling_classes, ClassDims, SeedlingClass};

/// One grade of a differential as a sparse matrix between tree bases.
#[derive(Clone, Debug)]
pub struct GradedMap<K> {
    pub grade: usize,
    pub rows: Vec<Bonsai>,
    pub cols: Vec<Bonsai>,
    pub matrix: SparseMatrix<K>,
}

/// Matrix of the differential on `cols`, with rows indexed by the sorted
/// basis `rows`. Terms with a nonzero coefficient must lie in `rows`.
pub fn build_matrix<K: Scalar>(variant: Variant, kind: DiffKind, cols: &[Bonsai], rows: &[Bonsai]) -> SparseMatrix<K> {
    let columns = cols
        .iter()
        .map(|t| {
            let mut terms = differential_terms(t, variant, kind);
            terms.sort_unstable();
            let mut col: Vec<(u32, K)> = Vec::with_capacity(terms.len());
            let mut i = 0;
            while i < terms.len() {
                let mut s = 0;
                let start = i;
                while i < terms.len() && terms[i].0 == terms[start].0 {
                    s += terms[i].1;
                    i += 1;
                }
                let k = K::from_i64(s);
                if !k.is_zero() {
                    let r = rows.binary_search(&terms[start].0).expect("image lies in the row basis");
                    col.push((r as u32, k));
                }
            }
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    SparseMatrix {
        nrows: rows.len(),
        columns,
    }
}

pub fn differential_matrix<K: Scalar>(variant: Variant, kind: DiffKind, grade: usize) -> GradedMap<K> {
    let cols = enumerate(variant, grade);
    let rows = enumerate(variant, grade + 1);
    let matrix = build_matrix(variant, kind, &cols, &rows);
    GradedMap {
        grade,
        rows,
        cols,
        matrix,
    }
}

/// Cohomology dimensions of one complex, exact through `computable_up_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub variant: Variant,
    pub kind: DiffKind,
    pub field: &'static str,
    /// `(i, dim H^i)` for `0 <= i <= computable_up_to`.
    pub dims: Vec<(usize, usize)>,
    /// `dim C^i` for `0 <= i <= max_grade`.
    pub chain_dims: Vec<usize>,
    /// Rank of the map from grade `i` to `i + 1`, for `i < max_grade`.
    pub ranks: Vec<usize>,
    pub computable_up_to: Option<usize>,
}

impl CohomologyTable {
    pub fn dim(&self, i: usize) -> Option<usize> {
        self.dims.iter().find(|d| d.0 == i).map(|d| d.1)
    }
}

/// The variant actually used for cohomology through `max_grade`: an
/// unbounded clear-edged variant is cut off at `max_grade + 2`, which
/// changes nothing for trees of at most `max_grade` edges.
pub fn effective_variant(variant: Variant, max_grade: usize) -> Variant {
    variant.bounded_by((max_grade + 2).min(u16::MAX as usize) as u16)
}

/// Ranks of the differential at grades `0..max_grade` given bases through `max_grade`.
pub fn ranks<K: RankField>(variant: Variant, kind: DiffKind, bases: &[Vec<Bonsai>]) -> Vec<usize> {
    (0..bases.len().saturating_sub(1))
        .map(|g| K::rank(&build_matrix::<K>(variant, kind, &bases[g], &bases[g + 1])))
        .collect()
}

/// `dim H^i = dim C^i - rank d_i - rank d_{i-1}` for `i < max_grade`.
pub fn cohomology_dims<K: RankField>(variant: Variant, kind: DiffKind, max_grade: usize) -> CohomologyTable {
    let variant = effective_variant(variant, max_grade);
    let bases = enumerate_upto(variant, max_grade);
    let ranks = ranks::<K>(variant, kind, &bases);
    table_from(variant, kind, K::NAME, &bases, ranks)
}

pub(crate) fn table_from(
    variant: Variant,
    kind: DiffKind,
    field: &'static str,
    bases: &[Vec<Bonsai>],
    ranks: Vec<usize>,
) -> CohomologyTable {
    let chain_dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let dims = (0..ranks.len())
        .map(|i| {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            (i, chain_dims[i] - ranks[i] - below)
        })
        .collect();
    CohomologyTable {
        variant,
        kind,
        field,
        dims,
        chain_dims,
        computable_up_to: ranks.len().checked_sub(1),
        ranks,
    }
}

/// `(mn)! / (((m-1)n+1)! n!)`.
pub fn m_catalan(m: u32, n: u32) -> u128 {
    let (m, n) = (m as u128, n as u128);
    crate::tree::binomial_u128(m * n, n) / ((m - 1) * n + 1)
}

/// Predicted vertex-appending dimensions `(i, dim H^i)` for `1 <= i < max_grade`:
/// the m-Catalan number at `i = (2m-1)n + 1` and zero elsewhere.
pub fn predicted_va_dims(m: u32, max_grade: usize) -> Vec<(usize, u128)> {
    let period = 2 * m as usize - 1;
    (1..max_grade)
        .map(|i| {
            let d = if (i - 1) % period == 0 {
                m_catalan(m, ((i - 1) / period) as u32)
            } else {
                0
            };
            (i, d)
        })
        .collect()
}

/// Cocycles spanning the degree-4 vertex-appending cohomology of labeled
/// 2-bonsais: the sum of all 2-corollas with one pendant edge on each leaf.
pub fn h4_representatives() -> Vec<Cochain<Q>> {
    let v = Variant::Labeled(2);
    let mut x = LinComb::zero();
    for i in 1..=2 {
        for j in 1..=2 {
            let t = Bonsai::parse(&alloc::format!("(1:({i}:.),2:({j}:.))"), v).expect("valid tree");
            x.add_term(t, Q::from_i64(1));
        }
    }
    alloc::vec![x]
}

pub fn is_cocycle<K: Scalar>(x: &Cochain<K>, variant: Variant, kind: DiffKind) -> bool {
    differential(x, variant, kind).is_zero()
}

/// Whether a homogeneous cochain lies in the image of the differential.
pub fn is_coboundary<K: RankField>(x: &Cochain<K>, variant: Variant, kind: DiffKind) -> bool {
    let Some(grade) = crate::complex::homogeneous_grade(x) else {
        return true;
    };
    if grade == 0 {
        return false;
    }
    let map = differential_matrix::<K>(variant, kind, grade - 1);
    let base = K::rank(&map.matrix);
    let mut extended = map.matrix.clone();
    let col = x
        .iter()
        .map(|(t, k)| (map.rows.binary_search(t).expect("term in basis") as u32, k.clone()))
        .collect::<Vec<_>>();
    let mut col = col;
    col.sort_by_key(|e| e.0);
    extended.columns.push(col);
    K::rank(&extended) == base
}
