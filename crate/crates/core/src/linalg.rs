//! Exact rank of sparse matrices.
//!
//! Columns are inserted one at a time into a row-echelon basis keyed by the
//! leading (smallest) row index. Over ℚ, integer matrices are eliminated
//! fraction-free in `i128`, falling back to big integers on overflow.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::scalar::{Gf2, Scalar, Q};

/// A sparse matrix stored by columns; each column sorted by row index.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<K> {
    pub nrows: usize,
    pub columns: Vec<Vec<(u32, K)>>,
}

impl<K: Scalar> SparseMatrix<K> {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Entry `(row, col)`, zero when absent.
    pub fn get(&self, row: usize, col: usize) -> K {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r as usize == row)
            .map_or_else(K::zero, |(_, k)| k.clone())
    }

    /// The product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<K>) -> SparseMatrix<K> {
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let mut acc: alloc::collections::BTreeMap<u32, K> = Default::default();
                for (k, x) in col {
                    for (r, y) in &self.columns[*k as usize] {
                        let e = acc.entry(*r).or_insert_with(K::zero);
                        *e += x.clone() * y.clone();
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            columns,
        }
    }
}

/// Fields whose sparse matrices we can rank exactly.
pub trait RankField: Scalar {
    fn rank(m: &SparseMatrix<Self>) -> usize;
}

impl RankField for Gf2 {
    fn rank(m: &SparseMatrix<Gf2>) -> usize {
        let cols: Vec<Vec<u32>> = m
            .columns
            .iter()
            .map(|c| c.iter().filter(|(_, k)| k.0).map(|(r, _)| *r).collect())
            .collect();
        rank_gf2(m.nrows, &cols)
    }
}

impl RankField for Q {
    fn rank(m: &SparseMatrix<Q>) -> usize {
        let ints: Option<Vec<Vec<(u32, i64)>>> = m
            .columns
            .iter()
            .map(|c| c.iter().map(|(r, k)| k.to_i64().map(|x| (*r, x))).collect())
            .collect();
        match ints {
            Some(cols) => rank_integer(m.nrows, &cols),
            None => rank_field(m),
        }
    }
}

/// Rank over GF(2) of columns given as sorted row-index sets.
pub fn rank_gf2(nrows: usize, cols: &[Vec<u32>]) -> usize {
    let mut pivot: Vec<Option<Vec<u32>>> = alloc::vec![None; nrows];
    let mut rank = 0;
    for col in cols {
        let mut v = col.clone();
        while let Some(&lead) = v.first() {
            match &pivot[lead as usize] {
                Some(p) => v = symmetric_difference(&v, p),
                None => {
                    pivot[lead as usize] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

trait Int: Clone + PartialEq + Sized {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Int for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        *self / *o
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Int for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

type IntVec<T> = Vec<(u32, T)>;

/// `b' v - a' p` where `a`, `b` are the leading entries of `v`, `p`, so the
/// leading entry cancels. Content is divided out afterwards.
fn eliminate<T: Int>(v: &IntVec<T>, p: &IntVec<T>) -> Option<IntVec<T>> {
    let a = &v[0].1;
    let b = &p[0].1;
    let g = a.gcd(b);
    let (a, b) = (a.div(&g), b.div(&g));
    let mut out: IntVec<T> = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < p.len() {
        let ri = v.get(i).map_or(u32::MAX, |e| e.0);
        let rj = p.get(j).map_or(u32::MAX, |e| e.0);
        let (r, x) = if ri < rj {
            i += 1;
            (ri, v[i - 1].1.mul(&b)?)
        } else if rj < ri {
            j += 1;
            (rj, T::from_i64(0).sub(&p[j - 1].1.mul(&a)?)?)
        } else {
            i += 1;
            j += 1;
            (ri, v[i - 1].1.mul(&b)?.sub(&p[j - 1].1.mul(&a)?)?)
        };
        if !x.is_zero() {
            out.push((r, x));
        }
    }
    normalize(&mut out);
    Some(out)
}

fn normalize<T: Int>(v: &mut IntVec<T>) {
    let Some(first) = v.first() else { return };
    let mut g = first.1.gcd(&first.1);
    for (_, x) in v.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if v[0].1.is_negative() {
        g = g.neg();
    }
    if !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = x.div(&g);
        }
    }
}

fn try_rank_integer<T: Int>(nrows: usize, cols: &[Vec<(u32, i64)>]) -> Option<usize> {
    let mut pivot: Vec<Option<IntVec<T>>> = alloc::vec![None; nrows];
    let mut rank = 0;
    for col in cols {
        let mut v: IntVec<T> = col.iter().filter(|e| e.1 != 0).map(|&(r, x)| (r, T::from_i64(x))).collect();
        normalize(&mut v);
        while let Some(lead) = v.first().map(|e| e.0 as usize) {
            match &pivot[lead] {
                Some(p) => v = eliminate(&v, p)?,
                None => {
                    pivot[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// Rank over ℚ of an integer matrix given by sorted sparse columns.
pub fn rank_integer(nrows: usize, cols: &[Vec<(u32, i64)>]) -> usize {
    try_rank_integer::<i128>(nrows, cols)
        .or_else(|| try_rank_integer::<BigInt>(nrows, cols))
        .expect("big integer elimination cannot overflow")
}

/// Rank by plain sparse elimination over any field.
pub fn rank_field<K: Scalar>(m: &SparseMatrix<K>) -> usize {
    let mut pivot: Vec<Option<Vec<(u32, K)>>> = alloc::vec![None; m.nrows];
    let mut rank = 0;
    for col in &m.columns {
        let mut v: Vec<(u32, K)> = col.iter().filter(|e| !e.1.is_zero()).cloned().collect();
        while let Some(lead) = v.first().map(|e| e.0 as usize) {
            match &pivot[lead] {
                Some(p) => {
                    let f = v[0].1.clone() * p[0].1.inv().expect("pivot is nonzero");
                    let mut acc: alloc::collections::BTreeMap<u32, K> = v.iter().cloned().collect();
                    for (r, x) in p {
                        let e = acc.entry(*r).or_insert_with(K::zero);
                        *e = e.clone() - f.clone() * x.clone();
                    }
                    v = acc.into_iter().filter(|e| !e.1.is_zero()).collect();
                }
                None => {
                    pivot[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
