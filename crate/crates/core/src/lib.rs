//! Core algorithms for m-bonsai Hopf algebras.
//!
//! Trees are rooted, planar, with arity bounded by `m`. In the labeled
//! variant every child edge carries a distinct label in `1..=m`; in the
//! clear-edged variant children are ordered and unlabeled.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod cohomology;
pub mod complex;
pub mod deviation;
pub mod hopf;
pub mod linalg;
pub mod lincomb;
pub mod prelie;
pub mod scalar;
pub mod tree;

pub use algebra::{AlgebraElement, Forest, TensorElement};
pub use lincomb::LinComb;
pub use scalar::{Gf2, Scalar, Q};
pub use tree::{Bonsai, EdgeRef, ParseError, Variant};

/// A linear combination of single trees.
pub type TreeElement<K> = LinComb<Bonsai, K>;
