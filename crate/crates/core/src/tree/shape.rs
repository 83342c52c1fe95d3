use alloc::vec::Vec;

use super::{Bonsai, EdgeRef};

/// Structural facts about a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    /// Every vertex has at most one child.
    pub is_ladder: bool,
    /// Non-root leaves, or the root of the one-vertex tree.
    pub tips: Vec<usize>,
    /// Vertices with two or more children.
    pub branching_vertices: Vec<usize>,
    /// Edges from a branching vertex down to a tip.
    pub twiggy_edges: Vec<EdgeRef>,
    /// Every vertex other than a tip is branching.
    pub is_bf_seedling: bool,
    /// No twiggy edges.
    pub is_va_seedling: bool,
}

impl Bonsai {
    pub fn is_tip(&self, v: usize) -> bool {
        self.is_leaf(v)
    }

    pub fn is_twiggy(&self, v: usize) -> bool {
        v > 0 && self.is_leaf(v) && self.parent(v).is_some_and(|p| self.arity(p) >= 2)
    }
}

pub fn structural_predicates(t: &Bonsai) -> Shape {
    let n = t.vertex_count();
    let arity: Vec<usize> = (0..n).map(|v| t.arity(v)).collect();
    let tips: Vec<usize> = (0..n).filter(|&v| arity[v] == 0).collect();
    let branching_vertices: Vec<usize> = (0..n).filter(|&v| arity[v] >= 2).collect();
    let order = t.traversing_order();
    let twiggy_edges: Vec<EdgeRef> = (1..n).filter(|&v| t.is_twiggy(v)).map(|v| order[v - 1]).collect();
    Shape {
        is_ladder: arity.iter().all(|&a| a <= 1),
        is_bf_seedling: arity.iter().all(|&a| a != 1),
        is_va_seedling: twiggy_edges.is_empty(),
        tips,
        branching_vertices,
        twiggy_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Variant;

    #[test]
    fn point_is_its_own_tip() {
        let s = structural_predicates(&Bonsai::point());
        assert!(s.is_ladder && s.is_bf_seedling && s.is_va_seedling);
        assert_eq!(s.tips, [0]);
    }

    #[test]
    fn ladder_root_is_not_a_tip() {
        let t = Bonsai::parse("(1:(2:.))", Variant::Labeled(2)).unwrap();
        let s = structural_predicates(&t);
        assert_eq!(s.tips, [2]);
        assert!(s.is_ladder && !s.is_bf_seedling && s.is_va_seedling);
    }
}
