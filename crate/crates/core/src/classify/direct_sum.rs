use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded_algebra::{fresh_algebra_id, BasisAlgebra, BasisProduct};
use crate::groups::{Elem, FiniteGroup};

/// Block-diagonal sum `A (+) B` of two graded algebras over the same group
/// and scalars. Not G-simple; used as a fixture that is not verbally prime.
pub struct DirectSum<A, B> {
    id: u64,
    left: A,
    right: B,
    by_degree: Vec<Vec<usize>>,
}

impl<A: BasisAlgebra, B: BasisAlgebra> DirectSum<A, B> {
    pub fn new(left: A, right: B) -> Result<Self> {
        if **left.grading_group() != **right.grading_group() {
            return Err(Error::AlgebraMismatch);
        }
        if left.scalar_order() != right.scalar_order() {
            return Err(Error::OrderMismatch(left.scalar_order(), right.scalar_order()));
        }
        let n = left.dim();
        let by_degree = left
            .grading_group()
            .elements()
            .map(|g| {
                let mut v = left.basis_of_degree(g).to_vec();
                v.extend(right.basis_of_degree(g).iter().map(|&b| b + n));
                v
            })
            .collect();
        Ok(DirectSum {
            id: fresh_algebra_id(),
            left,
            right,
            by_degree,
        })
    }

    pub fn left(&self) -> &A {
        &self.left
    }

    pub fn right(&self) -> &B {
        &self.right
    }
}

impl<A: BasisAlgebra, B: BasisAlgebra> BasisAlgebra for DirectSum<A, B> {
    fn algebra_id(&self) -> u64 {
        self.id
    }

    fn grading_group(&self) -> &Arc<FiniteGroup> {
        self.left.grading_group()
    }

    fn scalar_order(&self) -> u32 {
        self.left.scalar_order()
    }

    fn dim(&self) -> usize {
        self.left.dim() + self.right.dim()
    }

    fn degree_of(&self, b: usize) -> Elem {
        let n = self.left.dim();
        if b < n {
            self.left.degree_of(b)
        } else {
            self.right.degree_of(b - n)
        }
    }

    fn basis_of_degree(&self, g: Elem) -> &[usize] {
        &self.by_degree[g]
    }

    fn mul_basis(&self, a: usize, b: usize) -> Option<BasisProduct> {
        let n = self.left.dim();
        match (a < n, b < n) {
            (true, true) => self.left.mul_basis(a, b),
            (false, false) => self.right.mul_basis(a - n, b - n).map(|p| BasisProduct {
                index: p.index + n,
                ..p
            }),
            _ => None,
        }
    }

    fn basis_label(&self, b: usize) -> String {
        let n = self.left.dim();
        if b < n {
            format!("L:{}", self.left.basis_label(b))
        } else {
            format!("R:{}", self.right.basis_label(b - n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::separating_product_test;
    use crate::cohomology::Cocycle2;
    use crate::graded_algebra::{GradedAlgebra, Presentation};
    use crate::groups::Subgroup;
    use crate::polynomials::{is_identity, GradedPolynomial};

    #[test]
    fn not_verbally_prime() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        // M_2 concentrated in degree e, and the group algebra F Z_2
        let m2 = GradedAlgebra::new(
            &Presentation::new(Cocycle2::trivial(Subgroup::trivial(g.clone()), 1), vec![0, 0]).unwrap(),
        );
        let fz2 = GradedAlgebra::new(&Presentation::new(Cocycle2::trivial(Subgroup::whole(g.clone()), 1), vec![0]).unwrap());
        let sum = DirectSum::new(m2, fz2).unwrap();
        let f = GradedPolynomial::parse_terms(&g, 1, &["1 x0:g"]).unwrap();
        let h = GradedPolynomial::parse_terms(&g, 1, &["1 x1:e x2:e", "-1 x2:e x1:e"]).unwrap();
        assert!(!is_identity(&f, &sum).unwrap().identity);
        assert!(!is_identity(&h, &sum).unwrap().identity);
        assert!(!separating_product_test(&f, &h, &sum).unwrap());
        // on a single G-simple summand the test separates
        let m3 = GradedAlgebra::new(
            &Presentation::new(Cocycle2::trivial(Subgroup::trivial(g.clone()), 1), vec![0, 0, 1]).unwrap(),
        );
        assert!(separating_product_test(&f, &h, &m3).unwrap());
    }
}
