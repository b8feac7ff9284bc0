//! The primeness hierarchy for G-simple algebras.
//!
//! A G-simple algebra with a connected grading is always verbally prime. It
//! is strongly verbally prime exactly when H is normal, the right H-cosets
//! occur equally often in the tuple and the class of c is G-invariant; that
//! is also exactly when a graded division algebra form exists.

mod direct_sum;
mod witness;

pub use direct_sum::DirectSum;
pub use witness::{
    eulerian_ordering, verify_witness, witness_nonstrong, NonStrongWitness, Witness, WitnessCertificate,
    WitnessKind,
};

use log::debug;

use crate::cohomology::Obstruction;
use crate::error::{Error, Result};
use crate::graded_algebra::{BasisAlgebra, GradedAlgebra, Presentation};
use crate::groups::Elem;
use crate::polynomials::{is_identity, GradedPolynomial, GradedVariable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    /// Normal form of the input.
    pub presentation: Presentation,
    pub connected: bool,
    pub h_normal: bool,
    pub cosets_equal: bool,
    /// Undefined (None) when H is not normal.
    pub class_g_invariant: Option<bool>,
    pub crossed_product: bool,
    pub graded_division: bool,
    pub verbally_prime: bool,
    pub strongly_verbally_prime: bool,
    pub division_form_exists: bool,
    /// Failing coset representative and obstruction when the class is not invariant.
    pub invariance_failure: Option<(Elem, Obstruction)>,
}

impl ClassificationReport {
    /// Numbers (1, 2, 3) of the failed criteria: normality, equal coset
    /// multiplicities, invariance of the class.
    pub fn failed_conditions(&self) -> Vec<u8> {
        let mut out = Vec::new();
        if !self.h_normal {
            out.push(1);
        }
        if !self.cosets_equal {
            out.push(2);
        }
        if self.class_g_invariant == Some(false) {
            out.push(3);
        }
        out
    }

    /// The implications every report must satisfy.
    pub fn is_consistent(&self) -> bool {
        let criterion = self.h_normal && self.cosets_equal && self.class_g_invariant == Some(true);
        self.strongly_verbally_prime == criterion
            && self.division_form_exists == self.strongly_verbally_prime
            && (!self.strongly_verbally_prime || self.verbally_prime)
            && (!self.strongly_verbally_prime || self.crossed_product)
            && self.crossed_product == self.cosets_equal
    }
}

pub fn classify(p: &Presentation) -> Result<ClassificationReport> {
    let a = GradedAlgebra::new(p);
    if !a.support().connected {
        return Err(Error::Disconnected);
    }
    let normal = p.subgroup().is_normal();
    let cosets_equal = p.cosets_equal();
    let invariance_failure = if normal { p.cocycle().invariance_failure()? } else { None };
    let class_g_invariant = normal.then_some(invariance_failure.is_none());
    let strongly = normal && cosets_equal && class_g_invariant == Some(true);
    let crossed_product = a.is_crossed_product()?.crossed_product;
    debug!("classified {p:?}: normal={normal} equal={cosets_equal} invariant={class_g_invariant:?}");
    Ok(ClassificationReport {
        presentation: p.normalize(),
        connected: true,
        h_normal: normal,
        cosets_equal,
        class_g_invariant,
        crossed_product,
        graded_division: a.is_graded_division(),
        verbally_prime: true,
        strongly_verbally_prime: strongly,
        division_form_exists: strongly,
        invariance_failure,
    })
}

/// Whether some `g0` makes `f z_{g0} g` a non-identity, `z` a fresh
/// variable. For non-identities `f`, `g` of a verbally prime algebra the
/// answer is always yes.
pub fn separating_product_test<A: BasisAlgebra>(f: &GradedPolynomial, g: &GradedPolynomial, a: &A) -> Result<bool> {
    let fresh = f.variables().iter().map(|v| v.id).max().map_or(0, |m| m + 1);
    let min_g = g.variables().iter().map(|v| v.id).min().unwrap_or(0);
    let shifted_g = g.rename(|id| id - min_g + fresh + 1)?;
    for g0 in a.grading_group().elements() {
        let z = GradedPolynomial::monomial(f.scalar_order(), vec![GradedVariable { id: fresh, degree: g0 }]);
        let p = f.concat(&z)?.concat(&shifted_g)?;
        if !is_identity(&p, a)?.identity {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The strong primeness implication for one pair: `fg` an identity forces
/// `f` or `g` to be one. Shared variables are rejected.
pub fn strongly_vp_empirical<A: BasisAlgebra>(f: &GradedPolynomial, g: &GradedPolynomial, a: &A) -> Result<bool> {
    let fg = f.concat(g)?;
    if !is_identity(&fg, a)?.identity {
        return Ok(true);
    }
    Ok(is_identity(f, a)?.identity || is_identity(g, a)?.identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Cocycle2;
    use crate::groups::{FiniteGroup, Subgroup};
    use std::sync::Arc;

    pub(crate) fn trivial_h(g: FiniteGroup, tuple: Vec<Elem>) -> Presentation {
        let g = Arc::new(g);
        Presentation::new(Cocycle2::trivial(Subgroup::trivial(g), 1), tuple).unwrap()
    }

    #[test]
    fn z2_examples() {
        let r = classify(&trivial_h(FiniteGroup::cyclic(2), vec![0, 0, 1])).unwrap();
        assert!(r.verbally_prime);
        assert!(!r.strongly_verbally_prime);
        assert_eq!(r.failed_conditions(), vec![2]);
        assert_eq!(r.presentation.tuple(), &[0, 1, 1]);
        assert!(r.is_consistent());
        let r = classify(&trivial_h(FiniteGroup::cyclic(2), vec![0, 1])).unwrap();
        assert!(r.strongly_verbally_prime && r.division_form_exists && r.crossed_product);
        assert!(r.is_consistent());
    }

    #[test]
    fn trivial_group_is_strong() {
        for m in 1..4 {
            let r = classify(&trivial_h(FiniteGroup::cyclic(1), vec![0; m])).unwrap();
            assert!(r.strongly_verbally_prime);
            assert_eq!(r.graded_division, m == 1);
        }
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(classify(&trivial_h(FiniteGroup::cyclic(2), vec![0, 0])), Err(Error::Disconnected));
    }

    #[test]
    fn non_normal_subgroup() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let s = g.elements().find(|&x| x != 0 && g.mul(x, x) == 0).unwrap();
        let h = Subgroup::new(g.clone(), &[0, s]).unwrap();
        let reps = h.right_cosets().reps().to_vec();
        let p = Presentation::new(Cocycle2::trivial(h, 1), reps).unwrap();
        let r = classify(&p).unwrap();
        assert!(!r.h_normal && r.cosets_equal && r.class_g_invariant.is_none());
        assert!(!r.strongly_verbally_prime && r.crossed_product);
        assert!(r.is_consistent());
    }
}
