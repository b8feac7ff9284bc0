//! G-graded simple algebras `F^c H (x) M_m(F)` with the elementary grading,
//! their presentations and the moves relating equivalent presentations.
//!
//! Everything that only needs structure constants on a homogeneous basis
//! (the identity oracle, witness verification) goes through the
//! [`BasisAlgebra`] trait, so the Grassmann envelope and test fixtures plug
//! into the same machinery.

mod algebra;
mod presentation;

pub use algebra::{CrossedProductReport, GradedAlgebra, Support};
pub use presentation::{Block, Move, Presentation};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::scalars::CycScalar;

pub(crate) fn fresh_algebra_id() -> u64 {
    static NEXT: AtomicU64 = AtomicU64::new(1);
    NEXT.fetch_add(1, Ordering::Relaxed)
}

/// `b_x b_y = (-1)^neg zeta_N^exp b_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisProduct {
    pub neg: bool,
    pub exp: u32,
    pub index: usize,
}

/// A finite-dimensional G-graded algebra given by a homogeneous basis whose
/// products are again basis elements up to a signed root of unity.
pub trait BasisAlgebra: Sync {
    /// Identifies the algebra for element bookkeeping.
    fn algebra_id(&self) -> u64;
    fn grading_group(&self) -> &Arc<FiniteGroup>;
    /// N such that all structure constants lie in Q(zeta_N).
    fn scalar_order(&self) -> u32;
    fn dim(&self) -> usize;
    fn degree_of(&self, b: usize) -> Elem;
    fn basis_of_degree(&self, g: Elem) -> &[usize];
    fn mul_basis(&self, a: usize, b: usize) -> Option<BasisProduct>;
    fn basis_label(&self, b: usize) -> String;

    /// Degree-`g` basis elements that may multiply `left` from the right to
    /// something nonzero. Implementations may return a superset.
    fn right_partners(&self, _left: usize, g: Elem) -> &[usize] {
        self.basis_of_degree(g)
    }

    fn zero_element(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra_id(),
            order: self.scalar_order(),
            terms: BTreeMap::new(),
        }
    }

    fn basis_element(&self, b: usize) -> AlgebraElement {
        let mut e = self.zero_element();
        e.terms.insert(b, CycScalar::one(self.scalar_order()));
        e
    }

    fn element_from_terms(&self, terms: impl IntoIterator<Item = (usize, CycScalar)>) -> Result<AlgebraElement>
    where
        Self: Sized,
    {
        let mut e = self.zero_element();
        for (b, s) in terms {
            if b >= self.dim() {
                return Err(Error::ElementOutOfRange(b, self.dim()));
            }
            if s.order() != e.order {
                return Err(Error::OrderMismatch(s.order(), e.order));
            }
            e.add_term(b, &s);
        }
        Ok(e)
    }

    /// Element with the given dense coefficient vector (length `dim`).
    fn element_from_dense(&self, v: &[CycScalar]) -> AlgebraElement {
        let mut e = self.zero_element();
        for (b, s) in v.iter().enumerate() {
            e.add_term(b, s);
        }
        e
    }

    /// Scalar `(-1)^neg zeta^exp` of a basis product.
    fn phase_scalar(&self, p: &BasisProduct) -> CycScalar {
        let s = CycScalar::root_of_unity(self.scalar_order(), p.exp as i64);
        if p.neg {
            -s
        } else {
            s
        }
    }

    fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero_element();
        for (&x, sx) in &a.terms {
            for (&y, sy) in &b.terms {
                if let Some(p) = self.mul_basis(x, y) {
                    let s = &(sx * sy) * &self.phase_scalar(&p);
                    out.add_term(p.index, &s);
                }
            }
        }
        Ok(out)
    }

    fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.algebra != self.algebra_id() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// `Some(g)` when `a` is nonzero and homogeneous of degree g.
    fn homogeneous_degree(&self, a: &AlgebraElement) -> Option<Elem> {
        let mut degs = a.terms.keys().map(|&b| self.degree_of(b));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Human-readable rendering through basis labels.
    fn render(&self, a: &AlgebraElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.terms
            .iter()
            .map(|(&b, s)| {
                if s.is_one() {
                    self.basis_label(b)
                } else {
                    format!("({s})*{}", self.basis_label(b))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Sparse element of a [`BasisAlgebra`]; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: u64,
    order: u32,
    terms: BTreeMap<usize, CycScalar>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(b, s)| (b, s.to_string())))
            .finish()
    }
}

impl AlgebraElement {
    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<usize, CycScalar> {
        &self.terms
    }

    pub fn coefficient(&self, b: usize) -> Option<&CycScalar> {
        self.terms.get(&b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, b: usize, s: &CycScalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(s);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.clone();
        for (&b, s) in &other.terms {
            out.add_term(b, s);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.scale(&CycScalar::from_integer(other.order, -1)))
    }

    pub fn scale(&self, s: &CycScalar) -> AlgebraElement {
        let mut out = AlgebraElement {
            terms: BTreeMap::new(),
            ..*self
        };
        if s.is_zero() {
            return out;
        }
        for (&b, t) in &self.terms {
            out.terms.insert(b, t * s);
        }
        out
    }

    /// Dense coefficient vector of length `dim`.
    pub fn to_dense(&self, dim: usize) -> Vec<CycScalar> {
        let mut v = vec![CycScalar::zero(self.order); dim];
        for (&b, s) in &self.terms {
            v[b] = s.clone();
        }
        v
    }
}
