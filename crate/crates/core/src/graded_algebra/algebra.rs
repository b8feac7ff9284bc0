use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::groups::{Elem, FiniteGroup};
use crate::scalars::CycScalar;

use super::{fresh_algebra_id, AlgebraElement, BasisAlgebra, BasisProduct, Presentation};

/// `F^c H (x) M_m(F)` with `deg(u_h (x) e_ij) = g_i^-1 h g_j`.
///
/// Basis element `(h, i, j)` (h as a position in `H.members()`) has index
/// `(h * m + i) * m + j`.
#[derive(Clone)]
pub struct GradedAlgebra {
    id: u64,
    presentation: Presentation,
    m: usize,
    /// Local multiplication table of H.
    hmul: Vec<usize>,
    degree: Vec<Elem>,
    by_degree: Vec<Vec<usize>>,
    /// Degree-g basis elements with row i, at `g * m + i`.
    by_degree_row: Vec<Vec<usize>>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAlgebra(dim={}, {:?})", self.degree.len(), self.presentation)
    }
}

/// Support of the grading and whether it generates G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub elements: Vec<Elem>,
    pub connected: bool,
}

/// Outcome of the crossed-product test. When positive, each degree carries
/// a homogeneous unit and its inverse, both verified to multiply to 1.
#[derive(Debug, Clone)]
pub struct CrossedProductReport {
    pub crossed_product: bool,
    pub certificates: Vec<(Elem, AlgebraElement, AlgebraElement)>,
}

impl GradedAlgebra {
    pub fn new(presentation: &Presentation) -> Self {
        let p = presentation.clone();
        let h = p.subgroup();
        let g = p.group().clone();
        let k = h.order();
        let m = p.m();
        let hmul = (0..k * k)
            .map(|x| {
                let (a, b) = (h.members()[x / k], h.members()[x % k]);
                h.local_index(g.mul(a, b)).unwrap()
            })
            .collect();
        let mut degree = Vec::with_capacity(k * m * m);
        let mut by_degree = vec![Vec::new(); g.order()];
        let mut by_degree_row = vec![Vec::new(); g.order() * m];
        for (hl, &hx) in h.members().iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    let idx = (hl * m + i) * m + j;
                    let d = g.product([g.inv(p.tuple()[i]), hx, p.tuple()[j]]);
                    degree.push(d);
                    by_degree[d].push(idx);
                    by_degree_row[d * m + i].push(idx);
                }
            }
        }
        GradedAlgebra {
            id: fresh_algebra_id(),
            presentation: p,
            m,
            hmul,
            degree,
            by_degree,
            by_degree_row,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `(h, i, j)` with h a parent element and 0-based matrix indices.
    pub fn triple(&self, b: usize) -> (Elem, usize, usize) {
        let (hl, i, j) = self.local_triple(b);
        (self.presentation.subgroup().members()[hl], i, j)
    }

    #[inline]
    pub fn local_triple(&self, b: usize) -> (usize, usize, usize) {
        let m = self.m;
        (b / (m * m), (b / m) % m, b % m)
    }

    /// Index of `u_h (x) e_ij`; `h` must lie in H.
    pub fn index_of(&self, h: Elem, i: usize, j: usize) -> usize {
        let hl = self
            .presentation
            .subgroup()
            .local_index(h)
            .expect("element outside H");
        (hl * self.m + i) * self.m + j
    }

    pub fn homogeneous_basis(&self, g: Elem) -> &[usize] {
        &self.by_degree[g]
    }

    /// `sum_i u_e (x) e_ii`.
    pub fn identity(&self) -> AlgebraElement {
        let mut e = self.zero_element();
        let one = CycScalar::one(self.scalar_order());
        for i in 0..self.m {
            e.add_term(self.index_of(0, i, i), &one);
        }
        e
    }

    pub fn support(&self) -> Support {
        let g = self.grading_group();
        let elements: Vec<Elem> = g.elements().filter(|&x| !self.by_degree[x].is_empty()).collect();
        let connected = g.closure(&elements).len() == g.order();
        Support {
            elements,
            connected,
        }
    }

    pub fn component_dim(&self, g: Elem) -> usize {
        self.by_degree[g].len()
    }

    /// Graded division iff m = 1: then every homogeneous element is a scalar
    /// times some invertible `u_h`; for m > 1 the diagonal `e_ii` are
    /// nonzero homogeneous zero divisors.
    pub fn is_graded_division(&self) -> bool {
        self.m == 1
    }

    /// Crossed product iff all right H-cosets are equally represented. On
    /// success, for every g an invertible element `sum_i u_{h(i)} (x) e_{i, j(i)}`
    /// of degree g is built with inverse
    /// `sum_i c(h(i), h(i)^-1)^-1 u_{h(i)^-1} (x) e_{j(i), i}`.
    pub fn is_crossed_product(&self) -> Result<CrossedProductReport> {
        let p = &self.presentation;
        if !p.cosets_equal() {
            return Ok(CrossedProductReport {
                crossed_product: false,
                certificates: Vec::new(),
            });
        }
        let grp = p.group();
        let h = p.subgroup();
        let c = p.cocycle();
        let cos = p.cosets();
        let blocks = p.blocks();
        let block_of_coset: Vec<usize> = {
            let mut v = vec![usize::MAX; cos.len()];
            for (b, blk) in blocks.iter().enumerate() {
                v[blk.coset] = b;
            }
            v
        };
        let one = self.identity();
        let mut certificates = Vec::new();
        for g in grp.elements() {
            let mut unit = self.zero_element();
            let mut inv = self.zero_element();
            for blk in &blocks {
                for (t, &i) in blk.positions.iter().enumerate() {
                    let gi = p.tuple()[i];
                    let target = &blocks[block_of_coset[cos.coset_of(grp.mul(gi, g))]];
                    let j = target.positions[t];
                    let hx = grp.product([gi, g, grp.inv(p.tuple()[j])]);
                    debug_assert!(h.contains(hx));
                    let hinv = grp.inv(hx);
                    let coeff = CycScalar::root_of_unity(c.modulus(), -(c.exp_of(hx, hinv) as i64));
                    unit.add_term(self.index_of(hx, i, j), &CycScalar::one(self.scalar_order()));
                    inv.add_term(self.index_of(hinv, j, i), &coeff);
                }
            }
            if self.homogeneous_degree(&unit) != Some(g)
                || self.multiply(&unit, &inv)? != one
                || self.multiply(&inv, &unit)? != one
            {
                return Err(crate::Error::VerificationFailed(format!(
                    "crossed-product certificate for degree {g}"
                )));
            }
            certificates.push((g, unit, inv));
        }
        Ok(CrossedProductReport {
            crossed_product: true,
            certificates,
        })
    }
}

impl BasisAlgebra for GradedAlgebra {
    fn algebra_id(&self) -> u64 {
        self.id
    }

    fn grading_group(&self) -> &Arc<FiniteGroup> {
        self.presentation.group()
    }

    fn scalar_order(&self) -> u32 {
        self.presentation.cocycle().modulus()
    }

    fn dim(&self) -> usize {
        self.degree.len()
    }

    #[inline]
    fn degree_of(&self, b: usize) -> Elem {
        self.degree[b]
    }

    fn basis_of_degree(&self, g: Elem) -> &[usize] {
        &self.by_degree[g]
    }

    #[inline]
    fn mul_basis(&self, a: usize, b: usize) -> Option<BasisProduct> {
        let m = self.m;
        let (ha, i, j) = self.local_triple(a);
        let (hb, k, l) = self.local_triple(b);
        if j != k {
            return None;
        }
        let kh = self.presentation.subgroup().order();
        let hab = self.hmul[ha * kh + hb];
        Some(BasisProduct {
            neg: false,
            exp: self.presentation.cocycle().exp(ha, hb),
            index: (hab * m + i) * m + l,
        })
    }

    fn basis_label(&self, b: usize) -> String {
        let (h, i, j) = self.triple(b);
        format!("u_{}*e_{},{}", self.grading_group().name(h), i + 1, j + 1)
    }

    #[inline]
    fn right_partners(&self, left: usize, g: Elem) -> &[usize] {
        let col = left % self.m;
        &self.by_degree_row[g * self.m + col]
    }
}
