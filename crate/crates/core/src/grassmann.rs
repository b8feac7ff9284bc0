//! Truncated Grassmann algebra and Grassmann envelopes.
//!
//! Basis monomials of `E` on n generators are bitmasks; `e_i e_j = -e_j e_i`
//! and `e_i^2 = 0`. For a `Z2 x G`-graded algebra A the envelope
//! `E(A) = sum_g A_(0,g) (x) E_0 + A_(1,g) (x) E_1` is G-graded.
//!
//! Truncation: a multilinear f of degree d vanishes on `E(A)` iff it
//! vanishes on basis tensors `w_k (x) a_k` whose Grassmann parts are pairwise
//! disjoint (otherwise every monomial is already 0), and then only the
//! parities of the `w_k` matter. One generator per odd variable suffices,
//! so n >= d generators give the same verdict as the infinite envelope.

use std::collections::BTreeMap;
use std::sync::Arc;

use log::debug;

use crate::error::{Error, Result};
use crate::graded_algebra::{fresh_algebra_id, BasisAlgebra, BasisProduct, GradedAlgebra};
use crate::groups::{Elem, FiniteGroup};
use crate::polynomials::{is_identity, GradedPolynomial};
use crate::scalars::CycScalar;

/// Largest supported number of generators.
pub const MAX_GENERATORS: usize = 20;

/// Sign of `w1 w2` relative to the sorted monomial `w1 | w2`; None when
/// they share a generator.
pub fn merge_sign(w1: u32, w2: u32) -> Option<bool> {
    if w1 & w2 != 0 {
        return None;
    }
    // each generator of w2 passes the generators of w1 above it
    let mut odd = false;
    let mut rest = w2;
    while rest != 0 {
        let j = rest.trailing_zeros();
        odd ^= (w1 >> (j + 1)).count_ones() % 2 == 1;
        rest &= rest - 1;
    }
    Some(odd)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannElement {
    generators: usize,
    order: u32,
    terms: BTreeMap<u32, CycScalar>,
}

impl GrassmannElement {
    pub fn zero(generators: usize, order: u32) -> Self {
        assert!(generators <= MAX_GENERATORS);
        GrassmannElement {
            generators,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// The basis monomial with generator set `mask` (bit i = `e_(i+1)`).
    pub fn monomial(generators: usize, order: u32, mask: u32) -> Self {
        let mut w = Self::zero(generators, order);
        assert!(mask >> generators == 0, "mask uses generators beyond the truncation");
        w.terms.insert(mask, CycScalar::one(order));
        w
    }

    /// `e_(i+1)`, 0-based.
    pub fn generator(generators: usize, order: u32, i: usize) -> Self {
        Self::monomial(generators, order, 1 << i)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn terms(&self) -> &BTreeMap<u32, CycScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parity when homogeneous.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|w| w.count_ones() % 2 == 1);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    fn add_term(&mut self, w: u32, c: CycScalar) {
        match self.terms.get_mut(&w) {
            Some(x) => {
                x.add_assign_ref(&c);
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None if !c.is_zero() => {
                self.terms.insert(w, c);
            }
            None => {}
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.generators != other.generators {
            return Err(Error::TruncationMismatch(self.generators, other.generators));
        }
        let mut out = self.clone();
        for (&w, c) in &other.terms {
            out.add_term(w, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        let mut out = Self::zero(self.generators, self.order);
        for (&w, c) in &self.terms {
            out.add_term(w, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.generators != other.generators {
            return Err(Error::TruncationMismatch(self.generators, other.generators));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let mut out = Self::zero(self.generators, self.order);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if let Some(neg) = merge_sign(a, b) {
                    let c = x * y;
                    out.add_term(a | b, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }
}

/// Identification of a grading group with `Z2 x G`.
#[derive(Debug, Clone)]
pub struct Z2Factorization {
    big: Arc<FiniteGroup>,
    small: Arc<FiniteGroup>,
    /// For each element of the big group: (odd, G-part).
    split: Vec<(bool, Elem)>,
}

impl Z2Factorization {
    /// Checks that `x -> split[x]` is an isomorphism onto `Z2 x small`.
    pub fn new(big: Arc<FiniteGroup>, small: Arc<FiniteGroup>, split: Vec<(bool, Elem)>) -> Result<Self> {
        if big.order() != 2 * small.order() || split.len() != big.order() {
            return Err(Error::Factorization("orders do not match".into()));
        }
        let mut seen = vec![false; big.order()];
        for &(odd, g) in &split {
            if g >= small.order() {
                return Err(Error::Factorization(format!("G-part {g} out of range")));
            }
            let k = odd as usize * small.order() + g;
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::Factorization("map is not injective".into()));
            }
        }
        for x in big.elements() {
            for y in big.elements() {
                let (ox, gx) = split[x];
                let (oy, gy) = split[y];
                if split[big.mul(x, y)] != (ox ^ oy, small.mul(gx, gy)) {
                    return Err(Error::Factorization(format!("not a homomorphism at ({x}, {y})")));
                }
            }
        }
        Ok(Z2Factorization { big, small, split })
    }

    /// `Z2 x G` built with `FiniteGroup::direct_product(cyclic(2), G)`.
    pub fn direct_product(small: Arc<FiniteGroup>) -> (Arc<FiniteGroup>, Self) {
        let big = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &small));
        let n = small.order();
        let split = big.elements().map(|x| (x >= n, x % n)).collect();
        let fac = Z2Factorization::new(big.clone(), small, split).expect("direct product factors");
        (big, fac)
    }

    pub fn big(&self) -> &Arc<FiniteGroup> {
        &self.big
    }

    pub fn small(&self) -> &Arc<FiniteGroup> {
        &self.small
    }

    pub fn split(&self, x: Elem) -> (bool, Elem) {
        self.split[x]
    }

    /// The element with the given parity and G-part.
    pub fn join(&self, odd: bool, g: Elem) -> Elem {
        self.split.iter().position(|&s| s == (odd, g)).expect("bijective")
    }
}

/// Basis element of the envelope: `w (x) b` with parity of `w` matching
/// the Z2-part of `deg b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvelopeBasis {
    pub mask: u32,
    pub base: usize,
}

pub struct EnvelopeAlgebra {
    id: u64,
    base: GradedAlgebra,
    fac: Z2Factorization,
    generators: usize,
    basis: Vec<EnvelopeBasis>,
    /// First envelope index of each base basis element.
    offset: Vec<usize>,
    /// Position of a mask among the masks of its parity.
    rank: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
}

impl EnvelopeAlgebra {
    pub fn new(base: GradedAlgebra, fac: Z2Factorization, generators: usize) -> Result<Self> {
        if **base.grading_group() != **fac.big() {
            return Err(Error::Factorization("algebra is graded by a different group".into()));
        }
        if generators > MAX_GENERATORS {
            return Err(Error::TruncationTooSmall {
                truncation: MAX_GENERATORS,
                degree: generators,
            });
        }
        let masks = 1u32 << generators;
        let mut rank = vec![0; masks as usize];
        let mut count = [0usize; 2];
        for w in 0..masks {
            let p = (w.count_ones() % 2) as usize;
            rank[w as usize] = count[p];
            count[p] += 1;
        }
        let mut basis = Vec::new();
        let mut offset = Vec::with_capacity(base.dim());
        let mut by_degree = vec![Vec::new(); fac.small().order()];
        for b in 0..base.dim() {
            offset.push(basis.len());
            let (odd, g) = fac.split(base.degree_of(b));
            for w in (0..masks).filter(|w| (w.count_ones() % 2 == 1) == odd) {
                by_degree[g].push(basis.len());
                basis.push(EnvelopeBasis { mask: w, base: b });
            }
        }
        debug!("envelope on {generators} generators: dimension {}", basis.len());
        Ok(EnvelopeAlgebra {
            id: fresh_algebra_id(),
            base,
            fac,
            generators,
            basis,
            offset,
            rank,
            by_degree,
        })
    }

    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn basis_info(&self, b: usize) -> EnvelopeBasis {
        self.basis[b]
    }

    pub fn index_of(&self, mask: u32, base: usize) -> Option<usize> {
        let odd = mask.count_ones() % 2 == 1;
        let (want, _) = self.fac.split(self.base.degree_of(base));
        (odd == want && (mask as usize) < self.rank.len()).then(|| self.offset[base] + self.rank[mask as usize])
    }
}

impl BasisAlgebra for EnvelopeAlgebra {
    fn algebra_id(&self) -> u64 {
        self.id
    }

    fn grading_group(&self) -> &Arc<FiniteGroup> {
        self.fac.small()
    }

    fn scalar_order(&self) -> u32 {
        self.base.scalar_order()
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn degree_of(&self, b: usize) -> Elem {
        self.fac.split(self.base.degree_of(self.basis[b].base)).1
    }

    fn basis_of_degree(&self, g: Elem) -> &[usize] {
        &self.by_degree[g]
    }

    fn mul_basis(&self, x: usize, y: usize) -> Option<BasisProduct> {
        let (bx, by) = (self.basis[x], self.basis[y]);
        let neg = merge_sign(bx.mask, by.mask)?;
        let p = self.base.mul_basis(bx.base, by.base)?;
        let index = self.index_of(bx.mask | by.mask, p.index).expect("parities add");
        Some(BasisProduct {
            neg: p.neg ^ neg,
            exp: p.exp,
            index,
        })
    }

    fn basis_label(&self, b: usize) -> String {
        let EnvelopeBasis { mask, base } = self.basis[b];
        let w: Vec<String> = (0..self.generators)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| format!("e{}", i + 1))
            .collect();
        let w = if w.is_empty() { "1".to_string() } else { w.join("") };
        format!("{w}*{}", self.base.basis_label(base))
    }
}

/// Identity test for `f` (graded by the small group) on the envelope
/// truncated at n generators. Requires `n >= deg f`.
pub fn envelope_identity_check(
    f: &GradedPolynomial,
    base: &GradedAlgebra,
    fac: &Z2Factorization,
    generators: usize,
) -> Result<bool> {
    if generators < f.degree() {
        return Err(Error::TruncationTooSmall {
            truncation: generators,
            degree: f.degree(),
        });
    }
    let env = EnvelopeAlgebra::new(base.clone(), fac.clone(), generators)?;
    Ok(is_identity(f, &env)?.identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Cocycle2;
    use crate::graded_algebra::Presentation;
    use crate::groups::Subgroup;

    fn gen(i: usize) -> GrassmannElement {
        GrassmannElement::generator(6, 1, i)
    }

    #[test]
    fn defining_relations() {
        let e12 = gen(0).mul(&gen(1)).unwrap();
        let e21 = gen(1).mul(&gen(0)).unwrap();
        assert_eq!(e12, GrassmannElement::monomial(6, 1, 0b11));
        assert_eq!(e21, e12.scale(&CycScalar::from_integer(1, -1)));
        assert!(gen(0).mul(&gen(0)).unwrap().is_zero());
        let e34 = gen(2).mul(&gen(3)).unwrap();
        assert_eq!(e12.mul(&e34).unwrap(), e34.mul(&e12).unwrap());
        assert!(gen(0).mul(&GrassmannElement::generator(5, 1, 0)).is_err());
    }

    #[test]
    fn merge_signs() {
        assert_eq!(merge_sign(0b001, 0b010), Some(false));
        assert_eq!(merge_sign(0b010, 0b001), Some(true));
        assert_eq!(merge_sign(0b110, 0b001), Some(false));
        assert_eq!(merge_sign(0b011, 0b010), None);
    }

    fn z2_odd_algebra() -> (GradedAlgebra, Z2Factorization) {
        // F Z2 with the Z2 being the Grassmann factor; G trivial
        let (big, fac) = Z2Factorization::direct_product(Arc::new(FiniteGroup::cyclic(1)));
        let p = Presentation::new(Cocycle2::trivial(Subgroup::whole(big), 1), vec![0]).unwrap();
        (GradedAlgebra::new(&p), fac)
    }

    #[test]
    fn envelope_dimensions() {
        let (a, fac) = z2_odd_algebra();
        for n in 0..5 {
            let env = EnvelopeAlgebra::new(a.clone(), fac.clone(), n).unwrap();
            let expected = if n == 0 { 1 } else { 1 << n };
            assert_eq!(env.dim(), expected);
        }
    }

    #[test]
    fn odd_part_anticommutes() {
        let (a, fac) = z2_odd_algebra();
        let g = fac.small().clone();
        let comm = GradedPolynomial::parse_terms(&g, 1, &["1 x0:e x1:e", "-1 x1:e x0:e"]).unwrap();
        let anti = GradedPolynomial::parse_terms(&g, 1, &["1 x0:e x1:e", "1 x1:e x0:e"]).unwrap();
        // E(F Z2) is the whole Grassmann algebra: not commutative, not anticommutative
        assert!(!envelope_identity_check(&comm, &a, &fac, 2).unwrap());
        assert!(!envelope_identity_check(&anti, &a, &fac, 2).unwrap());
        assert!(envelope_identity_check(&comm, &a, &fac, 1).is_err());
        // [[x, y], z] holds in E
        let mut terms = Vec::new();
        for (s, o) in [("1", "x0:e x1:e x2:e"), ("-1", "x1:e x0:e x2:e"), ("-1", "x2:e x0:e x1:e"), ("1", "x2:e x1:e x0:e")] {
            terms.push(format!("{s} {o}"));
        }
        let triple = GradedPolynomial::parse_terms(&g, 1, &terms).unwrap();
        assert!(envelope_identity_check(&triple, &a, &fac, 3).unwrap());
    }

    #[test]
    fn bad_factorization() {
        let big = Arc::new(FiniteGroup::cyclic(4));
        let small = Arc::new(FiniteGroup::cyclic(2));
        let split = (0..4).map(|x| (x % 2 == 1, x / 2)).collect();
        assert!(Z2Factorization::new(big, small, split).is_err());
    }
}
