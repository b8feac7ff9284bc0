//! Multilinear G-graded polynomials.
//!
//! A polynomial has a fixed variable list; each monomial is an ordering of
//! that whole list with a coefficient. Text form, one monomial per term:
//! `"<coeff> x<id>:<element> x<id>:<element> ..."`, where the coefficient
//! uses the scalar syntax (`-1`, `1/2`, `z^3`, `1+z`).

pub mod oracle;
pub mod pure;

pub use oracle::{
    evaluation_table, is_identity, is_identity_with, value_span, Counterexample, IdentityVerdict,
    OracleOptions,
};
pub use pure::{
    good_permutation_scalar, is_good_permutation, path_restriction, path_vanishing,
    pure_components, satisfies_path_property, PathReport, PathRestriction,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::cohomology::permutations;
use crate::error::{Error, Result};
use crate::graded_algebra::{AlgebraElement, BasisAlgebra};
use crate::groups::{Elem, FiniteGroup};
use crate::scalars::CycScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedVariable {
    pub id: u32,
    pub degree: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMonomial {
    pub coeff: CycScalar,
    /// Variable ids in multiplication order.
    pub order: Vec<u32>,
}

/// Sum of coefficient-weighted orderings of one variable list. Repeated
/// orderings are merged and zero coefficients dropped, first occurrence
/// fixing the position.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPolynomial {
    scalar_order: u32,
    variables: Vec<GradedVariable>,
    monomials: Vec<GradedMonomial>,
}

impl fmt::Debug for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPolynomial{:?}", self.to_terms(None))
    }
}

impl GradedPolynomial {
    /// Validates multilinearity: every monomial is a permutation of `variables`.
    pub fn new(
        scalar_order: u32,
        variables: Vec<GradedVariable>,
        monomials: impl IntoIterator<Item = GradedMonomial>,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (k, v) in variables.iter().enumerate() {
            if index.insert(v.id, k).is_some() {
                return Err(Error::NonMultilinear(format!("variable x{} declared twice", v.id)));
            }
        }
        let mut out = GradedPolynomial {
            scalar_order,
            variables,
            monomials: Vec::new(),
        };
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        for mono in monomials {
            if mono.order.len() != out.variables.len() {
                return Err(Error::NonMultilinear(format!(
                    "monomial {:?} does not use each of the {} variables once",
                    mono.order,
                    out.variables.len()
                )));
            }
            let mut used = vec![false; out.variables.len()];
            for &id in &mono.order {
                match index.get(&id) {
                    Some(&k) if !used[k] => used[k] = true,
                    Some(_) => {
                        return Err(Error::NonMultilinear(format!("x{id} repeated in {:?}", mono.order)))
                    }
                    None => return Err(Error::NonMultilinear(format!("unknown variable x{id}"))),
                }
            }
            if out.variables.is_empty() {
                return Err(Error::NonMultilinear("constant term".into()));
            }
            let coeff = mono.coeff.to_order(scalar_order)?;
            match seen.get(&mono.order) {
                Some(&k) => out.monomials[k].coeff.add_assign_ref(&coeff),
                None => {
                    seen.insert(mono.order.clone(), out.monomials.len());
                    out.monomials.push(GradedMonomial {
                        coeff,
                        order: mono.order,
                    });
                }
            }
        }
        out.monomials.retain(|m| !m.coeff.is_zero());
        Ok(out)
    }

    /// A single monomial with coefficient 1, variables listed in order.
    pub fn monomial(scalar_order: u32, variables: Vec<GradedVariable>) -> Self {
        let order = variables.iter().map(|v| v.id).collect();
        Self::new(
            scalar_order,
            variables,
            [GradedMonomial {
                coeff: CycScalar::one(scalar_order),
                order,
            }],
        )
        .expect("distinct variables")
    }

    pub fn scalar_order(&self) -> u32 {
        self.scalar_order
    }

    pub fn variables(&self) -> &[GradedVariable] {
        &self.variables
    }

    pub fn monomials(&self) -> &[GradedMonomial] {
        &self.monomials
    }

    pub fn degree(&self) -> usize {
        self.variables.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn variable_degree(&self, id: u32) -> Option<Elem> {
        self.variables.iter().find(|v| v.id == id).map(|v| v.degree)
    }

    /// Position of each variable id in the variable list.
    pub(crate) fn positions(&self) -> HashMap<u32, usize> {
        self.variables.iter().enumerate().map(|(k, v)| (v.id, k)).collect()
    }

    /// Product of the variable degrees along `order`.
    pub fn monomial_degree(&self, g: &FiniteGroup, order: &[u32]) -> Elem {
        let pos = self.positions();
        g.product(order.iter().map(|id| self.variables[pos[id]].degree))
    }

    /// Common total degree when every monomial has the same one.
    pub fn homogeneous_degree(&self, g: &FiniteGroup) -> Option<Elem> {
        let mut degs = self.monomials.iter().map(|m| self.monomial_degree(g, &m.order));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The same polynomial with coefficients read in Q(zeta_M).
    pub fn with_scalar_order(&self, target: u32) -> Result<Self> {
        let monomials = self
            .monomials
            .iter()
            .map(|m| {
                Ok(GradedMonomial {
                    coeff: m.coeff.to_order(target)?,
                    order: m.order.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedPolynomial {
            scalar_order: target,
            variables: self.variables.clone(),
            monomials,
        })
    }

    pub fn scale(&self, s: &CycScalar) -> Result<Self> {
        let s = s.to_order(self.scalar_order)?;
        Self::new(
            self.scalar_order,
            self.variables.clone(),
            self.monomials.iter().map(|m| GradedMonomial {
                coeff: &m.coeff * &s,
                order: m.order.clone(),
            }),
        )
    }

    /// Sum of two polynomials on the same variable list.
    pub fn add(&self, other: &GradedPolynomial) -> Result<Self> {
        let mut a = self.variables.clone();
        let mut b = other.variables.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::NonMultilinear("summands use different variables".into()));
        }
        let other = other.with_scalar_order(self.scalar_order)?;
        Self::new(
            self.scalar_order,
            self.variables.clone(),
            self.monomials.iter().chain(&other.monomials).cloned(),
        )
    }

    /// Renames variables by `f`; fails if the renaming is not injective.
    pub fn rename(&self, f: impl Fn(u32) -> u32) -> Result<Self> {
        Self::new(
            self.scalar_order,
            self.variables
                .iter()
                .map(|v| GradedVariable {
                    id: f(v.id),
                    degree: v.degree,
                })
                .collect(),
            self.monomials.iter().map(|m| GradedMonomial {
                coeff: m.coeff.clone(),
                order: m.order.iter().map(|&id| f(id)).collect(),
            }),
        )
    }

    /// Concatenates every monomial of `self` with every monomial of `other`.
    /// Shared variables are an error (the product would not be multilinear).
    pub fn concat(&self, other: &GradedPolynomial) -> Result<Self> {
        use num_integer::Integer;
        let n = self.scalar_order.lcm(&other.scalar_order);
        let a = self.with_scalar_order(n)?;
        let b = other.with_scalar_order(n)?;
        let mut variables = a.variables.clone();
        variables.extend(b.variables.iter().copied());
        let mut monomials = Vec::with_capacity(a.monomials.len() * b.monomials.len());
        for x in &a.monomials {
            for y in &b.monomials {
                let mut order = x.order.clone();
                order.extend_from_slice(&y.order);
                monomials.push(GradedMonomial {
                    coeff: &x.coeff * &y.coeff,
                    order,
                });
            }
        }
        Self::new(n, variables, monomials)
    }

    /// `f g` on disjoint variables. When the id sets overlap, the variables
    /// of `g` are shifted past the largest id of `f`; the flag reports it.
    pub fn disjoint_product(&self, g: &GradedPolynomial) -> Result<(Self, bool)> {
        let mine: std::collections::HashSet<u32> = self.variables.iter().map(|v| v.id).collect();
        if g.variables.iter().all(|v| !mine.contains(&v.id)) {
            return Ok((self.concat(g)?, false));
        }
        let shift = self.variables.iter().map(|v| v.id).max().map_or(0, |m| m + 1);
        let min_g = g.variables.iter().map(|v| v.id).min().unwrap_or(0);
        let renamed = g.rename(|id| id - min_g + shift)?;
        Ok((self.concat(&renamed)?, true))
    }

    /// Signed alternation over the variables `xs`, which must share a degree.
    pub fn alternate(&self, xs: &[u32]) -> Result<Self> {
        let degs: Vec<Elem> = xs
            .iter()
            .map(|&x| {
                self.variable_degree(x)
                    .ok_or_else(|| Error::NonMultilinear(format!("unknown variable x{x}")))
            })
            .collect::<Result<_>>()?;
        if degs.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::MixedDegrees);
        }
        let perms = permutations(xs.len());
        let slot: HashMap<u32, usize> = xs.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let minus = CycScalar::from_integer(self.scalar_order, -1);
        let mut out = Vec::with_capacity(self.monomials.len() * perms.len());
        for m in &self.monomials {
            for pi in &perms {
                let order = m
                    .order
                    .iter()
                    .map(|id| slot.get(id).map_or(*id, |&k| xs[pi[k]]))
                    .collect();
                let coeff = if permutation_sign(pi) {
                    &m.coeff * &minus
                } else {
                    m.coeff.clone()
                };
                out.push(GradedMonomial { coeff, order });
            }
        }
        Self::new(self.scalar_order, self.variables.clone(), out)
    }

    /// `sum coeff * prod assignment[x]` in `a`.
    pub fn evaluate<A: BasisAlgebra>(
        &self,
        a: &A,
        assignment: &BTreeMap<u32, AlgebraElement>,
    ) -> Result<AlgebraElement> {
        for v in &self.variables {
            let x = assignment.get(&v.id).ok_or(Error::DegreeMismatch {
                var: v.id,
                expected: v.degree,
            })?;
            a.check(x)?;
            if !x.is_zero() && a.homogeneous_degree(x) != Some(v.degree) {
                return Err(Error::DegreeMismatch {
                    var: v.id,
                    expected: v.degree,
                });
            }
        }
        let coeffs: Vec<CycScalar> = self
            .monomials
            .iter()
            .map(|m| m.coeff.to_order(a.scalar_order()))
            .collect::<Result<_>>()?;
        let mut total = a.zero_element();
        for (m, c) in self.monomials.iter().zip(&coeffs) {
            let mut acc: Option<AlgebraElement> = None;
            for id in &m.order {
                let x = &assignment[id];
                acc = Some(match acc {
                    None => x.clone(),
                    Some(prev) => a.multiply(&prev, x)?,
                });
                if acc.as_ref().is_some_and(AlgebraElement::is_zero) {
                    break;
                }
            }
            if let Some(v) = acc {
                total = total.add(&v.scale(c))?;
            }
        }
        Ok(total)
    }

    /// Terms in the text grammar; element names from `group` when given.
    pub fn to_terms(&self, group: Option<&FiniteGroup>) -> Vec<String> {
        let pos = self.positions();
        self.monomials
            .iter()
            .map(|m| {
                let mut s = m.coeff.to_string();
                for id in &m.order {
                    let d = self.variables[pos[id]].degree;
                    match group {
                        Some(g) => s.push_str(&format!(" x{id}:{}", g.name(d))),
                        None => s.push_str(&format!(" x{id}:{d}")),
                    }
                }
                s
            })
            .collect()
    }

    /// Parses terms `"<coeff> x<id>:<elem> ..."`. Elements are resolved by
    /// name or index in `group`. The variable list is taken from the first
    /// term; later terms must use the same variables with the same degrees.
    pub fn parse_terms<S: AsRef<str>>(group: &FiniteGroup, scalar_order: u32, terms: &[S]) -> Result<Self> {
        let mut variables: Vec<GradedVariable> = Vec::new();
        let mut monomials = Vec::new();
        for (t, term) in terms.iter().enumerate() {
            let mut tokens = term.as_ref().split_whitespace();
            let coeff_text = tokens
                .next()
                .ok_or_else(|| Error::NonMultilinear(format!("term {t} is empty")))?;
            let coeff = CycScalar::parse(scalar_order, coeff_text)
                .map_err(|e| Error::NonMultilinear(format!("term {t}: {e}")))?;
            let mut order = Vec::new();
            for tok in tokens {
                let (name, elem) = tok
                    .split_once(':')
                    .ok_or_else(|| Error::NonMultilinear(format!("term {t}: expected x<id>:<element>, got `{tok}`")))?;
                let id: u32 = name
                    .strip_prefix('x')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::NonMultilinear(format!("term {t}: bad variable `{name}`")))?;
                let degree = group
                    .lookup(elem)
                    .ok_or_else(|| Error::NonMultilinear(format!("term {t}: unknown element `{elem}`")))?;
                if t == 0 {
                    variables.push(GradedVariable { id, degree });
                } else {
                    match variables.iter().find(|v| v.id == id) {
                        Some(v) if v.degree == degree => {}
                        Some(_) => {
                            return Err(Error::NonMultilinear(format!(
                                "term {t}: x{id} used with a different degree"
                            )))
                        }
                        None => {
                            return Err(Error::NonMultilinear(format!(
                                "term {t}: x{id} does not occur in the first term"
                            )))
                        }
                    }
                }
                order.push(id);
            }
            monomials.push(GradedMonomial { coeff, order });
        }
        Self::new(scalar_order, variables, monomials)
    }
}

/// True for odd permutations.
pub fn permutation_sign(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Cocycle2;
    use crate::graded_algebra::{GradedAlgebra, Presentation};
    use crate::groups::Subgroup;
    use std::sync::Arc;

    fn var(id: u32, degree: Elem) -> GradedVariable {
        GradedVariable { id, degree }
    }

    #[test]
    fn construction_rejects_non_multilinear() {
        let vars = vec![var(0, 0), var(1, 0)];
        let one = CycScalar::one(1);
        let bad = GradedMonomial {
            coeff: one.clone(),
            order: vec![0, 0],
        };
        assert!(matches!(
            GradedPolynomial::new(1, vars.clone(), [bad]),
            Err(Error::NonMultilinear(_))
        ));
        let short = GradedMonomial {
            coeff: one,
            order: vec![0],
        };
        assert!(GradedPolynomial::new(1, vars, [short]).is_err());
    }

    #[test]
    fn merging_and_cancellation() {
        let g = FiniteGroup::cyclic(2);
        let f = GradedPolynomial::parse_terms(&g, 1, &["1 x0:e x1:g", "2 x1:g x0:e", "-1 x0:e x1:g"]).unwrap();
        assert_eq!(f.monomials().len(), 1);
        assert_eq!(f.to_terms(Some(&g)), vec!["2 x1:g x0:e"]);
        assert!(GradedPolynomial::parse_terms(&g, 1, &["1 x0:e", "1 x0:g"]).is_err());
        assert!(GradedPolynomial::parse_terms(&g, 1, &["1 x0:q"]).is_err());
    }

    #[test]
    fn products_and_alternation() {
        let g = FiniteGroup::cyclic(2);
        let f = GradedPolynomial::parse_terms(&g, 1, &["1 x1:e x2:e", "-1 x2:e x1:e"]).unwrap();
        let y = GradedPolynomial::monomial(1, vec![var(3, 1)]);
        let (fy, renamed) = f.disjoint_product(&y).unwrap();
        assert!(!renamed);
        assert_eq!(fy.monomials().len(), 2);
        assert!(fy.monomials().iter().all(|m| m.order[2] == 3));
        let (ff, renamed) = f.disjoint_product(&f).unwrap();
        assert!(renamed);
        assert_eq!(ff.monomials().len(), 4);
        assert_eq!(ff.degree(), 4);

        let z = GradedPolynomial::monomial(1, (0..5).map(|i| var(i, 0)).collect());
        assert_eq!(z.alternate(&[0]).unwrap(), z);
        assert_eq!(z.alternate(&[0, 1]).unwrap().monomials().len(), 2);
        assert_eq!(z.alternate(&[0, 1, 2, 3, 4]).unwrap().monomials().len(), 120);
        let mixed = GradedPolynomial::monomial(1, vec![var(0, 0), var(1, 1)]);
        assert_eq!(mixed.alternate(&[0, 1]), Err(Error::MixedDegrees));
        let alt = z.alternate(&[0, 1]).unwrap();
        assert!(alt.monomials()[1].coeff == CycScalar::from_integer(1, -1));
        assert!(permutation_sign(&[1, 0, 2]));
        assert!(!permutation_sign(&[1, 2, 0]));
    }

    #[test]
    fn evaluation_basics() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let p = Presentation::new(Cocycle2::trivial(Subgroup::whole(g.clone()), 1), vec![0]).unwrap();
        let a = GradedAlgebra::new(&p);
        let f = GradedPolynomial::monomial(1, vec![var(0, 0)]);
        let ue = a.basis_element(a.index_of(0, 0, 0));
        let asg: BTreeMap<u32, AlgebraElement> = [(0, ue.clone())].into();
        assert_eq!(f.evaluate(&a, &asg).unwrap(), ue);
        let zero: BTreeMap<u32, AlgebraElement> = [(0, a.zero_element())].into();
        assert!(f.evaluate(&a, &zero).unwrap().is_zero());
        let us = a.basis_element(a.index_of(1, 0, 0));
        let wrong: BTreeMap<u32, AlgebraElement> = [(0, us)].into();
        assert_eq!(
            f.evaluate(&a, &wrong),
            Err(Error::DegreeMismatch { var: 0, expected: 0 })
        );
    }
}
