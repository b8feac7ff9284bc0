//! Good permutations, pure components and the path property.
//!
//! The path machinery needs H normal and every right H-coset present in the
//! tuple; outside that setting the operations return a hypothesis error.

use std::collections::HashMap;
use std::sync::Arc;

use super::oracle::{evaluation_table, is_identity, OracleOptions};
use super::{GradedMonomial, GradedPolynomial, GradedVariable};
use crate::cohomology::Cocycle2;
use crate::error::{Error, Result};
use crate::graded_algebra::{GradedAlgebra, Presentation};
use crate::groups::{Elem, FiniteGroup, Subgroup};
use crate::scalars::CycScalar;

/// Prefix product through each variable, keyed by id.
fn prefixes(g: &FiniteGroup, deg: &HashMap<u32, Elem>, order: &[u32]) -> HashMap<u32, Elem> {
    let mut acc = g.identity();
    order
        .iter()
        .map(|id| {
            acc = g.mul(acc, deg[id]);
            (*id, acc)
        })
        .collect()
}

fn degree_map(vars: &[GradedVariable]) -> HashMap<u32, Elem> {
    vars.iter().map(|v| (v.id, v.degree)).collect()
}

/// `zs` is a good permutation of `z`: equal total degree and, for every
/// variable, the prefix products through it lie in the same right H-coset.
pub fn is_good_permutation(vars: &[GradedVariable], z: &[u32], zs: &[u32], h: &Subgroup) -> bool {
    let g = h.parent();
    let deg = degree_map(vars);
    if z.len() != zs.len() || z.iter().chain(zs).any(|id| !deg.contains_key(id)) {
        return false;
    }
    let mut a = z.to_vec();
    let mut b = zs.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return false;
    }
    let pz = prefixes(g, &deg, z);
    let ps = prefixes(g, &deg, zs);
    if z.last().map(|id| pz[id]) != zs.last().map(|id| ps[id]) {
        return false;
    }
    z.iter().all(|id| h.contains(g.mul(pz[id], g.inv(ps[id]))))
}

/// Classes of monomials under good permutation, in order of first monomial.
pub fn pure_components(f: &GradedPolynomial, h: &Subgroup) -> Vec<GradedPolynomial> {
    let mut classes: Vec<Vec<&GradedMonomial>> = Vec::new();
    'outer: for m in &f.monomials {
        for class in classes.iter_mut() {
            if is_good_permutation(&f.variables, &class[0].order, &m.order, h) {
                class.push(m);
                continue 'outer;
            }
        }
        classes.push(vec![m]);
    }
    classes
        .into_iter()
        .map(|c| {
            GradedPolynomial::new(f.scalar_order, f.variables.clone(), c.into_iter().cloned())
                .expect("sub-sum of a valid polynomial")
        })
        .collect()
}

fn require_path_setting(p: &Presentation) -> Result<()> {
    if !p.subgroup().is_normal() {
        return Err(Error::Hypothesis("H must be normal".into()));
    }
    if p.multiplicities().contains(&0) {
        return Err(Error::Hypothesis("every right H-coset must occur in the tuple".into()));
    }
    Ok(())
}

fn require_pure(f: &GradedPolynomial, h: &Subgroup) -> Result<()> {
    if pure_components(f, h).len() > 1 {
        return Err(Error::Hypothesis("polynomial is not pure".into()));
    }
    Ok(())
}

/// The scalar s with `Z - s Z_sigma` an identity, where `Z_sigma` lists the
/// variables of `z` in the order `z[sigma[0]], z[sigma[1]], ..`.
///
/// Computed from `f_i = [t_1..t_{i-1}] t_i [t_1..t_i]^-1`, where `[x]` is the
/// tuple entry in the coset `Hx`, as `zeta^(c(f) - c(f_sigma))`. Requires H
/// normal, every coset represented exactly once and a G-invariant class.
pub fn good_permutation_scalar(
    vars: &[GradedVariable],
    z: &[u32],
    sigma: &[usize],
    p: &Presentation,
) -> Result<CycScalar> {
    let n = z.len();
    let mut seen = vec![false; n];
    if sigma.len() != n || sigma.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::InvalidPermutation(format!("{sigma:?}")));
    }
    let zs: Vec<u32> = sigma.iter().map(|&i| z[i]).collect();
    if !is_good_permutation(vars, z, &zs, p.subgroup()) {
        return Err(Error::NotGoodPermutation);
    }
    require_path_setting(p)?;
    if p.equi_multiplicity().map(|(_, r)| r) != Some(1) {
        return Err(Error::Hypothesis("each coset must occur exactly once (r = 1)".into()));
    }
    if !p.cocycle().is_g_invariant_class()? {
        return Err(Error::Hypothesis("cohomology class is not G-invariant".into()));
    }
    let g = p.group();
    let cos = p.cosets();
    let mut transversal = vec![0; cos.len()];
    for &t in p.tuple() {
        transversal[cos.coset_of(t)] = t;
    }
    let bracket = |x: Elem| transversal[cos.coset_of(x)];
    let deg = degree_map(vars);
    let mut prefix = g.identity();
    let mut f_of: HashMap<u32, Elem> = HashMap::new();
    for id in z {
        let next = g.mul(prefix, deg[id]);
        f_of.insert(*id, g.product([bracket(prefix), deg[id], g.inv(bracket(next))]));
        prefix = next;
    }
    let c = p.cocycle();
    let f: Vec<Elem> = z.iter().map(|id| f_of[id]).collect();
    let fs: Vec<Elem> = zs.iter().map(|id| f_of[id]).collect();
    let e = c.product_exponent(&f) as i64 - c.product_exponent(&fs) as i64;
    Ok(CycScalar::root_of_unity(c.modulus(), e))
}

/// Which diagonal e-blocks (occupied cosets, in coset order) the pure
/// polynomial `f` vanishes on: block i counts as vanishing when every basis
/// evaluation putting the first variable of the first monomial in a row of
/// block i gives 0. Block sizes may differ.
pub fn path_vanishing(f: &GradedPolynomial, a: &GradedAlgebra) -> Result<Vec<bool>> {
    let p = a.presentation();
    require_path_setting(p)?;
    require_pure(f, p.subgroup())?;
    let blocks = p.blocks();
    let Some(first) = f.monomials.first() else {
        return Ok(vec![true; blocks.len()]);
    };
    let mut block_of_row = vec![0; p.m()];
    for (b, blk) in blocks.iter().enumerate() {
        for &i in &blk.positions {
            block_of_row[i] = b;
        }
    }
    let k = f.positions()[&first.order[0]];
    let mut vanishing = vec![true; blocks.len()];
    for (asg, _) in evaluation_table(f, a, &OracleOptions::default())? {
        let (_, row, _) = a.triple(asg[k]);
        vanishing[block_of_row[row]] = false;
    }
    Ok(vanishing)
}

/// Restriction of a pure polynomial to the path starting in block `block`,
/// as an ungraded multilinear polynomial over `M_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRestriction {
    pub block: usize,
    pub matrix_size: usize,
    pub scalar_order: u32,
    pub variables: Vec<u32>,
    /// (ordering, coefficient times the cocycle scalar of the path).
    pub terms: Vec<(Vec<u32>, CycScalar)>,
}

impl PathRestriction {
    /// As a polynomial graded by the trivial group.
    pub fn polynomial(&self) -> Result<GradedPolynomial> {
        GradedPolynomial::new(
            self.scalar_order,
            self.variables.iter().map(|&id| GradedVariable { id, degree: 0 }).collect(),
            self.terms.iter().map(|(o, c)| GradedMonomial {
                coeff: c.clone(),
                order: o.clone(),
            }),
        )
    }

    /// Whether the restriction is an identity of `M_r`.
    pub fn vanishes(&self) -> Result<bool> {
        let poly = self.polynomial()?;
        if self.matrix_size == 1 {
            let mut sum = CycScalar::zero(self.scalar_order);
            for m in poly.monomials() {
                sum.add_assign_ref(&m.coeff);
            }
            return Ok(sum.is_zero());
        }
        let g = Arc::new(FiniteGroup::cyclic(1));
        let c = Cocycle2::trivial(Subgroup::trivial(g), self.scalar_order);
        let mr = GradedAlgebra::new(&Presentation::new_unchecked(c, vec![0; self.matrix_size])?);
        Ok(is_identity(&poly, &mr)?.identity)
    }
}

/// Requires equal multiplicities. The tuple is first rectified (each entry
/// replaced by its canonical coset representative, an M2 move), then every
/// variable's block transition and H-label are read off the first monomial.
pub fn path_restriction(f: &GradedPolynomial, a: &GradedAlgebra, block: usize) -> Result<PathRestriction> {
    let p = a.presentation();
    require_path_setting(p)?;
    let (k, r) = p
        .equi_multiplicity()
        .ok_or_else(|| Error::Hypothesis("cosets must be equally represented".into()))?;
    if block >= k {
        return Err(Error::Hypothesis(format!("block {block} out of range (k = {k})")));
    }
    let h = p.subgroup();
    require_pure(f, h)?;
    let g = p.group();
    let cos = p.cosets();
    let c = p.cocycle();
    let variables: Vec<u32> = f.variables.iter().map(|v| v.id).collect();
    let Some(first) = f.monomials.first() else {
        return Ok(PathRestriction {
            block,
            matrix_size: r,
            scalar_order: f.scalar_order,
            variables,
            terms: Vec::new(),
        });
    };
    let deg = degree_map(&f.variables);
    let mut label: HashMap<u32, Elem> = HashMap::new();
    let mut cur = cos.reps()[block];
    for id in &first.order {
        let next = g.mul(cur, deg[id]);
        let (ra, rb) = (cos.rep_of(cur), cos.rep_of(next));
        label.insert(*id, g.product([ra, deg[id], g.inv(rb)]));
        cur = next;
    }
    let order = c.modulus();
    let terms = f
        .monomials
        .iter()
        .map(|m| {
            let hs: Vec<Elem> = m.order.iter().map(|id| label[id]).collect();
            let z = CycScalar::root_of_unity(order, c.product_exponent(&hs) as i64);
            let coeff = m.coeff.to_order(order)?;
            Ok((m.order.clone(), &coeff * &z))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PathRestriction {
        block,
        matrix_size: r,
        scalar_order: order,
        variables,
        terms,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathReport {
    /// Per block: does the polynomial vanish on paths starting there.
    pub vanishing: Vec<bool>,
    /// Vanishing on all blocks or on none.
    pub holds: bool,
}

pub fn satisfies_path_property(f: &GradedPolynomial, a: &GradedAlgebra) -> Result<PathReport> {
    let vanishing = path_vanishing(f, a)?;
    let holds = vanishing.iter().all(|&v| v) || vanishing.iter().all(|&v| !v);
    Ok(PathReport { vanishing, holds })
}
