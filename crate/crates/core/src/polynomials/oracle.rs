//! Exact identity test for multilinear polynomials.
//!
//! A multilinear polynomial vanishes on A iff it vanishes on every
//! assignment of homogeneous basis elements, so the oracle enumerates those.
//! Assignments are generated per monomial by chaining basis elements whose
//! running product stays nonzero (for matrix units: column of one = row of
//! the next), and the signed contributions are accumulated in a table keyed
//! by (assignment, result basis element). Monomials are processed in
//! parallel and merged; exact arithmetic makes the result independent of
//! the merge order.
//!
//! Products `f g` on disjoint variables are recognized structurally: `f g`
//! is an identity iff `span f(A) * span g(A) = 0`, which avoids enumerating
//! the product's paths.

use std::collections::{BTreeMap, HashMap};

use log::debug;

use super::{GradedMonomial, GradedPolynomial};
use crate::error::{Error, Result};
use crate::graded_algebra::{AlgebraElement, BasisAlgebra};
use crate::groups::Elem;
use crate::linalg::Span;
use crate::par::fold_reduce;
use crate::scalars::CycScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Force the sequential path even when built with `parallel`.
    pub sequential: bool,
    /// Refuse polynomials of larger degree.
    pub max_degree: Option<usize>,
    /// Use the disjoint-product shortcut.
    pub factorize: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            sequential: false,
            max_degree: None,
            factorize: true,
        }
    }
}

/// Basis assignment (variable id, basis index), in variable-list order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: Vec<(u32, usize)>,
    pub value: AlgebraElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub identity: bool,
    /// Lexicographically first assignment with a nonzero value.
    pub counterexample: Option<Counterexample>,
}

pub fn is_identity<A: BasisAlgebra>(f: &GradedPolynomial, a: &A) -> Result<IdentityVerdict> {
    is_identity_with(f, a, &OracleOptions::default())
}

pub fn is_identity_with<A: BasisAlgebra>(
    f: &GradedPolynomial,
    a: &A,
    opts: &OracleOptions,
) -> Result<IdentityVerdict> {
    check_input(f, a, opts)?;
    let f = f.with_scalar_order(a.scalar_order())?;
    let found = if opts.factorize && split(&f).is_some() {
        let span = value_span_inner(&f, a, opts)?;
        if span.is_zero() {
            None
        } else {
            first_nonzero(&f, a, None, opts)?
        }
    } else {
        evaluation_table(&f, a, opts)?.into_iter().next()
    };
    let counterexample = found.map(|(asg, value)| Counterexample {
        assignment: f.variables.iter().map(|v| v.id).zip(asg).collect(),
        value,
    });
    Ok(IdentityVerdict {
        identity: counterexample.is_none(),
        counterexample,
    })
}

fn check_input<A: BasisAlgebra>(f: &GradedPolynomial, a: &A, opts: &OracleOptions) -> Result<()> {
    if let Some(cap) = opts.max_degree {
        if f.degree() > cap {
            return Err(Error::DegreeCap {
                degree: f.degree(),
                cap,
            });
        }
    }
    let n = a.grading_group().order();
    if let Some(v) = f.variables.iter().find(|v| v.degree >= n) {
        return Err(Error::ElementOutOfRange(v.degree, n));
    }
    Ok(())
}

type Key = (Box<[u32]>, u32);

/// All nonzero values `f(b_1, .., b_n)` on basis assignments, sorted by the
/// assignment (basis indices in variable-list order).
pub fn evaluation_table<A: BasisAlgebra>(
    f: &GradedPolynomial,
    a: &A,
    opts: &OracleOptions,
) -> Result<Vec<(Vec<usize>, AlgebraElement)>> {
    check_input(f, a, opts)?;
    let f = f.with_scalar_order(a.scalar_order())?;
    let pos = f.positions();
    let nvars = f.variables.len();
    let order = a.scalar_order();
    let plan: Vec<(Vec<usize>, Vec<Elem>)> = f
        .monomials
        .iter()
        .map(|m| {
            let p: Vec<usize> = m.order.iter().map(|id| pos[id]).collect();
            let d = p.iter().map(|&k| f.variables[k].degree).collect();
            (p, d)
        })
        .collect();
    let jobs: Vec<(&GradedMonomial, &(Vec<usize>, Vec<Elem>))> = f.monomials.iter().zip(&plan).collect();
    let table: HashMap<Key, CycScalar> = fold_reduce(
        &jobs,
        opts.sequential,
        HashMap::new,
        |mut acc, (mono, (positions, degrees))| {
            accumulate_monomial(a, order, nvars, &mono.coeff, positions, degrees, &mut acc);
            acc
        },
        |mut x, y| {
            if x.len() < y.len() {
                return merge_into(y, x);
            }
            x = merge_into(x, y);
            x
        },
    );
    debug!("identity oracle: {} accumulated entries", table.len());
    let mut grouped: BTreeMap<Box<[u32]>, AlgebraElement> = BTreeMap::new();
    for ((asg, result), s) in table {
        if s.is_zero() {
            continue;
        }
        let mut single = a.zero_element();
        single.add_term(result as usize, &s);
        match grouped.get_mut(&asg) {
            Some(e) => *e = e.add(&single)?,
            None => {
                grouped.insert(asg, single);
            }
        }
    }
    Ok(grouped
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k.iter().map(|&x| x as usize).collect(), v))
        .collect())
}

fn merge_into(mut big: HashMap<Key, CycScalar>, small: HashMap<Key, CycScalar>) -> HashMap<Key, CycScalar> {
    for (k, v) in small {
        match big.get_mut(&k) {
            Some(s) => s.add_assign_ref(&v),
            None => {
                big.insert(k, v);
            }
        }
    }
    big
}

/// Depth-first enumeration of chained basis choices for one monomial.
fn accumulate_monomial<A: BasisAlgebra>(
    a: &A,
    order: u32,
    nvars: usize,
    coeff: &CycScalar,
    positions: &[usize],
    degrees: &[Elem],
    acc: &mut HashMap<Key, CycScalar>,
) {
    // coeff * (+-zeta^k), built lazily
    let mut phases: Vec<Option<CycScalar>> = vec![None; 2 * order as usize];
    let mut assign = vec![0u32; nvars];
    struct Frame {
        prod: usize,
        neg: bool,
        exp: u32,
    }
    fn rec<A: BasisAlgebra>(
        a: &A,
        order: u32,
        t: usize,
        cur: Frame,
        positions: &[usize],
        degrees: &[Elem],
        assign: &mut [u32],
        coeff: &CycScalar,
        phases: &mut [Option<CycScalar>],
        acc: &mut HashMap<Key, CycScalar>,
    ) {
        if t == positions.len() {
            let slot = cur.exp as usize + if cur.neg { order as usize } else { 0 };
            let s = phases[slot].get_or_insert_with(|| {
                let z = CycScalar::root_of_unity(order, cur.exp as i64);
                let z = if cur.neg { -z } else { z };
                coeff * &z
            });
            let key: Key = (assign.to_vec().into_boxed_slice(), cur.prod as u32);
            match acc.get_mut(&key) {
                Some(v) => v.add_assign_ref(s),
                None => {
                    acc.insert(key, s.clone());
                }
            }
            return;
        }
        for &b in a.right_partners(cur.prod, degrees[t]) {
            if let Some(p) = a.mul_basis(cur.prod, b) {
                assign[positions[t]] = b as u32;
                let next = Frame {
                    prod: p.index,
                    neg: cur.neg ^ p.neg,
                    exp: (cur.exp + p.exp) % order,
                };
                rec(a, order, t + 1, next, positions, degrees, assign, coeff, phases, acc);
            }
        }
    }
    for &b in a.basis_of_degree(degrees[0]) {
        assign[positions[0]] = b as u32;
        let start = Frame {
            prod: b,
            neg: false,
            exp: 0,
        };
        rec(a, order, 1, start, positions, degrees, &mut assign, coeff, &mut phases, acc);
    }
}

/// `f = f1 f2` with `f1` on the shortest possible prefix of the variable
/// list, when the coefficients factor.
pub(crate) fn split(f: &GradedPolynomial) -> Option<(GradedPolynomial, GradedPolynomial)> {
    let n = f.variables.len();
    if n < 2 || f.monomials.is_empty() {
        return None;
    }
    let pos = f.positions();
    let ranks: Vec<Vec<usize>> = f
        .monomials
        .iter()
        .map(|m| m.order.iter().map(|id| pos[id]).collect())
        .collect();
    'k: for k in 1..n {
        for r in &ranks {
            if r[..k].iter().any(|&p| p >= k) {
                continue 'k;
            }
        }
        if let Some(parts) = factor_at(f, k) {
            return Some(parts);
        }
    }
    None
}

fn factor_at(f: &GradedPolynomial, k: usize) -> Option<(GradedPolynomial, GradedPolynomial)> {
    let mut prefixes: Vec<&[u32]> = Vec::new();
    let mut suffixes: Vec<&[u32]> = Vec::new();
    let mut pi: HashMap<&[u32], usize> = HashMap::new();
    let mut si: HashMap<&[u32], usize> = HashMap::new();
    for m in &f.monomials {
        let (p, s) = m.order.split_at(k);
        pi.entry(p).or_insert_with(|| {
            prefixes.push(p);
            prefixes.len() - 1
        });
        si.entry(s).or_insert_with(|| {
            suffixes.push(s);
            suffixes.len() - 1
        });
    }
    if prefixes.len() * suffixes.len() != f.monomials.len() {
        return None;
    }
    let mut grid: Vec<Option<&CycScalar>> = vec![None; f.monomials.len()];
    for m in &f.monomials {
        let (p, s) = m.order.split_at(k);
        grid[pi[p] * suffixes.len() + si[s]] = Some(&m.coeff);
    }
    let at = |p: usize, s: usize| grid[p * suffixes.len() + s].unwrap();
    let pivot_inv = at(0, 0).inverse().ok()?;
    let a: Vec<CycScalar> = (0..prefixes.len()).map(|p| at(p, 0) * &pivot_inv).collect();
    let b: Vec<CycScalar> = (0..suffixes.len()).map(|s| at(0, s).clone()).collect();
    for (p, ap) in a.iter().enumerate() {
        for (s, bs) in b.iter().enumerate() {
            if *at(p, s) != ap * bs {
                return None;
            }
        }
    }
    let order = f.scalar_order;
    let f1 = GradedPolynomial::new(
        order,
        f.variables[..k].to_vec(),
        prefixes.iter().zip(a).map(|(p, coeff)| GradedMonomial {
            coeff,
            order: p.to_vec(),
        }),
    )
    .ok()?;
    let f2 = GradedPolynomial::new(
        order,
        f.variables[k..].to_vec(),
        suffixes.iter().zip(b).map(|(s, coeff)| GradedMonomial {
            coeff,
            order: s.to_vec(),
        }),
    )
    .ok()?;
    Some((f1, f2))
}

/// Span of all values of `f` on A (equivalently, on basis assignments).
pub fn value_span<A: BasisAlgebra>(f: &GradedPolynomial, a: &A, opts: &OracleOptions) -> Result<Span> {
    check_input(f, a, opts)?;
    let f = f.with_scalar_order(a.scalar_order())?;
    value_span_inner(&f, a, opts)
}

fn value_span_inner<A: BasisAlgebra>(f: &GradedPolynomial, a: &A, opts: &OracleOptions) -> Result<Span> {
    let mut span = Span::new(a.scalar_order(), a.dim());
    if opts.factorize {
        if let Some((f1, f2)) = split(f) {
            let s1 = value_span_inner(&f1, a, opts)?;
            if s1.is_zero() {
                return Ok(s1);
            }
            let s2 = value_span_inner(&f2, a, opts)?;
            for u in s1.basis() {
                let u = a.element_from_dense(u);
                for v in s2.basis() {
                    let uv = a.multiply(&u, &a.element_from_dense(v))?;
                    if !uv.is_zero() {
                        span.insert(uv.to_dense(a.dim()));
                    }
                }
            }
            return Ok(span);
        }
    }
    for (_, v) in evaluation_table(f, a, opts)? {
        span.insert(v.to_dense(a.dim()));
    }
    Ok(span)
}

type Found = Option<(Vec<usize>, AlgebraElement)>;

/// Lexicographically first assignment `x` with `left * f(x) != 0`.
fn first_nonzero<A: BasisAlgebra>(
    f: &GradedPolynomial,
    a: &A,
    left: Option<&AlgebraElement>,
    opts: &OracleOptions,
) -> Result<Found> {
    let apply = |v: &AlgebraElement| -> Result<AlgebraElement> {
        match left {
            Some(l) => a.multiply(l, v),
            None => Ok(v.clone()),
        }
    };
    if opts.factorize {
        if let Some((f1, f2)) = split(f) {
            for (asg1, v1) in evaluation_table(&f1, a, opts)? {
                let l = apply(&v1)?;
                if l.is_zero() {
                    continue;
                }
                if let Some((asg2, v)) = first_nonzero(&f2, a, Some(&l), opts)? {
                    let mut asg = asg1;
                    asg.extend(asg2);
                    return Ok(Some((asg, v)));
                }
            }
            return Ok(None);
        }
    }
    for (asg, v) in evaluation_table(f, a, opts)? {
        let w = apply(&v)?;
        if !w.is_zero() {
            return Ok(Some((asg, w)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Cocycle2;
    use crate::graded_algebra::{GradedAlgebra, Presentation};
    use crate::groups::{FiniteGroup, Subgroup};
    use crate::polynomials::GradedVariable;
    use std::sync::Arc;

    fn m3() -> GradedAlgebra {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let p = Presentation::new(Cocycle2::trivial(Subgroup::trivial(g), 1), vec![0, 0, 1]).unwrap();
        GradedAlgebra::new(&p)
    }

    fn klein() -> GradedAlgebra {
        let g = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        let c = Cocycle2::from_fn(Subgroup::whole(g), 2, |a, b| ((a % 2) * (b / 2)) as i64);
        GradedAlgebra::new(&Presentation::new(c, vec![0]).unwrap())
    }

    #[test]
    fn single_variable_in_support() {
        let a = m3();
        let f = GradedPolynomial::monomial(1, vec![GradedVariable { id: 0, degree: 1 }]);
        let v = is_identity(&f, &a).unwrap();
        assert!(!v.identity);
        let ce = v.counterexample.unwrap();
        assert_eq!(a.triple(ce.assignment[0].1), (0, 0, 2));
    }

    #[test]
    fn binomials_of_twisted_group_algebra() {
        let a = klein();
        let c = a.presentation().cocycle().clone();
        let g = a.grading_group().clone();
        for bin in c.enumerate_binomials(3) {
            let n = bin.h.len();
            let vars: Vec<GradedVariable> = (0..n as u32)
                .map(|i| GradedVariable {
                    id: i,
                    degree: bin.h[i as usize],
                })
                .collect();
            let z: Vec<u32> = (0..n as u32).collect();
            let zs: Vec<u32> = bin.sigma.iter().map(|&i| i as u32).collect();
            for sign in [1i64, -1] {
                let alpha = CycScalar::root_of_unity(2, bin.alpha_exp as i64) * CycScalar::from_integer(2, -sign);
                let f = GradedPolynomial::new(
                    2,
                    vars.clone(),
                    [
                        GradedMonomial {
                            coeff: CycScalar::one(2),
                            order: z.clone(),
                        },
                        GradedMonomial {
                            coeff: alpha,
                            order: zs.clone(),
                        },
                    ],
                )
                .unwrap();
                let v = is_identity(&f, &a).unwrap();
                // Z - alpha Z_sigma vanishes; Z + alpha Z_sigma never does (N = 2)
                assert_eq!(v.identity, sign == 1 || f.is_zero(), "{bin:?} sign {sign} {g:?}");
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let a = m3();
        let g = a.grading_group().clone();
        let f = GradedPolynomial::parse_terms(
            &g,
            1,
            &["1 x0:e x1:g x2:g", "-1 x1:g x0:e x2:g", "2 x2:g x1:g x0:e"],
        )
        .unwrap();
        let seq = OracleOptions {
            sequential: true,
            ..Default::default()
        };
        assert_eq!(
            evaluation_table(&f, &a, &seq).unwrap(),
            evaluation_table(&f, &a, &OracleOptions::default()).unwrap()
        );
        assert_eq!(is_identity_with(&f, &a, &seq).unwrap(), is_identity(&f, &a).unwrap());
    }

    #[test]
    fn factorized_path_matches_plain_enumeration() {
        let a = m3();
        let g = a.grading_group().clone();
        let f = GradedPolynomial::parse_terms(&g, 1, &["1 x0:e x1:e", "-1 x1:e x0:e"]).unwrap();
        let h = GradedPolynomial::parse_terms(&g, 1, &["1 x2:g x3:e", "3 x3:e x2:g"]).unwrap();
        let plain = OracleOptions {
            factorize: false,
            ..Default::default()
        };
        for (p, q) in [(&f, &h), (&h, &f), (&f, &f), (&h, &h)] {
            let (prod, _) = p.disjoint_product(q).unwrap();
            assert!(split(&prod).is_some());
            let fast = is_identity(&prod, &a).unwrap();
            let slow = is_identity_with(&prod, &a, &plain).unwrap();
            assert_eq!(fast, slow);
            let s1 = value_span(&prod, &a, &OracleOptions::default()).unwrap();
            let s2 = value_span(&prod, &a, &plain).unwrap();
            assert_eq!(s1.rank(), s2.rank());
        }
        assert!(split(&f).is_none());
    }

    #[test]
    fn degree_cap() {
        let a = m3();
        let g = a.grading_group().clone();
        let f = GradedPolynomial::parse_terms(&g, 1, &["1 x0:e x1:e"]).unwrap();
        let opts = OracleOptions {
            max_degree: Some(1),
            ..Default::default()
        };
        assert_eq!(
            is_identity_with(&f, &a, &opts),
            Err(Error::DegreeCap { degree: 2, cap: 1 })
        );
    }
}
