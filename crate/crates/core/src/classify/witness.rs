//! Polynomial witnesses for the failure of strong verbal primeness.
//!
//! Three constructions, by the first failing criterion:
//!
//! * some right coset is missing from the tuple: the grading is degenerate,
//!   and a shortest product of supported degrees that vanishes on A splits
//!   as `f g` with `f`, `g` non-identities;
//! * cosets occur with different multiplicities: frames and bridges. For
//!   each block a monomial `y_0 x_1 y_1 .. x_{m^2} y_{m^2}` in e-variables,
//!   consecutive blocks joined by bridge variables, alternated over all
//!   x's. Its values live in the blocks from smallest to largest size, a
//!   square-zero space, so `f` times a disjoint copy is an identity;
//! * H not normal: the same shape, blocks grouped by the double-coset
//!   relation, bridges inside a group of degree `g_j^-1 h g_(j+1)` with h the
//!   least element of H putting that degree in H.
//!
//! A non-invariant class gets no polynomial; its certificate is the failing
//! coset representative and the obstruction to triviality.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use log::{debug, warn};

use crate::cohomology::Obstruction;
use crate::error::{Error, Result};
use crate::graded_algebra::{AlgebraElement, BasisAlgebra, GradedAlgebra, Presentation};
use crate::groups::Elem;
use crate::polynomials::{is_identity, value_span, GradedPolynomial, GradedVariable, OracleOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// A right coset is missing from the tuple.
    Degenerate,
    /// Unequal coset multiplicities.
    BlockSizes,
    /// H not normal.
    NonNormal,
}

/// A pair `f`, `g` on disjoint variables together with nonzero basis
/// assignments for each, valid for the algebra of `presentation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub presentation: Presentation,
    pub f: GradedPolynomial,
    pub g: GradedPolynomial,
    /// (variable id, basis index).
    pub f_evaluation: Vec<(u32, usize)>,
    pub g_evaluation: Vec<(u32, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonStrongWitness {
    Polynomials(Witness),
    /// The class is not G-invariant: conjugation by `g` changes it.
    Cohomological { g: Elem, obstruction: Obstruction },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub f_value: AlgebraElement,
    pub g_value: AlgebraElement,
    /// Dimension of the span of the values of `f`.
    pub span_rank: usize,
    /// (row block, column block) pairs met by that span, blocks numbered
    /// as in `Presentation::blocks`.
    pub span_blocks: BTreeSet<(usize, usize)>,
    pub span_square_zero: bool,
    pub product_identity: bool,
}

/// Closed walk through all m^2 ordered pairs of `0..m` (loops included)
/// starting and ending at 0, consecutive pairs chained: `s_t = r_(t+1)`.
pub fn eulerian_ordering(m: usize) -> Vec<(usize, usize)> {
    let mut next = vec![0usize; m];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(m * m + 1);
    while let Some(&v) = stack.last() {
        if next[v] < m {
            let w = next[v];
            next[v] += 1;
            stack.push(w);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    circuit.windows(2).map(|w| (w[0], w[1])).collect()
}

pub fn witness_nonstrong(p: &Presentation) -> Result<Option<NonStrongWitness>> {
    let a = GradedAlgebra::new(p);
    if !a.support().connected {
        return Err(Error::Disconnected);
    }
    let normal = p.subgroup().is_normal();
    if p.multiplicities().contains(&0) {
        return Ok(degenerate(p, &a)?.map(NonStrongWitness::Polynomials));
    }
    if !p.cosets_equal() {
        return Ok(Some(NonStrongWitness::Polynomials(frames(p, WitnessKind::BlockSizes))));
    }
    if !normal {
        return Ok(Some(NonStrongWitness::Polynomials(frames(p, WitnessKind::NonNormal))));
    }
    Ok(p
        .cocycle()
        .invariance_failure()?
        .map(|(g, obstruction)| NonStrongWitness::Cohomological { g, obstruction }))
}

/// Shortest sequence of supported degrees whose product vanishes on A,
/// found by breadth-first search over the sets of reachable cosets.
fn degenerate(p: &Presentation, a: &GradedAlgebra) -> Result<Option<Witness>> {
    let grp = p.group();
    let h = p.subgroup();
    let cos = p.cosets();
    let blocks = p.blocks();
    let support = a.support().elements;
    let start: u64 = blocks.iter().fold(0, |acc, b| acc | 1 << b.coset);
    let step = |state: u64, d: Elem| -> u64 {
        let mut out = 0u64;
        for c in blocks.iter().filter(|b| state >> b.coset & 1 == 1) {
            for c2 in &blocks {
                if h.contains(grp.product([c.rep, d, grp.inv(c2.rep)])) {
                    out |= 1 << c2.coset;
                }
            }
        }
        out
    };
    if cos.len() > 64 {
        return Err(Error::Hypothesis("more than 64 cosets".into()));
    }
    let mut parent: HashMap<u64, (u64, Elem)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    let mut found = false;
    'bfs: while let Some(s) = queue.pop_front() {
        for &d in &support {
            let t = step(s, d);
            if t == start || parent.contains_key(&t) {
                continue;
            }
            parent.insert(t, (s, d));
            if t == 0 {
                found = true;
                break 'bfs;
            }
            queue.push_back(t);
        }
    }
    if !found {
        warn!("no vanishing monomial found although a coset is missing");
        return Ok(None);
    }
    let mut degrees = Vec::new();
    let mut s = 0u64;
    while s != start {
        let (prev, d) = parent[&s];
        degrees.push(d);
        s = prev;
    }
    degrees.reverse();
    debug!("degenerate witness of length {}", degrees.len());
    let order = a.scalar_order();
    let n = degrees.len() as u32;
    let vars: Vec<GradedVariable> = degrees
        .iter()
        .enumerate()
        .map(|(k, &d)| GradedVariable { id: k as u32, degree: d })
        .collect();
    let f = GradedPolynomial::monomial(order, vars[..vars.len() - 1].to_vec());
    let g = GradedPolynomial::monomial(order, vec![vars[vars.len() - 1]]);
    let eval_of = |poly: &GradedPolynomial| -> Result<Vec<(u32, usize)>> {
        let verdict = is_identity(poly, a)?;
        let cx = verdict
            .counterexample
            .ok_or_else(|| Error::VerificationFailed("prefix of a shortest vanishing monomial vanishes".into()))?;
        Ok(cx.assignment)
    };
    debug_assert!(n >= 2);
    Ok(Some(Witness {
        kind: WitnessKind::Degenerate,
        presentation: p.clone(),
        f_evaluation: eval_of(&f)?,
        g_evaluation: eval_of(&g)?,
        f,
        g,
    }))
}

struct Builder {
    vars: Vec<GradedVariable>,
    order: Vec<u32>,
    xs: Vec<u32>,
    eval: Vec<(u32, usize)>,
}

impl Builder {
    fn push(&mut self, degree: Elem, basis: usize, alternating: bool) {
        let id = self.vars.len() as u32;
        self.vars.push(GradedVariable { id, degree });
        self.order.push(id);
        self.eval.push((id, basis));
        if alternating {
            self.xs.push(id);
        }
    }
}

/// Blocks (as tuple positions) in the order the monomial visits them.
fn walk(p: &Presentation, kind: WitnessKind) -> Vec<Vec<usize>> {
    let blocks = p.blocks();
    match kind {
        WitnessKind::BlockSizes => {
            let mut order: Vec<usize> = (0..blocks.len()).collect();
            order.sort_by_key(|&b| (blocks[b].multiplicity(), blocks[b].coset));
            order.into_iter().map(|b| blocks[b].positions.clone()).collect()
        }
        _ => {
            let cos = p.cosets();
            let home = cos.coset_of(p.group().identity());
            let mut classes = p.subgroup().equivalence_classes_tilde(&cos);
            for c in classes.iter_mut() {
                c.sort_unstable();
            }
            classes.sort_by_key(|c| (c.len(), !c.contains(&home), c[0]));
            let by_coset: BTreeMap<usize, &Vec<usize>> = blocks.iter().map(|b| (b.coset, &b.positions)).collect();
            classes
                .iter()
                .flatten()
                .map(|c| by_coset[c].clone())
                .collect()
        }
    }
}

fn frames(p: &Presentation, kind: WitnessKind) -> Witness {
    let grp = p.group();
    let h = p.subgroup();
    let e = grp.identity();
    let a = GradedAlgebra::new(p);
    let t = p.tuple();
    let path = walk(p, kind);
    let mut b = Builder {
        vars: Vec::new(),
        order: Vec::new(),
        xs: Vec::new(),
        eval: Vec::new(),
    };
    // e-component basis element at matrix position (i, j) of one block
    let unit = |i: usize, j: usize| a.index_of(grp.mul(t[i], grp.inv(t[j])), i, j);
    for (k, pos) in path.iter().enumerate() {
        let walk_order = eulerian_ordering(pos.len());
        let (r1, _) = walk_order[0];
        b.push(e, unit(pos[r1], pos[r1]), false);
        for &(r, s) in &walk_order {
            b.push(e, unit(pos[r], pos[s]), true);
            b.push(e, unit(pos[s], pos[s]), false);
        }
        if let Some(next) = path.get(k + 1) {
            let (i, j) = (pos[0], next[0]);
            let (gi, gj) = (t[i], t[j]);
            let hat = match kind {
                WitnessKind::NonNormal => h
                    .members()
                    .iter()
                    .copied()
                    .filter(|&x| h.contains(grp.product([grp.inv(gi), x, gj])))
                    .min()
                    .unwrap_or(e),
                _ => e,
            };
            b.push(grp.product([grp.inv(gi), hat, gj]), a.index_of(hat, i, j), false);
        }
    }
    let order = a.scalar_order();
    let z = GradedPolynomial::monomial(order, b.order.iter().map(|&id| b.vars[id as usize]).collect());
    let f = z.alternate(&b.xs).expect("x variables all have degree e");
    let shift = b.vars.len() as u32;
    let g = f.rename(|id| id + shift).expect("injective shift");
    debug!(
        "{kind:?} witness: {} variables, {} monomials per factor",
        f.degree(),
        f.monomials().len()
    );
    Witness {
        kind,
        presentation: p.clone(),
        g_evaluation: b.eval.iter().map(|&(id, x)| (id + shift, x)).collect(),
        f_evaluation: b.eval,
        f,
        g,
    }
}

fn evaluate_basis(
    poly: &GradedPolynomial,
    a: &GradedAlgebra,
    eval: &[(u32, usize)],
) -> Result<AlgebraElement> {
    let asg: BTreeMap<u32, AlgebraElement> = eval.iter().map(|&(id, x)| (id, a.basis_element(x))).collect();
    poly.evaluate(a, &asg)
}

/// Checks a witness against `a`, which must be the algebra of the
/// witness's presentation. Fails with `VerificationFailed` when `f` or `g`
/// vanishes at its recorded evaluation, when `f g` is not an identity, or
/// when a frame witness has a span of values that does not square to zero.
pub fn verify_witness(w: &Witness, a: &GradedAlgebra) -> Result<WitnessCertificate> {
    if a.presentation() != &w.presentation {
        return Err(Error::Hypothesis("witness was built for a different presentation".into()));
    }
    let f_value = evaluate_basis(&w.f, a, &w.f_evaluation)?;
    let g_value = evaluate_basis(&w.g, a, &w.g_evaluation)?;
    let opts = OracleOptions::default();
    let span = value_span(&w.f, a, &opts)?;
    let p = a.presentation();
    let mut block_of_row = vec![0; p.m()];
    for (k, blk) in p.blocks().iter().enumerate() {
        for &i in &blk.positions {
            block_of_row[i] = k;
        }
    }
    let basis: Vec<AlgebraElement> = span.basis().iter().map(|v| a.element_from_dense(v)).collect();
    let mut span_blocks = BTreeSet::new();
    for v in &basis {
        for &x in v.terms().keys() {
            let (_, i, j) = a.triple(x);
            span_blocks.insert((block_of_row[i], block_of_row[j]));
        }
    }
    let mut span_square_zero = true;
    'sq: for u in &basis {
        for v in &basis {
            if !a.multiply(u, v)?.is_zero() {
                span_square_zero = false;
                break 'sq;
            }
        }
    }
    let (fg, _) = w.f.disjoint_product(&w.g)?;
    let product_identity = is_identity(&fg, a)?.identity;
    let cert = WitnessCertificate {
        f_value,
        g_value,
        span_rank: span.rank(),
        span_blocks,
        span_square_zero,
        product_identity,
    };
    if cert.f_value.is_zero() {
        return Err(Error::VerificationFailed("f vanishes at its recorded evaluation".into()));
    }
    if cert.g_value.is_zero() {
        return Err(Error::VerificationFailed("g vanishes at its recorded evaluation".into()));
    }
    if !cert.product_identity {
        return Err(Error::VerificationFailed("f g is not an identity".into()));
    }
    if w.kind != WitnessKind::Degenerate && !cert.span_square_zero {
        return Err(Error::VerificationFailed("span of f does not square to zero".into()));
    }
    Ok(cert)
}
