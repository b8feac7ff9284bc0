//! Normalized 2-cocycles with values in the N-th roots of unity.
//!
//! A cocycle on `H` is stored as an `|H| x |H|` exponent table mod N indexed
//! by positions in `H.members()`; `c(a, b) = zeta_N^exps[a][b]`. Deciding
//! whether a cocycle is a coboundary is a linear system over Z/N, solved by
//! Smith diagonalization in [`smith`].

pub mod smith;

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{Elem, Subgroup};
use crate::scalars::CycScalar;

use smith::{solve_mod, ModSolution};

#[derive(Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    subgroup: Subgroup,
    modulus: u32,
    exps: Vec<u32>,
}

impl fmt::Debug for Cocycle2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cocycle2(N={}, H={:?}, exps={:?})",
            self.modulus,
            self.subgroup.members(),
            self.exps
        )
    }
}

/// Result of [`Cocycle2::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleCheck {
    Ok,
    /// Cocycle identity fails on `(a, b, d)` (parent element indices).
    IdentityViolated { a: Elem, b: Elem, d: Elem },
    /// `c(e, h)` or `c(h, e)` is not 1.
    NotNormalized { h: Elem },
}

impl CocycleCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, CocycleCheck::Ok)
    }
}

impl fmt::Display for CocycleCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleCheck::Ok => f.write_str("ok"),
            CocycleCheck::IdentityViolated { a, b, d } => {
                write!(f, "cocycle identity fails on triple ({a}, {b}, {d})")
            }
            CocycleCheck::NotNormalized { h } => write!(f, "not normalized at element {h}"),
        }
    }
}

/// `lambda: H -> Z/N`, inducing `d lambda(a, b) = lambda(a) + lambda(b) - lambda(ab)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coboundary {
    pub modulus: u32,
    /// Indexed like the subgroup's member list.
    pub lambda: Vec<u32>,
}

/// Certificate that a cocycle is not a coboundary: integer weights on the
/// pairs `(a, b)` whose weighted sum of coboundary equations vanishes
/// identically while the weighted sum of the cocycle exponents does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub modulus: u32,
    /// `(a, b, weight)` with `a, b` parent element indices, weights nonzero mod N.
    pub weights: Vec<(Elem, Elem, u32)>,
}

impl Obstruction {
    /// Re-checks the certificate against `c` independently of the solver.
    pub fn verify(&self, c: &Cocycle2) -> bool {
        let h = &c.subgroup;
        let n = self.modulus as i64;
        let mut column = vec![0i64; h.order()];
        let mut value = 0i64;
        for &(a, b, w) in &self.weights {
            let w = w as i64;
            let (Some(ia), Some(ib)) = (h.local_index(a), h.local_index(b)) else {
                return false;
            };
            let iab = h.local_index(h.parent().mul(a, b)).unwrap();
            column[ia] += w;
            column[ib] += w;
            column[iab] -= w;
            value += w * c.exp(ia, ib) as i64;
        }
        column.iter().all(|x| x.rem_euclid(n) == 0) && value.rem_euclid(n) != 0
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .weights
            .iter()
            .map(|(a, b, w)| format!("{w}*({a},{b})"))
            .collect();
        write!(f, "{} (mod {})", parts.join(" + "), self.modulus)
    }
}

/// One binomial `x_1..x_n - alpha x_sigma(1)..x_sigma(n)` on H-degrees `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binomial {
    /// Parent element indices.
    pub h: Vec<Elem>,
    /// 0-based permutation, `h_sigma = (h[sigma[0]], ..)`.
    pub sigma: Vec<usize>,
    /// `alpha = zeta_N^alpha_exp`.
    pub alpha_exp: u32,
}

impl Cocycle2 {
    /// Wraps an exponent table; only the shape is checked here.
    pub fn from_exponents(subgroup: Subgroup, modulus: u32, table: &[Vec<i64>]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidCocycle("modulus must be positive".into()));
        }
        let k = subgroup.order();
        if table.len() != k || table.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidCocycle(format!(
                "exponent table must be {k}x{k} for a subgroup of order {k}"
            )));
        }
        let exps = table
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(modulus as i64) as u32)
            .collect();
        Ok(Cocycle2 {
            subgroup,
            modulus,
            exps,
        })
    }

    /// Wraps and validates an exponent table.
    pub fn new(subgroup: Subgroup, modulus: u32, table: &[Vec<i64>]) -> Result<Self> {
        let c = Self::from_exponents(subgroup, modulus, table)?;
        match c.validate() {
            CocycleCheck::Ok => Ok(c),
            bad => Err(Error::InvalidCocycle(bad.to_string())),
        }
    }

    pub fn trivial(subgroup: Subgroup, modulus: u32) -> Self {
        let k = subgroup.order();
        Cocycle2 {
            subgroup,
            modulus,
            exps: vec![0; k * k],
        }
    }

    /// Builds a table from a closure on parent elements.
    pub fn from_fn(subgroup: Subgroup, modulus: u32, f: impl Fn(Elem, Elem) -> i64) -> Self {
        let m = subgroup.members().to_vec();
        let exps = m
            .iter()
            .flat_map(|&a| m.iter().map(move |&b| (a, b)))
            .map(|(a, b)| f(a, b).rem_euclid(modulus as i64) as u32)
            .collect();
        Cocycle2 {
            subgroup,
            modulus,
            exps,
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Exponent at local indices.
    #[inline]
    pub fn exp(&self, a: usize, b: usize) -> u32 {
        self.exps[a * self.subgroup.order() + b]
    }

    /// Exponent at parent elements; both must lie in H.
    #[inline]
    pub fn exp_of(&self, a: Elem, b: Elem) -> u32 {
        let h = &self.subgroup;
        self.exp(
            h.local_index(a).expect("element outside H"),
            h.local_index(b).expect("element outside H"),
        )
    }

    pub fn value(&self, a: Elem, b: Elem) -> CycScalar {
        CycScalar::root_of_unity(self.modulus, self.exp_of(a, b) as i64)
    }

    pub fn table(&self) -> Vec<Vec<u32>> {
        let k = self.subgroup.order();
        self.exps.chunks(k).map(<[u32]>::to_vec).collect()
    }

    pub fn validate(&self) -> CocycleCheck {
        let h = &self.subgroup;
        let g = h.parent();
        let m = h.members();
        let n = self.modulus;
        for (i, &x) in m.iter().enumerate() {
            if self.exp(0, i) != 0 || self.exp(i, 0) != 0 {
                return CocycleCheck::NotNormalized { h: x };
            }
        }
        for (ia, &a) in m.iter().enumerate() {
            for (ib, &b) in m.iter().enumerate() {
                let iab = h.local_index(g.mul(a, b)).unwrap();
                for (id, &d) in m.iter().enumerate() {
                    let ibd = h.local_index(g.mul(b, d)).unwrap();
                    let lhs = (self.exp(ia, ib) + self.exp(iab, id)) % n;
                    let rhs = (self.exp(ia, ibd) + self.exp(ib, id)) % n;
                    if lhs != rhs {
                        return CocycleCheck::IdentityViolated { a, b, d };
                    }
                }
            }
        }
        CocycleCheck::Ok
    }

    /// Pointwise product of cocycle values (sum of exponents).
    pub fn mul(&self, other: &Cocycle2) -> Result<Cocycle2> {
        self.same_shape(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| (a + b) % self.modulus)
            .collect();
        Ok(Cocycle2 {
            exps,
            ..self.clone()
        })
    }

    /// Pointwise quotient `self / other`.
    pub fn quotient(&self, other: &Cocycle2) -> Result<Cocycle2> {
        self.same_shape(other)?;
        let n = self.modulus;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| (a + n - b) % n)
            .collect();
        Ok(Cocycle2 {
            exps,
            ..self.clone()
        })
    }

    fn same_shape(&self, other: &Cocycle2) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::OrderMismatch(self.modulus, other.modulus));
        }
        if self.subgroup.members() != other.subgroup.members() {
            return Err(Error::InvalidCocycle("cocycles live on different subgroups".into()));
        }
        Ok(())
    }

    /// The linear system `lambda(a) + lambda(b) - lambda(ab) = exps[a][b]`.
    fn coboundary_system(&self) -> (Vec<Vec<i64>>, Vec<i64>) {
        let h = &self.subgroup;
        let k = h.order();
        let g = h.parent();
        let m = h.members();
        let mut rows = Vec::with_capacity(k * k);
        let mut rhs = Vec::with_capacity(k * k);
        for (ia, &a) in m.iter().enumerate() {
            for (ib, &b) in m.iter().enumerate() {
                let iab = h.local_index(g.mul(a, b)).unwrap();
                let mut row = vec![0i64; k];
                row[ia] += 1;
                row[ib] += 1;
                row[iab] -= 1;
                rows.push(row);
                rhs.push(self.exp(ia, ib) as i64);
            }
        }
        (rows, rhs)
    }

    /// A witness `lambda` with `d lambda = c`, or the obstruction certificate.
    pub fn solve_coboundary(&self) -> std::result::Result<Coboundary, Obstruction> {
        let (rows, rhs) = self.coboundary_system();
        let k = self.subgroup.order();
        let m = self.subgroup.members();
        match solve_mod(&rows, &rhs, self.modulus as i64) {
            ModSolution::Solved(x) => Ok(Coboundary {
                modulus: self.modulus,
                lambda: x.into_iter().map(|v| v as u32).collect(),
            }),
            ModSolution::Obstruction(y) => Err(Obstruction {
                modulus: self.modulus,
                weights: y
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| w != 0)
                    .map(|(idx, &w)| (m[idx / k], m[idx % k], w as u32))
                    .collect(),
            }),
        }
    }

    pub fn is_coboundary(&self) -> Option<Coboundary> {
        self.solve_coboundary().ok()
    }

    /// Exponent of H (lcm of element orders).
    pub fn subgroup_exponent(&self) -> u32 {
        use num_integer::Integer;
        let g = self.subgroup.parent();
        self.subgroup.members().iter().fold(1u32, |acc, &x| {
            let mut k = 1u32;
            let mut y = x;
            while y != 0 {
                y = g.mul(y, x);
                k += 1;
            }
            acc.lcm(&k)
        })
    }

    /// The same cocycle read in Z/(N e), e the exponent of H. A coboundary
    /// over F* whose values lie in N-th roots of unity already splits over
    /// (N e)-th roots of unity, so class questions in H^2(H, F*) are decided
    /// on the lifted table.
    pub fn lifted(&self) -> Cocycle2 {
        let e = self.subgroup_exponent();
        Cocycle2 {
            subgroup: self.subgroup.clone(),
            modulus: self.modulus * e,
            exps: self.exps.iter().map(|&x| x * e).collect(),
        }
    }

    /// Triviality of the class in H^2(H, F*). On failure the obstruction
    /// refers to [`Cocycle2::lifted`].
    pub fn class_is_trivial(&self) -> std::result::Result<(), Obstruction> {
        self.lifted().solve_coboundary().map(|_| ())
    }

    /// The same cocycle with values read in `new_modulus`-th roots of unity;
    /// `new_modulus` must be a multiple of N.
    pub fn rescaled(&self, new_modulus: u32) -> Result<Cocycle2> {
        if new_modulus == 0 || !new_modulus.is_multiple_of(self.modulus) {
            return Err(Error::OrderMismatch(self.modulus, new_modulus));
        }
        let f = new_modulus / self.modulus;
        Ok(Cocycle2 {
            subgroup: self.subgroup.clone(),
            modulus: new_modulus,
            exps: self.exps.iter().map(|&x| x * f).collect(),
        })
    }

    /// Equality of classes in H^2(H, F*); differing N are brought to their lcm.
    pub fn is_cohomologous(&self, other: &Cocycle2) -> Result<bool> {
        use num_integer::Integer;
        let l = self.modulus.lcm(&other.modulus);
        let q = self.rescaled(l)?.quotient(&other.rescaled(l)?)?;
        Ok(q.class_is_trivial().is_ok())
    }

    /// `c^g(h1, h2) = c(g h1 g^-1, g h2 g^-1)`; requires H normal under g.
    pub fn conjugate(&self, g: Elem) -> Result<Cocycle2> {
        let h = &self.subgroup;
        let grp = h.parent();
        let mut exps = Vec::with_capacity(self.exps.len());
        for &a in h.members() {
            let ca = h.local_index(grp.conj(g, a)).ok_or(Error::NotNormal(g))?;
            for &b in h.members() {
                let cb = h.local_index(grp.conj(g, b)).ok_or(Error::NotNormal(g))?;
                exps.push(self.exp(ca, cb));
            }
        }
        Ok(Cocycle2 {
            exps,
            ..self.clone()
        })
    }

    /// The cocycle on `g H g^-1` with `c'(g h1 g^-1, g h2 g^-1) = c(h1, h2)`.
    pub fn transport(&self, g: Elem) -> Cocycle2 {
        let target = self.subgroup.conjugate(g);
        let grp = self.subgroup.parent().clone();
        let gi = grp.inv(g);
        Cocycle2::from_fn(target, self.modulus, |x, y| {
            self.exp_of(grp.conj(gi, x), grp.conj(gi, y)) as i64
        })
    }

    /// `None` when invariant; otherwise the first coset representative g for
    /// which `c^g / c` is not trivial in H^2(H, F*), with the obstruction for
    /// the lifted quotient.
    pub fn invariance_failure(&self) -> Result<Option<(Elem, Obstruction)>> {
        let h = &self.subgroup;
        if !h.is_normal() {
            let g = h
                .parent()
                .elements()
                .find(|&g| h.members().iter().any(|&x| !h.contains(h.parent().conj(g, x))))
                .unwrap();
            return Err(Error::NotNormal(g));
        }
        for &g in h.right_cosets().reps() {
            let q = self.conjugate(g)?.quotient(self)?;
            if let Err(obs) = q.class_is_trivial() {
                return Ok(Some((g, obs)));
            }
        }
        Ok(None)
    }

    /// True iff the class is fixed by conjugation by every element of G.
    pub fn is_g_invariant_class(&self) -> Result<bool> {
        Ok(self.invariance_failure()?.is_none())
    }

    /// Exponent of `c(h_1, .., h_n)` where `u_h1 ... u_hn = c(..) u_(h1..hn)`.
    pub fn product_exponent(&self, seq: &[Elem]) -> u32 {
        let h = &self.subgroup;
        let g = h.parent();
        let mut acc = 0u32;
        let mut prefix = g.identity();
        for &x in seq {
            acc = (acc + self.exp_of(prefix, x)) % self.modulus;
            prefix = g.mul(prefix, x);
        }
        acc
    }

    /// Exponent of `alpha_{h, sigma} = c(h) / c(h_sigma)`.
    pub fn binomial_alpha_exponent(&self, seq: &[Elem], sigma: &[usize]) -> Result<u32> {
        check_permutation(sigma, seq.len())?;
        let g = self.subgroup.parent();
        let permuted: Vec<Elem> = sigma.iter().map(|&i| seq[i]).collect();
        if g.product(seq.iter().copied()) != g.product(permuted.iter().copied()) {
            return Err(Error::BinomialCondition);
        }
        let n = self.modulus;
        Ok((self.product_exponent(seq) + n - self.product_exponent(&permuted)) % n)
    }

    pub fn binomial_alpha(&self, seq: &[Elem], sigma: &[usize]) -> Result<CycScalar> {
        Ok(CycScalar::root_of_unity(
            self.modulus,
            self.binomial_alpha_exponent(seq, sigma)? as i64,
        ))
    }

    /// All binomials of length `1..=max_len` in deterministic order: by length,
    /// then `h` lexicographic in member order, then `sigma` lexicographic.
    pub fn enumerate_binomials(&self, max_len: usize) -> Vec<Binomial> {
        let g = self.subgroup.parent();
        let m = self.subgroup.members();
        let mut out = Vec::new();
        for len in 1..=max_len {
            let perms = permutations(len);
            let total = m.len().pow(len as u32);
            for code in 0..total {
                let mut c = code;
                let mut seq = vec![0; len];
                for slot in seq.iter_mut().rev() {
                    *slot = m[c % m.len()];
                    c /= m.len();
                }
                let prod = g.product(seq.iter().copied());
                for sigma in &perms {
                    if g.product(sigma.iter().map(|&i| seq[i])) == prod {
                        let alpha_exp = self
                            .binomial_alpha_exponent(&seq, sigma)
                            .expect("binomial condition holds");
                        out.push(Binomial {
                            h: seq.clone(),
                            sigma: sigma.clone(),
                            alpha_exp,
                        });
                    }
                }
            }
        }
        out
    }
}

impl Coboundary {
    /// The induced cocycle `d lambda` on `subgroup`.
    pub fn cocycle(&self, subgroup: Subgroup) -> Cocycle2 {
        let n = self.modulus as i64;
        let lam: Vec<i64> = subgroup
            .parent()
            .elements()
            .map(|x| subgroup.local_index(x).map_or(0, |i| self.lambda[i] as i64))
            .collect();
        let g = subgroup.parent().clone();
        Cocycle2::from_fn(subgroup, self.modulus, move |a, b| {
            (lam[a] + lam[b] - lam[g.mul(a, b)]).rem_euclid(n)
        })
    }
}

fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(Error::InvalidPermutation(format!("length {} != {n}", sigma.len())));
    }
    for &i in sigma {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidPermutation(format!("{sigma:?}")));
        }
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let mut i = n;
        while i > 1 && cur[i - 2] >= cur[i - 1] {
            i -= 1;
        }
        if i <= 1 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 2] {
            j -= 1;
        }
        cur.swap(i - 2, j);
        cur[i - 1..].reverse();
    }
    out
}
