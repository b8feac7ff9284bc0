//! Finite groups given by Cayley tables, subgroups, right cosets and conjugation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Dense element index; the identity is always 0.
pub type Elem = usize;

/// Named constructors and raw tables accepted by [`build_group`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    Table(Vec<Vec<usize>>),
}

impl GroupSpec {
    /// Parses `trivial`, `cyclic 4`, `dihedral 3`, `symmetric 3`,
    /// `direct(cyclic 2, dihedral 4)` (nesting allowed).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::InvalidGroupSpec(t.to_string());
        if t == "trivial" {
            return Ok(GroupSpec::Trivial);
        }
        if let Some(inner) = t.strip_prefix("direct(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0usize;
            let mut split = None;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(bad)?;
            return Ok(GroupSpec::DirectProduct(
                Box::new(Self::parse(&inner[..i])?),
                Box::new(Self::parse(&inner[i + 1..])?),
            ));
        }
        let mut parts = t.split_whitespace();
        let kind = parts.next().ok_or_else(bad)?;
        let n: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if parts.next().is_some() {
            return Err(bad());
        }
        match kind {
            "cyclic" => Ok(GroupSpec::Cyclic(n)),
            "dihedral" => Ok(GroupSpec::Dihedral(n)),
            "symmetric" => Ok(GroupSpec::Symmetric(n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => f.write_str("trivial"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic {n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral {n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric {n}"),
            GroupSpec::DirectProduct(a, b) => write!(f, "direct({a}, {b})"),
            GroupSpec::Table(_) => f.write_str("table"),
        }
    }
}

/// Validated finite group with identity at index 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    names: Vec<String>,
    /// `original[i]` is the index element `i` had in the input table.
    original: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Trivial => Ok(FiniteGroup::cyclic(1)),
        GroupSpec::Cyclic(n) if *n >= 1 => Ok(FiniteGroup::cyclic(*n)),
        GroupSpec::Dihedral(n) if *n >= 1 => Ok(FiniteGroup::dihedral(*n)),
        GroupSpec::Symmetric(n) if (1..=4).contains(n) => Ok(FiniteGroup::symmetric(*n)),
        GroupSpec::DirectProduct(a, b) => Ok(FiniteGroup::direct_product(
            &build_group(a)?,
            &build_group(b)?,
        )),
        GroupSpec::Table(rows) => FiniteGroup::from_table(rows),
        other => Err(Error::InvalidGroupSpec(other.to_string())),
    }
}

impl FiniteGroup {
    /// Validates a raw Cayley table. When the identity is not element 0 the
    /// labels of 0 and the identity are swapped.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!("row {i} has entry {x} >= {n}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!(
                        "row {i} repeats element {x} (not a Latin square)"
                    )));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for (i, row) in rows.iter().enumerate() {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::InvalidTable(format!(
                        "column {j} repeats element {} at row {i} (not a Latin square)",
                        row[j]
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        // relabel: swap 0 and identity
        let swap = |x: usize| {
            if x == 0 {
                identity
            } else if x == identity {
                0
            } else {
                x
            }
        };
        let table = (0..n * n)
            .map(|k| swap(rows[swap(k / n)][swap(k % n)]))
            .collect();
        let original: Vec<usize> = (0..n).map(swap).collect();
        let names = original.iter().map(|o| o.to_string()).collect();
        Ok(Self::assemble(n, table, names, original))
    }

    fn assemble(order: usize, table: Vec<Elem>, names: Vec<String>, original: Vec<usize>) -> Self {
        let inverses = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] == 0).unwrap())
            .collect();
        FiniteGroup {
            order,
            table,
            inverses,
            names,
            original,
        }
    }

    /// Builds a group from element labels and a multiplication closure.
    /// `mul` must be a valid group law with identity at index 0.
    pub fn from_fn(order: usize, names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..order * order).map(|k| mul(k / order, k % order)).collect();
        Self::assemble(order, table, names, (0..order).collect())
    }

    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|a| match a {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{a}"),
            })
            .collect();
        Self::from_fn(n, names, |a, b| (a + b) % n)
    }

    /// Dihedral group of order 2n; element `a + n*b` is `r^a s^b`.
    pub fn dihedral(n: usize) -> Self {
        let names = (0..2 * n)
            .map(|k| {
                let (a, b) = (k % n, k / n);
                let r = match a {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r^{a}"),
                };
                match (r.is_empty(), b) {
                    (true, 0) => "e".to_string(),
                    (false, 0) => r,
                    (true, _) => "s".to_string(),
                    (false, _) => format!("{r}s"),
                }
            })
            .collect();
        Self::from_fn(2 * n, names, |x, y| {
            let (a, b) = (x % n, x / n);
            let (c, d) = (y % n, y / n);
            // s r^c = r^-c s
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            rot + n * ((b + d) % 2)
        })
    }

    /// Symmetric group on n <= 4 points, permutations in lexicographic order;
    /// composition is `(p q)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let names = perms
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if i == 0 {
                    "e".to_string()
                } else {
                    format!("[{}]", p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(""))
                }
            })
            .collect();
        Self::from_fn(perms.len(), names, |a, b| {
            let prod: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            index[&prod]
        })
    }

    /// Direct product; element `(i, j)` has index `i * |b| + j`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let nb = b.order;
        let names = (0..a.order * nb)
            .map(|k| {
                let (i, j) = (k / nb, k % nb);
                if k == 0 {
                    "e".to_string()
                } else {
                    format!("({},{})", a.names[i], b.names[j])
                }
            })
            .collect();
        Self::from_fn(a.order * nb, names, |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    /// `g h g^-1`.
    #[inline]
    pub fn conj(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(g, h), self.inverses[g])
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Resolves an element by alias or by its index in the input table.
    pub fn lookup(&self, text: &str) -> Option<Elem> {
        if let Some(i) = self.names.iter().position(|n| n == text) {
            return Some(i);
        }
        let idx: usize = text.parse().ok()?;
        self.original.iter().position(|&o| o == idx)
    }

    /// Renames elements given by input-table index. Aliases must be unique,
    /// non-numeric and must not clash with remaining names.
    pub fn with_aliases<'a>(mut self, aliases: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Self> {
        for (alias, idx) in aliases {
            if alias.is_empty() || alias.parse::<usize>().is_ok() || alias.contains(char::is_whitespace) {
                return Err(Error::InvalidGroupSpec(format!("bad alias `{alias}`")));
            }
            let a = self
                .original
                .iter()
                .position(|&o| o == idx)
                .ok_or(Error::ElementOutOfRange(idx, self.order))?;
            self.names[a] = alias.to_string();
        }
        let distinct: BTreeSet<&String> = self.names.iter().collect();
        if distinct.len() != self.order {
            return Err(Error::InvalidGroupSpec("element names are not unique after aliasing".into()));
        }
        Ok(self)
    }

    /// Index the element had in the input table.
    pub fn original_index(&self, a: Elem) -> usize {
        self.original[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Smallest subgroup containing `gens`, as a sorted member list.
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut members = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members.into_iter().collect()
    }

    /// Every subgroup, each as a sorted member list, ordered by (size, members).
    pub fn all_subgroups(&self) -> Vec<Vec<Elem>> {
        let mut found: BTreeSet<Vec<Elem>> = BTreeSet::from([vec![0]]);
        let mut frontier = vec![vec![0]];
        while let Some(h) = frontier.pop() {
            for g in self.elements() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut out: Vec<_> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Subgroup of a shared parent group.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<Elem>,
    /// parent element -> position in `members`
    local: Vec<Option<usize>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl Subgroup {
    /// Validates closure, identity and Lagrange.
    pub fn new(parent: Arc<FiniteGroup>, members: &[Elem]) -> Result<Self> {
        let mut m: Vec<Elem> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if let Some(&bad) = m.iter().find(|&&x| x >= parent.order()) {
            return Err(Error::ElementOutOfRange(bad, parent.order()));
        }
        if m.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("identity missing".into()));
        }
        let mut local = vec![None; parent.order()];
        for (i, &x) in m.iter().enumerate() {
            local[x] = Some(i);
        }
        for &a in &m {
            if local[parent.inv(a)].is_none() {
                return Err(Error::InvalidSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &m {
                if local[parent.mul(a, b)].is_none() {
                    return Err(Error::InvalidSubgroup(format!(
                        "product of {a} and {b} is not a member"
                    )));
                }
            }
        }
        assert_eq!(parent.order() % m.len(), 0, "Lagrange violated");
        Ok(Subgroup {
            parent,
            members: m,
            local,
        })
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let all: Vec<Elem> = parent.elements().collect();
        Self::new(parent, &all).expect("whole group is a subgroup")
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        Self::new(parent, &[0]).expect("trivial subgroup")
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    #[inline]
    pub fn contains(&self, g: Elem) -> bool {
        self.local[g].is_some()
    }

    /// Position of a parent element inside `members`.
    #[inline]
    pub fn local_index(&self, g: Elem) -> Option<usize> {
        self.local[g]
    }

    /// `g H g^-1` as a subgroup.
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let conj: Vec<Elem> = self.members.iter().map(|&h| self.parent.conj(g, h)).collect();
        Subgroup::new(self.parent.clone(), &conj).expect("conjugate of a subgroup")
    }

    /// True iff `g H g^-1 = H` for every g.
    pub fn is_normal(&self) -> bool {
        self.parent
            .elements()
            .all(|g| self.members.iter().all(|&h| self.contains(self.parent.conj(g, h))))
    }

    /// Right cosets `H g`, representatives = smallest element of each coset.
    pub fn right_cosets(&self) -> CosetDecomposition {
        let n = self.parent.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &h in &self.members {
                coset_of[self.parent.mul(h, g)] = idx;
            }
        }
        CosetDecomposition { reps, coset_of }
    }

    /// Partition of the coset representatives under `g_i ~ g_j` iff
    /// `g_i^-1 H g_j` meets `H` (equivalently `H g_i H = H g_j H`).
    /// Classes hold positions into `cosets.reps`, in order of first member.
    pub fn equivalence_classes_tilde(&self, cosets: &CosetDecomposition) -> Vec<Vec<usize>> {
        let g = &self.parent;
        let related = |a: Elem, b: Elem| {
            let ai = g.inv(a);
            self.members
                .iter()
                .any(|&h| self.contains(g.mul(g.mul(ai, h), b)))
        };
        let mut classes: Vec<Vec<usize>> = Vec::new();
        'outer: for (i, &rep) in cosets.reps.iter().enumerate() {
            for class in classes.iter_mut() {
                if related(cosets.reps[class[0]], rep) {
                    class.push(i);
                    continue 'outer;
                }
            }
            classes.push(vec![i]);
        }
        classes
    }
}

/// Right coset decomposition `G = H g_1 + ... + H g_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    reps: Vec<Elem>,
    coset_of: Vec<usize>,
}

impl CosetDecomposition {
    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    /// Index into `reps` of the coset containing `g`.
    #[inline]
    pub fn coset_of(&self, g: Elem) -> usize {
        self.coset_of[g]
    }

    /// Representative of the coset containing `g`.
    #[inline]
    pub fn rep_of(&self, g: Elem) -> Elem {
        self.reps[self.coset_of[g]]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}
