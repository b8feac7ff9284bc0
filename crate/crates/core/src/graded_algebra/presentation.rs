use std::fmt;
use std::sync::Arc;

use log::debug;

use crate::cohomology::Cocycle2;
use crate::error::{Error, Result};
use crate::groups::{CosetDecomposition, Elem, FiniteGroup, Subgroup};

/// A presentation `(H, c, (g_1, .., g_m))` of a G-simple algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Presentation {
    cocycle: Cocycle2,
    tuple: Vec<Elem>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Presentation(H={:?}, N={}, tuple={:?})",
            self.subgroup().members(),
            self.cocycle.modulus(),
            self.tuple
        )
    }
}

/// The three moves producing isomorphic graded algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Reorder: `g'_i = g_{sigma(i)}` (0-based).
    M1(Vec<usize>),
    /// Left-multiply entrywise by elements of H: `g'_i = h_i g_i`.
    M2(Vec<Elem>),
    /// Conjugate: `H' = g H g^-1`, `g'_i = g g_i`, cocycle transported.
    M3(Elem),
}

/// Positions of the tuple lying in one right H-coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Index into the right-coset decomposition.
    pub coset: usize,
    /// Canonical representative of the coset.
    pub rep: Elem,
    pub positions: Vec<usize>,
}

impl Block {
    pub fn multiplicity(&self) -> usize {
        self.positions.len()
    }
}

impl Presentation {
    pub fn new(cocycle: Cocycle2, tuple: Vec<Elem>) -> Result<Self> {
        let check = cocycle.validate();
        if !check.is_ok() {
            return Err(Error::InvalidCocycle(check.to_string()));
        }
        Self::new_unchecked(cocycle, tuple)
    }

    /// Skips the O(|H|^3) cocycle check; the tuple is still validated.
    pub fn new_unchecked(cocycle: Cocycle2, tuple: Vec<Elem>) -> Result<Self> {
        if tuple.is_empty() {
            return Err(Error::InvalidPresentation("tuple must be nonempty".into()));
        }
        let n = cocycle.subgroup().parent().order();
        if let Some(&bad) = tuple.iter().find(|&&g| g >= n) {
            return Err(Error::ElementOutOfRange(bad, n));
        }
        Ok(Presentation { cocycle, tuple })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.cocycle.subgroup().parent()
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.cocycle.subgroup()
    }

    pub fn cocycle(&self) -> &Cocycle2 {
        &self.cocycle
    }

    pub fn tuple(&self) -> &[Elem] {
        &self.tuple
    }

    /// Matrix size m.
    pub fn m(&self) -> usize {
        self.tuple.len()
    }

    pub fn cosets(&self) -> CosetDecomposition {
        self.subgroup().right_cosets()
    }

    /// Occupied cosets in coset-decomposition order.
    pub fn blocks(&self) -> Vec<Block> {
        let cos = self.cosets();
        let mut blocks: Vec<Block> = cos
            .reps()
            .iter()
            .enumerate()
            .map(|(coset, &rep)| Block {
                coset,
                rep,
                positions: Vec::new(),
            })
            .collect();
        for (pos, &g) in self.tuple.iter().enumerate() {
            blocks[cos.coset_of(g)].positions.push(pos);
        }
        blocks.retain(|b| !b.positions.is_empty());
        blocks
    }

    /// Multiplicity of every right coset (zero for unrepresented ones).
    pub fn multiplicities(&self) -> Vec<usize> {
        let cos = self.cosets();
        let mut mult = vec![0; cos.len()];
        for &g in &self.tuple {
            mult[cos.coset_of(g)] += 1;
        }
        mult
    }

    /// All right H-cosets equally represented in the tuple.
    pub fn cosets_equal(&self) -> bool {
        let mult = self.multiplicities();
        mult.iter().all(|&x| x == mult[0])
    }

    /// `(k, r)`: number of cosets and common multiplicity, when equal.
    pub fn equi_multiplicity(&self) -> Option<(usize, usize)> {
        let mult = self.multiplicities();
        self.cosets_equal().then(|| (mult.len(), mult[0]))
    }

    pub fn apply_move(&self, mv: &Move) -> Result<Presentation> {
        let g = self.group();
        match mv {
            Move::M1(sigma) => {
                let m = self.m();
                let mut seen = vec![false; m];
                if sigma.len() != m
                    || sigma
                        .iter()
                        .any(|&i| i >= m || std::mem::replace(&mut seen[i], true))
                {
                    return Err(Error::InvalidPermutation(format!("{sigma:?}")));
                }
                let tuple = sigma.iter().map(|&i| self.tuple[i]).collect();
                Ok(Presentation {
                    cocycle: self.cocycle.clone(),
                    tuple,
                })
            }
            Move::M2(hs) => {
                if hs.len() != self.m() {
                    return Err(Error::InvalidPresentation(format!(
                        "M2 needs {} elements, got {}",
                        self.m(),
                        hs.len()
                    )));
                }
                for (position, &h) in hs.iter().enumerate() {
                    if h >= g.order() || !self.subgroup().contains(h) {
                        return Err(Error::NotInSubgroup {
                            element: h,
                            position,
                        });
                    }
                }
                let tuple = hs
                    .iter()
                    .zip(&self.tuple)
                    .map(|(&h, &x)| g.mul(h, x))
                    .collect();
                Ok(Presentation {
                    cocycle: self.cocycle.clone(),
                    tuple,
                })
            }
            Move::M3(x) => {
                if *x >= g.order() {
                    return Err(Error::ElementOutOfRange(*x, g.order()));
                }
                let tuple = self.tuple.iter().map(|&t| g.mul(*x, t)).collect();
                Ok(Presentation {
                    cocycle: self.cocycle.transport(*x),
                    tuple,
                })
            }
        }
    }

    pub fn apply_moves(&self, moves: &[Move]) -> Result<Presentation> {
        moves.iter().try_fold(self.clone(), |p, mv| p.apply_move(mv))
    }

    /// Moves bringing the presentation to normal form: an M3 sending a least
    /// represented coset (smallest representative among ties) to H, an M2
    /// replacing entries by canonical coset representatives, and an M1
    /// sorting blocks by (multiplicity, representative).
    pub fn normalization_moves(&self) -> Vec<Move> {
        let g = self.group();
        let cos = self.cosets();
        let mult = self.multiplicities();
        let min = mult.iter().copied().filter(|&x| x > 0).min().unwrap();
        let x = (0..cos.len())
            .filter(|&i| mult[i] == min)
            .map(|i| cos.reps()[i])
            .min()
            .unwrap();
        let mut moves = Vec::new();
        let mut p = self.clone();
        if x != g.identity() {
            moves.push(Move::M3(g.inv(x)));
            p = p.apply_move(&moves[0]).expect("valid M3");
        }
        let cos = p.cosets();
        let hs: Vec<Elem> = p
            .tuple
            .iter()
            .map(|&t| g.mul(cos.rep_of(t), g.inv(t)))
            .collect();
        if hs.iter().any(|&h| h != g.identity()) {
            moves.push(Move::M2(hs.clone()));
            p = p.apply_move(moves.last().unwrap()).expect("valid M2");
        }
        let mult = p.multiplicities();
        let mut sigma: Vec<usize> = (0..p.m()).collect();
        sigma.sort_by_key(|&i| {
            let t = p.tuple[i];
            (mult[cos.coset_of(t)], t, i)
        });
        if sigma.iter().enumerate().any(|(a, &b)| a != b) {
            moves.push(Move::M1(sigma));
        }
        moves
    }

    pub fn normalize(&self) -> Presentation {
        let moves = self.normalization_moves();
        debug!("normalizing with {} moves", moves.len());
        self.apply_moves(&moves).expect("normalization moves are valid")
    }

    pub fn is_normalized(&self) -> bool {
        self.normalization_moves().is_empty()
    }

    /// Equivalence under the moves: some conjugation matches subgroups, the
    /// coset multisets agree, and the transported class equals the other's.
    pub fn equivalent(&self, other: &Presentation) -> bool {
        if !Arc::ptr_eq(self.group(), other.group()) && **self.group() != **other.group() {
            return false;
        }
        if self.m() != other.m() || self.subgroup().order() != other.subgroup().order() {
            return false;
        }
        let g = self.group();
        let target = other.subgroup().members();
        let cos_q = other.cosets();
        let mut want: Vec<usize> = other.tuple.iter().map(|&t| cos_q.coset_of(t)).collect();
        want.sort_unstable();
        for x in g.elements() {
            let conj = self.subgroup().conjugate(x);
            if conj.members() != target {
                continue;
            }
            let mut got: Vec<usize> = self
                .tuple
                .iter()
                .map(|&t| cos_q.coset_of(g.mul(x, t)))
                .collect();
            got.sort_unstable();
            if got != want {
                continue;
            }
            let moved = self.cocycle.transport(x);
            let moved = Cocycle2::from_fn(other.subgroup().clone(), moved.modulus(), |a, b| {
                moved.exp_of(a, b) as i64
            });
            if moved.is_cohomologous(&other.cocycle).unwrap_or(false) {
                return true;
            }
        }
        false
    }
}
