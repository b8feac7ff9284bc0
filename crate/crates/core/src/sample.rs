//! Seeded random inputs and the named fixtures used across the tests.

use std::sync::Arc;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{permutations, Cocycle2};
use crate::graded_algebra::{GradedAlgebra, Move, Presentation};
use crate::groups::{Elem, FiniteGroup, Subgroup};
use crate::polynomials::{is_good_permutation, GradedMonomial, GradedPolynomial, GradedVariable};
use crate::scalars::CycScalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Groups of order at most 8 used by the random suites.
pub fn small_groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let c = FiniteGroup::cyclic;
    vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", FiniteGroup::direct_product(&c(2), &c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", FiniteGroup::dihedral(3)),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C2xC4", FiniteGroup::direct_product(&c(2), &c(4))),
        ("C2xC2xC2", FiniteGroup::direct_product(&FiniteGroup::direct_product(&c(2), &c(2)), &c(2))),
        ("D4", FiniteGroup::dihedral(4)),
    ]
    .into_iter()
    .map(|(n, g)| (n, Arc::new(g)))
    .collect()
}

fn element_order(g: &FiniteGroup, x: Elem) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != g.identity() {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

fn power(g: &FiniteGroup, x: Elem, k: usize) -> Elem {
    (0..k).fold(g.identity(), |acc, _| g.mul(acc, x))
}

/// `(x, a, y, b)` with H the internal direct product of `<x>` (order a) and
/// `<y>` (order b), when H is abelian of rank at most two.
pub fn two_generator_decomposition(h: &Subgroup) -> Option<(Elem, usize, Elem, usize)> {
    let g = h.parent();
    let members = h.members();
    if members.iter().any(|&x| members.iter().any(|&y| g.mul(x, y) != g.mul(y, x))) {
        return None;
    }
    for &x in members {
        let a = element_order(g, x);
        for &y in members {
            let b = element_order(g, y);
            if a * b != h.order() {
                continue;
            }
            let mut seen = vec![false; g.order()];
            let mut ok = true;
            for i in 0..a {
                for j in 0..b {
                    let z = g.mul(power(g, x, i), power(g, y, j));
                    if std::mem::replace(&mut seen[z], true) {
                        ok = false;
                    }
                }
            }
            if ok {
                return Some((x, a, y, b));
            }
        }
    }
    None
}

/// `x^i y^j -> (i, j)` for a decomposition.
fn coordinates(h: &Subgroup, x: Elem, a: usize, y: Elem, b: usize) -> Vec<(usize, usize)> {
    let g = h.parent();
    let mut coords = vec![(0, 0); g.order()];
    for i in 0..a {
        for j in 0..b {
            coords[g.mul(power(g, x, i), power(g, y, j))] = (i, j);
        }
    }
    coords
}

/// The bilinear cocycle `(x^i y^j, x^k y^l) -> t * (N / gcd(N, a, b)) * j * k`,
/// nontrivial for suitable t when `gcd(N, a, b) > 1`. None when H has no
/// two-generator decomposition.
pub fn bilinear_cocycle(h: &Subgroup, modulus: u32, t: u32) -> Option<Cocycle2> {
    let (x, a, y, b) = two_generator_decomposition(h)?;
    let coords = coordinates(h, x, a, y, b);
    let gcd = (modulus as usize).gcd(&a.gcd(&b));
    let step = (modulus as usize / gcd) as i64;
    Some(Cocycle2::from_fn(h.clone(), modulus, |p, q| {
        let (_, j) = coords[p];
        let (k, _) = coords[q];
        t as i64 * step * (j * k) as i64
    }))
}

/// `d lambda` for a random normalized `lambda: H -> Z/N`.
pub fn random_coboundary<R: Rng>(rng: &mut R, h: &Subgroup, modulus: u32) -> Cocycle2 {
    let g = h.parent();
    let lambda: Vec<i64> = g
        .elements()
        .map(|x| if x == g.identity() { 0 } else { rng.gen_range(0..modulus as i64) })
        .collect();
    Cocycle2::from_fn(h.clone(), modulus, |a, b| lambda[a] + lambda[b] - lambda[g.mul(a, b)])
}

/// A bilinear cocycle (when available) times a random coboundary.
pub fn random_cocycle<R: Rng>(rng: &mut R, h: &Subgroup, modulus: u32) -> Cocycle2 {
    let cob = random_coboundary(rng, h, modulus);
    match bilinear_cocycle(h, modulus, rng.gen_range(0..modulus)) {
        Some(c) => c.mul(&cob).expect("same shape"),
        None => cob,
    }
}

/// Random subgroup, cocycle of modulus in `1..=4` and tuple of length
/// `1..=max_m`.
pub fn random_presentation<R: Rng>(rng: &mut R, g: &Arc<FiniteGroup>, max_m: usize) -> Presentation {
    let subs = g.all_subgroups();
    let members = subs.choose(rng).expect("trivial subgroup exists");
    let h = Subgroup::new(g.clone(), members).expect("listed subgroup");
    let modulus = rng.gen_range(1..=4);
    let c = random_cocycle(rng, &h, modulus);
    let m = rng.gen_range(1..=max_m);
    let tuple = (0..m).map(|_| rng.gen_range(0..g.order())).collect();
    Presentation::new_unchecked(c, tuple).expect("valid tuple")
}

/// Like `random_presentation`, retried until the grading is connected.
pub fn random_connected_presentation<R: Rng>(rng: &mut R, g: &Arc<FiniteGroup>, max_m: usize) -> Presentation {
    loop {
        let p = random_presentation(rng, g, max_m);
        if GradedAlgebra::new(&p).support().connected {
            return p;
        }
    }
}

/// A random move valid for `p`.
pub fn random_move<R: Rng>(rng: &mut R, p: &Presentation) -> Move {
    let g = p.group();
    match rng.gen_range(0..3) {
        0 => {
            let mut sigma: Vec<usize> = (0..p.m()).collect();
            sigma.shuffle(rng);
            Move::M1(sigma)
        }
        1 => {
            let hs = p.subgroup().members();
            Move::M2((0..p.m()).map(|_| *hs.choose(rng).unwrap()).collect())
        }
        _ => Move::M3(rng.gen_range(0..g.order())),
    }
}

/// `count` random moves applied in sequence, with the result.
pub fn random_moves<R: Rng>(rng: &mut R, p: &Presentation, count: usize) -> (Vec<Move>, Presentation) {
    let mut cur = p.clone();
    let mut moves = Vec::with_capacity(count);
    for _ in 0..count {
        let mv = random_move(rng, &cur);
        cur = cur.apply_move(&mv).expect("random moves are valid");
        moves.push(mv);
    }
    (moves, cur)
}

/// Nonzero coefficient: a small integer times a root of unity.
pub fn random_coefficient<R: Rng>(rng: &mut R, order: u32) -> CycScalar {
    let k = rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 };
    &CycScalar::from_integer(order, k) * &CycScalar::root_of_unity(order, rng.gen_range(0..order as i64))
}

/// Random multilinear polynomial: variable degrees drawn from `pool`,
/// `terms` random orderings with random coefficients.
pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    pool: &[Elem],
    order: u32,
    degree: usize,
    terms: usize,
) -> GradedPolynomial {
    let vars: Vec<GradedVariable> = (0..degree)
        .map(|k| GradedVariable {
            id: k as u32,
            degree: *pool.choose(rng).expect("nonempty pool"),
        })
        .collect();
    let ids: Vec<u32> = vars.iter().map(|v| v.id).collect();
    let monomials: Vec<GradedMonomial> = (0..terms)
        .map(|_| {
            let mut order_ = ids.clone();
            order_.shuffle(rng);
            GradedMonomial {
                coeff: random_coefficient(rng, order),
                order: order_,
            }
        })
        .collect();
    GradedPolynomial::new(order, vars, monomials).expect("orderings of one list")
}

/// Random pure polynomial: a random leading ordering plus up to `terms - 1`
/// distinct good permutations of it (degree at most 7, all permutations
/// are scanned). Never zero.
pub fn random_pure_polynomial<R: Rng>(
    rng: &mut R,
    pool: &[Elem],
    h: &Subgroup,
    order: u32,
    degree: usize,
    terms: usize,
) -> GradedPolynomial {
    assert!(degree <= 7, "pure sampling scans all permutations");
    let base = random_polynomial(rng, pool, order, degree, 1);
    let z = base.monomials()[0].order.clone();
    let goods: Vec<Vec<u32>> = permutations(degree)
        .into_iter()
        .map(|p| p.iter().map(|&i| z[i]).collect::<Vec<u32>>())
        .filter(|zs| is_good_permutation(base.variables(), &z, zs, h))
        .collect();
    let monomials: Vec<GradedMonomial> = std::iter::once(&z)
        .chain(goods.iter().filter(|zs| **zs != z).collect::<Vec<_>>().choose_multiple(rng, terms.saturating_sub(1)).copied())
        .map(|o| GradedMonomial {
            coeff: random_coefficient(rng, order),
            order: o.clone(),
        })
        .collect();
    GradedPolynomial::new(order, base.variables().to_vec(), monomials).expect("orderings of one list")
}

/// Named presentations shared by tests, benches and documentation.
pub mod fixtures {
    use super::*;

    fn trivial_h(g: FiniteGroup, tuple: Vec<Elem>) -> Presentation {
        Presentation::new(Cocycle2::trivial(Subgroup::trivial(Arc::new(g)), 1), tuple).unwrap()
    }

    /// G = Z2, H = {e}, tuple (e, e, sigma).
    pub fn z2_e_e_sigma() -> Presentation {
        trivial_h(FiniteGroup::cyclic(2), vec![0, 0, 1])
    }

    /// Its normal form (e, sigma, sigma).
    pub fn z2_e_sigma_sigma() -> Presentation {
        trivial_h(FiniteGroup::cyclic(2), vec![0, 1, 1])
    }

    pub fn z2_e_sigma() -> Presentation {
        trivial_h(FiniteGroup::cyclic(2), vec![0, 1])
    }

    /// M_4 with (e, e, sigma, sigma): equal multiplicities r = 2.
    pub fn z2_r2() -> Presentation {
        trivial_h(FiniteGroup::cyclic(2), vec![0, 0, 1, 1])
    }

    /// G = Z3, H = {e}, tuple (e, g): the coset of g^2 is missing.
    pub fn z3_degenerate() -> Presentation {
        trivial_h(FiniteGroup::cyclic(3), vec![0, 1])
    }

    /// G = H = Z2 x Z2 with the nontrivial class (N = 2), m = 1.
    pub fn klein_twisted() -> Presentation {
        let g = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        let c = bilinear_cocycle(&Subgroup::whole(g), 2, 1).unwrap();
        Presentation::new(c, vec![0]).unwrap()
    }

    /// G = Z2 x Z4 = H with a nontrivial class of order 2, m = 1.
    pub fn z2xz4_twisted() -> Presentation {
        let g = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)));
        let c = bilinear_cocycle(&Subgroup::whole(g), 2, 1).unwrap();
        Presentation::new(c, vec![0]).unwrap()
    }

    /// G = D4, H = rotations (normal, index 2), tuple (e, s).
    pub fn d4_rotations() -> Presentation {
        let g = Arc::new(FiniteGroup::dihedral(4));
        let h = Subgroup::new(g, &[0, 1, 2, 3]).unwrap();
        Presentation::new(Cocycle2::trivial(h, 1), vec![0, 4]).unwrap()
    }

    /// G = D4, H = {e, r^2, s, r^2 s} (normal Klein four) with its
    /// nontrivial class, tuple (e, r). The class is G-invariant.
    pub fn d4_klein_twisted() -> Presentation {
        let g = Arc::new(FiniteGroup::dihedral(4));
        let h = Subgroup::new(g, &[0, 2, 4, 6]).unwrap();
        let c = bilinear_cocycle(&h, 2, 1).unwrap();
        Presentation::new(c, vec![0, 1]).unwrap()
    }

    /// G = S3, H = {e, s} not normal, one entry per right coset.
    pub fn s3_non_normal() -> Presentation {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let h = Subgroup::new(g, &[0, 3]).unwrap();
        let reps = h.right_cosets().reps().to_vec();
        Presentation::new(Cocycle2::trivial(h, 1), reps).unwrap()
    }

    /// G = Z2 x Z2, H = first factor, (e, e, b): unequal multiplicities
    /// over a nontrivial H.
    pub fn klein_half_unequal() -> Presentation {
        let g = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        let h = Subgroup::new(g, &[0, 2]).unwrap();
        Presentation::new(Cocycle2::trivial(h, 1), vec![0, 0, 1]).unwrap()
    }

    /// The swap in (Z3 x Z3) x| Z2 inverts the class of `zeta_3^(a2 b1)`
    /// on the normal subgroup Z3 x Z3, tuple (e, s): only the invariance
    /// condition fails.
    pub fn z3sq_swap_twisted() -> Presentation {
        let g = Arc::new(z3sq_swap());
        let h = Subgroup::new(g, &(0..9).collect::<Vec<_>>()).unwrap();
        let c = Cocycle2::from_fn(h, 3, |a, b| ((a % 3) * (b / 3)) as i64);
        Presentation::new(c, vec![0, 9]).unwrap()
    }

    /// (Z3 x Z3) x| Z2, the Z2 swapping the factors. Element `9s + 3i + j`.
    pub fn z3sq_swap() -> FiniteGroup {
        FiniteGroup::from_fn(18, (0..18).map(|i| i.to_string()).collect(), |x, y| {
            let (a, s) = (x % 9, x / 9);
            let (b, t) = (y % 9, y / 9);
            let b = if s == 1 { (b % 3) * 3 + b / 3 } else { b };
            let sum = ((a / 3 + b / 3) % 3) * 3 + (a % 3 + b % 3) % 3;
            sum + 9 * ((s + t) % 2)
        })
    }

    /// Everything above with its name.
    pub fn all() -> Vec<(&'static str, Presentation)> {
        vec![
            ("z2_e_e_sigma", z2_e_e_sigma()),
            ("z2_e_sigma_sigma", z2_e_sigma_sigma()),
            ("z2_e_sigma", z2_e_sigma()),
            ("z2_r2", z2_r2()),
            ("z3_degenerate", z3_degenerate()),
            ("klein_twisted", klein_twisted()),
            ("z2xz4_twisted", z2xz4_twisted()),
            ("d4_rotations", d4_rotations()),
            ("d4_klein_twisted", d4_klein_twisted()),
            ("s3_non_normal", s3_non_normal()),
            ("klein_half_unequal", klein_half_unequal()),
            ("z3sq_swap_twisted", z3sq_swap_twisted()),
        ]
    }
}
