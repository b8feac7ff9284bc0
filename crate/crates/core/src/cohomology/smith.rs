//! Linear systems over Z/N by Smith diagonalization.
//!
//! Row operations are logged instead of materializing the (potentially
//! |H|^2 x |H|^2) left transform; a row of it is recovered on demand when an
//! unsolvable system needs a certificate.

use num_integer::Integer;

/// Outcome of solving `A x = b (mod N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModSolution {
    /// A solution vector, entries in `0..N`.
    Solved(Vec<i64>),
    /// A row functional `y` with `y A = 0` and `y b != 0 (mod N)`.
    Obstruction(Vec<i64>),
}

#[derive(Debug, Clone, Copy)]
enum RowOp {
    Swap(usize, usize),
    /// row_i *= u
    Scale(usize, i64),
    /// row_i += c * row_j
    AddMul(usize, usize, i64),
    /// (row_i, row_j) <- (p row_i + q row_j, r row_i + s row_j)
    Mix(usize, usize, [i64; 4]),
}

fn md(x: i64, n: i64) -> i64 {
    x.rem_euclid(n)
}

/// `gcd(a, n)` as the canonical generator of the ideal `(a)` in Z/n.
fn ideal(a: i64, n: i64) -> i64 {
    md(a, n).gcd(&n)
}

/// A unit `u` of Z/n with `a u = gcd(a, n) (mod n)`.
fn normalizing_unit(a: i64, n: i64) -> i64 {
    let a = md(a, n);
    let g = a.gcd(&n);
    let (ap, np) = (a / g, n / g);
    if np == 1 {
        return 1;
    }
    let u0 = md(ap.extended_gcd(&np).x, np);
    let mut u = u0;
    while u.gcd(&n) != 1 {
        u += np;
    }
    u
}

struct Diagonalizer {
    n_mod: i64,
    a: Vec<Vec<i64>>,
    rhs: Vec<i64>,
    v: Vec<Vec<i64>>,
    log: Vec<RowOp>,
}

impl Diagonalizer {
    fn row_op(&mut self, op: RowOp) {
        let n = self.n_mod;
        match op {
            RowOp::Swap(i, j) => {
                self.a.swap(i, j);
                self.rhs.swap(i, j);
            }
            RowOp::Scale(i, u) => {
                for x in self.a[i].iter_mut() {
                    *x = md(*x * u, n);
                }
                self.rhs[i] = md(self.rhs[i] * u, n);
            }
            RowOp::AddMul(i, j, c) => {
                for k in 0..self.a[i].len() {
                    self.a[i][k] = md(self.a[i][k] + c * self.a[j][k], n);
                }
                self.rhs[i] = md(self.rhs[i] + c * self.rhs[j], n);
            }
            RowOp::Mix(i, j, [p, q, r, s]) => {
                for k in 0..self.a[i].len() {
                    let (x, y) = (self.a[i][k], self.a[j][k]);
                    self.a[i][k] = md(p * x + q * y, n);
                    self.a[j][k] = md(r * x + s * y, n);
                }
                let (x, y) = (self.rhs[i], self.rhs[j]);
                self.rhs[i] = md(p * x + q * y, n);
                self.rhs[j] = md(r * x + s * y, n);
            }
        }
        self.log.push(op);
    }

    /// Column operations act on `a` and are accumulated into `v`.
    fn col_swap(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    fn col_scale(&mut self, i: usize, u: i64) {
        let n = self.n_mod;
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[i] = md(row[i] * u, n);
        }
    }

    fn col_add_mul(&mut self, i: usize, j: usize, c: i64) {
        let n = self.n_mod;
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[i] = md(row[i] + c * row[j], n);
        }
    }

    fn col_mix(&mut self, i: usize, j: usize, [p, q, r, s]: [i64; 4]) {
        let n = self.n_mod;
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let (x, y) = (row[i], row[j]);
            row[i] = md(p * x + q * y, n);
            row[j] = md(r * x + s * y, n);
        }
    }

    /// Clears row and column `t` outside the diagonal; returns false when the
    /// remaining submatrix is zero.
    fn pivot(&mut self, t: usize) -> bool {
        let n = self.n_mod;
        let (rows, cols) = (self.a.len(), self.v.len());
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let g = ideal(self.a[i][j], n);
                if g != n && best.is_none_or(|(bg, _, _)| g < bg) {
                    best = Some((g, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            return false;
        };
        if pi != t {
            self.row_op(RowOp::Swap(t, pi));
        }
        if pj != t {
            self.col_swap(t, pj);
        }
        loop {
            let u = normalizing_unit(self.a[t][t], n);
            if u != 1 {
                self.row_op(RowOp::Scale(t, u));
            }
            let d = self.a[t][t];
            let mut changed = false;
            for i in t + 1..rows {
                let x = self.a[i][t];
                if x == 0 {
                    continue;
                }
                if x % d == 0 {
                    self.row_op(RowOp::AddMul(i, t, md(-(x / d), n)));
                } else {
                    let eg = d.extended_gcd(&x);
                    let g = eg.gcd;
                    self.row_op(RowOp::Mix(t, i, [eg.x, eg.y, -(x / g), d / g]));
                    changed = true;
                    break;
                }
            }
            if changed {
                continue;
            }
            for j in t + 1..cols {
                let x = self.a[t][j];
                if x == 0 {
                    continue;
                }
                if x % d == 0 {
                    self.col_add_mul(j, t, md(-(x / d), n));
                } else {
                    let eg = d.extended_gcd(&x);
                    let g = eg.gcd;
                    self.col_mix(t, j, [eg.x, eg.y, -(x / g), d / g]);
                    changed = true;
                    break;
                }
            }
            if !changed {
                return true;
            }
            // a column mix can reintroduce entries below the pivot; loop again
            let u = normalizing_unit(self.a[t][t], n);
            if u != 1 {
                self.col_scale(t, u);
            }
        }
    }

    /// Row `k` of the accumulated left transform.
    fn transform_row(&self, k: usize) -> Vec<i64> {
        let n = self.n_mod;
        let mut y = vec![0i64; self.a.len()];
        y[k] = 1;
        for op in self.log.iter().rev() {
            match *op {
                RowOp::Swap(i, j) => y.swap(i, j),
                RowOp::Scale(i, u) => y[i] = md(y[i] * u, n),
                RowOp::AddMul(i, j, c) => y[j] = md(y[j] + c * y[i], n),
                RowOp::Mix(i, j, [p, q, r, s]) => {
                    let (yi, yj) = (y[i], y[j]);
                    y[i] = md(yi * p + yj * r, n);
                    y[j] = md(yi * q + yj * s, n);
                }
            }
        }
        y
    }
}

/// Solves `a x = b (mod modulus)` for an `m x n` integer matrix.
pub fn solve_mod(a: &[Vec<i64>], b: &[i64], modulus: i64) -> ModSolution {
    assert!(modulus >= 1);
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut dz = Diagonalizer {
        n_mod: modulus,
        a: a.iter().map(|r| r.iter().map(|&x| md(x, modulus)).collect()).collect(),
        rhs: b.iter().map(|&x| md(x, modulus)).collect(),
        v: (0..cols)
            .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
            .collect(),
        log: Vec::new(),
    };
    let mut rank = 0;
    while rank < cols.min(a.len()) && dz.pivot(rank) {
        rank += 1;
    }
    let mut mu = vec![0i64; cols];
    for k in 0..dz.a.len() {
        let d = if k < rank { dz.a[k][k] } else { modulus };
        let rhs = dz.rhs[k];
        if rhs % d != 0 {
            let scale = modulus / d.gcd(&modulus);
            let y = dz
                .transform_row(k)
                .into_iter()
                .map(|x| md(x * scale, modulus))
                .collect();
            return ModSolution::Obstruction(y);
        }
        if k < rank {
            mu[k] = rhs / d;
        }
    }
    let x = (0..cols)
        .map(|i| md((0..cols).map(|j| dz.v[i][j] * mu[j]).sum::<i64>(), modulus))
        .collect();
    ModSolution::Solved(x)
}
