//! Incremental row reduction over Q(zeta_N), used for evaluation spans.

use crate::scalars::CycScalar;

/// Reduced basis of a growing span of dense vectors.
#[derive(Debug, Clone)]
pub struct Span {
    order: u32,
    dim: usize,
    /// Rows with a leading 1 at `pivots[k]`, zero in the other pivot columns.
    rows: Vec<Vec<CycScalar>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(order: u32, dim: usize) -> Self {
        Span {
            order,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<CycScalar>] {
        &self.rows
    }

    fn reduce(&self, mut v: Vec<CycScalar>) -> Vec<CycScalar> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(CycScalar::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<CycScalar>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero pivot");
        let v: Vec<CycScalar> = v.iter().map(|x| x * &inv).collect();
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn zero_vector(&self) -> Vec<CycScalar> {
        vec![CycScalar::zero(self.order); self.dim]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(order: u32, xs: &[i64]) -> Vec<CycScalar> {
        xs.iter().map(|&x| CycScalar::from_integer(order, x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut s = Span::new(3, 3);
        assert!(s.insert(v(3, &[1, 2, 0])));
        assert!(s.insert(v(3, &[0, 1, 1])));
        assert!(!s.insert(v(3, &[2, 5, 1])));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&v(3, &[1, 3, 1])));
        assert!(!s.contains(&v(3, &[0, 0, 1])));
        let z = CycScalar::root_of_unity(3, 1);
        let w: Vec<CycScalar> = v(3, &[1, 2, 0]).iter().map(|x| x * &z).collect();
        assert!(s.contains(&w));
    }
}
