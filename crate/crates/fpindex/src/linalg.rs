//! Exact linear algebra over the rationals: an incremental sparse echelon basis
//! and dense null spaces.

use crate::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Row space kept in echelon form, each row normalized to pivot 1 at its lowest column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce until the lowest column has no pivot; returns the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|_, c| !c.is_zero());
        loop {
            let Some((&c, coef)) = row.iter().next() else {
                return row;
            };
            let Some(p) = self.pivots.get(&c) else {
                return row;
            };
            let coef = coef.clone();
            for (&j, v) in p {
                let e = row.entry(j).or_insert_with(Rational::zero);
                *e -= &coef * v;
                if e.is_zero() {
                    row.remove(&j);
                }
            }
        }
    }

    /// Add a row; returns whether it enlarged the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        let Some((&c, lead)) = r.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead;
        let r: SparseRow = r.into_iter().map(|(j, v)| (j, v * &inv)).collect();
        self.pivots.insert(c, r);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Basis of `{ x : M x = 0 }` for a dense matrix with `ncols` columns.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = SparseEchelon::new();
        let r = |v: &[(usize, i64)]| v.iter().map(|&(j, c)| (j, rat(c))).collect::<SparseRow>();
        assert!(e.insert(r(&[(0, 1), (1, 2)])));
        assert!(e.insert(r(&[(1, 1), (2, 1)])));
        assert!(!e.insert(r(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(!e.contains(r(&[(2, 1)])));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let dot: Rational = m[0].iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }
}
