//! Exact row reduction over the rationals for sparse systems.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Result, WernerError};
use crate::exact::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

pub fn sparse_from_dense(row: &[Rational]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Reduced row echelon form, built one row at a time.
///
/// Each stored row has a leading 1 in its pivot column and zeros in every
/// other pivot column.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseRow> {
        self.rows.get(&pivot)
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.rows.contains_key(c))
            .collect();
        for p in hits {
            let Some(factor) = row.get(&p).cloned() else {
                continue;
            };
            for (c, v) in &self.rows[&p] {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
        row
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Adds a row; returns `true` when the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        let mut row = self.reduce(row);
        let Some((&pivot, lead)) = row.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead;
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.rows.values_mut() {
            let Some(factor) = other.remove(&pivot) else {
                continue;
            };
            for (c, v) in row.iter().skip(1) {
                let e = other.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    other.remove(c);
                }
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut x = vec![Rational::zero(); self.ncols];
                x[free] = Rational::one();
                for (&p, row) in &self.rows {
                    if let Some(v) = row.get(&free) {
                        x[p] = -v.clone();
                    }
                }
                x
            })
            .collect()
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> usize {
    let mut ech = RowEchelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Unique solution of the square system `A x = b`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(WernerError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut ech = RowEchelon::new(n + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut sparse = sparse_from_dense(row);
        if !rhs.is_zero() {
            sparse.insert(n, rhs.clone());
        }
        ech.insert(sparse);
    }
    if ech.rank() != n || ech.rows.contains_key(&n) {
        return Err(WernerError::Singular);
    }
    Ok((0..n)
        .map(|p| ech.rows[&p].get(&n).cloned().unwrap_or_else(Rational::zero))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn r(v: i64) -> Rational {
        rational(v, 1)
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(0), r(1), r(1)],
        ];
        let mut ech = RowEchelon::new(3);
        for row in &rows {
            ech.insert(sparse_from_dense(row));
        }
        assert_eq!(ech.rank(), 2);
        let ns = ech.nullspace();
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert!(ech.contains(&sparse_from_dense(&[r(3), r(7), r(10)])));
        assert!(!ech.contains(&sparse_from_dense(&[r(0), r(0), r(1)])));
    }

    #[test]
    fn solves_square_system() {
        let a = vec![vec![r(2), r(1)], vec![r(1), r(3)]];
        let x = solve(&a, &[r(3), r(5)]).unwrap();
        assert_eq!(x, vec![rational(4, 5), rational(7, 5)]);
        let sing = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        assert!(matches!(
            solve(&sing, &[r(1), r(2)]),
            Err(WernerError::Singular)
        ));
    }

    #[test]
    fn empty_and_full_rank() {
        assert_eq!(rank(Vec::<SparseRow>::new(), 4), 0);
        let id: Vec<SparseRow> = (0..4)
            .map(|i| std::iter::once((i, r(1))).collect())
            .collect();
        assert_eq!(rank(id, 4), 4);
        assert!(RowEchelon::new(4).nullspace().len() == 4);
    }
}
