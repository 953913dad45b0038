//! Brute-force commutant of `{ΣX, ΣY, ΣZ}` on the Hermitian operators.
//!
//! Independent of the chord-diagram construction: the generators are the
//! matrix units, the constraints are `[ΣZ, H] = 0` and `[ΣX, H] = 0`
//! (`ΣY` then follows from the algebra), and the commutant is the exact
//! rational nullspace.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Result, WernerError};
use crate::exact::{Gaussian, Rational, ScaledGaussianOperator};
use crate::linalg::{sparse_from_dense, RowEchelon, SparseRow};
use crate::werner_ops::basis::hermitian_coords;

pub const COMMUTANT_MAX_N: usize = 4;

#[derive(Clone, Debug)]
pub struct Commutant {
    pub n: usize,
    pub dimension: usize,
    /// Hermitian operators spanning the commutant, at scale 0.
    pub spanning: Vec<ScaledGaussianOperator>,
}

/// Real coordinate slot of entry `(i, j)` with `i <= j`: the real part, and
/// the imaginary part right after it when `i < j`.
fn coord_index(d: usize, i: usize, j: usize) -> usize {
    // Row `r` contributes 1 + 2 (d − r − 1) slots.
    let before: usize = (0..i).map(|r| 2 * (d - r) - 1).sum();
    before + if i == j { 0 } else { 2 * (j - i) - 1 }
}

fn coord_count(d: usize) -> usize {
    d * d
}

/// Generator `k` as a sparse list of `(row, col, re, im)` entries.
fn generator(d: usize, k: usize) -> Vec<(usize, usize, i64, i64)> {
    for i in 0..d {
        for j in i..d {
            let base = coord_index(d, i, j);
            if i == j && base == k {
                return vec![(i, i, 1, 0)];
            }
            if i < j && base == k {
                return vec![(i, j, 1, 0), (j, i, 1, 0)];
            }
            if i < j && base + 1 == k {
                return vec![(i, j, 0, 1), (j, i, 0, -1)];
            }
        }
    }
    unreachable!("generator index in range")
}

/// Nonzero entries of `[ΣZ, G]` (rows `0..d`) and `[ΣX, G]` (rows `d..2d`)
/// for a sparse `G`.
fn commutators(n: usize, g: &[(usize, usize, i64, i64)]) -> Vec<(usize, usize, i64, i64)> {
    let d = 1usize << n;
    let mut out = Vec::new();
    for &(i, j, re, im) in g {
        // [ΣZ, G]_IJ = 2 (wt J − wt I) G_IJ.
        let w = 2 * (j.count_ones() as i64 - i.count_ones() as i64);
        if w != 0 {
            out.push((i, j, w * re, w * im));
        }
        // [ΣX, G] = Σ_k (X_k G − G X_k).
        for k in 0..n {
            let f = 1usize << k;
            out.push((d + (i ^ f), j, re, im));
            out.push((d + i, j ^ f, -re, -im));
        }
    }
    out
}

/// Dimension and a spanning set of the Hermitian operators commuting with
/// the collective spin operators, for `1 <= n <= 4`.
pub fn commutant_oracle(n: usize) -> Result<Commutant> {
    if !(1..=COMMUTANT_MAX_N).contains(&n) {
        return Err(WernerError::OutOfRange {
            name: "n",
            value: n,
            min: 1,
            max: COMMUTANT_MAX_N,
        });
    }
    let d = 1usize << n;
    let unknowns = coord_count(d);
    let eq_index = |row: usize, col: usize, part: usize| (row * d + col) * 2 + part;
    let mut columns: Vec<Vec<(usize, i64)>> = Vec::with_capacity(unknowns);
    for k in 0..unknowns {
        let g = generator(d, k);
        let mut col = BTreeMap::<usize, i64>::new();
        for (r, c, re, im) in commutators(n, &g) {
            *col.entry(eq_index(r, c, 0)).or_default() += re;
            *col.entry(eq_index(r, c, 1)).or_default() += im;
        }
        columns.push(col.into_iter().filter(|(_, v)| *v != 0).collect());
    }
    let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for (k, col) in columns.iter().enumerate() {
        for &(e, v) in col {
            rows.entry(e)
                .or_default()
                .insert(k, Rational::from_integer(v.into()));
        }
    }
    let mut ech = RowEchelon::new(unknowns);
    for row in rows.into_values() {
        ech.insert(row);
    }
    let spanning: Vec<ScaledGaussianOperator> = ech
        .nullspace()
        .into_iter()
        .map(|x| from_coords(n, &x))
        .collect();
    Ok(Commutant {
        n,
        dimension: spanning.len(),
        spanning,
    })
}

/// Hermitian operator with the given real coordinates.
pub fn from_coords(n: usize, x: &[Rational]) -> ScaledGaussianOperator {
    let d = 1usize << n;
    let mut op = ScaledGaussianOperator::zeros(n, 0);
    for i in 0..d {
        for j in i..d {
            let base = coord_index(d, i, j);
            if i == j {
                op.set(i, i, Gaussian::new(x[base].clone(), Rational::zero()));
            } else {
                let re = x[base].clone();
                let im = x[base + 1].clone();
                op.set(i, j, Gaussian::new(re.clone(), im.clone()));
                op.set(j, i, Gaussian::new(re, -im));
            }
        }
    }
    op
}

/// Whether two families of Hermitian operators on `n` qubits span the same
/// real subspace. Scales are ignored, which is harmless for spans.
pub fn same_span(a: &[ScaledGaussianOperator], b: &[ScaledGaussianOperator]) -> bool {
    let Some(first) = a.iter().chain(b).next() else {
        return true;
    };
    let ncols = first.dim() * first.dim();
    let mut ea = RowEchelon::new(ncols);
    for op in a {
        ea.insert(sparse_from_dense(&hermitian_coords(op)));
    }
    let mut eb = RowEchelon::new(ncols);
    for op in b {
        eb.insert(sparse_from_dense(&hermitian_coords(op)));
    }
    ea.rank() == eb.rank()
        && b.iter()
            .all(|op| ea.contains(&sparse_from_dense(&hermitian_coords(op))))
}
