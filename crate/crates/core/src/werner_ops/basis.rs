//! The Hermitian basis built from the `A_D` operators, and decomposition of
//! Werner-invariant operators in it.

use nalgebra::{DMatrix, DVector};
use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::chords::{enumerate_noncrossing, representative_set, ChordDiagram};
use crate::complex::ComplexMatrix;
use crate::error::{Result, WernerError};
use crate::exact::{
    rational, rational_to_f64, sqrt2_factor, Gaussian, Rational, ScaledGaussianOperator,
};
use crate::linalg::{self, sparse_from_dense, SparseRow};
use crate::werner_ops::operators::a_operator;

pub const BASIS_MAX_N: usize = 5;
/// Residual below which a floating-point decomposition counts as in-span.
pub const FLOAT_SPAN_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// `A_D` for a half-turn symmetric `D`.
    Symmetric(ChordDiagram),
    /// `(A_D + A_Dᵀ)/2` for `D` in the representative set.
    RealPart(ChordDiagram),
    /// `(A_D − A_Dᵀ)/(2i)` for `D` in the representative set.
    ImaginaryPart(ChordDiagram),
}

impl Provenance {
    pub fn diagram(&self) -> &ChordDiagram {
        match self {
            Provenance::Symmetric(d) | Provenance::RealPart(d) | Provenance::ImaginaryPart(d) => d,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Symmetric(_) => "symmetric",
            Provenance::RealPart(_) => "real-part",
            Provenance::ImaginaryPart(_) => "imaginary-part",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub operator: ScaledGaussianOperator,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct WernerBasis {
    n: usize,
    elements: Vec<BasisElement>,
}

impl WernerBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn operators(&self) -> impl Iterator<Item = &ScaledGaussianOperator> {
        self.elements.iter().map(|e| &e.operator)
    }

    /// Common scale of every element.
    pub fn scale(&self) -> i32 {
        self.n as i32
    }

    /// Rank of the real coordinate vectors of the elements.
    pub fn coordinate_rank(&self) -> usize {
        span_rank(self.operators())
    }

    /// `Σ c_i B_i` for exact coefficients.
    pub fn reconstruct(&self, coefficients: &ExactCoefficients) -> Result<ScaledGaussianOperator> {
        if coefficients.values.len() != self.len() {
            return Err(WernerError::DimensionMismatch {
                expected: self.len(),
                found: coefficients.values.len(),
            });
        }
        // c_i = d_i (√2)^k with B_i at scale n; the sum has scale n − k.
        let mut acc =
            ScaledGaussianOperator::zeros(self.n, self.scale() - coefficients.sqrt2_exponent);
        let mut entries: Vec<Gaussian> = acc.entries().to_vec();
        for (d, el) in coefficients.values.iter().zip(&self.elements) {
            if d.is_zero() {
                continue;
            }
            for (slot, v) in entries.iter_mut().zip(el.operator.entries()) {
                *slot += v.scale(d.clone());
            }
        }
        acc = ScaledGaussianOperator::from_entries(self.n, entries, acc.scale())?;
        Ok(acc)
    }
}

fn check_basis_n(n: usize) -> Result<()> {
    if (1..=BASIS_MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(WernerError::OutOfRange {
            name: "n",
            value: n,
            min: 1,
            max: BASIS_MAX_N,
        })
    }
}

/// Symmetric-diagram `A_D` in lexicographic order, then the real and
/// imaginary parts for each representative diagram in lexicographic order.
pub fn hermitian_basis(n: usize) -> Result<WernerBasis> {
    check_basis_n(n)?;
    let symmetric: Vec<ChordDiagram> = enumerate_noncrossing(n)?
        .into_iter()
        .filter(ChordDiagram::has_half_turn_symmetry)
        .collect();
    let reps = representative_set(n)?;

    let mut elements: Vec<BasisElement> = symmetric
        .par_iter()
        .map(|d| BasisElement {
            operator: a_operator(d),
            provenance: Provenance::Symmetric(d.clone()),
        })
        .collect();

    let half = Gaussian::new(rational(1, 2), Rational::zero());
    let minus_half_i = Gaussian::new(Rational::zero(), rational(-1, 2));
    let pairs: Vec<[BasisElement; 2]> = reps
        .par_iter()
        .map(|d| {
            let a = a_operator(d);
            let at = a.transpose();
            let re = a.add(&at).expect("same shape").scalar_mul(&half);
            let im = a.sub(&at).expect("same shape").scalar_mul(&minus_half_i);
            [
                BasisElement {
                    operator: re,
                    provenance: Provenance::RealPart(d.clone()),
                },
                BasisElement {
                    operator: im,
                    provenance: Provenance::ImaginaryPart(d.clone()),
                },
            ]
        })
        .collect();
    elements.extend(pairs.into_iter().flatten());
    Ok(WernerBasis { n, elements })
}

/// Real coordinates of a Hermitian operator's entries (scale ignored):
/// diagonal real parts, then for each `i < j` the real and imaginary parts
/// of entry `(i, j)`, row by row.
pub fn hermitian_coords(op: &ScaledGaussianOperator) -> Vec<Rational> {
    let d = op.dim();
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in i..d {
            let v = op.get(i, j);
            if i == j {
                out.push(v.re.clone());
            } else {
                out.push(v.re.clone());
                out.push(v.im.clone());
            }
        }
    }
    out
}

pub fn hermitian_coords_f64(op: &ComplexMatrix) -> Vec<f64> {
    let d = op.dim();
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in i..d {
            let v = op.get(i, j);
            if i == j {
                out.push(v.re);
            } else {
                out.push(v.re);
                out.push(v.im);
            }
        }
    }
    out
}

/// Rank of the coordinate vectors of Hermitian operators on a common register.
pub fn span_rank<'a>(ops: impl IntoIterator<Item = &'a ScaledGaussianOperator>) -> usize {
    let rows: Vec<SparseRow> = ops
        .into_iter()
        .map(|o| sparse_from_dense(&hermitian_coords(o)))
        .collect();
    let ncols = rows
        .iter()
        .flat_map(|r| r.keys().max())
        .max()
        .map_or(0, |m| m + 1);
    linalg::rank(rows, ncols)
}

/// Coefficients `c_i = values_i · (√2)^{sqrt2_exponent}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCoefficients {
    pub values: Vec<Rational>,
    pub sqrt2_exponent: i32,
}

impl ExactCoefficients {
    pub fn to_f64(&self) -> Vec<f64> {
        let f = sqrt2_factor(-self.sqrt2_exponent);
        self.values.iter().map(|v| rational_to_f64(v) * f).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Coefficients as floating-point values.
    pub coefficients: Vec<f64>,
    /// Present on the exact path.
    pub exact: Option<ExactCoefficients>,
    /// Largest entry modulus of `H − Σ c_i B_i`.
    pub residual: f64,
}

impl Decomposition {
    pub fn in_span(&self) -> bool {
        match self.exact {
            Some(_) => self.residual == 0.0,
            None => self.residual <= FLOAT_SPAN_TOL,
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Exact decomposition through the normal equations of the coordinate system.
pub fn decompose(h: &ScaledGaussianOperator, basis: &WernerBasis) -> Result<Decomposition> {
    if h.qubits() != basis.n() {
        return Err(WernerError::DimensionMismatch {
            expected: 1 << basis.n(),
            found: h.dim(),
        });
    }
    if !h.is_hermitian() {
        return Err(WernerError::NotHermitian);
    }
    let cols: Vec<Vec<Rational>> = basis.operators().map(hermitian_coords).collect();
    let target = hermitian_coords(h);
    let gram: Vec<Vec<Rational>> = cols
        .iter()
        .map(|a| cols.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<Rational> = cols.iter().map(|a| dot(a, &target)).collect();
    let values = linalg::solve(&gram, &rhs)?;
    let exact = ExactCoefficients {
        values,
        sqrt2_exponent: basis.scale() - h.scale(),
    };
    let recon = basis.reconstruct(&exact)?;
    let residual = h.sub(&recon)?.max_abs();
    Ok(Decomposition {
        coefficients: exact.to_f64(),
        exact: Some(exact),
        residual,
    })
}

/// Floating-point decomposition by column-pivoted QR least squares.
pub fn decompose_float(h: &ComplexMatrix, basis: &WernerBasis) -> Result<Decomposition> {
    if h.qubits() != basis.n() {
        return Err(WernerError::DimensionMismatch {
            expected: 1 << basis.n(),
            found: h.dim(),
        });
    }
    if h.hermitian_deviation() > crate::werner_ops::checks::FLOAT_TOL {
        return Err(WernerError::NotHermitian);
    }
    let cols: Vec<Vec<f64>> = basis
        .operators()
        .map(|o| hermitian_coords_f64(&o.to_complex()))
        .collect();
    let rows = cols[0].len();
    let a = DMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r]);
    let b = DVector::from_vec(hermitian_coords_f64(h));

    let qr = a.clone().col_piv_qr();
    let mut qtb = b.clone();
    qr.q_tr_mul(&mut qtb);
    let r = qr.r();
    let k = cols.len();
    let mut y = qtb.rows(0, k).into_owned();
    if !r.view((0, 0), (k, k)).solve_upper_triangular_mut(&mut y) {
        return Err(WernerError::Singular);
    }
    qr.p().inv_permute_rows(&mut y);
    let coefficients: Vec<f64> = y.iter().copied().collect();

    let mut recon = ComplexMatrix::zeros(basis.n());
    for (c, op) in coefficients.iter().zip(basis.operators()) {
        let m = op.to_complex();
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                recon.add_at(i, j, m.get(i, j) * *c);
            }
        }
    }
    Ok(Decomposition {
        residual: recon.max_abs_diff(h),
        coefficients,
        exact: None,
    })
}

/// Unit vector check helper: coefficient `i` is one and the rest vanish.
pub fn is_unit_vector(c: &ExactCoefficients, i: usize) -> bool {
    c.sqrt2_exponent == 0
        && c.values
            .iter()
            .enumerate()
            .all(|(k, v)| if k == i { v.is_one() } else { v.is_zero() })
}

/// Largest coefficient magnitude, handy for sanity checks on exact output.
pub fn max_abs_value(c: &ExactCoefficients) -> Rational {
    c.values
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}
