//! Dense complex vectors and matrices on qubit registers.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::{Result, WernerError};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    qubits: usize,
    data: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(qubits: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != 1 << qubits {
            return Err(WernerError::DimensionMismatch {
                expected: 1 << qubits,
                found: data.len(),
            });
        }
        Ok(Self { qubits, data })
    }

    pub fn zeros(qubits: usize) -> Self {
        Self {
            qubits,
            data: vec![ZERO; 1 << qubits],
        }
    }

    pub(crate) fn from_real(qubits: usize, data: Vec<f64>) -> Self {
        Self {
            qubits,
            data: data.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|v⟩⟨v|`.
    pub fn outer(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.qubits, |r, c| self.data[r] * self.data[c].conj())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    qubits: usize,
    data: DMatrix<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(qubits: usize) -> Self {
        let d = 1 << qubits;
        Self {
            qubits,
            data: DMatrix::from_element(d, d, ZERO),
        }
    }

    pub fn identity(qubits: usize) -> Self {
        let d = 1 << qubits;
        Self {
            qubits,
            data: DMatrix::identity(d, d),
        }
    }

    pub fn from_fn(qubits: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let d = 1 << qubits;
        Self {
            qubits,
            data: DMatrix::from_fn(d, d, f),
        }
    }

    pub fn from_dmatrix(data: DMatrix<Complex64>) -> Result<Self> {
        let d = data.nrows();
        if d != data.ncols() || !d.is_power_of_two() {
            return Err(WernerError::DimensionMismatch {
                expected: d.next_power_of_two(),
                found: data.ncols(),
            });
        }
        Ok(Self {
            qubits: d.trailing_zeros() as usize,
            data,
        })
    }

    /// Row-major real entries, e.g. `[[1, 0], [0, -1]]`.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(WernerError::DimensionMismatch {
                expected: d,
                found: rows.iter().map(|r| r.len()).max().unwrap_or(0),
            });
        }
        Self::from_dmatrix(DMatrix::from_fn(d, d, |r, c| {
            Complex64::new(rows[r][c], 0.0)
        }))
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[(r, c)]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[(r, c)] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[(r, c)] += v;
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            qubits: self.qubits,
            data: self.data.map(|z| z * s),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            qubits: self.qubits,
            data: self.data.adjoint(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            qubits: self.qubits,
            data: self.data.transpose(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        Self {
            qubits: self.qubits,
            data: &self.data * &other.data,
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            qubits: self.qubits + other.qubits,
            data: self.data.kronecker(&other.data),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `|M − M†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues in increasing order; the matrix is assumed Hermitian.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let eig = self.data.clone().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    /// `U` applied to qubit `pos` (1-based, position 1 most significant) on both
    /// sides: `M ↦ U_pos M U_pos†`.
    pub fn conjugate_single_qubit(&self, pos: usize, u: &[[Complex64; 2]; 2]) -> Self {
        let d = self.dim();
        let bit = 1usize << (self.qubits - pos);
        let mut left = self.data.clone();
        for c in 0..d {
            for r0 in (0..d).filter(|r| r & bit == 0) {
                let r1 = r0 | bit;
                let (a, b) = (self.data[(r0, c)], self.data[(r1, c)]);
                left[(r0, c)] = u[0][0] * a + u[0][1] * b;
                left[(r1, c)] = u[1][0] * a + u[1][1] * b;
            }
        }
        let mut out = left.clone();
        for r in 0..d {
            for c0 in (0..d).filter(|c| c & bit == 0) {
                let c1 = c0 | bit;
                let (a, b) = (left[(r, c0)], left[(r, c1)]);
                out[(r, c0)] = a * u[0][0].conj() + b * u[0][1].conj();
                out[(r, c1)] = a * u[1][0].conj() + b * u[1][1].conj();
            }
        }
        Self {
            qubits: self.qubits,
            data: out,
        }
    }
}
