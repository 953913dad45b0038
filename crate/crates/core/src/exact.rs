//! Exact values carrying a shared `(√2)^(−s)` factor.
//!
//! Every amplitude and matrix entry produced by the diagram constructions is
//! an integer or Gaussian rational times a power of `1/√2`, so keeping the
//! power symbolic lets all identities be checked with zero tolerance.

use std::fmt;
use std::ops::Neg;

use num::complex::Complex64;
use num::{BigInt, BigRational, Complex, One, Signed, ToPrimitive, Zero};

use crate::complex::{ComplexMatrix, ComplexVector};
use crate::error::{Result, WernerError};

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn gaussian_int(re: i64, im: i64) -> Gaussian {
    Complex::new(rational(re, 1), rational(im, 1))
}

pub fn gaussian_zero() -> Gaussian {
    Complex::new(Rational::zero(), Rational::zero())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `2^{-s/2}`.
pub fn sqrt2_factor(scale: i32) -> f64 {
    2f64.powf(-(scale as f64) / 2.0)
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k as usize
}

/// Integer amplitudes times `(√2)^(−scale)`.
#[derive(Clone)]
pub struct ScaledIntState {
    qubits: usize,
    amplitudes: Vec<i64>,
    scale: i32,
}

impl ScaledIntState {
    pub fn new(qubits: usize, amplitudes: Vec<i64>, scale: i32) -> Result<Self> {
        if amplitudes.len() != 1 << qubits {
            return Err(WernerError::DimensionMismatch {
                expected: 1 << qubits,
                found: amplitudes.len(),
            });
        }
        Ok(Self {
            qubits,
            amplitudes,
            scale,
        })
    }

    pub fn zero(qubits: usize) -> Self {
        Self {
            qubits,
            amplitudes: vec![0; 1 << qubits],
            scale: 0,
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn scale(&self) -> i32 {
        self.scale
    }

    pub fn amplitudes(&self) -> &[i64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> i64 {
        self.amplitudes[index]
    }

    /// `(index, amplitude)` for every nonzero amplitude, increasing index.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| (i, a))
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.iter().all(|&a| a == 0)
    }

    /// Same value, re-expressed at a larger scale `target` (difference must be even).
    pub fn rescaled(&self, target: i32) -> Result<Self> {
        let diff = target - self.scale;
        if diff < 0 || diff % 2 != 0 {
            return Err(WernerError::ScaleParity(self.scale, target));
        }
        let factor = 1i64 << (diff / 2);
        Ok(Self {
            qubits: self.qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
            scale: target,
        })
    }

    /// Multiplies the represented value by `(√2)^k` without touching amplitudes.
    pub fn times_sqrt2_pow(&self, k: i32) -> Self {
        Self {
            scale: self.scale - k,
            ..self.clone()
        }
    }

    pub fn scalar_mul(&self, c: i64) -> Self {
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.qubits != other.qubits {
            return Err(WernerError::DimensionMismatch {
                expected: self.qubits,
                found: other.qubits,
            });
        }
        let s = self.scale.max(other.scale);
        let a = self.rescaled(s)?;
        let b = other.rescaled(s)?;
        Ok(Self {
            qubits: self.qubits,
            amplitudes: a
                .amplitudes
                .iter()
                .zip(&b.amplitudes)
                .map(|(x, y)| x + y)
                .collect(),
            scale: s,
        })
    }

    pub fn to_complex(&self) -> ComplexVector {
        let f = sqrt2_factor(self.scale);
        ComplexVector::from_real(
            self.qubits,
            self.amplitudes.iter().map(|&a| a as f64 * f).collect(),
        )
    }
}

impl Neg for &ScaledIntState {
    type Output = ScaledIntState;
    fn neg(self) -> ScaledIntState {
        self.scalar_mul(-1)
    }
}

impl PartialEq for ScaledIntState {
    /// Equality of represented values.
    fn eq(&self, other: &Self) -> bool {
        if self.qubits != other.qubits {
            return false;
        }
        if (self.scale - other.scale) % 2 != 0 {
            return self.is_zero() && other.is_zero();
        }
        let s = self.scale.max(other.scale);
        self.rescaled(s).unwrap().amplitudes == other.rescaled(s).unwrap().amplitudes
    }
}

impl fmt::Debug for ScaledIntState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(√2)^-{} · [", self.scale)?;
        for (i, (k, a)) in self.support().enumerate() {
            let sep = if i == 0 { "" } else { " " };
            let sign = if a < 0 { "-" } else { "+" };
            let mag = a.abs();
            let coeff = if mag == 1 {
                String::new()
            } else {
                mag.to_string()
            };
            write!(f, "{sep}{sign}{coeff}|{k:0w$b}⟩", w = self.qubits)?;
        }
        write!(f, "]")
    }
}

/// Square matrix of Gaussian rationals times `(√2)^(−scale)`, stored row-major.
#[derive(Clone)]
pub struct ScaledGaussianOperator {
    qubits: usize,
    entries: Vec<Gaussian>,
    scale: i32,
}

impl ScaledGaussianOperator {
    pub fn zeros(qubits: usize, scale: i32) -> Self {
        let dim = 1usize << qubits;
        Self {
            qubits,
            entries: vec![gaussian_zero(); dim * dim],
            scale,
        }
    }

    pub fn identity(qubits: usize) -> Self {
        let mut op = Self::zeros(qubits, 0);
        for i in 0..op.dim() {
            op.set(i, i, gaussian_int(1, 0));
        }
        op
    }

    pub fn from_entries(qubits: usize, entries: Vec<Gaussian>, scale: i32) -> Result<Self> {
        let dim = 1usize << qubits;
        if entries.len() != dim * dim {
            return Err(WernerError::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self {
            qubits,
            entries,
            scale,
        })
    }

    /// Real integer matrix given row by row.
    pub fn from_int_rows(rows: &[&[i64]], scale: i32) -> Result<Self> {
        let dim = rows.len();
        if !dim.is_power_of_two() || rows.iter().any(|r| r.len() != dim) {
            return Err(WernerError::DimensionMismatch {
                expected: dim.next_power_of_two(),
                found: dim,
            });
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| gaussian_int(v, 0)))
            .collect();
        Self::from_entries(dim.trailing_zeros() as usize, entries, scale)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn scale(&self) -> i32 {
        self.scale
    }

    pub fn get(&self, row: usize, col: usize) -> &Gaussian {
        &self.entries[row * self.dim() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Gaussian) {
        let d = self.dim();
        self.entries[row * d + col] = value;
    }

    pub fn entries(&self) -> &[Gaussian] {
        &self.entries
    }

    /// `(row, col, value)` for nonzero entries in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Gaussian)> + '_ {
        let d = self.dim();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / d, k % d, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|v| v.im.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim();
        let mut out = Self::zeros(self.qubits, self.scale);
        for (r, c, v) in self.nonzero() {
            out.entries[c * d + r] = v.clone();
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim();
        let mut out = Self::zeros(self.qubits, self.scale);
        for (r, c, v) in self.nonzero() {
            out.entries[c * d + r] = v.conj();
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        let d = self.dim();
        (0..d).all(|r| (r..d).all(|c| *self.get(r, c) == self.get(c, r).conj()))
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|r| (r + 1..d).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Same value at a larger scale; the difference must be even.
    pub fn rescaled(&self, target: i32) -> Result<Self> {
        let diff = target - self.scale;
        if diff < 0 || diff % 2 != 0 {
            return Err(WernerError::ScaleParity(self.scale, target));
        }
        if diff == 0 {
            return Ok(self.clone());
        }
        let f = Rational::from_integer(pow2((diff / 2) as u32));
        Ok(Self {
            qubits: self.qubits,
            entries: self.entries.iter().map(|v| v.scale(f.clone())).collect(),
            scale: target,
        })
    }

    /// Multiplies the represented value by `(√2)^k`.
    pub fn times_sqrt2_pow(&self, k: i32) -> Self {
        Self {
            scale: self.scale - k,
            ..self.clone()
        }
    }

    pub fn scalar_mul(&self, c: &Gaussian) -> Self {
        Self {
            qubits: self.qubits,
            entries: self.entries.iter().map(|v| v * c).collect(),
            scale: self.scale,
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.qubits != other.qubits {
            return Err(WernerError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        self.check_same_dim(other)?;
        let s = self.scale.max(other.scale);
        let a = self.rescaled(s)?;
        let b = other.rescaled(s)?;
        let sign = Rational::from_integer(sign.into());
        Ok(Self {
            qubits: self.qubits,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| x + y.scale(sign.clone()))
                .collect(),
            scale: s,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    /// Matrix product; scales add.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let d = self.dim();
        let mut out = Self::zeros(self.qubits, self.scale + other.scale);
        let right_rows: Vec<Vec<(usize, &Gaussian)>> = (0..d)
            .map(|k| {
                (0..d)
                    .map(|j| (j, other.get(k, j)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        for (i, k, a) in self.nonzero() {
            for &(j, b) in &right_rows[k] {
                out.entries[i * d + j] += a * b;
            }
        }
        Ok(out)
    }

    /// Tensor product with `other` acting on the trailing qubits; scales add.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim(), other.dim());
        let mut out = Self::zeros(self.qubits + other.qubits, self.scale + other.scale);
        let d = da * db;
        for (r1, c1, a) in self.nonzero() {
            for (r2, c2, b) in other.nonzero() {
                out.entries[(r1 * db + r2) * d + c1 * db + c2] = a * b;
            }
        }
        out
    }

    /// Largest entry modulus of the represented value.
    pub fn max_abs(&self) -> f64 {
        let f = sqrt2_factor(self.scale);
        self.entries
            .iter()
            .map(|v| {
                let re = rational_to_f64(&v.re);
                let im = rational_to_f64(&v.im);
                re.hypot(im) * f
            })
            .fold(0.0, f64::max)
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        let f = sqrt2_factor(self.scale);
        ComplexMatrix::from_fn(self.qubits, |r, c| {
            let v = self.get(r, c);
            Complex64::new(rational_to_f64(&v.re) * f, rational_to_f64(&v.im) * f)
        })
    }
}

impl PartialEq for ScaledGaussianOperator {
    /// Equality of represented values.
    fn eq(&self, other: &Self) -> bool {
        if self.qubits != other.qubits {
            return false;
        }
        if (self.scale - other.scale) % 2 != 0 {
            return self.is_zero() && other.is_zero();
        }
        let s = self.scale.max(other.scale);
        self.rescaled(s).unwrap().entries == other.rescaled(s).unwrap().entries
    }
}

impl Neg for &ScaledGaussianOperator {
    type Output = ScaledGaussianOperator;
    fn neg(self) -> ScaledGaussianOperator {
        self.scalar_mul(&gaussian_int(-1, 0))
    }
}

impl fmt::Debug for ScaledGaussianOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(√2)^-{} ·", self.scale)?;
        let d = self.dim();
        for r in 0..d {
            let row: Vec<String> = (0..d)
                .map(|c| {
                    let v = self.get(r, c);
                    match (v.re.is_zero(), v.im.is_zero()) {
                        (true, true) => "0".into(),
                        (false, true) => v.re.to_string(),
                        (true, false) => format!("{}i", v.im),
                        _ => format!(
                            "{}{}{}i",
                            v.re,
                            if v.im.is_negative() { "" } else { "+" },
                            v.im
                        ),
                    }
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_equality_across_scales() {
        let a = ScaledIntState::new(1, vec![1, -1], 0).unwrap();
        let b = ScaledIntState::new(1, vec![2, -2], 2).unwrap();
        assert_eq!(a, b);
        let c = ScaledIntState::new(1, vec![1, -1], 1).unwrap();
        assert_ne!(a, c);
        assert_eq!(
            ScaledIntState::zero(1),
            ScaledIntState::zero(1).times_sqrt2_pow(1)
        );
    }

    #[test]
    fn state_add_requires_even_scale_gap() {
        let a = ScaledIntState::new(1, vec![1, 0], 0).unwrap();
        let b = ScaledIntState::new(1, vec![0, 1], 2).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.scale(), 2);
        assert_eq!(s.amplitudes(), &[2, 1]);
        assert!(a.add(&b.times_sqrt2_pow(1)).is_err());
    }

    #[test]
    fn operator_products_and_scales() {
        let iy = ScaledGaussianOperator::from_int_rows(&[&[0, 1], &[-1, 0]], 0).unwrap();
        let sq = iy.matmul(&iy).unwrap();
        assert_eq!(sq, -&ScaledGaussianOperator::identity(1));
        let half = iy.times_sqrt2_pow(-1);
        assert_eq!(half.matmul(&half).unwrap().scale(), 2);
        let k = iy.kron(&iy);
        assert_eq!(k.qubits(), 2);
        assert_eq!(*k.get(0, 3), gaussian_int(1, 0));
        assert_eq!(*k.get(1, 2), gaussian_int(-1, 0));
    }

    #[test]
    fn operator_hermitian_and_transpose() {
        let mut m = ScaledGaussianOperator::zeros(1, 0);
        m.set(0, 1, gaussian_int(0, 1));
        m.set(1, 0, gaussian_int(0, -1));
        assert!(m.is_hermitian());
        assert!(!m.is_symmetric());
        assert_eq!(m.transpose(), -&m);
        assert_eq!(m.adjoint(), m);
        assert!(m.add(&m.times_sqrt2_pow(1)).is_err());
        assert!((m.max_abs() - 1.0).abs() < 1e-15);
        assert!((m.times_sqrt2_pow(-3).max_abs() - 8f64.sqrt().recip()).abs() < 1e-15);
    }

    #[test]
    fn to_complex_applies_scale() {
        let m = ScaledGaussianOperator::identity(1).times_sqrt2_pow(-1);
        let c = m.to_complex();
        assert!((c.get(0, 0).re - 0.5f64.sqrt()).abs() < 1e-15);
    }
}
