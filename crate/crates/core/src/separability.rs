//! Two-qubit reductions of the polygon states and their separability.

use num::complex::Complex64;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bitstrings::{
    count_aperiodic, count_aperiodic_with_00, count_periodic, count_periodic_with_00,
};
use crate::complex::ComplexMatrix;
use crate::error::{Result, WernerError};
use crate::exact::{rational, rational_to_f64, Rational};

pub const RHO_MIN_M: usize = 3;
pub const RHO_MAX_M: usize = 24;
pub const TABLE2_MAX_M: usize = 12;

/// Reduced matrix on the qubits in `keep`, ordered as given (the first kept
/// position becomes the most significant bit of the result).
pub fn partial_trace(rho: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    let m = rho.qubits();
    for (i, &p) in keep.iter().enumerate() {
        if p == 0 || p > m {
            return Err(WernerError::PositionOutOfRange { pos: p, len: m });
        }
        if keep[..i].contains(&p) {
            return Err(WernerError::DuplicatePosition(p));
        }
    }
    let traced: Vec<usize> = (1..=m).filter(|p| !keep.contains(p)).collect();
    let place = |kept_bits: usize, traced_bits: usize| {
        let mut idx = 0usize;
        for (i, &p) in keep.iter().enumerate() {
            idx |= ((kept_bits >> (keep.len() - 1 - i)) & 1) << (m - p);
        }
        for (i, &p) in traced.iter().enumerate() {
            idx |= ((traced_bits >> i) & 1) << (m - p);
        }
        idx
    };
    let k = keep.len();
    let mut out = ComplexMatrix::zeros(k);
    for r in 0..1usize << k {
        for c in 0..1usize << k {
            let mut acc = Complex64::zero();
            for t in 0..1usize << traced.len() {
                acc += rho.get(place(r, t), place(c, t));
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

/// `λ·Id/4 + (1−λ)|s⟩⟨s|` with the fit's worst entry deviation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoQubitWernerForm {
    pub lambda: f64,
    pub residual: f64,
}

impl TwoQubitWernerForm {
    pub fn rho0000(&self) -> f64 {
        self.lambda / 4.0
    }

    pub fn matrix(lambda: f64) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(2).scaled(lambda / 4.0);
        let s = (1.0 - lambda) / 2.0;
        m.add_at(1, 1, Complex64::new(s, 0.0));
        m.add_at(2, 2, Complex64::new(s, 0.0));
        m.add_at(1, 2, Complex64::new(-s, 0.0));
        m.add_at(2, 1, Complex64::new(-s, 0.0));
        m
    }
}

/// Fits `λ` from the `|00⟩⟨00|` entry and measures every other entry.
pub fn two_qubit_werner_form(rho: &ComplexMatrix) -> Result<TwoQubitWernerForm> {
    if rho.qubits() != 2 {
        return Err(WernerError::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let lambda = 4.0 * rho.get(0, 0).re;
    let residual = TwoQubitWernerForm::matrix(lambda).max_abs_diff(rho);
    Ok(TwoQubitWernerForm { lambda, residual })
}

fn check_m(m: usize) -> Result<()> {
    if (RHO_MIN_M..=RHO_MAX_M).contains(&m) {
        Ok(())
    } else {
        Err(WernerError::OutOfRange {
            name: "m",
            value: m,
            min: RHO_MIN_M,
            max: RHO_MAX_M,
        })
    }
}

/// `ρ₀₀,₀₀ = A₀₀(m)/A(m)` for the reduction of `ρ_m` to qubits `a < b`.
pub fn rho0000_exact(m: usize, a: usize, b: usize) -> Result<Rational> {
    check_m(m)?;
    let a00 = count_aperiodic_with_00(m, a, b)?;
    let total = count_aperiodic(m)?;
    Ok(Rational::new(BigInt::from(a00), BigInt::from(total)))
}

pub fn separability_threshold() -> Rational {
    rational(1, 6)
}

/// Separable exactly when `ρ₀₀,₀₀ >= 1/6`.
pub fn is_separable_pair(m: usize, a: usize, b: usize) -> Result<bool> {
    Ok(rho0000_exact(m, a, b)? >= separability_threshold())
}

/// `1/4 − 2^{⌊m/2⌋+1−m}`.
pub fn rho0000_lower_bound(m: usize) -> Result<Rational> {
    check_m(m)?;
    let e = m - (m / 2 + 1);
    Ok(rational(1, 4) - Rational::new(BigInt::one(), BigInt::one() << e))
}

/// The successive lower bounds on `ρ₀₀,₀₀`, from the exact value down to
/// the closed form.
#[derive(Clone, Debug)]
pub struct LowerBoundChain {
    pub m: usize,
    pub steps: Vec<(&'static str, Rational)>,
}

impl LowerBoundChain {
    pub fn is_non_increasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].1 >= w[1].1)
    }
}

pub fn lower_bound_chain(m: usize, a: usize, b: usize) -> Result<LowerBoundChain> {
    let exact = rho0000_exact(m, a, b)?;
    let big = |v: u64| Rational::from_integer(BigInt::from(v));
    let two_m = big(1 << m);
    let quarter = big(1 << (m - 2));
    let p = big(count_periodic(m)?);
    let p00 = big(count_periodic_with_00(m, a, b)?);
    let geom = big(1 << (m / 2 + 1));
    let steps = vec![
        ("A00/A", exact),
        ("(2^(m-2)-P00)/(2^m-P)", (&quarter - &p00) / (&two_m - &p)),
        ("(2^(m-2)-P)/2^m", (&quarter - &p) / &two_m),
        (
            "(2^(m-2)-2^(floor(m/2)+1)+1)/2^m",
            (&quarter - &geom + Rational::one()) / &two_m,
        ),
        (
            "(2^(m-2)-2^(floor(m/2)+1))/2^m",
            (&quarter - &geom) / &two_m,
        ),
        ("1/4-2^(floor(m/2)+1-m)", rho0000_lower_bound(m)?),
    ];
    Ok(LowerBoundChain { m, steps })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table2Row {
    pub m: usize,
    pub distance: usize,
    pub value: Rational,
}

/// Flat record used for CSV and JSON output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table2Record {
    pub m: usize,
    pub distance: usize,
    pub numerator: i64,
    pub denominator: i64,
    pub decimal: String,
}

impl Table2Row {
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.value)
    }

    /// Decimal rounded to four places.
    pub fn decimal(&self) -> String {
        format!("{:.4}", self.to_f64())
    }

    pub fn fraction(&self) -> String {
        format!("{}/{}", self.value.numer(), self.value.denom())
    }

    pub fn record(&self) -> Table2Record {
        Table2Record {
            m: self.m,
            distance: self.distance,
            numerator: self.value.numer().to_i64().expect("small numerator"),
            denominator: self.value.denom().to_i64().expect("small denominator"),
            decimal: self.decimal(),
        }
    }
}

/// One row per `(m, d)` with `3 <= m <= m_max` and `1 <= d <= ⌊m/2⌋`.
pub fn table2(m_max: usize) -> Result<Vec<Table2Row>> {
    if !(RHO_MIN_M..=TABLE2_MAX_M).contains(&m_max) {
        return Err(WernerError::OutOfRange {
            name: "m_max",
            value: m_max,
            min: RHO_MIN_M,
            max: TABLE2_MAX_M,
        });
    }
    let cells: Vec<(usize, usize)> = (RHO_MIN_M..=m_max)
        .flat_map(|m| (1..=m / 2).map(move |d| (m, d)))
        .collect();
    cells
        .into_par_iter()
        .map(|(m, d)| {
            Ok(Table2Row {
                m,
                distance: d,
                value: rho0000_exact(m, 1, 1 + d)?,
            })
        })
        .collect()
}

/// A bound at or below zero says nothing about `ρ₀₀,₀₀`.
pub fn is_vacuous_bound(bound: &Rational) -> bool {
    bound.is_negative() || bound.is_zero()
}
