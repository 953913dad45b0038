//! Werner-invariance checks for operators, and the named registry of check
//! strategies used by the command line.

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::complex::ComplexMatrix;
use crate::error::{Result, WernerError};
use crate::exact::{
    gaussian_zero, rational_to_f64, sqrt2_factor, Gaussian, ScaledGaussianOperator, ScaledIntState,
};
use crate::states::{check_pure_werner, check_pure_werner_float, WernerReport};

/// Tolerance for floating-point commutator residuals.
pub const FLOAT_TOL: f64 = 1e-10;
/// Tolerance for Monte-Carlo twirl deviations.
pub const TWIRL_TOL: f64 = 1e-9;

fn modulus(v: &Gaussian) -> f64 {
    rational_to_f64(&v.re).hypot(rational_to_f64(&v.im))
}

/// Exact `[Σ_k Z^(k), H]` and `[Σ_k X^(k), H]` residuals (max entry modulus).
///
/// `[ΣZ, H]_{IJ} = 2(wt J − wt I) H_{IJ}` and
/// `[ΣX, H]_{IJ} = Σ_k (H_{I_k,J} − H_{I,J_k})`.
pub fn check_mixed_werner(h: &ScaledGaussianOperator) -> WernerReport {
    let n = h.qubits();
    let d = h.dim();
    let mut z_max = 0f64;
    let mut x_max = 0f64;
    for i in 0..d {
        for j in 0..d {
            let v = h.get(i, j);
            if !v.is_zero() && i.count_ones() != j.count_ones() {
                let w = 2.0 * (j.count_ones() as f64 - i.count_ones() as f64);
                z_max = z_max.max(w.abs() * modulus(v));
            }
            let mut acc = gaussian_zero();
            for k in 0..n {
                let bit = 1 << k;
                acc += h.get(i ^ bit, j);
                acc -= h.get(i, j ^ bit);
            }
            if !acc.is_zero() {
                x_max = x_max.max(modulus(&acc));
            }
        }
    }
    let f = sqrt2_factor(h.scale());
    WernerReport {
        z_residual: z_max * f,
        x_residual: x_max * f,
    }
}

pub fn check_mixed_werner_float(h: &ComplexMatrix) -> WernerReport {
    let n = h.qubits();
    let d = h.dim();
    let mut z_max = 0f64;
    let mut x_max = 0f64;
    for i in 0..d {
        for j in 0..d {
            let w = 2.0 * (j.count_ones() as f64 - i.count_ones() as f64);
            z_max = z_max.max((h.get(i, j) * w).norm());
            let mut acc = Complex64::zero();
            for k in 0..n {
                let bit = 1 << k;
                acc += h.get(i ^ bit, j) - h.get(i, j ^ bit);
            }
            x_max = x_max.max(acc.norm());
        }
    }
    WernerReport {
        z_residual: z_max,
        x_residual: x_max,
    }
}

/// Haar-random element of SU(2) from a uniformly random unit quaternion.
pub fn haar_su2<R: rand::Rng + ?Sized>(rng: &mut R) -> [[Complex64; 2]; 2] {
    let mut q: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut q {
        *x /= norm;
    }
    let a = Complex64::new(q[0], q[1]);
    let b = Complex64::new(q[2], q[3]);
    [[a, b], [-b.conj(), a.conj()]]
}

/// Max entrywise deviation of `U^{⊗m} H U^{†⊗m}` from `H` over random `U`.
pub fn twirl_check(h: &ComplexMatrix, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    for _ in 0..samples {
        let u = haar_su2(&mut rng);
        let mut g = h.clone();
        for pos in 1..=h.qubits() {
            g = g.conjugate_single_qubit(pos, &u);
        }
        worst = worst.max(g.max_abs_diff(h));
    }
    worst
}

/// Anything a check strategy can inspect.
#[derive(Clone, Debug)]
pub enum Operand {
    ExactState(ScaledIntState),
    FloatState(crate::complex::ComplexVector),
    ExactOperator(ScaledGaussianOperator),
    FloatOperator(ComplexMatrix),
}

impl Operand {
    pub fn qubits(&self) -> usize {
        match self {
            Operand::ExactState(s) => s.qubits(),
            Operand::FloatState(s) => s.qubits(),
            Operand::ExactOperator(o) => o.qubits(),
            Operand::FloatOperator(o) => o.qubits(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Operand::ExactState(_) | Operand::ExactOperator(_))
    }

    /// Density-like matrix view: operators as-is, states as `|ψ⟩⟨ψ|`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        match self {
            Operand::ExactState(s) => s.to_complex().outer(),
            Operand::FloatState(s) => s.outer(),
            Operand::ExactOperator(o) => o.to_complex(),
            Operand::FloatOperator(o) => o.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub method: &'static str,
    /// Named residuals, e.g. `z_residual`, `x_residual` or `deviation`.
    pub residuals: Vec<(&'static str, f64)>,
    pub tolerance: f64,
    pub passed: bool,
}

pub trait InvarianceCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn check(&self, target: &Operand) -> Result<CheckOutcome>;
}

/// Commutators with the collective Z and X generators; exact for exact inputs.
#[derive(Clone, Debug, Default)]
pub struct CommutatorCheck;

impl InvarianceCheck for CommutatorCheck {
    fn name(&self) -> &'static str {
        "commutator"
    }

    fn summary(&self) -> &'static str {
        "generator conditions (exact zero for exact inputs, 1e-10 otherwise)"
    }

    fn check(&self, target: &Operand) -> Result<CheckOutcome> {
        let report = match target {
            Operand::ExactState(s) => check_pure_werner(s),
            Operand::FloatState(s) => check_pure_werner_float(s),
            Operand::ExactOperator(o) => check_mixed_werner(o),
            Operand::FloatOperator(o) => check_mixed_werner_float(o),
        };
        let tolerance = if target.is_exact() { 0.0 } else { FLOAT_TOL };
        Ok(CheckOutcome {
            method: self.name(),
            residuals: vec![
                ("z_residual", report.z_residual),
                ("x_residual", report.x_residual),
            ],
            tolerance,
            passed: report.within(tolerance),
        })
    }
}

/// Monte-Carlo conjugation by Haar-random collective unitaries.
#[derive(Clone, Debug)]
pub struct TwirlCheck {
    pub samples: usize,
    pub seed: u64,
}

impl Default for TwirlCheck {
    fn default() -> Self {
        Self {
            samples: 100,
            seed: 0,
        }
    }
}

impl InvarianceCheck for TwirlCheck {
    fn name(&self) -> &'static str {
        "twirl"
    }

    fn summary(&self) -> &'static str {
        "max deviation under random U^{⊗m} conjugation (1e-9)"
    }

    fn check(&self, target: &Operand) -> Result<CheckOutcome> {
        if self.samples == 0 {
            return Err(WernerError::OutOfRange {
                name: "samples",
                value: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        let deviation = twirl_check(&target.to_matrix(), self.samples, self.seed);
        Ok(CheckOutcome {
            method: self.name(),
            residuals: vec![("deviation", deviation)],
            tolerance: TWIRL_TOL,
            passed: deviation <= TWIRL_TOL,
        })
    }
}

/// Check strategies keyed by name.
pub struct CheckRegistry {
    checks: BTreeMap<&'static str, Box<dyn InvarianceCheck>>,
}

impl CheckRegistry {
    pub fn empty() -> Self {
        Self {
            checks: BTreeMap::new(),
        }
    }

    /// `commutator` and `twirl` with the given Monte-Carlo settings.
    pub fn with_defaults(samples: usize, seed: u64) -> Self {
        let mut r = Self::empty();
        r.register(Box::new(CommutatorCheck));
        r.register(Box::new(TwirlCheck { samples, seed }));
        r
    }

    pub fn register(&mut self, check: Box<dyn InvarianceCheck>) {
        self.checks.insert(check.name(), check);
    }

    pub fn get(&self, name: &str) -> Result<&dyn InvarianceCheck> {
        self.checks
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| WernerError::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.checks.keys().copied()
    }
}

impl Default for CheckRegistry {
    fn default() -> Self {
        Self::with_defaults(100, 0)
    }
}
