//! Diagram states, the pizza state, cyclic states and the polygon density
//! matrices, with the pure-state invariance check.
//!
//! Basis index convention: for an `m`-qubit ket `|k₁k₂…k_m⟩` the index is the
//! integer with `k₁` as its most significant bit.

use std::f64::consts::TAU;

use num::complex::Complex64;

use crate::bitstrings::{self, BitString};
use crate::chords::ChordDiagram;
use crate::complex::{ComplexMatrix, ComplexVector};
use crate::error::{Result, WernerError};
use crate::exact::{sqrt2_factor, ScaledIntState};

pub const POLYGON_MIN_M: usize = 2;
pub const POLYGON_MAX_M: usize = 10;

/// Residuals of the two generator conditions `Σ_k Z^(k)` and `Σ_k X^(k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerReport {
    pub z_residual: f64,
    pub x_residual: f64,
}

impl WernerReport {
    pub fn max(&self) -> f64 {
        self.z_residual.max(self.x_residual)
    }

    pub fn is_exactly_invariant(&self) -> bool {
        self.z_residual == 0.0 && self.x_residual == 0.0
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

fn bit_at(index: usize, qubits: usize, pos: usize) -> usize {
    (index >> (qubits - pos)) & 1
}

/// `|D⟩ = ⊗ |s⟩_{a,b}` as integer amplitudes at scale `n`.
pub fn diagram_state(d: &ChordDiagram) -> ScaledIntState {
    let n = d.n();
    let qubits = 2 * n;
    let mut amps = vec![0i64; 1 << qubits];
    for choice in 0..1usize << n {
        let mut index = 0usize;
        let mut sign = 1i64;
        for (l, chord) in d.chords().iter().enumerate() {
            let ka = (choice >> l) & 1;
            if ka == 1 {
                sign = -sign;
                index |= 1 << (qubits - chord.a);
            } else {
                index |= 1 << (qubits - chord.b);
            }
        }
        amps[index] = sign;
    }
    ScaledIntState::new(qubits, amps, n as i32).expect("length matches qubit count")
}

/// Unnormalized `|P⟩ = Σ_I (−1)^{wt I} |I⟩|I^c⟩` at scale 0.
pub fn pizza_state(n: usize) -> ScaledIntState {
    let full = (1usize << n) - 1;
    let mut amps = vec![0i64; 1 << (2 * n)];
    for i in 0..=full {
        let sign = if i.count_ones() % 2 == 0 { 1 } else { -1 };
        amps[(i << n) | (full ^ i)] = sign;
    }
    ScaledIntState::new(2 * n, amps, 0).expect("length matches qubit count")
}

/// `C(I) = m^{-1/2} Σ_k ω^k |π^k I⟩` with `ω = e^{2πi/m}`.
pub fn cyclic_state(i: BitString) -> Result<ComplexVector> {
    if !i.is_aperiodic() {
        return Err(WernerError::PeriodicString);
    }
    let m = i.len();
    let mut v = ComplexVector::zeros(m);
    let norm = (m as f64).sqrt().recip();
    let data = v.as_mut_slice();
    for k in 0..m {
        let phase = Complex64::from_polar(norm, TAU * k as f64 / m as f64);
        data[i.cyclic_shift(k as i64).bits() as usize] += phase;
    }
    Ok(v)
}

/// `ρ_m = A(m)^{-1} Σ_{aperiodic I} C(I) C(I)†`.
pub fn polygon_density(m: usize) -> Result<ComplexMatrix> {
    if !(POLYGON_MIN_M..=POLYGON_MAX_M).contains(&m) {
        return Err(WernerError::OutOfRange {
            name: "m",
            value: m,
            min: POLYGON_MIN_M,
            max: POLYGON_MAX_M,
        });
    }
    let count = bitstrings::count_aperiodic(m)?;
    let mut rho = ComplexMatrix::zeros(m);
    let mut support = Vec::with_capacity(m);
    for i in bitstrings::aperiodic_strings(m)? {
        let c = cyclic_state(i)?;
        support.clear();
        support.extend(
            c.as_slice()
                .iter()
                .enumerate()
                .filter(|(_, z)| z.norm_sqr() > 0.0)
                .map(|(k, z)| (k, *z)),
        );
        for &(r, zr) in &support {
            for &(col, zc) in &support {
                rho.add_at(r, col, zr * zc.conj());
            }
        }
    }
    Ok(rho.scaled(1.0 / count as f64))
}

/// Exact residuals of `(Σ_k Z^(k))ψ` and `(Σ_k X^(k))ψ`, as max entry moduli.
pub fn check_pure_werner(psi: &ScaledIntState) -> WernerReport {
    let m = psi.qubits();
    let amps = psi.amplitudes();
    let mut z_max = 0i64;
    let mut x_max = 0i64;
    for idx in 0..amps.len() {
        let wt = idx.count_ones() as i64;
        z_max = z_max.max(((m as i64 - 2 * wt) * amps[idx]).abs());
        let x: i64 = (1..=m).map(|k| amps[idx ^ (1 << (m - k))]).sum();
        x_max = x_max.max(x.abs());
    }
    let f = sqrt2_factor(psi.scale());
    WernerReport {
        z_residual: z_max as f64 * f,
        x_residual: x_max as f64 * f,
    }
}

/// Floating-point counterpart of [`check_pure_werner`].
pub fn check_pure_werner_float(psi: &ComplexVector) -> WernerReport {
    let m = psi.qubits();
    let amps = psi.as_slice();
    let mut z_max = 0f64;
    let mut x_max = 0f64;
    for idx in 0..amps.len() {
        let wt = idx.count_ones() as f64;
        z_max = z_max.max(((m as f64 - 2.0 * wt) * amps[idx]).norm());
        let x: Complex64 = (1..=m).map(|k| amps[idx ^ (1 << (m - k))]).sum();
        x_max = x_max.max(x.norm());
    }
    WernerReport {
        z_residual: z_max,
        x_residual: x_max,
    }
}

/// Bit of the basis index `index` at 1-based position `pos` of an `m`-qubit register.
pub fn basis_bit(index: usize, qubits: usize, pos: usize) -> usize {
    bit_at(index, qubits, pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::{enumerate_noncrossing, pizza_diagram, random_diagram};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ket_sum(qubits: usize, terms: &[(i64, &str)], scale: i32) -> ScaledIntState {
        let mut amps = vec![0i64; 1 << qubits];
        for &(c, k) in terms {
            amps[usize::from_str_radix(k, 2).unwrap()] += c;
        }
        ScaledIntState::new(qubits, amps, scale).unwrap()
    }

    #[test]
    fn singlet() {
        let s = diagram_state(&ChordDiagram::from_pairs(1, &[(1, 2)]).unwrap());
        assert_eq!(s, ket_sum(2, &[(1, "01"), (-1, "10")], 1));
        assert_eq!(s.scale(), 1);
        assert!(check_pure_werner(&s).is_exactly_invariant());
    }

    #[test]
    fn pizza_state_expansion_n3() {
        let expected = ket_sum(
            6,
            &[
                (1, "000111"),
                (-1, "111000"),
                (-1, "001110"),
                (1, "110001"),
                (-1, "010101"),
                (1, "101010"),
                (1, "011100"),
                (-1, "100011"),
            ],
            0,
        );
        assert_eq!(pizza_state(3), expected);
        assert_eq!(pizza_state(1), ket_sum(2, &[(1, "01"), (-1, "10")], 0));
        for n in 1..=6 {
            let via_diagram = diagram_state(&pizza_diagram(n).unwrap()).times_sqrt2_pow(n as i32);
            assert_eq!(pizza_state(n), via_diagram);
        }
    }

    #[test]
    fn diagram_state_nested_n3() {
        let d = ChordDiagram::from_pairs(3, &[(1, 6), (2, 5), (3, 4)]).unwrap();
        let expected = ket_sum(
            6,
            &[
                (1, "000111"),
                (-1, "111000"),
                (-1, "001011"),
                (1, "110100"),
                (-1, "010101"),
                (1, "101010"),
                (1, "011001"),
                (-1, "100110"),
            ],
            3,
        );
        assert_eq!(diagram_state(&d), expected);
    }

    #[test]
    fn diagram_state_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut diagrams: Vec<ChordDiagram> = (1..=5)
            .flat_map(|n| enumerate_noncrossing(n).unwrap())
            .collect();
        diagrams.extend((0..50).map(|i| random_diagram(1 + i % 5, &mut rng).unwrap()));
        for d in &diagrams {
            let n = d.n();
            let s = diagram_state(d);
            let full = (1usize << (2 * n)) - 1;
            assert_eq!(s.support().count(), 1 << n);
            assert_eq!(s.scale(), n as i32);
            let parity = if n % 2 == 0 { 1 } else { -1 };
            for (k, c) in s.support() {
                assert_eq!(c.abs(), 1);
                assert_eq!(k.count_ones() as usize, n);
                assert_eq!(s.amplitude(full ^ k), parity * c);
            }
            assert!(check_pure_werner(&s).is_exactly_invariant(), "{d}");
        }
    }

    #[test]
    fn chord_reversal_flips_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let d = random_diagram(4, &mut rng).unwrap();
            let mut chords = d.chords().to_vec();
            chords[1] = chords[1].reversed();
            let flipped = ChordDiagram::new(4, chords).unwrap();
            assert_eq!(diagram_state(&flipped), -&diagram_state(&d));
            let (canon, sign) = d.canonicalize();
            assert_eq!(
                diagram_state(&d),
                diagram_state(&canon).scalar_mul(sign as i64)
            );
        }
    }

    #[test]
    fn non_werner_state_detected() {
        let s = ket_sum(2, &[(1, "00")], 0);
        let report = check_pure_werner(&s);
        assert!(report.z_residual > 0.0);
        assert!(check_pure_werner_float(&s.to_complex()).z_residual > 0.0);
    }

    #[test]
    fn cyclic_state_worked_example() {
        let c = cyclic_state("001".parse().unwrap()).unwrap();
        let r = 3f64.sqrt().recip();
        let w = Complex64::from_polar(1.0, TAU / 3.0);
        let data = c.as_slice();
        assert!((data[1] - r).norm() < 1e-15);
        assert!((data[2] - w * r).norm() < 1e-15);
        assert!((data[4] - w * w * r).norm() < 1e-15);
        assert!(matches!(
            cyclic_state("0101".parse().unwrap()),
            Err(WernerError::PeriodicString)
        ));
    }

    #[test]
    fn cyclic_states_are_normalized_and_shift_invariant() {
        for m in 1..=10 {
            for i in bitstrings::aperiodic_strings(m).unwrap().step_by(7) {
                let c = cyclic_state(i).unwrap();
                assert!((c.norm() - 1.0).abs() < 1e-12);
                if m > 7 {
                    continue;
                }
                let p = c.outer();
                for k in 1..m as i64 {
                    let q = cyclic_state(i.cyclic_shift(k)).unwrap().outer();
                    assert!(p.max_abs_diff(&q) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rho_two_is_singlet() {
        let rho = polygon_density(2).unwrap();
        let s = diagram_state(&ChordDiagram::from_pairs(1, &[(1, 2)]).unwrap()).to_complex();
        assert!(rho.max_abs_diff(&s.outer()) < 1e-12);
        assert!((rho.get(1, 2).re + 0.5).abs() < 1e-12);
        assert!((rho.get(1, 1).re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn polygon_density_is_a_state() {
        for m in 3..=6 {
            let rho = polygon_density(m).unwrap();
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            assert!(rho.trace().im.abs() < 1e-12);
            assert!(rho.hermitian_deviation() < 1e-14);
            assert!(rho.hermitian_eigenvalues()[0] >= -1e-10, "m={m}");
        }
        assert!(polygon_density(1).is_err());
        assert!(polygon_density(11).is_err());
    }
}
