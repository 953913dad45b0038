use num::Zero;

use crate::chords::ChordDiagram;
use crate::error::{Result, WernerError};
use crate::exact::{gaussian_int, ScaledGaussianOperator, ScaledIntState};
use crate::states::diagram_state;

/// The real-linear map `|I⟩|J⟩ ↦ |I⟩⟨J|` from `2n` qubits to operators on `n`.
pub fn m_map(psi: &ScaledIntState) -> Result<ScaledGaussianOperator> {
    let q = psi.qubits();
    if !q.is_multiple_of(2) {
        return Err(WernerError::OddQubitCount(q));
    }
    let n = q / 2;
    let low = (1usize << n) - 1;
    let mut op = ScaledGaussianOperator::zeros(n, psi.scale());
    for (k, c) in psi.support() {
        op.set(k >> n, k & low, gaussian_int(c, 0));
    }
    Ok(op)
}

/// `Σ_I (−1)^{wt I} |I⟩⟨I^c|`, built entry by entry.
pub fn pizza_operator(n: usize) -> ScaledGaussianOperator {
    let full = (1usize << n) - 1;
    let mut op = ScaledGaussianOperator::zeros(n, 0);
    for i in 0..=full {
        let sign = if i.count_ones() % 2 == 0 { 1 } else { -1 };
        op.set(i, full ^ i, gaussian_int(sign, 0));
    }
    op
}

/// `iY = [[0, 1], [−1, 0]]`.
pub fn i_y() -> ScaledGaussianOperator {
    ScaledGaussianOperator::from_int_rows(&[&[0, 1], &[-1, 0]], 0).expect("2x2")
}

pub fn tensor_power(op: &ScaledGaussianOperator, n: usize) -> ScaledGaussianOperator {
    let mut out = op.clone();
    for _ in 1..n {
        out = out.kron(op);
    }
    out
}

/// `A_D = m(|P⟩) m(|D⟩)`, at scale `n`.
pub fn a_operator(d: &ChordDiagram) -> ScaledGaussianOperator {
    let md = m_map(&diagram_state(d)).expect("diagram states have 2n qubits");
    pizza_operator(d.n())
        .matmul(&md)
        .expect("both factors act on n qubits")
}

/// `m(|R₁₈₀D⟩) = m(|D⟩)ᵀ`, checked exactly.
pub fn transpose_rotation_check(d: &ChordDiagram) -> bool {
    let lhs = m_map(&diagram_state(&d.rotate_half_turn())).expect("even");
    let rhs = m_map(&diagram_state(d)).expect("even").transpose();
    lhs == rhs
}

/// Every entry of an `A_D` is 0 or ±1 before the scale.
pub fn has_unit_entries(op: &ScaledGaussianOperator) -> bool {
    op.entries().iter().all(|v| {
        v.im.is_zero()
            && (v.re.is_zero() || v.re == gaussian_int(1, 0).re || v.re == gaussian_int(-1, 0).re)
    })
}
