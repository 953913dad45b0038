//! JSON and CSV encodings for operators, states, decompositions and tables.
//!
//! Operators are sparse, 0-based, sorted row-major. Exact entries carry
//! `[row, col, re_num, re_den, im_num, im_den]` and the common
//! `scale_sqrt2_exponent`; float entries carry `[row, col, re, im]`.

use num::complex::Complex64;
use num::{BigInt, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complex::{ComplexMatrix, ComplexVector};
use crate::error::{Result, WernerError};
use crate::exact::{Gaussian, Rational, ScaledGaussianOperator, ScaledIntState};
use crate::separability::Table2Row;
use crate::werner_ops::{Decomposition, Operand, WernerBasis};

#[derive(Serialize, Deserialize)]
struct ExactOperatorJson {
    n: usize,
    scale_sqrt2_exponent: i32,
    entries: Vec<[i64; 6]>,
}

#[derive(Serialize, Deserialize)]
struct FloatOperatorJson {
    n: usize,
    entries: Vec<(usize, usize, f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct ExactStateJson {
    qubits: usize,
    scale_sqrt2_exponent: i32,
    amplitudes: Vec<(usize, i64)>,
}

#[derive(Serialize, Deserialize)]
struct FloatStateJson {
    qubits: usize,
    amplitudes: Vec<(usize, f64, f64)>,
}

fn small(r: &BigInt) -> Result<i64> {
    r.to_i64()
        .ok_or_else(|| WernerError::Parse(format!("integer {r} too large for JSON output")))
}

fn position_ok(idx: usize, dim: usize) -> Result<()> {
    if idx < dim {
        Ok(())
    } else {
        Err(WernerError::Parse(format!("index {idx} outside 0..{dim}")))
    }
}

fn qubits_ok(q: usize) -> Result<()> {
    if (1..=12).contains(&q) {
        Ok(())
    } else {
        Err(WernerError::Parse(format!(
            "qubit count {q} outside 1..=12"
        )))
    }
}

pub fn exact_operator_json(op: &ScaledGaussianOperator) -> Result<Value> {
    let mut entries = Vec::new();
    for (r, c, v) in op.nonzero() {
        entries.push([
            r as i64,
            c as i64,
            small(v.re.numer())?,
            small(v.re.denom())?,
            small(v.im.numer())?,
            small(v.im.denom())?,
        ]);
    }
    Ok(serde_json::to_value(ExactOperatorJson {
        n: op.qubits(),
        scale_sqrt2_exponent: op.scale(),
        entries,
    })?)
}

pub fn float_operator_json(op: &ComplexMatrix) -> Value {
    let d = op.dim();
    let entries = (0..d)
        .flat_map(|r| (0..d).map(move |c| (r, c)))
        .map(|(r, c)| (r, c, op.get(r, c)))
        .filter(|(_, _, v)| v.norm() != 0.0)
        .map(|(r, c, v)| (r, c, v.re, v.im))
        .collect();
    serde_json::to_value(FloatOperatorJson {
        n: op.qubits(),
        entries,
    })
    .expect("plain data")
}

pub fn exact_state_json(psi: &ScaledIntState) -> Value {
    serde_json::to_value(ExactStateJson {
        qubits: psi.qubits(),
        scale_sqrt2_exponent: psi.scale(),
        amplitudes: psi.support().collect(),
    })
    .expect("plain data")
}

pub fn float_state_json(psi: &ComplexVector) -> Value {
    let amplitudes = psi
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm() != 0.0)
        .map(|(i, v)| (i, v.re, v.im))
        .collect();
    serde_json::to_value(FloatStateJson {
        qubits: psi.qubits(),
        amplitudes,
    })
    .expect("plain data")
}

fn ratio(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(WernerError::Parse("zero denominator".into()));
    }
    Ok(Rational::new(num.into(), den.into()))
}

/// Reads any of the four operand encodings.
pub fn parse_operand(text: &str) -> Result<Operand> {
    let value: Value = serde_json::from_str(text)?;
    let has = |k: &str| value.get(k).is_some();
    let exact = has("scale_sqrt2_exponent");
    match (has("n"), has("qubits"), exact) {
        (true, false, true) => {
            let j: ExactOperatorJson = serde_json::from_value(value)?;
            qubits_ok(j.n)?;
            let mut op = ScaledGaussianOperator::zeros(j.n, j.scale_sqrt2_exponent);
            for [r, c, rn, rd, i_n, i_d] in j.entries {
                let (r, c) = (r as usize, c as usize);
                position_ok(r, op.dim())?;
                position_ok(c, op.dim())?;
                op.set(r, c, Gaussian::new(ratio(rn, rd)?, ratio(i_n, i_d)?));
            }
            Ok(Operand::ExactOperator(op))
        }
        (true, false, false) => {
            let j: FloatOperatorJson = serde_json::from_value(value)?;
            qubits_ok(j.n)?;
            let mut op = ComplexMatrix::zeros(j.n);
            for (r, c, re, im) in j.entries {
                position_ok(r, op.dim())?;
                position_ok(c, op.dim())?;
                op.set(r, c, Complex64::new(re, im));
            }
            Ok(Operand::FloatOperator(op))
        }
        (false, true, true) => {
            let j: ExactStateJson = serde_json::from_value(value)?;
            if !(1..=24).contains(&j.qubits) {
                return Err(WernerError::Parse(format!(
                    "qubit count {} outside 1..=24",
                    j.qubits
                )));
            }
            let mut amps = vec![0i64; 1 << j.qubits];
            for (i, a) in j.amplitudes {
                position_ok(i, amps.len())?;
                amps[i] = a;
            }
            Ok(Operand::ExactState(ScaledIntState::new(
                j.qubits,
                amps,
                j.scale_sqrt2_exponent,
            )?))
        }
        (false, true, false) => {
            let j: FloatStateJson = serde_json::from_value(value)?;
            qubits_ok(j.qubits)?;
            let mut v = ComplexVector::zeros(j.qubits);
            let data = v.as_mut_slice();
            for (i, re, im) in j.amplitudes {
                position_ok(i, data.len())?;
                data[i] = Complex64::new(re, im);
            }
            Ok(Operand::FloatState(v))
        }
        _ => Err(WernerError::Parse(
            "expected an operator (`n`) or a state (`qubits`) object".into(),
        )),
    }
}

pub fn basis_json(basis: &WernerBasis) -> Result<Value> {
    let elements = basis
        .elements()
        .iter()
        .map(|e| {
            Ok(json!({
                "provenance": e.provenance.tag(),
                "diagram": e.provenance.diagram().to_string(),
                "operator": exact_operator_json(&e.operator)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "n": basis.n(), "size": basis.len(), "elements": elements }))
}

pub fn decomposition_json(basis: &WernerBasis, d: &Decomposition) -> Value {
    let labels: Vec<String> = basis
        .elements()
        .iter()
        .map(|e| format!("{} {}", e.provenance.tag(), e.provenance.diagram()))
        .collect();
    let mut out = json!({
        "n": basis.n(),
        "basis": labels,
        "coefficients": d.coefficients,
        "residual": d.residual,
        "in_span": d.in_span(),
    });
    if let Some(exact) = &d.exact {
        out["exact"] = json!({
            "sqrt2_exponent": exact.sqrt2_exponent,
            "values": exact.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        });
    }
    out
}

/// `index,label,coefficient` with 17 significant digits.
pub fn decomposition_csv(basis: &WernerBasis, d: &Decomposition) -> String {
    let mut out = String::from("index,provenance,diagram,coefficient\n");
    for (i, (e, c)) in basis.elements().iter().zip(&d.coefficients).enumerate() {
        out.push_str(&format!(
            "{i},{},\"{}\",{}\n",
            e.provenance.tag(),
            e.provenance.diagram(),
            fmt_f64(*c)
        ));
    }
    out
}

/// 17 significant digits, with negative zero printed as zero.
pub fn fmt_f64(v: f64) -> String {
    let v = if v.is_zero() { 0.0 } else { v };
    format!("{v:.16e}")
}

pub fn table2_json(rows: &[Table2Row]) -> Value {
    serde_json::to_value(rows.iter().map(Table2Row::record).collect::<Vec<_>>())
        .expect("plain data")
}

pub fn table2_csv(rows: &[Table2Row]) -> String {
    let mut out = String::from("m,distance,numerator,denominator,decimal\n");
    for r in rows {
        let rec = r.record();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            rec.m, rec.distance, rec.numerator, rec.denominator, rec.decimal
        ));
    }
    out
}
