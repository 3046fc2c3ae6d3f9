//! Deterministic JSON and CSV output.
//!
//! JSON objects are written with sorted keys and floats with 17 significant
//! digits; CSV floats use 12 significant digits. Matrix CSV uses the
//! shortest representation that round-trips exactly.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::foccpt::{ComplexityRow, OpCounter};
use crate::npm::{Entries, PeriodicBasisMatrix, SubspaceIndex};
use crate::period::dictionary::DictionarySolution;
use crate::period::{FrequencyComponent, PeriodReport, StrengthMode};
use crate::scalar::Real;
use crate::transform::{CoefficientSet, ComplexCoefficientSet};

/// JSON number for a float; non-finite values become `null`.
pub fn num<T: Real>(v: T) -> Value {
    let f = v.as_f64();
    serde_json::Number::from_f64(f).map_or(Value::Null, Value::Number)
}

fn write_value(out: &mut String, v: &Value) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else {
                let f = n.as_f64().unwrap_or(f64::NAN);
                if f.is_finite() {
                    let _ = write!(out, "{f:.16e}");
                } else {
                    out.push_str("null");
                }
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, x);
            }
            out.push(']');
        }
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(out, &m[k]);
            }
            out.push('}');
        }
    }
}

/// Canonical single-line JSON text with a trailing newline.
pub fn to_canonical_json(v: &Value) -> String {
    let mut s = String::new();
    write_value(&mut s, v);
    s.push('\n');
    s
}

/// CSV float with 12 significant digits.
pub fn csv_num<T: Real>(v: T) -> String {
    format!("{:.11e}", v.as_f64())
}

pub fn index_json(idx: &SubspaceIndex) -> Value {
    json!({ "p": idx.p, "k": idx.k, "kind": idx.kind.to_string() })
}

pub fn coefficient_set_json<T: Real>(c: &CoefficientSet<T>) -> Value {
    let coefficients: Vec<Value> = c
        .iter()
        .map(|(idx, v)| {
            let mut o = index_json(idx);
            o["value"] = num(v);
            o
        })
        .collect();
    let mut o = json!({
        "n": c.n(),
        "family": c.family().name(),
        "flat": c.flat().iter().map(|&v| num(v)).collect::<Vec<_>>(),
        "coefficients": coefficients,
    });
    if c.family() == crate::npm::Family::Occpt {
        let pairs: Vec<Value> = c
            .pairs()
            .into_iter()
            .map(|(p, k)| {
                let (b0, b1) = c.pair(p, k).expect("pair present");
                json!({ "p": p, "k": k, "beta0": num(b0), "beta1": num(b1) })
            })
            .collect();
        o["pairs"] = Value::Array(pairs);
    }
    o
}

pub fn complex_coefficient_set_json<T: Real>(c: &ComplexCoefficientSet<T>) -> Value {
    json!({
        "n": c.n(),
        "family": c.family().name(),
        "re": coefficient_set_json(&c.re),
        "im": coefficient_set_json(&c.im),
    })
}

pub fn period_report_json<T: Real>(r: &PeriodReport<T>) -> Value {
    let strengths: Vec<Value> = r
        .strengths
        .iter()
        .map(|(&p, &s)| json!({ "period": p, "strength": num(s) }))
        .collect();
    json!({
        "strengths": strengths,
        "threshold": num(r.threshold),
        "mode": match r.mode { StrengthMode::Raw => "raw", StrengthMode::PerDimension => "per-dimension" },
        "significant": r.significant,
        "estimated_period": r.estimated_period,
        "warning": r.warning,
    })
}

/// `period,strength` table.
pub fn strengths_csv<T: Real>(r: &PeriodReport<T>) -> String {
    let mut s = String::from("period,strength\n");
    for (&p, &v) in &r.strengths {
        let _ = writeln!(s, "{p},{}", csv_num(v));
    }
    s
}

pub fn component_json<T: Real>(c: &FrequencyComponent<T>) -> Value {
    json!({
        "p": c.p,
        "k": c.k,
        "cycles_per_sample": num(c.cycles_per_sample),
        "freq_hz": c.freq_hz.map(num),
        "magnitude": num(c.magnitude),
        "phase_rad": num(c.phase_rad),
        "beta0": num(c.beta0),
        "beta1": num(c.beta1),
    })
}

pub fn dictionary_solution_json<T: Real>(s: &DictionarySolution<T>) -> Value {
    let columns: Vec<Value> = s
        .columns
        .iter()
        .enumerate()
        .map(|(j, idx)| {
            let mut o = index_json(idx);
            o["value"] = num(s.coefficients[j]);
            if let Some(im) = &s.coefficients_im {
                o["value_im"] = num(im[j]);
            }
            o
        })
        .collect();
    let strengths: Vec<Value> = s
        .strengths
        .iter()
        .map(|(&p, &v)| json!({ "period": p, "strength": num(v) }))
        .collect();
    json!({
        "family": s.family.name(),
        "coefficients": columns,
        "strengths": strengths,
        "residual_norm": num(s.residual_norm),
        "condition_estimate": num(s.condition_estimate),
        "ill_conditioned": s.ill_conditioned,
    })
}

pub fn counter_json(c: &OpCounter) -> Value {
    json!({ "mults": c.real_mults, "adds": c.real_adds })
}

pub fn foccpt_report_json(n: usize, measured: &OpCounter, predicted: &OpCounter) -> Value {
    json!({
        "N": n,
        "family": "occpt",
        "measured": counter_json(measured),
        "predicted": counter_json(predicted),
    })
}

pub fn complexity_rows_json(rows: &[ComplexityRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| json!({ "transform": r.transform, "mults": r.mults, "adds": r.adds }))
            .collect(),
    )
}

/// Row-major CSV, complex entries as `re,im` pairs.
pub fn matrix_csv<T: Real>(m: &PeriodicBasisMatrix<T>) -> String {
    let n = m.n();
    let mut s = String::new();
    for i in 0..n {
        let mut cells = Vec::with_capacity(n);
        for j in 0..n {
            match m.entries() {
                Entries::Real(a) => cells.push(format!("{}", a[(i, j)].as_f64())),
                Entries::Complex { re, im } => {
                    cells.push(format!("{}", re[(i, j)].as_f64()));
                    cells.push(format!("{}", im[(i, j)].as_f64()));
                }
            }
        }
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// Column metadata sidecar for [`matrix_csv`].
pub fn matrix_sidecar_json<T: Real>(m: &PeriodicBasisMatrix<T>) -> Value {
    let columns: Vec<Value> = m
        .columns()
        .iter()
        .enumerate()
        .map(|(j, idx)| {
            let mut o = index_json(idx);
            o["index"] = json!(j);
            o
        })
        .collect();
    let mut o = Map::new();
    o.insert("n".into(), json!(m.n()));
    o.insert("family".into(), json!(m.family().name()));
    o.insert("complex".into(), json!(matches!(m.entries(), Entries::Complex { .. })));
    o.insert("layout".into(), json!("row-major"));
    o.insert("columns".into(), Value::Array(columns));
    Value::Object(o)
}

/// Single-column CSV with a `value` header.
pub fn signal_csv<T: Real>(x: &[T]) -> String {
    let mut s = String::from("value\n");
    for &v in x {
        s.push_str(&csv_num(v));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::npm::build_occpt;
    use crate::transform::occpt_analysis;

    #[test]
    fn canonical_json_sorts_keys_and_formats_floats() {
        let v = json!({ "b": 1.5, "a": [1, null, true], "c": { "z": 0.1, "y": "s" } });
        assert_eq!(
            to_canonical_json(&v),
            "{\"a\":[1,null,true],\"b\":1.5000000000000000e0,\"c\":{\"y\":\"s\",\"z\":1.0000000000000001e-1}}\n"
        );
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn floats_round_trip_through_json() {
        let c = occpt_analysis(&[0.1f64, 0.7, -1.3, 2.9]).unwrap();
        let text = to_canonical_json(&coefficient_set_json(&c));
        let back: Value = serde_json::from_str(&text).unwrap();
        let flat: Vec<f64> = back["flat"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
        assert_eq!(flat, c.flat());
    }

    #[test]
    fn matrix_csv_is_row_major() {
        let m = build_occpt::<f64>(2);
        assert_eq!(matrix_csv(&m), "1,1\n1,-1\n");
        let side = matrix_sidecar_json(&m);
        assert_eq!(side["columns"].as_array().unwrap().len(), 2);
        let c = crate::npm::build_dft_npm::<f64>(2);
        assert_eq!(matrix_csv(&c).lines().next().unwrap().split(',').count(), 4);
    }

    #[test]
    fn csv_has_twelve_digits() {
        assert_eq!(csv_num(1.0f64 / 3.0), "3.33333333333e-1");
        assert_eq!(signal_csv(&[1.0f64]), "value\n1.00000000000e0\n");
    }
}
