use ccpt_core::export::{
    coefficient_set_json, complex_coefficient_set_json, complexity_rows_json, component_json, counter_json,
    dictionary_solution_json, num, period_report_json, strengths_csv,
};
use ccpt_core::foccpt::{complexity_table, FoccptPlan, InputKind, predicted_counts};
use ccpt_core::number_theory::is_power_of_two;
use ccpt_core::period::candidates::candidate_matrix_solve;
use ccpt_core::period::dictionary::{build_dictionary, dictionary_solve, Penalty};
use ccpt_core::period::signals::{synthetic_ecg, X1, X1_SEED, X2, X2_SEED, ECG_SEED};
use ccpt_core::period::{frequency_components, period_strengths_complex, period_strengths_with, PeriodReport, StrengthMode};
use ccpt_core::transform::{analyze, dft_npm_analysis, synthesize, synthesize_complex};
use ccpt_core::{Error, Family, Result};
use serde_json::{json, Value};

use crate::args::{FixtureName, Method};

/// Coefficients of `x`; the fast algorithm is used for the orthogonal family
/// at power-of-two lengths.
pub fn transform_report(x: &[f64], family: Family) -> Result<Value> {
    let n = x.len();
    if family == Family::DftNpm {
        let c = dft_npm_analysis(x, None)?;
        let mut v = complex_coefficient_set_json(&c);
        v["method"] = json!("direct");
        return Ok(v);
    }
    if family == Family::Occpt && n >= 2 && is_power_of_two(n) {
        let (c, ops) = FoccptPlan::<f64>::new(n)?.process(x)?;
        let mut v = coefficient_set_json(&c);
        v["method"] = json!("foccpt");
        v["ops"] = counter_json(&ops);
        return Ok(v);
    }
    let c = analyze(family, x)?;
    let mut v = coefficient_set_json(&c);
    v["method"] = json!("direct");
    Ok(v)
}

#[derive(Debug, Clone)]
pub struct PeriodOptions {
    pub family: Family,
    pub method: Method,
    pub threshold: f64,
    pub fs: Option<f64>,
    pub p_max: Option<usize>,
    pub penalty: Penalty,
    pub candidates: Vec<usize>,
    pub mode: StrengthMode,
}

impl PeriodOptions {
    pub fn new(family: Family, method: Method) -> Self {
        Self {
            family,
            method,
            threshold: ccpt_core::period::DEFAULT_THRESHOLD,
            fs: None,
            p_max: None,
            penalty: Penalty::Square,
            candidates: Vec::new(),
            mode: StrengthMode::Raw,
        }
    }
}

/// JSON report and the strength table for a period analysis.
pub fn periods_report(x: &[f64], o: &PeriodOptions) -> Result<(Value, Option<String>)> {
    let n = x.len();
    let mut out = json!({
        "command": "periods",
        "n": n,
        "family": o.family.name(),
        "fs": o.fs.map(num),
    });
    match o.method {
        Method::Matrix => {
            out["method"] = json!("matrix");
            let (report, components) = if o.family == Family::DftNpm {
                let c = dft_npm_analysis(x, None)?;
                (period_strengths_complex(&c, o.threshold, o.mode)?, Vec::new())
            } else {
                let c = analyze(o.family, x)?;
                let r = period_strengths_with(&c, o.threshold, o.mode)?;
                let comps = if o.family == Family::Occpt {
                    significant_components(frequency_components(&c, o.fs, 0.0)?, &r)
                } else {
                    Vec::new()
                };
                (r, comps)
            };
            out["report"] = period_report_json(&report);
            out["components"] = Value::Array(components);
            Ok((out, Some(strengths_csv(&report))))
        }
        Method::Dictionary => {
            out["method"] = json!("dictionary");
            let p_max = o.p_max.unwrap_or(n);
            let d = build_dictionary::<f64>(n, p_max, o.family, o.penalty)?;
            let s = dictionary_solve(x, &d)?;
            let report = s.report(o.threshold)?;
            out["p_max"] = json!(p_max);
            out["width"] = json!(d.width());
            out["penalty"] = json!(match o.penalty {
                Penalty::Square => "p2",
                Penalty::Totient => "phi",
                Penalty::Custom(_) => "custom",
            });
            out["warnings"] = json!(d.warnings());
            out["report"] = period_report_json(&report);
            out["solution"] = dictionary_solution_json(&s);
            out["components"] = Value::Array(significant_components(s.components(o.fs, 0.0), &report));
            Ok((out, Some(strengths_csv(&report))))
        }
        Method::Candidates => {
            out["method"] = json!("candidates");
            let n_min = ccpt_core::period::candidates::min_data_length(&o.candidates)?;
            if n < n_min {
                return Err(Error::LengthMismatch {
                    expected: n_min,
                    actual: n,
                });
            }
            let s = candidate_matrix_solve(&x[..n_min], &o.candidates, o.family)?;
            out["n_min"] = json!(s.n_min);
            out["rank"] = json!(s.rank);
            out["candidate_strengths"] = Value::Array(
                s.candidate_strengths
                    .iter()
                    .map(|&(p, v)| json!({ "period": p, "strength": num(v) }))
                    .collect(),
            );
            out["identified"] = json!(s.identified(o.threshold));
            Ok((out, None))
        }
    }
}

fn significant_components(
    comps: Vec<ccpt_core::period::FrequencyComponent<f64>>,
    r: &PeriodReport<f64>,
) -> Vec<Value> {
    comps
        .iter()
        .filter(|c| r.significant.contains(&c.p))
        .map(component_json)
        .collect()
}

/// Frequency of the component at period `p`, residue `k`.
fn component_hz(p: usize, k: usize, fs: f64) -> f64 {
    if p == 1 {
        0.0
    } else {
        k as f64 * fs / p as f64
    }
}

/// Zero every component whose frequency lies outside `[lo, hi]` Hz and
/// resynthesize.
pub fn band_filter(x: &[f64], fs: f64, lo: f64, hi: f64, family: Family) -> Result<Vec<f64>> {
    if !(fs.is_finite() && fs > 0.0) {
        return Err(Error::InvalidBand(format!("sampling rate {fs} must be positive")));
    }
    if !(0.0 <= lo && lo <= hi) {
        return Err(Error::InvalidBand(format!("{lo}:{hi} must satisfy 0 <= LO <= HI")));
    }
    if hi > fs / 2.0 {
        return Err(Error::InvalidBand(format!("upper edge {hi} Hz exceeds Nyquist {} Hz", fs / 2.0)));
    }
    let keep = |p: usize, k: usize| {
        let f = component_hz(p, k, fs);
        f >= lo && f <= hi
    };
    match family {
        Family::Rpt => Err(Error::UnsupportedFamily(family)),
        Family::DftNpm => {
            let mut c = dft_npm_analysis(x, None)?;
            let index = c.re.index().to_vec();
            for (j, idx) in index.iter().enumerate() {
                if !keep(idx.p, idx.k) {
                    c.re.flat_mut()[j] = 0.0;
                    c.im.flat_mut()[j] = 0.0;
                }
            }
            Ok(synthesize_complex(&c)?.0)
        }
        _ => {
            let mut c = analyze(family, x)?;
            let index = c.index().to_vec();
            for (j, idx) in index.iter().enumerate() {
                if !keep(idx.p, idx.k) {
                    c.flat_mut()[j] = 0.0;
                }
            }
            synthesize(&c)
        }
    }
}

/// Per-size operation counts, plus measured fast-transform counters for
/// powers of two.
pub fn benchmark_report(sizes: &[usize]) -> Result<Value> {
    let mut rows = Vec::new();
    for &n in sizes {
        let table = complexity_table(n);
        let get = |name: &str| table.iter().find(|r| r.transform == name).expect("row present");
        let (occpt, dft) = (get("OCCPT"), get("DFT"));
        let ratio = |a: u64, b: u64| if b == 0 { Value::Null } else { num(a as f64 / b as f64) };
        let fast = if n >= 2 && is_power_of_two(n) {
            let plan = FoccptPlan::<f64>::new(n)?;
            let (_, measured) = plan.process(&vec![0.0; n])?;
            let predicted = predicted_counts(n, InputKind::Real)?;
            json!({
                "measured": counter_json(&measured),
                "predicted": counter_json(&predicted),
                "equal": measured == predicted,
            })
        } else {
            Value::Null
        };
        rows.push(json!({
            "N": n,
            "power_of_two": n >= 2 && is_power_of_two(n),
            "transforms": complexity_rows_json(&table),
            "occpt_over_dft_mults": ratio(occpt.mults, dft.mults),
            "occpt_over_dft_adds": ratio(occpt.adds, dft.adds),
            "foccpt_real_input": fast,
        }));
    }
    Ok(json!({ "command": "benchmark", "sizes": rows }))
}

/// Samples of a bundled fixture.
pub fn fixture_signal(name: FixtureName, seed: Option<u64>, snr_db: Option<f64>, clean: bool) -> Vec<f64> {
    match name {
        FixtureName::Ecg => synthetic_ecg(seed.unwrap_or(ECG_SEED)).samples,
        FixtureName::X1 | FixtureName::X2 => {
            let (recipe, default_seed) = if name == FixtureName::X1 { (X1, X1_SEED) } else { (X2, X2_SEED) };
            let recipe = if clean {
                recipe.with_snr(None)
            } else if snr_db.is_some() {
                recipe.with_snr(snr_db)
            } else {
                recipe
            };
            recipe.generate(seed.unwrap_or(default_seed)).samples
        }
    }
}
