//! Period strength analysis, significant-period selection and frequency /
//! phase recovery.

pub mod candidates;
pub mod dictionary;
pub mod signals;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::npm::Family;
use crate::number_theory::{lcm_list, totient};
use crate::scalar::Real;
use crate::transform::{CoefficientSet, ComplexCoefficientSet};

pub const DEFAULT_THRESHOLD: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StrengthMode {
    /// Plain square sum of the coefficients of each period.
    #[default]
    Raw,
    /// Square sum divided by the subspace dimension `phi(p)`.
    PerDimension,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodReport<T> {
    pub strengths: BTreeMap<usize, T>,
    pub threshold: T,
    pub mode: StrengthMode,
    /// Periods with strength at least `threshold * max`, ascending.
    pub significant: Vec<usize>,
    /// `lcm` of the significant set; `1` when the set is empty.
    pub estimated_period: usize,
    pub warning: Option<String>,
}

impl<T: Real> PeriodReport<T> {
    pub fn from_strengths(strengths: BTreeMap<usize, T>, threshold: T, mode: StrengthMode) -> Result<Self> {
        if !(threshold > T::zero() && threshold <= T::one()) {
            return Err(Error::InvalidArgument(format!("threshold {threshold} outside (0, 1]")));
        }
        let strengths: BTreeMap<usize, T> = match mode {
            StrengthMode::Raw => strengths,
            StrengthMode::PerDimension => strengths
                .into_iter()
                .map(|(p, s)| (p, s / T::of_usize(totient(p))))
                .collect(),
        };
        let max = strengths.values().fold(T::zero(), |m, &s| m.max(s));
        if max <= T::zero() {
            return Ok(Self {
                strengths,
                threshold,
                mode,
                significant: Vec::new(),
                estimated_period: 1,
                warning: Some("signal has zero energy; no significant period".into()),
            });
        }
        let cut = threshold * max;
        let significant: Vec<usize> = strengths.iter().filter(|(_, &s)| s >= cut).map(|(&p, _)| p).collect();
        let estimated_period = lcm_list(&significant)?;
        Ok(Self {
            strengths,
            threshold,
            mode,
            significant,
            estimated_period,
            warning: None,
        })
    }

    pub fn strength(&self, p: usize) -> Option<T> {
        self.strengths.get(&p).copied()
    }

    pub fn max_strength(&self) -> T {
        self.strengths.values().fold(T::zero(), |m, &s| m.max(s))
    }
}

/// Square sum of coefficients per period.
pub fn raw_strengths<T: Real>(c: &CoefficientSet<T>) -> BTreeMap<usize, T> {
    let mut out = BTreeMap::new();
    for (idx, v) in c.iter() {
        *out.entry(idx.p).or_insert(T::zero()) += v * v;
    }
    out
}

pub fn period_strengths<T: Real>(c: &CoefficientSet<T>, threshold: T) -> Result<PeriodReport<T>> {
    period_strengths_with(c, threshold, StrengthMode::Raw)
}

pub fn period_strengths_with<T: Real>(c: &CoefficientSet<T>, threshold: T, mode: StrengthMode) -> Result<PeriodReport<T>> {
    PeriodReport::from_strengths(raw_strengths(c), threshold, mode)
}

/// Strengths from complex coefficients, `|beta|^2` summed per period.
pub fn period_strengths_complex<T: Real>(
    c: &ComplexCoefficientSet<T>,
    threshold: T,
    mode: StrengthMode,
) -> Result<PeriodReport<T>> {
    let mut s = raw_strengths(&c.re);
    for (p, v) in raw_strengths(&c.im) {
        *s.entry(p).or_insert(T::zero()) += v;
    }
    PeriodReport::from_strengths(s, threshold, mode)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyComponent<T> {
    pub p: usize,
    pub k: usize,
    /// `k / p`.
    pub cycles_per_sample: f64,
    /// `k fs / p` when a sampling rate is known.
    pub freq_hz: Option<f64>,
    pub magnitude: T,
    /// `atan2(-beta1, beta0)` in `(-pi, pi]`.
    pub phase_rad: T,
    pub beta0: T,
    pub beta1: T,
}

/// Amplitude and phase of `A cos(2 pi k n / p + phi)` from its coefficient
/// pair `(A/2)(cos phi, -sin phi)`; for `p <= 2` the single coefficient is
/// the amplitude itself.
pub fn component_from_pair<T: Real>(p: usize, k: usize, beta0: T, beta1: T, fs: Option<f64>) -> FrequencyComponent<T> {
    let magnitude = if p <= 2 {
        beta0.abs()
    } else {
        T::of(2.0) * (beta0 * beta0 + beta1 * beta1).sqrt()
    };
    let mut phase = (-beta1).atan2(beta0);
    if phase <= -T::PI() {
        phase = T::PI();
    }
    let cps = if p == 1 { 0.0 } else { k as f64 / p as f64 };
    FrequencyComponent {
        p,
        k,
        cycles_per_sample: cps,
        freq_hz: fs.map(|f| f * cps),
        magnitude,
        phase_rad: phase,
        beta0,
        beta1,
    }
}

/// One component per `(p, k)` whose magnitude exceeds `min_magnitude`.
pub fn frequency_components<T: Real>(
    c: &CoefficientSet<T>,
    fs: Option<f64>,
    min_magnitude: T,
) -> Result<Vec<FrequencyComponent<T>>> {
    if c.family() != Family::Occpt {
        return Err(Error::WrongFamily {
            expected: Family::Occpt,
            actual: c.family(),
        });
    }
    Ok(c.pairs()
        .into_iter()
        .map(|(p, k)| {
            let (b0, b1) = c.pair(p, k).expect("pair present");
            component_from_pair(p, k, b0, b1, fs)
        })
        .filter(|f| f.magnitude > min_magnitude)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccps::CcpsSpec;
    use crate::transform::occpt_analysis;
    use std::f64::consts::PI;

    #[test]
    fn single_subspace_signal() {
        let s = CcpsSpec::cos(9, 1).unwrap();
        let x: Vec<f64> = (0..54).map(|n| s.value(n)).collect();
        let r = period_strengths(&occpt_analysis(&x).unwrap(), 0.2).unwrap();
        assert_eq!(r.significant, vec![9]);
        assert_eq!(r.estimated_period, 9);
    }

    #[test]
    fn silence_reports_one() {
        let r = period_strengths(&occpt_analysis(&[0.0f64; 12]).unwrap(), 0.2).unwrap();
        assert!(r.significant.is_empty());
        assert_eq!(r.estimated_period, 1);
        assert!(r.warning.is_some());
    }

    #[test]
    fn threshold_is_validated() {
        let c = occpt_analysis(&[1.0f64; 4]).unwrap();
        assert!(period_strengths(&c, 0.0).is_err());
        assert!(period_strengths(&c, 1.5).is_err());
        assert!(period_strengths(&c, 1.0).is_ok());
    }

    #[test]
    fn per_dimension_mode_divides_by_totient() {
        let x: Vec<f64> = (0..12).map(|n| (n as f64 * 0.9).sin()).collect();
        let c = occpt_analysis(&x).unwrap();
        let raw = period_strengths_with(&c, 0.2, StrengthMode::Raw).unwrap();
        let per = period_strengths_with(&c, 0.2, StrengthMode::PerDimension).unwrap();
        for (p, s) in &raw.strengths {
            assert!((per.strengths[p] - s / totient(*p) as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn tone_component() {
        let x: Vec<f64> = (0..54)
            .map(|n| 0.6 * (2.0 * PI * 100.0 * n as f64 / 360.0 + PI / 3.0).cos())
            .collect();
        let comps = frequency_components(&occpt_analysis(&x).unwrap(), Some(360.0), 1e-6).unwrap();
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!((c.p, c.k), (18, 5));
        assert!((c.freq_hz.unwrap() - 100.0).abs() < 1e-9);
        assert!((c.magnitude - 0.6).abs() < 1e-12);
        assert!((c.phase_rad - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn sine_component() {
        let x: Vec<f64> = (0..8).map(|n| (2.0 * PI * n as f64 / 8.0).sin()).collect();
        let comps = frequency_components(&occpt_analysis(&x).unwrap(), None, 1e-9).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!((comps[0].p, comps[0].k), (8, 1));
        assert!((comps[0].magnitude - 1.0).abs() < 1e-12);
        assert!((comps[0].phase_rad + PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn constant_component() {
        let comps = frequency_components(&occpt_analysis(&[2.5f64; 6]).unwrap(), Some(10.0), 1e-9).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].p, 1);
        assert_eq!(comps[0].freq_hz, Some(0.0));
        assert!((comps[0].magnitude - 2.5).abs() < 1e-12);
        let neg = frequency_components(&occpt_analysis(&[-1.0f64; 6]).unwrap(), None, 1e-9).unwrap();
        assert!((neg[0].phase_rad - PI).abs() < 1e-15);
    }
}
