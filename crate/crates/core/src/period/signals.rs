//! Seeded test signals: hidden-period mixtures in white Gaussian noise and a
//! synthetic ECG-like trace.
//!
//! Mixtures are `r(n mod P) + A cos(2 pi f n / fs + phi) + w(n)` where one
//! period of `r` is drawn from `N(0, 1)` first, followed by the `N` noise
//! samples. The noise variance is `P_clean / 10^(snr / 10)` with `P_clean`
//! the mean power of the noiseless mixture.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureRecipe {
    pub n: usize,
    pub hidden_period: usize,
    pub tone_amplitude: f64,
    pub tone_hz: f64,
    pub tone_phase: f64,
    pub fs: f64,
    /// `None` for a noiseless mixture.
    pub snr_db: Option<f64>,
}

/// Period-9 random part plus a 100 Hz tone (period 18 at 360 Hz).
pub const X1: MixtureRecipe = MixtureRecipe {
    n: 54,
    hidden_period: 9,
    tone_amplitude: 0.6,
    tone_hz: 100.0,
    tone_phase: std::f64::consts::FRAC_PI_3,
    fs: 360.0,
    snr_db: Some(6.0),
};

/// Period-5 random part plus a 45 Hz tone (period 8 at 360 Hz).
pub const X2: MixtureRecipe = MixtureRecipe {
    n: 54,
    hidden_period: 5,
    tone_amplitude: 0.3,
    tone_hz: 45.0,
    tone_phase: std::f64::consts::FRAC_PI_4,
    fs: 360.0,
    snr_db: Some(6.0),
};

pub const X1_SEED: u64 = 1;
pub const X2_SEED: u64 = 2;
pub const ECG_SEED: u64 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct TestSignal {
    pub samples: Vec<f64>,
    pub clean: Vec<f64>,
    pub fs: f64,
}

pub fn mean_power(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / x.len().max(1) as f64
}

impl MixtureRecipe {
    pub fn with_snr(self, snr_db: Option<f64>) -> Self {
        Self { snr_db, ..self }
    }

    pub fn generate(&self, seed: u64) -> TestSignal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let segment: Vec<f64> = (0..self.hidden_period).map(|_| StandardNormal.sample(&mut rng)).collect();
        let w = std::f64::consts::TAU * self.tone_hz / self.fs;
        let clean: Vec<f64> = (0..self.n)
            .map(|t| segment[t % self.hidden_period] + self.tone_amplitude * (w * t as f64 + self.tone_phase).cos())
            .collect();
        let samples = match self.snr_db {
            None => clean.clone(),
            Some(db) => {
                let sigma = (mean_power(&clean) / 10f64.powf(db / 10.0)).sqrt();
                clean
                    .iter()
                    .map(|&c| {
                        let z: f64 = StandardNormal.sample(&mut rng);
                        c + sigma * z
                    })
                    .collect()
            }
        };
        TestSignal {
            samples,
            clean,
            fs: self.fs,
        }
    }
}

pub const ECG_LEN: usize = 625;
pub const ECG_FS: f64 = 62.5;
pub const ECG_BEAT_SAMPLES: usize = 48;

fn gauss(t: f64, centre: f64, width: f64) -> f64 {
    let u = (t - centre) / width;
    (-u * u).exp()
}

/// One beat of P-QRS-T shape, `t` in seconds from the R peak.
fn beat(t: f64) -> f64 {
    0.15 * gauss(t, -0.2, 0.025) - 0.1 * gauss(t, -0.03, 0.01) + gauss(t, 0.0, 0.012) - 0.2 * gauss(t, 0.03, 0.01)
        + 0.3 * gauss(t, 0.25, 0.05)
}

/// 10 s at 62.5 Hz, one beat every 48 samples, slow baseline wander and
/// light white noise.
pub fn synthetic_ecg(seed: u64) -> TestSignal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dt = 1.0 / ECG_FS;
    let clean: Vec<f64> = (0..ECG_LEN)
        .map(|i| {
            let t = i as f64 * dt;
            let beats: f64 = (0..=ECG_LEN / ECG_BEAT_SAMPLES + 1)
                .map(|b| {
                    let r = (20 + b * ECG_BEAT_SAMPLES) as f64 * dt;
                    beat(t - r)
                })
                .sum();
            beats + 0.1 * (std::f64::consts::TAU * 0.33 * t).sin()
        })
        .collect();
    let samples = clean
        .iter()
        .map(|&c| {
            let z: f64 = StandardNormal.sample(&mut rng);
            c + 0.02 * z
        })
        .collect();
    TestSignal {
        samples,
        clean,
        fs: ECG_FS,
    }
}
