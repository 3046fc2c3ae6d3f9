//! Analysis and synthesis for the CCPT family, the flat `beta(K)` view of
//! the orthogonal transform, its DFT bridge, and transform-domain
//! identities (circular shift, circular convolution, Parseval).

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;

use crate::ccps::{reduced_angle, scale_m};
use crate::error::{Error, Result};
use crate::linalg::Lu;
use crate::npm::{self, column_layout, ColumnKind, Family, SubspaceIndex};
use crate::number_theory::{divisor_set, gcd, half_residues};
use crate::scalar::Real;

/// Samples plus an optional sampling rate in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T> {
    pub samples: Vec<T>,
    pub sample_rate: Option<f64>,
}

impl<T: Real> Signal<T> {
    pub fn new(samples: Vec<T>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySignal);
        }
        Ok(Self {
            samples,
            sample_rate: None,
        })
    }

    pub fn with_rate(mut self, fs: f64) -> Self {
        self.sample_rate = Some(fs);
        self
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

impl<T> AsRef<[T]> for Signal<T> {
    fn as_ref(&self) -> &[T] {
        &self.samples
    }
}

/// Flat slot `K` of the orthogonal transform that holds `idx`.
///
/// `Cos` of `(p, k)` sits at `N k / p`, `Sin` at `N (p - k) / p`; the `p = 1`
/// column lands on slot 0.
pub fn occpt_slot(n: usize, idx: &SubspaceIndex) -> Option<usize> {
    if n % idx.p != 0 {
        return None;
    }
    let step = n / idx.p;
    match idx.kind {
        ColumnKind::Cos => Some((step * idx.k) % n),
        ColumnKind::Sin if idx.p >= 3 => Some(step * (idx.p - idx.k)),
        _ => None,
    }
}

/// Inverse of [`occpt_slot`].
pub fn occpt_index_of_slot(n: usize, slot: usize) -> SubspaceIndex {
    assert!(slot < n);
    if slot == 0 {
        return SubspaceIndex::new(1, 1, ColumnKind::Cos);
    }
    if 2 * slot <= n {
        let g = gcd(slot, n);
        SubspaceIndex::new(n / g, slot / g, ColumnKind::Cos)
    } else {
        let r = n - slot;
        let g = gcd(r, n);
        SubspaceIndex::new(n / g, r / g, ColumnKind::Sin)
    }
}

/// Transform coefficients with both a flat and a subspace-indexed view.
///
/// For [`Family::Occpt`] the flat array is in frequency-slot order (`beta(K)`),
/// for the other families it follows the matrix column order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet<T> {
    n: usize,
    family: Family,
    flat: Vec<T>,
    index: Vec<SubspaceIndex>,
}

impl<T: Real> CoefficientSet<T> {
    pub fn from_flat(family: Family, flat: Vec<T>) -> Result<Self> {
        let n = flat.len();
        if n == 0 {
            return Err(Error::EmptySignal);
        }
        let index = match family {
            Family::Occpt => (0..n).map(|k| occpt_index_of_slot(n, k)).collect(),
            _ => column_layout(family, n),
        };
        Ok(Self { n, family, flat, index })
    }

    pub fn zeros(family: Family, n: usize) -> Result<Self> {
        Self::from_flat(family, vec![T::zero(); n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn flat(&self) -> &[T] {
        &self.flat
    }

    pub fn flat_mut(&mut self) -> &mut [T] {
        &mut self.flat
    }

    pub fn into_flat(self) -> Vec<T> {
        self.flat
    }

    /// Subspace index of each flat position.
    pub fn index(&self) -> &[SubspaceIndex] {
        &self.index
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SubspaceIndex, T)> + '_ {
        self.index.iter().zip(self.flat.iter().copied())
    }

    pub fn position(&self, idx: &SubspaceIndex) -> Option<usize> {
        match self.family {
            Family::Occpt => occpt_slot(self.n, idx).filter(|&s| self.index[s] == *idx),
            _ => self.index.iter().position(|c| c == idx),
        }
    }

    pub fn get(&self, idx: &SubspaceIndex) -> Option<T> {
        self.position(idx).map(|i| self.flat[i])
    }

    /// `(beta0, beta1)` of the orthogonal transform at `(p, k)`; `beta1 = 0`
    /// for `p <= 2`.
    pub fn pair(&self, p: usize, k: usize) -> Option<(T, T)> {
        if self.family != Family::Occpt {
            return None;
        }
        let b0 = self.get(&SubspaceIndex::new(p, k, ColumnKind::Cos))?;
        let b1 = if p <= 2 {
            T::zero()
        } else {
            self.get(&SubspaceIndex::new(p, k, ColumnKind::Sin))?
        };
        Some((b0, b1))
    }

    /// All `(p, k)` pairs present, divisors ascending then `k` ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        divisor_set(self.n)
            .iter()
            .flat_map(|p| half_residues(p).into_iter().map(move |k| (p, k)))
            .collect()
    }

    fn require(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(Error::WrongFamily {
                expected: family,
                actual: self.family,
            });
        }
        Ok(())
    }
}

/// Coefficients of a complex signal: `beta = re + j im`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexCoefficientSet<T> {
    pub re: CoefficientSet<T>,
    pub im: CoefficientSet<T>,
}

impl<T: Real> ComplexCoefficientSet<T> {
    pub fn n(&self) -> usize {
        self.re.n()
    }

    pub fn family(&self) -> Family {
        self.re.family()
    }

    pub fn values(&self) -> Vec<Complex<T>> {
        self.re
            .flat()
            .iter()
            .zip(self.im.flat())
            .map(|(&a, &b)| Complex::new(a, b))
            .collect()
    }
}

fn check_len<T>(x: &[T]) -> Result<usize> {
    if x.is_empty() {
        Err(Error::EmptySignal)
    } else {
        Ok(x.len())
    }
}

/// `(cos(2 pi r / N), sin(2 pi r / N))` for `r` in `0..N`.
pub(crate) fn unit_circle<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    (0..n)
        .map(|r| {
            let a = T::two_pi() * T::of_usize(r) / T::of_usize(n);
            (a.cos(), a.sin())
        })
        .unzip()
}

/// Direct orthogonal analysis in the flat form
/// `beta(K) = (1/N) sum x cos(2 pi K n / N)` for `K <= N/2` and
/// `-(1/N) sum x sin(2 pi K n / N)` above.
pub fn occpt_analysis<T: Real>(x: &[T]) -> Result<CoefficientSet<T>> {
    let n = check_len(x)?;
    let (cos_t, sin_t) = unit_circle::<T>(n);
    let inv = T::one() / T::of_usize(n);
    let flat = (0..n)
        .map(|k| {
            let upper = 2 * k > n;
            let mut acc = T::zero();
            let mut r = 0usize;
            for &v in x {
                acc += v * if upper { sin_t[r] } else { cos_t[r] };
                r += k;
                if r >= n {
                    r -= n;
                }
            }
            if upper {
                -acc * inv
            } else {
                acc * inv
            }
        })
        .collect();
    CoefficientSet::from_flat(Family::Occpt, flat)
}

pub fn occpt_analysis_complex<T: Real>(re: &[T], im: &[T]) -> Result<ComplexCoefficientSet<T>> {
    if re.len() != im.len() {
        return Err(Error::LengthMismatch {
            expected: re.len(),
            actual: im.len(),
        });
    }
    Ok(ComplexCoefficientSet {
        re: occpt_analysis(re)?,
        im: occpt_analysis(im)?,
    })
}

/// `x(n) = sum over (p, k) of beta0 c1(n) + beta1 c2(n)`.
pub fn occpt_synthesis<T: Real>(c: &CoefficientSet<T>) -> Result<Vec<T>> {
    c.require(Family::Occpt)?;
    let n = c.n;
    let (cos_t, sin_t) = unit_circle::<T>(n);
    let two = T::of(2.0);
    let weights: Vec<T> = (0..n)
        .map(|k| if k == 0 || 2 * k == n { T::one() } else { two })
        .collect();
    Ok((0..n)
        .map(|t| {
            let mut acc = T::zero();
            let mut r = 0usize;
            for k in 0..n {
                let b = c.flat[k];
                if 2 * k <= n {
                    acc += weights[k] * b * cos_t[r];
                } else {
                    acc -= two * b * sin_t[r];
                }
                r += t;
                if r >= n {
                    r -= n;
                }
            }
            acc
        })
        .collect())
}

type CacheKey = (TypeId, Family, usize);
type Cache = Mutex<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// LU factorisation of the real `family` matrix of size `n`, built once and
/// shared afterwards.
pub fn factorization<T: Real>(family: Family, n: usize) -> Result<Arc<Lu<T>>> {
    if family.is_complex() {
        return Err(Error::UnsupportedFamily(family));
    }
    let key = (TypeId::of::<T>(), family, n);
    let mut guard = cache().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(hit) = guard.get(&key) {
        return Ok(Arc::clone(hit).downcast::<Lu<T>>().expect("cache keyed by type"));
    }
    let m = npm::build::<T>(family, n);
    let lu = Arc::new(Lu::factor(m.real().expect("real family"))?);
    guard.insert(key, lu.clone() as Arc<dyn Any + Send + Sync>);
    Ok(lu)
}

fn solve_family<T: Real>(family: Family, x: &[T]) -> Result<CoefficientSet<T>> {
    let n = check_len(x)?;
    let lu = factorization::<T>(family, n)?;
    CoefficientSet::from_flat(family, lu.solve(x))
}

/// `beta = C^{-1} x`.
pub fn ccpt1_analysis<T: Real>(x: &[T]) -> Result<CoefficientSet<T>> {
    solve_family(Family::Ccpt1, x)
}

/// `beta = D^{-1} x`.
pub fn ccpt2_analysis<T: Real>(x: &[T]) -> Result<CoefficientSet<T>> {
    solve_family(Family::Ccpt2, x)
}

/// `beta = B^{-1} x`.
pub fn rpt_analysis<T: Real>(x: &[T]) -> Result<CoefficientSet<T>> {
    solve_family(Family::Rpt, x)
}

/// Analysis for any real-coefficient family.
pub fn analyze<T: Real>(family: Family, x: &[T]) -> Result<CoefficientSet<T>> {
    match family {
        Family::Occpt => occpt_analysis(x),
        Family::DftNpm => Err(Error::UnsupportedFamily(family)),
        _ => solve_family(family, x),
    }
}

/// Complex input: real and imaginary parts analysed independently, except
/// for the DFT family whose coefficients are complex to begin with.
pub fn analyze_complex<T: Real>(family: Family, re: &[T], im: &[T]) -> Result<ComplexCoefficientSet<T>> {
    if re.len() != im.len() {
        return Err(Error::LengthMismatch {
            expected: re.len(),
            actual: im.len(),
        });
    }
    if family == Family::DftNpm {
        return dft_npm_analysis(re, Some(im));
    }
    Ok(ComplexCoefficientSet {
        re: analyze(family, re)?,
        im: analyze(family, im)?,
    })
}

/// Coefficients against the permuted DFT basis: `X(N k'/p) / N` per column.
pub fn dft_npm_analysis<T: Real>(re: &[T], im: Option<&[T]>) -> Result<ComplexCoefficientSet<T>> {
    let n = check_len(re)?;
    if let Some(im) = im {
        if im.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: im.len(),
            });
        }
    }
    let columns = column_layout(Family::DftNpm, n);
    let inv = T::one() / T::of_usize(n);
    let mut out_re = Vec::with_capacity(n);
    let mut out_im = Vec::with_capacity(n);
    for idx in &columns {
        let ColumnKind::Exp(kp) = idx.kind else { unreachable!() };
        let mut acc = Complex::new(T::zero(), T::zero());
        for t in 0..n {
            let a = reduced_angle::<T>(kp as i64, t as i64, idx.p);
            let w = Complex::new(a.cos(), -a.sin());
            let v = Complex::new(re[t], im.map_or(T::zero(), |m| m[t]));
            acc += v * w;
        }
        out_re.push(acc.re * inv);
        out_im.push(acc.im * inv);
    }
    Ok(ComplexCoefficientSet {
        re: CoefficientSet::from_flat(Family::DftNpm, out_re)?,
        im: CoefficientSet::from_flat(Family::DftNpm, out_im)?,
    })
}

/// Reconstruct samples from real-family coefficients.
pub fn synthesize<T: Real>(c: &CoefficientSet<T>) -> Result<Vec<T>> {
    match c.family {
        Family::Occpt => occpt_synthesis(c),
        Family::DftNpm => Err(Error::UnsupportedFamily(c.family)),
        family => {
            let n = c.n;
            let mut x = vec![T::zero(); n];
            for (idx, b) in c.iter() {
                if b == T::zero() {
                    continue;
                }
                for (t, xt) in x.iter_mut().enumerate() {
                    *xt += b * npm::real_column_value::<T>(family, idx, t as i64);
                }
            }
            Ok(x)
        }
    }
}

/// Reconstruct `(re, im)` samples from complex coefficients.
pub fn synthesize_complex<T: Real>(c: &ComplexCoefficientSet<T>) -> Result<(Vec<T>, Vec<T>)> {
    if c.family() != Family::DftNpm {
        return Ok((synthesize(&c.re)?, synthesize(&c.im)?));
    }
    let n = c.n();
    let mut re = vec![T::zero(); n];
    let mut im = vec![T::zero(); n];
    for (j, idx) in c.re.index().iter().enumerate() {
        let b = Complex::new(c.re.flat[j], c.im.flat[j]);
        for t in 0..n {
            let v = b * npm::column_value::<T>(Family::DftNpm, idx, t as i64);
            re[t] += v.re;
            im[t] += v.im;
        }
    }
    Ok((re, im))
}

/// DFT of a real signal from its orthogonal coefficients:
/// `X(Nk/p) = N (beta0 - j beta1)` and its conjugate at `N(p-k)/p`.
pub fn dft_from_occpt<T: Real>(c: &CoefficientSet<T>) -> Result<Vec<Complex<T>>> {
    c.require(Family::Occpt)?;
    let n = c.n;
    let nt = T::of_usize(n);
    let mut out = vec![Complex::new(T::zero(), T::zero()); n];
    for (p, k) in c.pairs() {
        let (b0, b1) = c.pair(p, k).expect("pair present");
        let bin = (n / p * k) % n;
        if p <= 2 {
            out[bin] = Complex::new(nt * b0, T::zero());
        } else {
            out[bin] = Complex::new(nt * b0, -nt * b1);
            out[n - bin] = Complex::new(nt * b0, nt * b1);
        }
    }
    Ok(out)
}

/// DFT of a complex signal from coefficients `beta = b_re + j b_im`:
/// `X(Nk/p) = N[(b_re0 + b_im1) + j(b_im0 - b_re1)]` and
/// `X(N(p-k)/p) = N[(b_re0 - b_im1) + j(b_im0 + b_re1)]`.
pub fn dft_from_occpt_complex<T: Real>(c: &ComplexCoefficientSet<T>) -> Result<Vec<Complex<T>>> {
    c.re.require(Family::Occpt)?;
    c.im.require(Family::Occpt)?;
    let n = c.n();
    let nt = T::of_usize(n);
    let mut out = vec![Complex::new(T::zero(), T::zero()); n];
    for (p, k) in c.re.pairs() {
        let (r0, r1) = c.re.pair(p, k).expect("pair present");
        let (i0, i1) = c.im.pair(p, k).expect("pair present");
        let bin = (n / p * k) % n;
        if p <= 2 {
            out[bin] = Complex::new(nt * r0, nt * i0);
        } else {
            out[bin] = Complex::new(nt * (r0 + i1), nt * (i0 - r1));
            out[n - bin] = Complex::new(nt * (r0 - i1), nt * (i0 + r1));
        }
    }
    Ok(out)
}

/// Coefficients of `x(n - m)` (circular), as a rotation of each pair by
/// `theta = 2 pi k ((-m) mod N) / p`.
pub fn shift_coefficients<T: Real>(c: &CoefficientSet<T>, m: i64) -> Result<CoefficientSet<T>> {
    c.require(Family::Occpt)?;
    let n = c.n;
    let neg = (-m).rem_euclid(n as i64);
    let mut out = c.clone();
    for (p, k) in c.pairs() {
        let (b0, b1) = c.pair(p, k).expect("pair present");
        let theta = reduced_angle::<T>(k as i64, neg, p);
        let (s, co) = theta.sin_cos();
        let cos_slot = (n / p * k) % n;
        if p <= 2 {
            out.flat[cos_slot] = co * b0;
        } else {
            out.flat[cos_slot] = co * b0 + s * b1;
            out.flat[n / p * (p - k)] = -s * b0 + co * b1;
        }
    }
    Ok(out)
}

/// Coefficients of the circular convolution of the two source signals.
pub fn convolve_coefficients<T: Real>(a: &CoefficientSet<T>, b: &CoefficientSet<T>) -> Result<CoefficientSet<T>> {
    a.require(Family::Occpt)?;
    b.require(Family::Occpt)?;
    if a.n != b.n {
        return Err(Error::LengthMismatch {
            expected: a.n,
            actual: b.n,
        });
    }
    let n = a.n;
    let nt = T::of_usize(n);
    let mut out = a.clone();
    for (p, k) in a.pairs() {
        let (a0, a1) = a.pair(p, k).expect("pair present");
        let (b0, b1) = b.pair(p, k).expect("pair present");
        let cos_slot = (n / p * k) % n;
        if p <= 2 {
            out.flat[cos_slot] = nt * a0 * b0;
        } else {
            out.flat[cos_slot] = nt * (a0 * b0 - a1 * b1);
            out.flat[n / p * (p - k)] = nt * (a0 * b1 + a1 * b0);
        }
    }
    Ok(out)
}

/// Signal energy from orthogonal coefficients:
/// `N (beta_1^2 + beta_2^2) + 2N sum_{p >= 3} (beta0^2 + beta1^2)`.
pub fn parseval_energy<T: Real>(c: &CoefficientSet<T>) -> Result<T> {
    c.require(Family::Occpt)?;
    let nt = T::of_usize(c.n);
    let mut e = T::zero();
    for (p, k) in c.pairs() {
        let (b0, b1) = c.pair(p, k).expect("pair present");
        let w = T::of(2.0) * scale_m::<T>(p);
        e += w * (b0 * b0 + b1 * b1);
    }
    Ok(nt * e)
}

pub fn parseval_energy_complex<T: Real>(c: &ComplexCoefficientSet<T>) -> Result<T> {
    Ok(parseval_energy(&c.re)? + parseval_energy(&c.im)?)
}

/// Orthogonal coefficient of `x` at an arbitrary (not reduced) residue `k`,
/// evaluated straight from the analysis sum.
pub fn occpt_coefficient_at<T: Real>(x: &[T], p: usize, k: usize, kind: ColumnKind) -> Result<T> {
    let n = check_len(x)?;
    if p == 0 || n % p != 0 {
        return Err(Error::NoSuchPeriod(p));
    }
    let two = T::of(2.0);
    let m = scale_m::<T>(p);
    let pt = T::of_usize(p);
    let kt = T::of_usize(k);
    let use_sin = match kind {
        ColumnKind::Cos => false,
        ColumnKind::Sin => p >= 3,
        _ => return Err(Error::UnsupportedFamily(Family::Occpt)),
    };
    let acc: T = x
        .iter()
        .enumerate()
        .map(|(t, &v)| {
            let a = T::two_pi() * kt * T::of_usize(t) / pt;
            let basis = if use_sin { two * a.sin() } else { two * m * a.cos() };
            v * basis
        })
        .sum();
    Ok(acc / (two * T::of_usize(n) * m))
}

/// Check that re-evaluating every coefficient of `c` at `k + multiple * N`
/// reproduces it within `tol`.
pub fn coefficient_period_check<T: Real>(x: &[T], c: &CoefficientSet<T>, multiple: usize, tol: T) -> Result<bool> {
    c.require(Family::Occpt)?;
    let n = c.n;
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: x.len(),
        });
    }
    for (idx, v) in c.iter() {
        let shifted = occpt_coefficient_at(x, idx.p, idx.k + multiple * n, idx.kind)?;
        if (shifted - v).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::npm::build_occpt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
    }

    fn pi() -> f64 {
        std::f64::consts::PI
    }

    #[test]
    fn occpt_dc_and_cosine() {
        let c = occpt_analysis(&[1.0f64; 8]).unwrap();
        assert!((c.flat()[0] - 1.0).abs() < 1e-15);
        assert!(c.flat()[1..].iter().all(|v| v.abs() < 1e-15));

        let x: Vec<f64> = (0..8).map(|n| (2.0 * pi() * n as f64 / 8.0).cos()).collect();
        let c = occpt_analysis(&x).unwrap();
        for (k, v) in c.flat().iter().enumerate() {
            let want = if k == 1 { 0.5 } else { 0.0 };
            assert!((v - want).abs() < 1e-14, "K={k}: {v}");
        }
        let back = occpt_synthesis(&c).unwrap();
        assert!(back.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-14));
    }

    #[test]
    fn occpt_matches_matrix_definition() {
        for n in 1..=24 {
            let x = random(n, n as u64);
            let e = build_occpt::<f64>(n);
            let m = e.real().unwrap();
            let c = occpt_analysis(&x).unwrap();
            for (j, idx) in e.columns().iter().enumerate() {
                let scale = 2.0 * n as f64 * scale_m::<f64>(idx.p);
                let want = crate::linalg::dot(m.col(j), &x) / scale;
                assert!((c.get(idx).unwrap() - want).abs() < 1e-12, "{n} {idx}");
            }
        }
    }

    #[test]
    fn slot_bridge_round_trips() {
        for n in 1..=64 {
            for s in 0..n {
                let idx = occpt_index_of_slot(n, s);
                assert_eq!(occpt_slot(n, &idx), Some(s));
            }
        }
    }

    #[test]
    fn tone_coefficients_at_p18_k5() {
        let x: Vec<f64> = (0..54)
            .map(|n| 0.6 * (2.0 * pi() * 100.0 * n as f64 / 360.0 + pi() / 3.0).cos())
            .collect();
        let c = occpt_analysis(&x).unwrap();
        let (b0, b1) = c.pair(18, 5).unwrap();
        assert_eq!(format!("{b0:.3}"), "0.150");
        assert_eq!(format!("{b1:.3}"), "-0.260");
    }

    #[test]
    fn ccpt_basis_vectors() {
        let x: Vec<f64> = (0..6).map(|n| crate::ccps::CcpsSpec::cos(3, 1).unwrap().value(n)).collect();
        let c = ccpt1_analysis(&x).unwrap();
        let hit = c.position(&SubspaceIndex::new(3, 1, ColumnKind::Shift(0))).unwrap();
        for (i, v) in c.flat().iter().enumerate() {
            assert!((v - if i == hit { 1.0 } else { 0.0 }).abs() < 1e-12);
        }

        let s = crate::ccps::CcpsSpec::sin(4, 1).unwrap();
        let x: Vec<f64> = (0..8).map(|n| s.value(n - 1)).collect();
        let c = ccpt2_analysis(&x).unwrap();
        let hit = c.position(&SubspaceIndex::new(4, 1, ColumnKind::Shift(1))).unwrap();
        for (i, v) in c.flat().iter().enumerate() {
            assert!((v - if i == hit { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
    }

    #[test]
    fn round_trips_every_family() {
        for family in [Family::Occpt, Family::Ccpt1, Family::Ccpt2, Family::Rpt] {
            for n in [1, 2, 7, 18, 32] {
                let x = random(n, 7 + n as u64);
                let c = analyze(family, &x).unwrap();
                let back = synthesize(&c).unwrap();
                let err = crate::scalar::max_abs_diff(&x, &back);
                assert!(err < 1e-9, "{family} {n}: {err}");
            }
        }
        let re = random(12, 1);
        let im = random(12, 2);
        let c = analyze_complex(Family::DftNpm, &re, &im).unwrap();
        let (r2, i2) = synthesize_complex(&c).unwrap();
        assert!(crate::scalar::max_abs_diff(&re, &r2) < 1e-12);
        assert!(crate::scalar::max_abs_diff(&im, &i2) < 1e-12);
    }

    #[test]
    fn factorization_is_cached() {
        let a = factorization::<f64>(Family::Ccpt1, 10).unwrap();
        let b = factorization::<f64>(Family::Ccpt1, 10).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let _f32 = factorization::<f32>(Family::Ccpt1, 10).unwrap();
        assert!(factorization::<f64>(Family::DftNpm, 4).is_err());
    }

    #[test]
    fn dft_bridge_small() {
        let x = dft_from_occpt(&occpt_analysis(&[1.0f64; 4]).unwrap()).unwrap();
        assert!((x[0] - Complex::new(4.0, 0.0)).norm() < 1e-14);
        assert!(x[1..].iter().all(|v| v.norm() < 1e-14));
    }

    #[test]
    fn shift_identities() {
        let x = random(24, 3);
        let c = occpt_analysis(&x).unwrap();
        for m in [0, 24] {
            let s = shift_coefficients(&c, m).unwrap();
            assert!(crate::scalar::max_abs_diff(s.flat(), c.flat()) < 1e-14);
        }
    }

    #[test]
    fn parseval_examples() {
        let e = parseval_energy(&occpt_analysis(&[1.0f64; 8]).unwrap()).unwrap();
        assert!((e - 8.0).abs() < 1e-12);
        let x: Vec<f64> = (0..8).map(|n| (2.0 * pi() * n as f64 / 8.0).cos()).collect();
        assert!((parseval_energy(&occpt_analysis(&x).unwrap()).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn wrong_family_is_rejected() {
        let c = ccpt1_analysis(&random(6, 1)).unwrap();
        assert!(matches!(parseval_energy(&c), Err(Error::WrongFamily { .. })));
        assert!(matches!(occpt_analysis::<f64>(&[]), Err(Error::EmptySignal)));
    }

    #[test]
    fn period_check_examples() {
        let x = random(12, 9);
        let c = occpt_analysis(&x).unwrap();
        assert!(coefficient_period_check(&x, &c, 1, 1e-12).unwrap());
        assert!(coefficient_period_check(&x, &c, 2, 1e-12).unwrap());
    }
}
