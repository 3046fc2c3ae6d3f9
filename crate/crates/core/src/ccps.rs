//! Complex conjugate pair sums (CCPS), Ramanujan sums and their closed-form
//! spectra and inner products.
//!
//! For period `L` and residue `k` coprime to `L`:
//!
//! * type-1: `c1(n) = 2M cos(2 pi k n / L)`
//! * type-2: `c2(n) = 2 sin(2 pi k n / L)` for `L >= 3`, `1` for `L = 1`,
//!   `(-1)^n` for `L = 2`
//!
//! with `M = 1/2` when `L <= 2` and `M = 1` otherwise.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::number_theory::{gcd, lcm, totient};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CcpsKind {
    /// Type-1, sum of the conjugate pair.
    Cos,
    /// Type-2, difference of the conjugate pair.
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CcpsSpec {
    pub period: usize,
    pub k: usize,
    pub kind: CcpsKind,
}

/// Scale `M`: `1/2` for `L` in `{1, 2}`, else `1`.
pub fn scale_m<T: Real>(period: usize) -> T {
    if period <= 2 {
        T::of(0.5)
    } else {
        T::one()
    }
}

/// `2 pi r / L` with `r` taken from `k * n` reduced into `0..L`.
#[inline]
pub(crate) fn reduced_angle<T: Real>(k: i64, n: i64, period: usize) -> T {
    let l = period as i64;
    let r = (k.rem_euclid(l) * n.rem_euclid(l)).rem_euclid(l);
    T::two_pi() * T::of_i64(r) / T::of_usize(period)
}

impl CcpsSpec {
    /// Any `k >= 1` coprime to `period` is accepted; `k` and `k + L` give
    /// the same sequence.
    pub fn new(period: usize, k: usize, kind: CcpsKind) -> Result<Self> {
        if period == 0 {
            return Err(Error::ZeroPeriod);
        }
        if k == 0 || gcd(k, period) != 1 {
            return Err(Error::InvalidResidue { period, k });
        }
        Ok(Self { period, k, kind })
    }

    pub fn cos(period: usize, k: usize) -> Result<Self> {
        Self::new(period, k, CcpsKind::Cos)
    }

    pub fn sin(period: usize, k: usize) -> Result<Self> {
        Self::new(period, k, CcpsKind::Sin)
    }

    pub fn scale<T: Real>(&self) -> T {
        scale_m(self.period)
    }

    /// Equivalent `CcpsSpec` with `k` in the half residue set and the sign that
    /// relates the two sequences.
    ///
    /// `c1(L, L-k) = c1(L, k)` and `c2(L, L-k) = -c2(L, k)`.
    pub fn canonical(&self) -> (Self, i8) {
        if self.period <= 2 {
            return (Self { k: 1, ..*self }, 1);
        }
        let r = self.k % self.period;
        if r <= self.period / 2 {
            (Self { k: r, ..*self }, 1)
        } else {
            let sign = match self.kind {
                CcpsKind::Cos => 1,
                CcpsKind::Sin => -1,
            };
            (
                Self {
                    k: self.period - r,
                    ..*self
                },
                sign,
            )
        }
    }

    /// Value at integer time `n` (negative `n` allowed).
    pub fn value<T: Real>(&self, n: i64) -> T {
        let l = self.period;
        match (self.kind, l) {
            (_, 1) => T::one(),
            (_, 2) => {
                if n.rem_euclid(2) == 0 {
                    T::one()
                } else {
                    -T::one()
                }
            }
            (CcpsKind::Cos, _) => T::of(2.0) * reduced_angle::<T>(self.k as i64, n, l).cos(),
            (CcpsKind::Sin, _) => T::of(2.0) * reduced_angle::<T>(self.k as i64, n, l).sin(),
        }
    }

    pub fn sequence<T: Real>(&self, length: usize) -> RealSequence<T> {
        RealSequence {
            values: (0..length as i64).map(|n| self.value(n)).collect(),
            period: self.period,
        }
    }
}

/// Finite window of a periodic real sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence<T> {
    pub values: Vec<T>,
    pub period: usize,
}

impl<T: Real> RealSequence<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at any integer index using the periodic extension.
    pub fn at(&self, n: i64) -> T {
        let p = self.period as i64;
        let base = n.rem_euclid(p) as usize;
        self.values[base]
    }
}

pub fn ccps1<T: Real>(period: usize, k: usize, length: usize) -> Result<RealSequence<T>> {
    Ok(CcpsSpec::cos(period, k)?.sequence(length))
}

pub fn ccps2<T: Real>(period: usize, k: usize, length: usize) -> Result<RealSequence<T>> {
    Ok(CcpsSpec::sin(period, k)?.sequence(length))
}

/// `c_q(n)`, one sample.
pub fn ramanujan_value<T: Real>(q: usize, n: i64) -> T {
    (1..=q)
        .filter(|&k| gcd(k, q) == 1)
        .map(|k| reduced_angle::<T>(k as i64, n, q).cos())
        .sum()
}

/// Ramanujan sum `c_q(n) = sum over k in U_q of cos(2 pi k n / q)`.
pub fn ramanujan_sum<T: Real>(q: usize, length: usize) -> Result<RealSequence<T>> {
    if q == 0 {
        return Err(Error::ZeroPeriod);
    }
    Ok(RealSequence {
        values: (0..length as i64).map(|n| ramanujan_value(q, n)).collect(),
        period: q,
    })
}

/// [`ramanujan_sum`] with every value rounded to the nearest integer.
pub fn ramanujan_sum_rounded<T: Real>(q: usize, length: usize) -> Result<RealSequence<T>> {
    let mut s = ramanujan_sum::<T>(q, length)?;
    for v in &mut s.values {
        *v = v.round();
    }
    Ok(s)
}

/// Closed-form `L`-point DFT of one period of the CCPS with residue `l`.
///
/// Type-1 puts `L` on bins `l` and `L - l`, type-2 puts `-jL` on bin `l` and
/// `+jL` on bin `L - l`. For `L <= 2` both kinds are the same real sequence
/// and the single nonzero bin carries `L`.
pub fn ccps_spectrum<T: Real>(period: usize, l: usize, kind: CcpsKind) -> Result<Vec<Complex<T>>> {
    let spec = CcpsSpec::new(period, l, kind)?;
    let half_ok = period <= 2 || l <= period / 2;
    if !half_ok {
        return Err(Error::InvalidResidue { period, k: l });
    }
    let lt = T::of_usize(period);
    let mut out = vec![Complex::new(T::zero(), T::zero()); period];
    if period <= 2 {
        out[spec.k % period] = Complex::new(lt, T::zero());
        return Ok(out);
    }
    match kind {
        CcpsKind::Cos => {
            out[l] = Complex::new(lt, T::zero());
            out[period - l] = Complex::new(lt, T::zero());
        }
        CcpsKind::Sin => {
            out[l] = Complex::new(T::zero(), -lt);
            out[period - l] = Complex::new(T::zero(), lt);
        }
    }
    Ok(out)
}

/// `sum_{n=0}^{L-1} a(n - shift_a) b(n - shift_b)` over `L = lcm(L_a, L_b)`,
/// evaluated in closed form.
pub fn ccps_inner_product<T: Real>(a: &CcpsSpec, shift_a: i64, b: &CcpsSpec, shift_b: i64) -> T {
    if a.period != b.period {
        return T::zero();
    }
    let (ca, sa) = a.canonical();
    let (cb, sb) = b.canonical();
    if ca.k != cb.k {
        return T::zero();
    }
    let l = a.period;
    let lt = T::of_usize(l);
    let sign = T::of_i64((sa * sb) as i64);
    let d = shift_a - shift_b;
    let theta = reduced_angle::<T>(ca.k as i64, d, l);
    let cross = l >= 3 && ca.kind != cb.kind;
    if !cross {
        return sign * T::of(2.0) * lt * scale_m::<T>(l) * theta.cos();
    }
    // <c1(n - la), c2(n - lb)> = 2L sin(theta (la - lb)); swapping roles flips it.
    let oriented = match ca.kind {
        CcpsKind::Cos => T::one(),
        CcpsKind::Sin => -T::one(),
    };
    sign * oriented * T::of(2.0) * lt * theta.sin()
}

/// Same quantity as [`ccps_inner_product`] by direct summation.
pub fn ccps_inner_product_direct<T: Real>(
    a: &CcpsSpec,
    shift_a: i64,
    b: &CcpsSpec,
    shift_b: i64,
) -> T {
    let l = lcm(a.period, b.period).expect("small periods");
    (0..l as i64)
        .map(|n| a.value::<T>(n - shift_a) * b.value::<T>(n - shift_b))
        .sum()
}

/// Energy of one period, `2 L M` (`phi` independent).
pub fn period_energy<T: Real>(period: usize) -> T {
    T::of(2.0) * T::of_usize(period) * scale_m::<T>(period)
}

/// Dimension of the subspace of exact period `p`.
pub fn subspace_dimension(p: usize) -> usize {
    totient(p)
}
