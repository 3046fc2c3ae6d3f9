//! Radix-2 decimation-in-time fast orthogonal transform for `N = 2^v`.
//!
//! Each stage of size `n` keeps, per block, `X(K) = sum s(m) cos(2 pi K m / n)`
//! for `0 <= K <= n/2` at offset `K` and `Y(K) = sum s(m) sin(2 pi K m / n)`
//! for `1 <= K < n/2` at offset `n - K`. After the last stage the buffer is
//! `N beta(K)` in flat slot order.
//!
//! Every real multiplication and addition of the butterflies is counted,
//! including products with the tabulated twiddles at `K = 0` and `K = n/4`.
//! Twiddle generation and the final division by `N` are not counted.

use crate::error::{Error, Result};
use crate::npm::Family;
use crate::number_theory::is_power_of_two;
use crate::scalar::Real;
use crate::transform::{CoefficientSet, ComplexCoefficientSet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub real_mults: u64,
    pub real_adds: u64,
}

impl OpCounter {
    pub fn new(real_mults: u64, real_adds: u64) -> Self {
        Self { real_mults, real_adds }
    }
}

impl std::ops::Add for OpCounter {
    type Output = OpCounter;
    fn add(self, o: OpCounter) -> OpCounter {
        OpCounter::new(self.real_mults + o.real_mults, self.real_adds + o.real_adds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Real,
    Complex,
}

/// One block of a stage: the cosine half `X(0..=n/2)` and sine half
/// `Y(1..n/2)` of a size-`n` sub-transform.
#[derive(Debug, Clone, Copy)]
pub struct StageBuffer<'a, T> {
    size: usize,
    data: &'a [T],
}

impl<'a, T: Real> StageBuffer<'a, T> {
    pub fn size(&self) -> usize {
        self.size
    }

    /// `X(0), ..., X(n/2)`.
    pub fn cos_part(&self) -> &'a [T] {
        &self.data[..=self.size / 2]
    }

    /// `Y(1), ..., Y(n/2 - 1)`.
    pub fn sin_part(&self) -> Vec<T> {
        (1..self.size / 2).map(|k| self.data[self.size - k]).collect()
    }

    /// `X(K)` for any `K`, using `X(n - K) = X(K)`.
    pub fn x(&self, k: usize) -> T {
        let k = k % self.size;
        let k = if 2 * k > self.size { self.size - k } else { k };
        self.data[k]
    }

    /// `Y(K)` for any `K`, using `Y(n - K) = -Y(K)` and `Y(0) = Y(n/2) = 0`.
    pub fn y(&self, k: usize) -> T {
        let k = k % self.size;
        if k == 0 || 2 * k == self.size {
            T::zero()
        } else if 2 * k < self.size {
            self.data[self.size - k]
        } else {
            -self.data[k]
        }
    }
}

/// Whole buffer after a stage of block size `size`.
#[derive(Debug, Clone, PartialEq)]
pub struct StageTrace<T> {
    pub size: usize,
    pub buffer: Vec<T>,
}

impl<T: Real> StageTrace<T> {
    pub fn blocks(&self) -> usize {
        self.buffer.len() / self.size
    }

    pub fn block(&self, b: usize) -> StageBuffer<'_, T> {
        StageBuffer {
            size: self.size,
            data: &self.buffer[b * self.size..(b + 1) * self.size],
        }
    }
}

/// Precomputed permutation and twiddles for one transform size.
#[derive(Debug, Clone)]
pub struct FoccptPlan<T> {
    n: usize,
    perm: Vec<usize>,
    /// Per stage size `n = 4, 8, ..., N`: `(cos, sin)` of `2 pi K / n`, `K = 0..=n/4`.
    twiddles: Vec<Vec<(T, T)>>,
}

fn bit_reverse_permutation(n: usize) -> Vec<usize> {
    let bits = n.trailing_zeros();
    (0..n)
        .map(|i| if bits == 0 { 0 } else { i.reverse_bits() >> (usize::BITS - bits) })
        .collect()
}

impl<T: Real> FoccptPlan<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || !is_power_of_two(n) {
            return Err(Error::NotPowerOfTwo(n));
        }
        let mut twiddles = Vec::new();
        let mut size = 4;
        while size <= n {
            let q = size / 4;
            let table = (0..=q)
                .map(|k| {
                    if k == 0 {
                        (T::one(), T::zero())
                    } else if k == q {
                        (T::zero(), T::one())
                    } else {
                        let a = T::two_pi() * T::of_usize(k) / T::of_usize(size);
                        (a.cos(), a.sin())
                    }
                })
                .collect();
            twiddles.push(table);
            size *= 2;
        }
        Ok(Self {
            n,
            perm: bit_reverse_permutation(n),
            twiddles,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Input order after bit reversal, e.g. `0, 4, 2, 6, 1, 5, 3, 7` for `N = 8`.
    pub fn input_order(&self) -> &[usize] {
        &self.perm
    }

    fn run(&self, x: &[T], mut trace: Option<&mut Vec<StageTrace<T>>>) -> Result<(Vec<T>, OpCounter)> {
        let n = self.n;
        if x.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: x.len(),
            });
        }
        let mut mults = 0u64;
        let mut adds = 0u64;
        let mut src: Vec<T> = self.perm.iter().map(|&i| x[i]).collect();
        let mut dst = vec![T::zero(); n];

        // Size-2 blocks: X(0) = h + g, X(1) = h - g.
        let c0 = T::one();
        for b in (0..n).step_by(2) {
            let (h, g) = (src[b], src[b + 1]);
            let t = c0 * g;
            mults += 1;
            dst[b] = h + t;
            dst[b + 1] = h - t;
            adds += 2;
        }
        std::mem::swap(&mut src, &mut dst);
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(StageTrace { size: 2, buffer: src.clone() });
        }

        let mut size = 4;
        for table in &self.twiddles {
            let m = size / 2;
            let q = size / 4;
            for o in (0..n).step_by(size) {
                let xh = |k: usize| src[o + k];
                let yh = |k: usize| src[o + m - k];
                let xg = |k: usize| src[o + m + k];
                let yg = |k: usize| src[o + size - k];

                let (c, _) = table[0];
                let t = c * xg(0);
                mults += 1;
                dst[o] = xh(0) + t;
                dst[o + m] = xh(0) - t;
                adds += 2;

                let (c, s) = table[q];
                let t = c * xg(q);
                let y = s * xg(q);
                mults += 2;
                dst[o + q] = xh(q) + t;
                dst[o + size - q] = y;
                adds += 1;

                for k in 1..q {
                    let (c, s) = table[k];
                    let (xgk, ygk, xhk, yhk) = (xg(k), yg(k), xh(k), yh(k));
                    let a = c * xgk;
                    let bb = s * ygk;
                    let c2 = c * ygk;
                    let d = s * xgk;
                    mults += 4;
                    dst[o + k] = xhk + a - bb;
                    dst[o + m - k] = xhk - a + bb;
                    dst[o + size - k] = yhk + c2 + d;
                    dst[o + m + k] = -yhk + c2 + d;
                    adds += 8;
                }
            }
            std::mem::swap(&mut src, &mut dst);
            if let Some(tr) = trace.as_deref_mut() {
                tr.push(StageTrace { size, buffer: src.clone() });
            }
            size *= 2;
        }
        Ok((src, OpCounter::new(mults, adds)))
    }

    fn finish(&self, raw: Vec<T>) -> Result<CoefficientSet<T>> {
        let inv = T::one() / T::of_usize(self.n);
        CoefficientSet::from_flat(Family::Occpt, raw.into_iter().map(|v| v * inv).collect())
    }

    pub fn process(&self, x: &[T]) -> Result<(CoefficientSet<T>, OpCounter)> {
        let (raw, ops) = self.run(x, None)?;
        Ok((self.finish(raw)?, ops))
    }

    /// As [`process`](Self::process), also returning the buffer after every stage.
    pub fn process_traced(&self, x: &[T]) -> Result<(CoefficientSet<T>, OpCounter, Vec<StageTrace<T>>)> {
        let mut trace = Vec::new();
        let (raw, ops) = self.run(x, Some(&mut trace))?;
        Ok((self.finish(raw)?, ops, trace))
    }

    /// Two real passes; the counters are summed.
    pub fn process_complex(&self, re: &[T], im: &[T]) -> Result<(ComplexCoefficientSet<T>, OpCounter)> {
        let (a, oa) = self.process(re)?;
        let (b, ob) = self.process(im)?;
        Ok((ComplexCoefficientSet { re: a, im: b }, oa + ob))
    }
}

/// Fast orthogonal analysis of a real signal of power-of-two length.
pub fn foccpt<T: Real>(x: &[T]) -> Result<(CoefficientSet<T>, OpCounter)> {
    FoccptPlan::new(x.len())?.process(x)
}

pub fn foccpt_complex<T: Real>(re: &[T], im: &[T]) -> Result<(ComplexCoefficientSet<T>, OpCounter)> {
    FoccptPlan::new(re.len())?.process_complex(re, im)
}

/// Closed-form operation counts: real input
/// `(N log2 N - N + 1, 2 N log2 N - 7N/2 + 5)`, complex input doubled.
pub fn predicted_counts(n: usize, kind: InputKind) -> Result<OpCounter> {
    if n < 2 || !is_power_of_two(n) {
        return Err(Error::NotPowerOfTwo(n));
    }
    let nn = n as u64;
    let v = n.trailing_zeros() as u64;
    let mults = nn * v - nn + 1;
    let adds = 2 * nn * v + 5 - 7 * nn / 2;
    Ok(match kind {
        InputKind::Real => OpCounter::new(mults, adds),
        InputKind::Complex => OpCounter::new(2 * mults, 2 * adds),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityRow {
    pub transform: &'static str,
    pub family: Family,
    pub mults: u64,
    pub adds: u64,
}

/// Multiplication and addition counts for the five transforms at size `N`.
///
/// Direct evaluation costs `2N^2` / `2N^2 - 2N` for the real-coefficient
/// transforms and `4N^2` / `4N^2 - 2N` for the DFT. For `N = 2^v` the OCCPT
/// row switches to the fast algorithm on a complex input and the DFT row to
/// the radix-2 FFT (`2N log2 N`, `3N log2 N`). `N = 1` needs no arithmetic.
pub fn complexity_table(n: usize) -> Vec<ComplexityRow> {
    let rows = [
        ("CCPT1", Family::Ccpt1),
        ("CCPT2", Family::Ccpt2),
        ("OCCPT", Family::Occpt),
        ("DFT", Family::DftNpm),
        ("RPT", Family::Rpt),
    ];
    let nn = n as u64;
    let fast = n >= 2 && is_power_of_two(n);
    let v = n.trailing_zeros() as u64;
    rows.iter()
        .map(|&(transform, family)| {
            let (mults, adds) = if n <= 1 {
                (0, 0)
            } else {
                match (family, fast) {
                    (Family::Occpt, true) => {
                        let p = predicted_counts(n, InputKind::Complex).expect("power of two");
                        (p.real_mults, p.real_adds)
                    }
                    (Family::DftNpm, true) => (2 * nn * v, 3 * nn * v),
                    (Family::DftNpm, false) => (4 * nn * nn, 4 * nn * nn - 2 * nn),
                    _ => (2 * nn * nn, 2 * nn * nn - 2 * nn),
                }
            };
            ComplexityRow {
                transform,
                family,
                mults,
                adds,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::occpt_analysis;

    #[test]
    fn two_point_base_case() {
        let (c, ops) = foccpt(&[3.0f64, 1.0]).unwrap();
        assert_eq!(c.flat(), &[2.0, 1.0]);
        assert_eq!(ops, OpCounter::new(1, 2));
    }

    #[test]
    fn bit_reversed_order() {
        let plan = FoccptPlan::<f64>::new(8).unwrap();
        assert_eq!(plan.input_order(), &[0, 4, 2, 6, 1, 5, 3, 7]);
    }

    #[test]
    fn eight_point_counts() {
        let x: Vec<f64> = (0..8).map(|i| (i as f64 * 1.3).cos() + 0.1 * i as f64).collect();
        let (c, ops) = foccpt(&x).unwrap();
        assert_eq!(ops, OpCounter::new(17, 25));
        assert_eq!(predicted_counts(8, InputKind::Real).unwrap(), ops);
        let direct = occpt_analysis(&x).unwrap();
        assert!(crate::scalar::max_abs_diff(c.flat(), direct.flat()) < 1e-13);
    }

    #[test]
    fn predicted_examples() {
        assert_eq!(predicted_counts(2, InputKind::Real).unwrap(), OpCounter::new(1, 2));
        assert_eq!(predicted_counts(1024, InputKind::Real).unwrap(), OpCounter::new(9217, 16901));
        assert_eq!(predicted_counts(8, InputKind::Complex).unwrap(), OpCounter::new(34, 50));
        assert_eq!(predicted_counts(12, InputKind::Real), Err(Error::NotPowerOfTwo(12)));
        assert_eq!(predicted_counts(1, InputKind::Real), Err(Error::NotPowerOfTwo(1)));
    }

    #[test]
    fn rejects_other_lengths() {
        assert_eq!(foccpt(&[1.0f64; 6]).unwrap_err(), Error::NotPowerOfTwo(6));
        assert_eq!(foccpt::<f64>(&[1.0]).unwrap_err(), Error::NotPowerOfTwo(1));
    }

    #[test]
    fn table_examples() {
        let t7 = complexity_table(7);
        let dft = t7.iter().find(|r| r.transform == "DFT").unwrap();
        let occ = t7.iter().find(|r| r.transform == "OCCPT").unwrap();
        assert_eq!((dft.mults, dft.adds), (196, 182));
        assert_eq!((occ.mults, occ.adds), (98, 84));
        let t8 = complexity_table(8);
        let occ = t8.iter().find(|r| r.transform == "OCCPT").unwrap();
        assert_eq!((occ.mults, occ.adds), (34, 50));
        assert!(complexity_table(1).iter().all(|r| r.mults == 0 && r.adds == 0));
    }

    #[test]
    fn complex_path_doubles_counts() {
        let re: Vec<f64> = (0..16).map(|i| i as f64).collect();
        let im: Vec<f64> = (0..16).map(|i| (i as f64).sin()).collect();
        let (_, ops) = foccpt_complex(&re, &im).unwrap();
        assert_eq!(ops, predicted_counts(16, InputKind::Complex).unwrap());
    }

    #[test]
    fn single_precision_agrees() {
        let x: Vec<f32> = (0..64).map(|i| ((i * 7 % 11) as f32) - 5.0).collect();
        let (c, _) = foccpt(&x).unwrap();
        let d = occpt_analysis(&x).unwrap();
        assert!(crate::scalar::max_abs_diff(c.flat(), d.flat()) < 1e-4);
    }
}
