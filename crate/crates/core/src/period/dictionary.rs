//! Fat periodic dictionaries and the weighted minimum-norm solve
//! `b = T^-2 F^H (F T^-2 F^H)^-1 x`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{Cholesky, Matrix, Svd};
use crate::npm::{column_value, subspace_indices, ColumnKind, Family, SubspaceIndex};
use crate::number_theory::totient;
use crate::scalar::Real;

use super::{component_from_pair, FrequencyComponent, PeriodReport, StrengthMode};

/// Gram condition estimates above this switch the solve to the SVD path.
pub const CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy)]
pub enum Penalty {
    /// `f(p) = p^2`.
    Square,
    /// `f(p) = phi(p)`.
    Totient,
    Custom(fn(usize) -> f64),
}

impl Penalty {
    pub fn value(&self, p: usize) -> f64 {
        match self {
            Penalty::Square => (p * p) as f64,
            Penalty::Totient => totient(p) as f64,
            Penalty::Custom(f) => f(p),
        }
    }
}

#[derive(Debug, Clone)]
struct GramFactor<T> {
    /// Symmetric (real embedding for complex dictionaries) Gram matrix.
    gram: Matrix<T>,
    chol: Option<Cholesky<T>>,
    svd: Option<Svd<T>>,
    condition: T,
}

/// `N x N_hat` dictionary stacking the exact-period subspace bases of every
/// period `1..=P_max`.
#[derive(Debug)]
pub struct PeriodicDictionary<T> {
    n: usize,
    p_max: usize,
    family: Family,
    penalty: Penalty,
    columns: Vec<SubspaceIndex>,
    re: Matrix<T>,
    im: Option<Matrix<T>>,
    weights: Vec<T>,
    warnings: Vec<String>,
    gram: OnceLock<GramFactor<T>>,
}

/// Build the dictionary; `family = DftNpm` gives the complex Farey dictionary.
pub fn build_dictionary<T: Real>(n: usize, p_max: usize, family: Family, penalty: Penalty) -> Result<PeriodicDictionary<T>> {
    if n == 0 {
        return Err(Error::EmptySignal);
    }
    if p_max == 0 {
        return Err(Error::ZeroPeriod);
    }
    let mut warnings = Vec::new();
    if p_max > n {
        warnings.push(format!("P_max = {p_max} exceeds N = {n}; long-period columns are truncated"));
    }
    let columns: Vec<SubspaceIndex> = (1..=p_max).flat_map(|p| subspace_indices(family, p)).collect();
    let w = columns.len();
    let mut re = Matrix::zeros(n, w);
    let mut im = family.is_complex().then(|| Matrix::zeros(n, w));
    for (j, idx) in columns.iter().enumerate() {
        for t in 0..n {
            let v = column_value::<T>(family, idx, t as i64);
            re[(t, j)] = v.re;
            if let Some(im) = im.as_mut() {
                im[(t, j)] = v.im;
            }
        }
    }
    let weights = columns
        .iter()
        .map(|c| {
            let f = penalty.value(c.p);
            T::of(1.0 / (f * f))
        })
        .collect();
    Ok(PeriodicDictionary {
        n,
        p_max,
        family,
        penalty,
        columns,
        re,
        im,
        weights,
        warnings,
        gram: OnceLock::new(),
    })
}

fn power_iteration<T: Real>(a: &Matrix<T>, apply: impl Fn(&[T]) -> Vec<T>) -> T {
    let n = a.rows();
    let mut v: Vec<T> = (0..n).map(|i| T::one() + T::of_usize(i % 7) * T::of(0.01)).collect();
    let mut lambda = T::zero();
    for _ in 0..200 {
        let norm = crate::scalar::norm2(&v);
        if norm == T::zero() {
            return T::zero();
        }
        for x in &mut v {
            *x /= norm;
        }
        let w = apply(&v);
        let next = crate::linalg::dot(&v, &w);
        v = w;
        if (next - lambda).abs() <= T::of(1e-10) * next.abs() {
            return next;
        }
        lambda = next;
    }
    lambda
}

impl<T: Real> PeriodicDictionary<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn penalty(&self) -> Penalty {
        self.penalty
    }

    /// `N_hat = sum of phi(p)` for `p = 1..=P_max`.
    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[SubspaceIndex] {
        &self.columns
    }

    /// Real part of `F` (all of it for real families).
    pub fn matrix(&self) -> &Matrix<T> {
        &self.re
    }

    pub fn matrix_im(&self) -> Option<&Matrix<T>> {
        self.im.as_ref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn weighted(&self, m: &Matrix<T>) -> Matrix<T> {
        let mut out = m.clone();
        for (j, &w) in self.weights.iter().enumerate() {
            let s = w.sqrt();
            for v in out.col_mut(j) {
                *v *= s;
            }
        }
        out
    }

    fn build_gram(&self) -> GramFactor<T> {
        let n = self.n;
        let fr = self.weighted(&self.re).transpose();
        let gram = match &self.im {
            None => fr.gram(),
            Some(im) => {
                let fi = self.weighted(im).transpose();
                let rr = fr.gram();
                let ii = fi.gram();
                // G = Gr + j Gi with Gr = Fr W Fr^T + Fi W Fi^T, Gi = Fi W Fr^T - Fr W Fi^T.
                let mut emb = Matrix::zeros(2 * n, 2 * n);
                for a in 0..n {
                    for b in 0..n {
                        let gr = rr[(a, b)] + ii[(a, b)];
                        let gi = crate::linalg::dot(fi.col(a), fr.col(b)) - crate::linalg::dot(fr.col(a), fi.col(b));
                        emb[(a, b)] = gr;
                        emb[(a + n, b + n)] = gr;
                        emb[(a, b + n)] = -gi;
                        emb[(a + n, b)] = gi;
                    }
                }
                emb
            }
        };
        let chol = Cholesky::factor(&gram).ok();
        let condition = match &chol {
            Some(ch) => {
                let hi = power_iteration(&gram, |v| gram.mul_vec(v));
                let inv_lo = power_iteration(&gram, |v| ch.solve(v));
                if inv_lo > T::zero() {
                    hi * inv_lo
                } else {
                    T::infinity()
                }
            }
            None => T::infinity(),
        };
        let ill = !(condition <= T::of(CONDITION_LIMIT));
        let svd = ill.then(|| Svd::new(&gram));
        GramFactor {
            gram,
            chol: if ill { None } else { chol },
            svd,
            condition,
        }
    }

    fn factor(&self) -> &GramFactor<T> {
        self.gram.get_or_init(|| self.build_gram())
    }

    /// Condition estimate of the (embedded) Gram matrix `F T^-2 F^H`.
    pub fn gram_condition(&self) -> T {
        self.factor().condition
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.factor().gram
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DictionarySolution<T> {
    pub family: Family,
    pub columns: Vec<SubspaceIndex>,
    pub coefficients: Vec<T>,
    /// Imaginary parts for the complex dictionary.
    pub coefficients_im: Option<Vec<T>>,
    /// `|b_j|^2` summed per period `1..=P_max`.
    pub strengths: BTreeMap<usize, T>,
    pub residual_norm: T,
    pub condition_estimate: T,
    /// The Gram condition exceeded the limit and the SVD path was used.
    pub ill_conditioned: bool,
}

impl<T: Real> DictionarySolution<T> {
    pub fn report(&self, threshold: T) -> Result<PeriodReport<T>> {
        PeriodReport::from_strengths(self.strengths.clone(), threshold, StrengthMode::Raw)
    }

    pub fn coefficient(&self, idx: &SubspaceIndex) -> Option<T> {
        self.columns.iter().position(|c| c == idx).map(|j| self.coefficients[j])
    }

    /// `(b_cos, b_sin)` for an orthogonal-family dictionary.
    pub fn pair(&self, p: usize, k: usize) -> Option<(T, T)> {
        if self.family != Family::Occpt {
            return None;
        }
        let b0 = self.coefficient(&SubspaceIndex::new(p, k, ColumnKind::Cos))?;
        let b1 = if p <= 2 {
            T::zero()
        } else {
            self.coefficient(&SubspaceIndex::new(p, k, ColumnKind::Sin))?
        };
        Some((b0, b1))
    }

    /// Frequency components of an orthogonal-family solution.
    pub fn components(&self, fs: Option<f64>, min_magnitude: T) -> Vec<FrequencyComponent<T>> {
        let mut seen: Vec<(usize, usize)> = self.columns.iter().map(|c| (c.p, c.k)).collect();
        seen.dedup();
        seen.into_iter()
            .filter_map(|(p, k)| self.pair(p, k).map(|(b0, b1)| component_from_pair(p, k, b0, b1, fs)))
            .filter(|c| c.magnitude > min_magnitude)
            .collect()
    }
}

/// Weighted minimum-norm solution of `x = F b`.
pub fn dictionary_solve<T: Real>(x: &[T], d: &PeriodicDictionary<T>) -> Result<DictionarySolution<T>> {
    let n = d.n;
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: x.len(),
        });
    }
    let f = d.factor();
    let dim = f.gram.rows();
    let mut rhs = x.to_vec();
    rhs.resize(dim, T::zero());
    let y = match (&f.chol, &f.svd) {
        (Some(ch), _) => ch.solve(&rhs),
        (None, Some(svd)) => {
            let tol = T::epsilon() * T::of_usize(dim) * T::of(10.0);
            svd.solve_min_norm(&rhs, tol)
        }
        (None, None) => return Err(Error::Singular),
    };
    let (yr, yi) = y.split_at(n);
    let mut b_re = Vec::with_capacity(d.width());
    let mut b_im = d.im.as_ref().map(|_| Vec::with_capacity(d.width()));
    for j in 0..d.width() {
        let w = d.weights[j];
        let cr = d.re.col(j);
        match (&d.im, b_im.as_mut()) {
            (Some(im), Some(out)) => {
                let ci = im.col(j);
                // conj(F) y.
                let re = crate::linalg::dot(cr, yr) + crate::linalg::dot(ci, yi);
                let imv = crate::linalg::dot(cr, yi) - crate::linalg::dot(ci, yr);
                b_re.push(w * re);
                out.push(w * imv);
            }
            _ => b_re.push(w * crate::linalg::dot(cr, yr)),
        }
    }
    let mut recon = d.re.mul_vec(&b_re);
    if let (Some(im), Some(bi)) = (&d.im, &b_im) {
        let t = im.mul_vec(bi);
        for (r, v) in recon.iter_mut().zip(t) {
            *r -= v;
        }
    }
    let mut residual_sq: T = recon.iter().zip(x).map(|(r, v)| (*r - *v) * (*r - *v)).sum();
    if let (Some(im), Some(bi)) = (&d.im, &b_im) {
        // Imaginary residual of F b against the real target.
        let a = d.re.mul_vec(bi);
        let b = im.mul_vec(&b_re);
        residual_sq += a.iter().zip(&b).map(|(u, v)| (*u + *v) * (*u + *v)).sum::<T>();
    }
    let mut strengths = BTreeMap::new();
    for (j, c) in d.columns.iter().enumerate() {
        let mut e = b_re[j] * b_re[j];
        if let Some(bi) = &b_im {
            e += bi[j] * bi[j];
        }
        *strengths.entry(c.p).or_insert(T::zero()) += e;
    }
    Ok(DictionarySolution {
        family: d.family,
        columns: d.columns.clone(),
        coefficients: b_re,
        coefficients_im: b_im,
        strengths,
        residual_norm: residual_sq.sqrt(),
        condition_estimate: f.condition,
        ill_conditioned: f.svd.is_some(),
    })
}
