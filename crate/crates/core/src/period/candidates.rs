//! Candidate-period estimation from the shortest usable data record.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{default_rank_tol, Lu, Matrix, Svd};
use crate::npm::{real_column_value, subspace_indices, Family, SubspaceIndex};
use crate::number_theory::{divisor_set, gcd};
use crate::scalar::Real;

/// `max over pairs (P_i + P_j - gcd(P_i, P_j))`.
pub fn min_data_length(candidates: &[usize]) -> Result<usize> {
    if candidates.len() < 2 {
        return Err(Error::TooFewCandidates(candidates.len()));
    }
    if candidates.contains(&0) {
        return Err(Error::ZeroPeriod);
    }
    let mut best = 0;
    for (i, &a) in candidates.iter().enumerate() {
        for &b in &candidates[i + 1..] {
            best = best.max(a + b - gcd(a, b));
        }
    }
    Ok(best)
}

/// Every divisor of every candidate, ascending and deduplicated.
pub fn candidate_divisors(candidates: &[usize]) -> Vec<usize> {
    let mut d: Vec<usize> = candidates.iter().flat_map(|&p| divisor_set(p).divisors).collect();
    d.sort_unstable();
    d.dedup();
    d
}

/// `rows x width` matrix of the subspace bases of all candidate divisors,
/// with its column metadata.
pub fn candidate_matrix<T: Real>(rows: usize, candidates: &[usize], family: Family) -> Result<(Matrix<T>, Vec<SubspaceIndex>)> {
    if family.is_complex() {
        return Err(Error::UnsupportedFamily(family));
    }
    let columns: Vec<SubspaceIndex> = candidate_divisors(candidates)
        .into_iter()
        .flat_map(|d| subspace_indices(family, d))
        .collect();
    let h = Matrix::from_fn(rows, columns.len(), |i, j| real_column_value(family, &columns[j], i as i64));
    Ok((h, columns))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSolution<T> {
    pub n_min: usize,
    pub columns: Vec<SubspaceIndex>,
    pub coefficients: Vec<T>,
    pub rank: usize,
    /// Square sum of the coefficients of each divisor subspace.
    pub subspace_strengths: BTreeMap<usize, T>,
    /// Strength of the exact-period subspace of each candidate, in input order.
    pub candidate_strengths: Vec<(usize, T)>,
}

impl<T: Real> CandidateSolution<T> {
    /// Candidates whose strength is at least `threshold` times the largest.
    pub fn identified(&self, threshold: T) -> Vec<usize> {
        let max = self.candidate_strengths.iter().fold(T::zero(), |m, &(_, s)| m.max(s));
        if max <= T::zero() {
            return Vec::new();
        }
        let mut out: Vec<usize> = self
            .candidate_strengths
            .iter()
            .filter(|&&(_, s)| s >= threshold * max)
            .map(|&(p, _)| p)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Solve `x = H z` with `H` square over the candidate divisor subspaces.
pub fn candidate_matrix_solve<T: Real>(x: &[T], candidates: &[usize], family: Family) -> Result<CandidateSolution<T>> {
    let n_min = min_data_length(candidates)?;
    if x.len() != n_min {
        return Err(Error::LengthMismatch {
            expected: n_min,
            actual: x.len(),
        });
    }
    let (h, columns) = candidate_matrix::<T>(n_min, candidates, family)?;
    if h.cols() != n_min {
        return Err(Error::NonSquareCandidateBasis {
            rows: n_min,
            width: h.cols(),
        });
    }
    let rank = Svd::new(&h).rank(default_rank_tol::<T>(n_min));
    if rank < n_min {
        return Err(Error::RankDeficient { rank, size: n_min });
    }
    let z = Lu::factor(&h)?.solve(x);
    let mut subspace_strengths = BTreeMap::new();
    for (c, &v) in columns.iter().zip(&z) {
        *subspace_strengths.entry(c.p).or_insert(T::zero()) += v * v;
    }
    let candidate_strengths = candidates
        .iter()
        .map(|&p| (p, subspace_strengths.get(&p).copied().unwrap_or(T::zero())))
        .collect();
    Ok(CandidateSolution {
        n_min,
        columns,
        coefficients: z,
        rank,
        subspace_strengths,
        candidate_strengths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::npm::ColumnKind;

    fn brute_nmin(p: &[usize]) -> usize {
        let mut best = 0;
        for i in 0..p.len() {
            for j in 0..p.len() {
                if i != j {
                    best = best.max(p[i] + p[j] - gcd(p[i], p[j]));
                }
            }
        }
        best
    }

    #[test]
    fn nmin_examples() {
        assert_eq!(min_data_length(&[6, 8]).unwrap(), 12);
        assert_eq!(min_data_length(&[3, 3]).unwrap(), 3);
        assert_eq!(min_data_length(&[5, 7, 9]).unwrap(), brute_nmin(&[5, 7, 9]));
        assert_eq!(min_data_length(&[5, 7, 9]).unwrap(), 15);
        assert_eq!(min_data_length(&[4]), Err(Error::TooFewCandidates(1)));
    }

    #[test]
    fn nmin_symmetric_and_duplicate_invariant() {
        assert_eq!(min_data_length(&[8, 6]).unwrap(), min_data_length(&[6, 8]).unwrap());
        assert_eq!(min_data_length(&[6, 8, 8, 6]).unwrap(), 12);
    }

    #[test]
    fn six_eight_basis() {
        assert_eq!(candidate_divisors(&[6, 8]), vec![1, 2, 3, 4, 6, 8]);
        for fam in [Family::Occpt, Family::Ccpt1, Family::Ccpt2] {
            let (h, cols) = candidate_matrix::<f64>(12, &[6, 8], fam).unwrap();
            assert_eq!(cols.len(), 12);
            assert_eq!(rank(&h), 12, "{fam}");
        }
    }

    #[test]
    fn eight_periodic_tone() {
        let idx = SubspaceIndex::new(8, 3, ColumnKind::Cos);
        let x: Vec<f64> = (0..12).map(|t| real_column_value(Family::Occpt, &idx, t)).collect();
        let s = candidate_matrix_solve(&x, &[6, 8], Family::Occpt).unwrap();
        assert_eq!(s.identified(0.2), vec![8]);
        assert!(s.candidate_strengths[0].1 < 1e-20);
    }

    #[test]
    fn square_and_non_square_bases() {
        // {5, 7}: N_min = 11, subspaces 1, 5, 7 span 1 + 4 + 6 = 11.
        assert!(candidate_matrix_solve(&[0.0f64; 11], &[5, 7], Family::Occpt).is_ok());
        // {4, 6}: N_min = 8, subspaces 1, 2, 3, 4, 6 span 1 + 1 + 2 + 2 + 2 = 8.
        assert!(candidate_matrix_solve(&[0.0f64; 8], &[4, 6], Family::Occpt).is_ok());
        // {3, 9}: N_min = 9, subspaces 1, 3, 9 span 1 + 2 + 6 = 9.
        assert!(candidate_matrix_solve(&[0.0f64; 9], &[3, 9], Family::Occpt).is_ok());
        // {2, 3, 4}: N_min = 6, subspaces 1, 2, 3, 4 span 6.
        assert!(candidate_matrix_solve(&[0.0f64; 6], &[2, 3, 4], Family::Occpt).is_ok());
        // {5, 7, 9}: N_min = 15, subspaces 1, 3, 5, 7, 9 span 1 + 2 + 4 + 6 + 6 = 19.
        assert_eq!(
            candidate_matrix_solve(&[0.0f64; 15], &[5, 7, 9], Family::Occpt),
            Err(Error::NonSquareCandidateBasis { rows: 15, width: 19 })
        );
    }
}
