//! Nested periodic matrices: the permuted DFT, RPT, CCPT type-1/type-2 and
//! orthogonal CCPT bases, with per-column subspace metadata.
//!
//! Columns are ordered by divisor `p` ascending, then residue `k`
//! ascending, then `Cos` before `Sin` and `Shift(0)` before `Shift(1)`.

use std::fmt;
use std::ops::Range;

use num_complex::Complex;

use crate::ccps::{ramanujan_value, reduced_angle, CcpsKind, CcpsSpec};
use crate::error::{Error, Result};
use crate::linalg::{default_rank_tol, Matrix, Svd};
use crate::number_theory::{divisor_set, gcd, half_residues, totient};
use crate::scalar::Real;

/// Largest `N` accepted by the dense builders.
pub const MAX_DIRECT_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Permuted DFT matrix; in dictionaries this is the Farey family.
    DftNpm,
    Rpt,
    Ccpt1,
    Ccpt2,
    Occpt,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::DftNpm,
        Family::Rpt,
        Family::Ccpt1,
        Family::Ccpt2,
        Family::Occpt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::DftNpm => "dft-npm",
            Family::Rpt => "rpt",
            Family::Ccpt1 => "ccpt1",
            Family::Ccpt2 => "ccpt2",
            Family::Occpt => "occpt",
        }
    }

    pub fn is_complex(self) -> bool {
        self == Family::DftNpm
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dft-npm" | "dft" | "farey" => Ok(Family::DftNpm),
            "rpt" => Ok(Family::Rpt),
            "ccpt1" => Ok(Family::Ccpt1),
            "ccpt2" => Ok(Family::Ccpt2),
            "occpt" => Ok(Family::Occpt),
            other => Err(Error::InvalidArgument(format!("unknown family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnKind {
    Cos,
    Sin,
    /// Circular downshift by the given number of samples.
    Shift(u32),
    /// Complex exponential `exp(j 2 pi k' n / p)` with the full residue `k'`.
    Exp(usize),
}

impl fmt::Display for ColumnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnKind::Cos => f.write_str("cos"),
            ColumnKind::Sin => f.write_str("sin"),
            ColumnKind::Shift(s) => write!(f, "shift{s}"),
            ColumnKind::Exp(k) => write!(f, "exp{k}"),
        }
    }
}

/// Address of one basis column.
///
/// `k` is always the half-set representative; RPT columns use `k = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceIndex {
    pub p: usize,
    pub k: usize,
    pub kind: ColumnKind,
}

impl SubspaceIndex {
    pub fn new(p: usize, k: usize, kind: ColumnKind) -> Self {
        Self { p, k, kind }
    }
}

impl fmt::Display for SubspaceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, k={}, {})", self.p, self.k, self.kind)
    }
}

/// The columns spanning the exact-period-`p` subspace in `family`.
pub fn subspace_indices(family: Family, p: usize) -> Vec<SubspaceIndex> {
    assert!(p >= 1);
    match family {
        Family::DftNpm => (1..=p)
            .filter(|&k| gcd(k, p) == 1)
            .map(|k| {
                let canon = if p <= 2 { 1 } else { k.min(p - k) };
                SubspaceIndex::new(p, canon, ColumnKind::Exp(k))
            })
            .collect(),
        Family::Rpt => (0..totient(p) as u32)
            .map(|s| SubspaceIndex::new(p, 1, ColumnKind::Shift(s)))
            .collect(),
        Family::Ccpt1 | Family::Ccpt2 => {
            if p <= 2 {
                return vec![SubspaceIndex::new(p, 1, ColumnKind::Shift(0))];
            }
            half_residues(p)
                .into_iter()
                .flat_map(|k| {
                    [
                        SubspaceIndex::new(p, k, ColumnKind::Shift(0)),
                        SubspaceIndex::new(p, k, ColumnKind::Shift(1)),
                    ]
                })
                .collect()
        }
        Family::Occpt => {
            if p <= 2 {
                return vec![SubspaceIndex::new(p, 1, ColumnKind::Cos)];
            }
            half_residues(p)
                .into_iter()
                .flat_map(|k| {
                    [
                        SubspaceIndex::new(p, k, ColumnKind::Cos),
                        SubspaceIndex::new(p, k, ColumnKind::Sin),
                    ]
                })
                .collect()
        }
    }
}

/// Column metadata for the `N x N` matrix of `family`.
pub fn column_layout(family: Family, n: usize) -> Vec<SubspaceIndex> {
    divisor_set(n)
        .iter()
        .flat_map(|p| subspace_indices(family, p))
        .collect()
}

/// Entry `n` of a real-family column. Panics for `Exp` columns.
pub fn real_column_value<T: Real>(family: Family, idx: &SubspaceIndex, n: i64) -> T {
    match (family, idx.kind) {
        (Family::Occpt, ColumnKind::Cos) => CcpsSpec { period: idx.p, k: idx.k, kind: CcpsKind::Cos }.value(n),
        (Family::Occpt, ColumnKind::Sin) => CcpsSpec { period: idx.p, k: idx.k, kind: CcpsKind::Sin }.value(n),
        (Family::Ccpt1, ColumnKind::Shift(s)) => {
            CcpsSpec { period: idx.p, k: idx.k, kind: CcpsKind::Cos }.value(n - s as i64)
        }
        (Family::Ccpt2, ColumnKind::Shift(s)) => {
            CcpsSpec { period: idx.p, k: idx.k, kind: CcpsKind::Sin }.value(n - s as i64)
        }
        (Family::Rpt, ColumnKind::Shift(s)) => ramanujan_value(idx.p, n - s as i64),
        _ => panic!("{idx} is not a real {family} column"),
    }
}

/// Entry `n` of any column as a complex number.
pub fn column_value<T: Real>(family: Family, idx: &SubspaceIndex, n: i64) -> Complex<T> {
    match idx.kind {
        ColumnKind::Exp(k) => {
            let a = reduced_angle::<T>(k as i64, n, idx.p);
            Complex::new(a.cos(), a.sin())
        }
        _ => Complex::new(real_column_value(family, idx, n), T::zero()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Entries<T> {
    Real(Matrix<T>),
    Complex { re: Matrix<T>, im: Matrix<T> },
}

/// Dense `N x N` basis plus family tag and per-column metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicBasisMatrix<T> {
    n: usize,
    family: Family,
    entries: Entries<T>,
    columns: Vec<SubspaceIndex>,
}

impl<T: Real> PeriodicBasisMatrix<T> {
    /// Assemble from parts; used for hand-made matrices in validation tests.
    pub fn from_parts(family: Family, entries: Entries<T>, columns: Vec<SubspaceIndex>) -> Result<Self> {
        let (r, c) = match &entries {
            Entries::Real(m) => (m.rows(), m.cols()),
            Entries::Complex { re, im } => {
                if re.rows() != im.rows() || re.cols() != im.cols() {
                    return Err(Error::LengthMismatch {
                        expected: re.rows() * re.cols(),
                        actual: im.rows() * im.cols(),
                    });
                }
                (re.rows(), re.cols())
            }
        };
        if r != c {
            return Err(Error::LengthMismatch { expected: r, actual: c });
        }
        if columns.len() != c {
            return Err(Error::LengthMismatch {
                expected: c,
                actual: columns.len(),
            });
        }
        Ok(Self {
            n: r,
            family,
            entries,
            columns,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn columns(&self) -> &[SubspaceIndex] {
        &self.columns
    }

    pub fn entries(&self) -> &Entries<T> {
        &self.entries
    }

    /// Real entries, `None` for the complex DFT family.
    pub fn real(&self) -> Option<&Matrix<T>> {
        match &self.entries {
            Entries::Real(m) => Some(m),
            Entries::Complex { .. } => None,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        match &self.entries {
            Entries::Real(m) => Complex::new(m[(i, j)], T::zero()),
            Entries::Complex { re, im } => Complex::new(re[(i, j)], im[(i, j)]),
        }
    }

    pub fn column_lookup(&self, idx: &SubspaceIndex) -> Result<usize> {
        column_lookup(self, idx)
    }

    pub fn find_subspace_columns(&self, p: usize) -> Result<Range<usize>> {
        find_subspace_columns(self, p)
    }

    /// Real embedding `[[Re, -Im], [Im, Re]]` of the column range, or the
    /// plain real block.
    fn real_block(&self, cols: Range<usize>) -> Matrix<T> {
        match &self.entries {
            Entries::Real(m) => m.columns(cols),
            Entries::Complex { re, im } => {
                let (r, w) = (self.n, cols.len());
                Matrix::from_fn(2 * r, 2 * w, |i, j| {
                    let (ii, jj) = (i % r, cols.start + j % w);
                    match (i < r, j < w) {
                        (true, true) | (false, false) => re[(ii, jj)],
                        (true, false) => -im[(ii, jj)],
                        (false, true) => im[(ii, jj)],
                    }
                })
            }
        }
    }

    /// Rank of a column range; complex ranks come from the real embedding.
    pub fn block_rank(&self, cols: Range<usize>) -> usize {
        let block = self.real_block(cols);
        let tol = default_rank_tol::<T>(block.rows().max(block.cols()));
        let r = Svd::new(&block).rank(tol);
        if self.family.is_complex() || matches!(self.entries, Entries::Complex { .. }) {
            r / 2
        } else {
            r
        }
    }
}

fn build_with<T: Real>(family: Family, n: usize) -> PeriodicBasisMatrix<T> {
    assert!(n >= 1, "matrix size must be positive");
    assert!(n <= MAX_DIRECT_SIZE, "direct builders are capped at N = {MAX_DIRECT_SIZE}");
    let columns = column_layout(family, n);
    let entries = if family.is_complex() {
        let mut re = Matrix::zeros(n, n);
        let mut im = Matrix::zeros(n, n);
        for (j, idx) in columns.iter().enumerate() {
            for i in 0..n {
                let v = column_value::<T>(family, idx, i as i64);
                re[(i, j)] = v.re;
                im[(i, j)] = v.im;
            }
        }
        Entries::Complex { re, im }
    } else {
        Entries::Real(Matrix::from_fn(n, n, |i, j| real_column_value(family, &columns[j], i as i64)))
    };
    PeriodicBasisMatrix {
        n,
        family,
        entries,
        columns,
    }
}

pub fn build<T: Real>(family: Family, n: usize) -> PeriodicBasisMatrix<T> {
    build_with(family, n)
}

/// Matrix `A`: per divisor `p` and `k` in `U_p`, `exp(j 2 pi k n / p)`.
pub fn build_dft_npm<T: Real>(n: usize) -> PeriodicBasisMatrix<T> {
    build_with(Family::DftNpm, n)
}

/// Matrix `B`: circular downshifts `0..phi(p)-1` of the Ramanujan sum `c_p`.
pub fn build_rpt<T: Real>(n: usize) -> PeriodicBasisMatrix<T> {
    build_with(Family::Rpt, n)
}

/// Matrix `C`: type-1 CCPS and its one-sample downshift per `(p, k)`.
pub fn build_ccpt1<T: Real>(n: usize) -> PeriodicBasisMatrix<T> {
    build_with(Family::Ccpt1, n)
}

/// Matrix `D`: as [`build_ccpt1`] with type-2 sums.
pub fn build_ccpt2<T: Real>(n: usize) -> PeriodicBasisMatrix<T> {
    build_with(Family::Ccpt2, n)
}

/// Matrix `E`: type-1/type-2 pair per `(p, k)`, orthogonal with
/// `E^T E = 2 N M I`.
pub fn build_occpt<T: Real>(n: usize) -> PeriodicBasisMatrix<T> {
    build_with(Family::Occpt, n)
}

pub fn column_lookup<T: Real>(m: &PeriodicBasisMatrix<T>, idx: &SubspaceIndex) -> Result<usize> {
    m.columns
        .iter()
        .position(|c| c == idx)
        .ok_or(Error::LookupMiss(*idx))
}

pub fn find_subspace_columns<T: Real>(m: &PeriodicBasisMatrix<T>, p: usize) -> Result<Range<usize>> {
    let start = m.columns.iter().position(|c| c.p == p).ok_or(Error::NoSuchPeriod(p))?;
    let len = m.columns[start..].iter().take_while(|c| c.p == p).count();
    Ok(start..start + len)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockReport {
    pub p: usize,
    pub width: usize,
    pub expected_width: usize,
    pub rank: usize,
    /// Every column satisfies `x(n + p) = x(n)` within tolerance.
    pub periodic: bool,
    /// No column is periodic with a proper divisor of `p`.
    pub minimal_period: bool,
}

impl BlockReport {
    pub fn passes(&self) -> bool {
        self.width == self.expected_width && self.rank == self.expected_width && self.periodic && self.minimal_period
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub n: usize,
    pub family: Family,
    pub blocks: Vec<BlockReport>,
    pub rank: usize,
    pub full_rank: bool,
    /// Every divisor of `N` has a block and the blocks cover all columns.
    pub complete: bool,
    pub passes: bool,
}

fn column_has_period<T: Real>(m: &PeriodicBasisMatrix<T>, j: usize, d: usize, tol: T) -> bool {
    (0..m.n.saturating_sub(d)).all(|i| (m.entry(i + d, j) - m.entry(i, j)).norm() <= tol)
}

/// Check the three nested-periodic properties: block widths and ranks equal
/// `phi(p)`, columns periodic with their `p`, and full rank overall.
pub fn validate_npm<T: Real>(m: &PeriodicBasisMatrix<T>, tol: T) -> ValidationReport {
    let divisors = divisor_set(m.n);
    let mut blocks = Vec::new();
    let mut covered = 0;
    let mut complete = true;
    for p in divisors.iter() {
        let Ok(range) = find_subspace_columns(m, p) else {
            complete = false;
            continue;
        };
        covered += range.len();
        let periodic = range.clone().all(|j| column_has_period(m, j, p, tol));
        let proper = divisor_set(p);
        let minimal_period = range
            .clone()
            .all(|j| proper.iter().filter(|&d| d < p).all(|d| !column_has_period(m, j, d, tol)));
        blocks.push(BlockReport {
            p,
            width: range.len(),
            expected_width: totient(p),
            rank: m.block_rank(range),
            periodic,
            minimal_period,
        });
    }
    complete &= covered == m.n && m.columns.iter().all(|c| divisors.contains(c.p));
    let rank = m.block_rank(0..m.n);
    let full_rank = rank == m.n;
    let passes = complete && full_rank && blocks.iter().all(BlockReport::passes);
    ValidationReport {
        n: m.n,
        family: m.family,
        blocks,
        rank,
        full_rank,
        complete,
        passes,
    }
}
