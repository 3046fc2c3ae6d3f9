//! Integer utilities: gcd, Euler's totient, divisor lists and coprime
//! residue sets.
//!
//! Everything here is `usize` based. Matrix sizes never get anywhere near
//! the range where that matters.

use crate::error::{Error, Result};

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple of two positive integers, `None` on overflow.
pub fn lcm(a: usize, b: usize) -> Option<usize> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

pub fn lcm_list(xs: &[usize]) -> Result<usize> {
    let (first, rest) = xs.split_first().ok_or(Error::EmptyList)?;
    rest.iter().try_fold(*first, |acc, &x| {
        lcm(acc, x).ok_or_else(|| Error::InvalidArgument("lcm overflows usize".into()))
    })
}

/// Euler's totient by trial-division factorisation.
pub fn totient(n: usize) -> usize {
    assert!(n >= 1, "totient of zero");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// All positive divisors of `n`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSet {
    pub n: usize,
    pub divisors: Vec<usize>,
}

impl DivisorSet {
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.divisors.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn contains(&self, d: usize) -> bool {
        self.divisors.binary_search(&d).is_ok()
    }
}

pub fn divisor_set(n: usize) -> DivisorSet {
    assert!(n >= 1, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    DivisorSet { n, divisors: small }
}

/// Coprime residues of `n`.
///
/// * `full`: `1 <= k <= n` with `gcd(k, n) = 1`
/// * `half`: the members of `full` with `k <= n / 2`; `{1}` for `n` in `{1, 2}`
/// * `complement`: `full` minus `half`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSets {
    pub n: usize,
    pub full: Vec<usize>,
    pub half: Vec<usize>,
    pub complement: Vec<usize>,
}

pub fn residue_sets(n: usize) -> ResidueSets {
    assert!(n >= 1, "residues of zero");
    let full: Vec<usize> = (1..=n).filter(|&k| gcd(k, n) == 1).collect();
    if n <= 2 {
        return ResidueSets {
            n,
            full,
            half: vec![1],
            complement: Vec::new(),
        };
    }
    let (half, complement) = full.iter().partition(|&&k| k <= n / 2);
    ResidueSets {
        n,
        full,
        half,
        complement,
    }
}

/// `half` residues only; the set every CCPS-based basis is indexed by.
pub fn half_residues(n: usize) -> Vec<usize> {
    residue_sets(n).half
}

/// Number of CCS slots of period `n`, i.e. `max(1, phi(n) / 2)`.
pub fn ccs_count(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        totient(n) / 2
    }
}

pub fn is_power_of_two(n: usize) -> bool {
    n >= 1 && n & (n - 1) == 0
}
