//! Complex conjugate pair sums, nested periodic matrices and the transforms
//! built on them.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`). The `*64`
//! aliases at the crate root pin the scalar to `f64`, which is what the CLI
//! and all quoted tolerances use.
//!
//! ```
//! use ccpt_core::transform::{occpt_analysis, occpt_synthesis};
//!
//! let x: Vec<f64> = (0..12).map(|n| (n as f64 * 0.7).sin()).collect();
//! let c = occpt_analysis(&x).unwrap();
//! let back = occpt_synthesis(&c).unwrap();
//! assert!(x.iter().zip(&back).all(|(a, b)| (a - b).abs() < 1e-12));
//! ```

pub mod ccps;
pub mod error;
pub mod export;
pub mod foccpt;
pub mod linalg;
pub mod npm;
pub mod number_theory;
pub mod period;
pub mod scalar;
pub mod transform;

pub use error::{Error, Result};
pub use npm::{ColumnKind, Family, SubspaceIndex};
pub use scalar::Real;

pub type Matrix64 = linalg::Matrix<f64>;
pub type BasisMatrix64 = npm::PeriodicBasisMatrix<f64>;
pub type CoefficientSet64 = transform::CoefficientSet<f64>;
pub type ComplexCoefficientSet64 = transform::ComplexCoefficientSet<f64>;
pub type PeriodReport64 = period::PeriodReport<f64>;
pub type Dictionary64 = period::dictionary::PeriodicDictionary<f64>;
pub type DictionarySolution64 = period::dictionary::DictionarySolution<f64>;
pub type Complex64 = num_complex::Complex<f64>;

pub type Matrix32 = linalg::Matrix<f32>;
pub type CoefficientSet32 = transform::CoefficientSet<f32>;
