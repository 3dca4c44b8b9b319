//! Truncated Taylor/polynomial arithmetic.
//!
//! Two coefficient regimes share one generic kernel: binary floats for the
//! geometric modules and exact rationals (or sparse rational polynomials)
//! for the coefficient-identity module. Univariate jets ([`Jet1`]) carry
//! normal-direction expansions, bivariate jets ([`Jet2`]) carry chart
//! expansions truncated by total degree, and [`ExactPoly`] is the sparse
//! multivariate polynomial ring over named indeterminates.

mod analytic;
mod jet1;
mod jet2;
mod poly;

pub use analytic::{
    jet1_cos, jet1_cosh, jet1_exp, jet1_ln, jet1_powf, jet1_recip_sqrt, jet1_sin, jet1_sinh,
    jet1_sqrt, jet2_cos, jet2_cosh, jet2_ln, jet2_powf, jet2_recip_sqrt, jet2_sin, jet2_sinh,
    jet2_sqrt,
};
pub use jet1::Jet1;
pub use jet2::Jet2;
pub use poly::{rational_to_f64, ExactPoly, Mono, Rational, Var, NVARS};

use num::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient ring for jets: enough structure for truncated products.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiply by a small non-negative integer (used by differentiation).
    fn scale_usize(&self, n: usize) -> Self {
        let mut acc = Self::zero();
        for _ in 0..n {
            acc = acc + self.clone();
        }
        acc
    }
}

impl Coeff for f64 {
    fn scale_usize(&self, n: usize) -> Self {
        self * n as f64
    }
}

impl Coeff for Rational {
    fn scale_usize(&self, n: usize) -> Self {
        self * Rational::from_integer(n.into())
    }
}

impl Coeff for ExactPoly {
    fn scale_usize(&self, n: usize) -> Self {
        self.scale(&Rational::from_integer(n.into()))
    }
}

/// Coefficient fields additionally support exact division, enabling jet
/// division and analytic composition.
pub trait CoeffField: Coeff {
    fn div(&self, rhs: &Self) -> Self;
    fn from_f64(x: f64) -> Self;
}

impl CoeffField for f64 {
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn from_f64(x: f64) -> Self {
        x
    }
}

impl CoeffField for Rational {
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite float")
    }
}
