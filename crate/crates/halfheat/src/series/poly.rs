use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Number of named indeterminates.
pub const NVARS: usize = 17;

/// The named indeterminates of the coefficient-identity ring: Taylor
/// coefficients `a1..a5` and `b1..b5` of the two one-variable expansions,
/// the derivative symbols `G0..G4` of the right-hand side at 1, the
/// normalisation constant `k` and the curvature symbol `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    A1,
    A2,
    A3,
    A4,
    A5,
    B1,
    B2,
    B3,
    B4,
    B5,
    G0,
    G1,
    G2,
    G3,
    G4,
    K,
    Sigma,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::A1,
        Var::A2,
        Var::A3,
        Var::A4,
        Var::A5,
        Var::B1,
        Var::B2,
        Var::B3,
        Var::B4,
        Var::B5,
        Var::G0,
        Var::G1,
        Var::G2,
        Var::G3,
        Var::G4,
        Var::K,
        Var::Sigma,
    ];

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&v| v == self).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::A1 => "a1",
            Var::A2 => "a2",
            Var::A3 => "a3",
            Var::A4 => "a4",
            Var::A5 => "a5",
            Var::B1 => "b1",
            Var::B2 => "b2",
            Var::B3 => "b3",
            Var::B4 => "b4",
            Var::B5 => "b5",
            Var::G0 => "G0",
            Var::G1 => "G1",
            Var::G2 => "G2",
            Var::G3 => "G3",
            Var::G4 => "G4",
            Var::K => "k",
            Var::Sigma => "sigma",
        }
    }
}

/// Exponent vector over the named indeterminates.
pub type Mono = [u8; NVARS];

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored and terms sit in a `BTreeMap`, so the
/// representation of a polynomial is canonical: equality of values is
/// equality of representations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl ExactPoly {
    pub fn zero_poly() -> Self {
        ExactPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = ExactPoly::default();
        if !c.is_zero() {
            p.terms.insert([0; NVARS], c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::constant(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn var(v: Var) -> Self {
        let mut mono = [0u8; NVARS];
        mono[v.index()] = 1;
        let mut p = ExactPoly::default();
        p.terms.insert(mono, Rational::one());
        p
    }

    pub fn is_zero_poly(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    fn insert(&mut self, mono: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return ExactPoly::default();
        }
        ExactPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c * s))
                .collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = ExactPoly::int(1);
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Exact coefficient of the given exponent vector.
    pub fn coefficient_of(&self, mono: &Mono) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Substitute a polynomial for one indeterminate.
    pub fn substitute(&self, v: Var, replacement: &ExactPoly) -> Self {
        let vi = v.index();
        let mut out = ExactPoly::default();
        for (mono, c) in &self.terms {
            let e = mono[vi] as usize;
            let mut rest = *mono;
            rest[vi] = 0;
            let mut base = ExactPoly::default();
            base.terms.insert(rest, c.clone());
            out = out + base * replacement.pow(e);
        }
        out
    }

    /// Evaluate at exact rational values for every indeterminate.
    pub fn eval_rational(&self, values: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::zero();
        for (mono, c) in &self.terms {
            let mut term = c.clone();
            for (vi, &e) in mono.iter().enumerate() {
                for _ in 0..e {
                    term *= values[vi].clone();
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluate in floating point.
    pub fn eval_f64(&self, values: &[f64; NVARS]) -> f64 {
        let mut acc = 0.0;
        for (mono, c) in &self.terms {
            let mut term = rational_to_f64(c);
            for (vi, &e) in mono.iter().enumerate() {
                term *= values[vi].powi(e as i32);
            }
            acc += term;
        }
        acc
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // exact for the modest magnitudes used here; falls back to string parse
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

impl Add for ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: ExactPoly) -> ExactPoly {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.insert(m, c);
        }
        out
    }
}

impl Sub for ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: ExactPoly) -> ExactPoly {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.insert(m, -c);
        }
        out
    }
}

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: ExactPoly) -> ExactPoly {
        let mut out = ExactPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = *ma;
                for (k, e) in mb.iter().enumerate() {
                    m[k] += e;
                }
                out.insert(m, ca * cb);
            }
        }
        out
    }
}

impl Zero for ExactPoly {
    fn zero() -> Self {
        ExactPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExactPoly {
    fn one() -> Self {
        ExactPoly::int(1)
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (vi, &e) in mono.iter().enumerate() {
                if e == 1 {
                    write!(f, "*{}", Var::ALL[vi].name())?;
                } else if e > 1 {
                    write!(f, "*{}^{}", Var::ALL[vi].name(), e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_sum_expands() {
        // (a1 + b1)^2 = a1^2 + 2 a1 b1 + b1^2
        let p = (ExactPoly::var(Var::A1) + ExactPoly::var(Var::B1)).pow(2);
        let mut a1sq = [0u8; NVARS];
        a1sq[Var::A1.index()] = 2;
        let mut cross = [0u8; NVARS];
        cross[Var::A1.index()] = 1;
        cross[Var::B1.index()] = 1;
        assert_eq!(p.coefficient_of(&a1sq), Rational::from_integer(1.into()));
        assert_eq!(p.coefficient_of(&cross), Rational::from_integer(2.into()));
    }

    #[test]
    fn substitute_kills_factor() {
        // a1 <- 0 in (G2 - 2 G1) a1 b1 gives 0
        let p = (ExactPoly::var(Var::G2) - ExactPoly::int(2) * ExactPoly::var(Var::G1))
            * ExactPoly::var(Var::A1)
            * ExactPoly::var(Var::B1);
        let q = p.substitute(Var::A1, &ExactPoly::zero_poly());
        assert!(q.is_zero_poly());
    }

    #[test]
    fn no_zero_terms_stored() {
        let p = ExactPoly::var(Var::A1) - ExactPoly::var(Var::A1);
        assert!(p.is_zero_poly());
        assert_eq!(p.terms.len(), 0);
    }
}
