use super::{Coeff, CoeffField};
use crate::{Error, Result};

/// Univariate truncated Taylor series `c0 + c1 ρ + ... + c_order ρ^order`.
///
/// Arithmetic is closed under truncation at `order`; differentiation lowers
/// the order by one and integration raises it by one, mirroring how many
/// derivatives of the underlying function each coefficient certifies.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet1<C = f64> {
    coeffs: Vec<C>,
}

/// Maximum supported jet order.
pub const MAX_ORDER: usize = 8;

impl<C: Coeff> Jet1<C> {
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty() && coeffs.len() <= MAX_ORDER + 1);
        Jet1 { coeffs }
    }

    pub fn constant(value: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = value;
        Jet1 { coeffs }
    }

    /// The variable itself: `base + ρ`, truncated at `order`.
    pub fn variable(base: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = base;
        if order >= 1 {
            coeffs[1] = C::one();
        }
        Jet1 { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn value(&self) -> C {
        self.coeffs[0].clone()
    }

    /// k-th derivative value at 0, i.e. `k! c_k`.
    pub fn derivative_at_zero(&self, k: usize) -> C {
        let mut acc = self.coeff(k);
        for m in 2..=k {
            acc = acc.scale_usize(m);
        }
        acc
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Jet1 {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Jet1 { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Jet1 { coeffs }
    }

    pub fn neg(&self) -> Self {
        Jet1 {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![C::zero(); n + 1];
        for i in 0..=n {
            for j in 0..=(n - i) {
                coeffs[i + j] = coeffs[i + j].clone() + self.coeff(i) * rhs.coeff(j);
            }
        }
        Jet1 { coeffs }
    }

    pub fn scale(&self, s: &C) -> Self {
        Jet1 {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// d/dρ; the result certifies one order fewer.
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Jet1 {
                coeffs: vec![C::zero()],
            };
        }
        let coeffs = (1..=self.order())
            .map(|k| self.coeffs[k].scale_usize(k))
            .collect();
        Jet1 { coeffs }
    }
}

impl<C: CoeffField> Jet1<C> {
    /// Antiderivative with zero constant term; raises the order by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = vec![C::zero(); self.order() + 2];
        for k in 0..=self.order() {
            coeffs[k + 1] = self.coeffs[k].div(&C::from_f64((k + 1) as f64));
        }
        Jet1 { coeffs }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.coeffs[0].is_zero() {
            return Err(Error::domain("jet division by zero constant term"));
        }
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![C::zero(); n + 1];
        for k in 0..=n {
            let mut s = self.coeff(k);
            for j in 0..k {
                s = s - coeffs[j].clone() * rhs.coeff(k - j);
            }
            coeffs[k] = s.div(&rhs.coeffs[0]);
        }
        Ok(Jet1 { coeffs })
    }

    pub fn recip(&self) -> Result<Self> {
        Jet1::constant(C::one(), self.order()).div(self)
    }

    /// Compose an analytic function through its derivative list at the
    /// jet's constant term: `derivs[k]` must equal `h^(k)(base)`.
    pub fn compose_analytic(&self, base: &C, derivs: &[C]) -> Result<Self> {
        if self.coeffs[0] != *base {
            return Err(Error::usage(
                "compose_analytic: jet constant term does not equal the expansion base",
            ));
        }
        if derivs.len() < self.order() + 1 {
            return Err(Error::usage("compose_analytic: not enough derivatives"));
        }
        let mut delta = self.clone();
        delta.coeffs[0] = C::zero();
        // Horner over truncated powers of delta.
        let n = self.order();
        let mut factorial = C::one();
        for k in 2..=n {
            factorial = factorial.scale_usize(k);
        }
        let mut result = Jet1::constant(derivs[n].div(&factorial), n);
        for k in (0..n).rev() {
            let mut fact = C::one();
            for m in 2..=k {
                fact = fact.scale_usize(m);
            }
            result = result
                .mul(&delta)
                .add(&Jet1::constant(derivs[k].div(&fact), n));
        }
        Ok(result)
    }
}

impl Jet1<f64> {
    pub fn eval(&self, rho: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * rho + c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn differentiate_polynomial() {
        // d/dρ (1 + ρ + ρ²) = 1 + 2ρ
        let j = Jet1::from_coeffs(vec![1.0, 1.0, 1.0]);
        let d = j.differentiate();
        assert_eq!(d.coeffs(), &[1.0, 2.0]);
    }

    #[test]
    fn geometric_series_reciprocal() {
        // 1/(1-ρ) = 1 + ρ + ρ² + ρ³ at order 3
        let denom = Jet1::from_coeffs(vec![1.0, -1.0, 0.0, 0.0]);
        let r = denom.recip().unwrap();
        assert_eq!(r.coeffs(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn division_by_zero_constant_is_domain_error() {
        let a = Jet1::from_coeffs(vec![1.0, 0.0]);
        let b = Jet1::from_coeffs(vec![0.0, 1.0]);
        assert!(matches!(a.div(&b), Err(Error::Domain(_))));
    }

    #[test]
    fn identity_composition_is_identity() {
        let j = Jet1::from_coeffs(vec![2.0, 3.0, -1.0, 0.5]);
        let composed = j
            .compose_analytic(&2.0, &[2.0, 1.0, 0.0, 0.0])
            .unwrap();
        for k in 0..=3 {
            assert_abs_diff_eq!(composed.coeff(k), j.coeff(k), epsilon = 1e-15);
        }
    }

    #[test]
    fn cube_root_binomial_series() {
        // x^{1/3} at base 1 composed with 1 + u: 1 + u/3 - u²/9
        let j = Jet1::variable(1.0f64, 2);
        let derivs = [1.0, 1.0 / 3.0, -2.0 / 9.0];
        let composed = j.compose_analytic(&1.0, &derivs).unwrap();
        assert_abs_diff_eq!(composed.coeff(0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(composed.coeff(1), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(composed.coeff(2), -1.0 / 9.0, epsilon = 1e-15);
    }
}
