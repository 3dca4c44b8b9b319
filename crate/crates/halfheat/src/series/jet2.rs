use super::{Coeff, CoeffField};
use crate::{Error, Result};

/// Bivariate Taylor series truncated by **total** degree:
/// `Σ_{i+j <= order} c_{ij} u^i v^j`, stored triangularly.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2<C = f64> {
    order: usize,
    coeffs: Vec<C>,
}

fn tri_len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

impl<C: Coeff> Jet2<C> {
    pub fn zero(order: usize) -> Self {
        Jet2 {
            order,
            coeffs: vec![C::zero(); tri_len(order)],
        }
    }

    pub fn constant(value: C, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.coeffs[0] = value;
        j
    }

    /// `base + u` as a jet.
    pub fn variable_u(base: C, order: usize) -> Self {
        let mut j = Self::constant(base, order);
        if order >= 1 {
            j.coeffs[idx(1, 0)] = C::one();
        }
        j
    }

    /// `base + v` as a jet.
    pub fn variable_v(base: C, order: usize) -> Self {
        let mut j = Self::constant(base, order);
        if order >= 1 {
            j.coeffs[idx(0, 1)] = C::one();
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> C {
        if i + j > self.order {
            C::zero()
        } else {
            self.coeffs[idx(i, j)].clone()
        }
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, value: C) {
        assert!(i + j <= self.order);
        self.coeffs[idx(i, j)] = value;
    }

    /// Value at the expansion point.
    pub fn value(&self) -> C {
        self.coeffs[0].clone()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order);
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=(n - i) {
                out.coeffs[idx(i, j)] = self.coeff(i, j);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order.min(rhs.order);
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=(n - i) {
                out.coeffs[idx(i, j)] = self.coeff(i, j) + rhs.coeff(i, j);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order.min(rhs.order);
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=(n - i) {
                out.coeffs[idx(i, j)] = self.coeff(i, j) - rhs.coeff(i, j);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Jet2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order.min(rhs.order);
        let mut out = Self::zero(n);
        for da in 0..=n {
            for ia in 0..=da {
                let ja = da - ia;
                let a = self.coeff(ia, ja);
                if a.is_zero() {
                    continue;
                }
                for db in 0..=(n - da) {
                    for ib in 0..=db {
                        let jb = db - ib;
                        let b = rhs.coeff(ib, jb);
                        if b.is_zero() {
                            continue;
                        }
                        let k = idx(ia + ib, ja + jb);
                        out.coeffs[k] = out.coeffs[k].clone() + a.clone() * b;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        Jet2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// ∂/∂u; lowers the certified order by one.
    pub fn differentiate_u(&self) -> Self {
        if self.order == 0 {
            return Self::zero(0);
        }
        let n = self.order - 1;
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=(n - i) {
                out.coeffs[idx(i, j)] = self.coeff(i + 1, j).scale_usize(i + 1);
            }
        }
        out
    }

    /// ∂/∂v; lowers the certified order by one.
    pub fn differentiate_v(&self) -> Self {
        if self.order == 0 {
            return Self::zero(0);
        }
        let n = self.order - 1;
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=(n - i) {
                out.coeffs[idx(i, j)] = self.coeff(i, j + 1).scale_usize(j + 1);
            }
        }
        out
    }
}

impl<C: CoeffField> Jet2<C> {
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.coeffs[0].is_zero() {
            return Err(Error::domain("jet division by zero constant term"));
        }
        let n = self.order.min(rhs.order);
        let mut out = Self::zero(n);
        // Solve degree by degree: out * rhs = self.
        for d in 0..=n {
            for i in 0..=d {
                let j = d - i;
                let mut s = self.coeff(i, j);
                // subtract contributions out_{ab} * rhs_{i-a, j-b} with (a,b) != (i,j)
                for a in 0..=i {
                    for b in 0..=j {
                        if a + b == d {
                            continue;
                        }
                        s = s - out.coeff(a, b) * rhs.coeff(i - a, j - b);
                    }
                }
                out.coeffs[idx(i, j)] = s.div(&rhs.coeffs[0]);
            }
        }
        Ok(out)
    }

    pub fn recip(&self) -> Result<Self> {
        Jet2::constant(C::one(), self.order).div(self)
    }

    /// Compose an analytic function through its derivatives at the jet's
    /// constant term.
    pub fn compose_analytic(&self, base: &C, derivs: &[C]) -> Result<Self> {
        if self.coeffs[0] != *base {
            return Err(Error::usage(
                "compose_analytic: jet constant term does not equal the expansion base",
            ));
        }
        if derivs.len() < self.order + 1 {
            return Err(Error::usage("compose_analytic: not enough derivatives"));
        }
        let mut delta = self.clone();
        delta.coeffs[0] = C::zero();
        let n = self.order;
        let fact = |k: usize| {
            let mut f = C::one();
            for m in 2..=k {
                f = f.scale_usize(m);
            }
            f
        };
        let mut result = Jet2::constant(derivs[n].div(&fact(n)), n);
        for k in (0..n).rev() {
            result = result
                .mul(&delta)
                .add(&Jet2::constant(derivs[k].div(&fact(k)), n));
        }
        Ok(result)
    }
}

impl Jet2<f64> {
    /// Substitute `u -> su·u`, `v -> sv·v` in the expansion variables.
    pub fn scale_variables(&self, su: f64, sv: f64) -> Self {
        let mut out = self.clone();
        for i in 0..=self.order {
            for j in 0..=(self.order - i) {
                out.coeffs[idx(i, j)] =
                    self.coeff(i, j) * su.powi(i as i32) * sv.powi(j as i32);
            }
        }
        out
    }

    pub fn eval(&self, du: f64, dv: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..=self.order {
            for j in 0..=(self.order - i) {
                acc += self.coeff(i, j) * du.powi(i as i32) * dv.powi(j as i32);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_linear_factors() {
        // (1+u)(1+v) at order 2 = 1 + u + v + uv
        let a = Jet2::variable_u(1.0f64, 2);
        let b = Jet2::variable_v(1.0f64, 2);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0, 0), 1.0);
        assert_eq!(p.coeff(1, 0), 1.0);
        assert_eq!(p.coeff(0, 1), 1.0);
        assert_eq!(p.coeff(1, 1), 1.0);
        assert_eq!(p.coeff(2, 0), 0.0);
        assert_eq!(p.coeff(0, 2), 0.0);
    }

    #[test]
    fn evaluation_at_origin_returns_constant() {
        let mut j = Jet2::<f64>::zero(3);
        j.set_coeff(0, 0, 4.5);
        j.set_coeff(2, 1, 7.0);
        assert_eq!(j.eval(0.0, 0.0), 4.5);
        assert_eq!(j.value(), 4.5);
    }

    #[test]
    fn division_round_trip() {
        let mut a = Jet2::<f64>::zero(4);
        a.set_coeff(0, 0, 2.0);
        a.set_coeff(1, 0, -1.0);
        a.set_coeff(1, 2, 0.5);
        let mut b = Jet2::<f64>::zero(4);
        b.set_coeff(0, 0, 1.5);
        b.set_coeff(0, 1, 3.0);
        b.set_coeff(2, 0, -0.25);
        let q = a.div(&b).unwrap();
        let back = q.mul(&b);
        for i in 0..=4 {
            for j in 0..=(4 - i) {
                assert!((back.coeff(i, j) - a.coeff(i, j)).abs() < 1e-12);
            }
        }
    }
}
