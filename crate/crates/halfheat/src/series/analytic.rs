//! Composition of the elementary analytic functions with float jets,
//! through their derivative tables at the jet's constant term.

use super::{Jet1, Jet2};
use crate::Result;

fn trig_derivs(base: f64, order: usize, sin_first: bool) -> Vec<f64> {
    let (s, c) = base.sin_cos();
    let cycle = if sin_first {
        [s, c, -s, -c]
    } else {
        [c, -s, -c, s]
    };
    (0..=order).map(|k| cycle[k % 4]).collect()
}

fn hyp_derivs(base: f64, order: usize, sinh_first: bool) -> Vec<f64> {
    let (sh, ch) = (base.sinh(), base.cosh());
    (0..=order)
        .map(|k| {
            if (k % 2 == 0) == sinh_first {
                sh
            } else {
                ch
            }
        })
        .collect()
}

fn ln_derivs(base: f64, order: usize) -> Vec<f64> {
    let mut d = Vec::with_capacity(order + 1);
    d.push(base.ln());
    let mut fact = 1.0;
    for k in 1..=order {
        if k >= 2 {
            fact *= -(k as f64 - 1.0);
        }
        d.push(fact / base.powi(k as i32));
    }
    d
}

fn pow_derivs(base: f64, p: f64, order: usize) -> Vec<f64> {
    let mut d = Vec::with_capacity(order + 1);
    let mut coeff = 1.0;
    for k in 0..=order {
        d.push(coeff * base.powf(p - k as f64));
        coeff *= p - k as f64;
    }
    d
}

fn exp_derivs(base: f64, order: usize) -> Vec<f64> {
    vec![base.exp(); order + 1]
}

macro_rules! lift {
    ($jet:ty, $name:ident, $table:expr) => {
        pub fn $name(j: &$jet) -> Result<$jet> {
            let base = j.value();
            j.compose_analytic(&base, &$table(base, j.order()))
        }
    };
    ($jet:ty, $name:ident, $table:expr, $extra:ident : $ty:ty) => {
        pub fn $name(j: &$jet, $extra: $ty) -> Result<$jet> {
            let base = j.value();
            j.compose_analytic(&base, &$table(base, $extra, j.order()))
        }
    };
}

lift!(Jet1<f64>, jet1_sin, |b, n| trig_derivs(b, n, true));
lift!(Jet1<f64>, jet1_cos, |b, n| trig_derivs(b, n, false));
lift!(Jet1<f64>, jet1_sinh, |b, n| hyp_derivs(b, n, true));
lift!(Jet1<f64>, jet1_cosh, |b, n| hyp_derivs(b, n, false));
lift!(Jet1<f64>, jet1_exp, |b, n| exp_derivs(b, n));
lift!(Jet1<f64>, jet1_ln, |b, n| ln_derivs(b, n));
lift!(Jet1<f64>, jet1_powf, |b, p, n| pow_derivs(b, p, n), p: f64);

pub fn jet1_sqrt(j: &Jet1<f64>) -> Result<Jet1<f64>> {
    jet1_powf(j, 0.5)
}

pub fn jet1_recip_sqrt(j: &Jet1<f64>) -> Result<Jet1<f64>> {
    jet1_powf(j, -0.5)
}

lift!(Jet2<f64>, jet2_sin, |b, n| trig_derivs(b, n, true));
lift!(Jet2<f64>, jet2_cos, |b, n| trig_derivs(b, n, false));
lift!(Jet2<f64>, jet2_sinh, |b, n| hyp_derivs(b, n, true));
lift!(Jet2<f64>, jet2_cosh, |b, n| hyp_derivs(b, n, false));
lift!(Jet2<f64>, jet2_ln, |b, n| ln_derivs(b, n));
lift!(Jet2<f64>, jet2_powf, |b, p, n| pow_derivs(b, p, n), p: f64);

pub fn jet2_sqrt(j: &Jet2<f64>) -> Result<Jet2<f64>> {
    jet2_powf(j, 0.5)
}

pub fn jet2_recip_sqrt(j: &Jet2<f64>) -> Result<Jet2<f64>> {
    jet2_powf(j, -0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn composed_jets_match_direct_evaluation() {
        // order-4 jets of smooth functions, checked against direct values
        let funcs: Vec<(fn(&Jet1<f64>) -> Result<Jet1<f64>>, fn(f64) -> f64)> = vec![
            (jet1_sin, |x| x.sin()),
            (jet1_cos, |x| x.cos()),
            (jet1_sinh, |x| x.sinh()),
            (jet1_cosh, |x| x.cosh()),
            (jet1_exp, |x| x.exp()),
            (jet1_ln, |x| x.ln()),
        ];
        for (lifted, direct) in funcs {
            for s in 0..10 {
                let base = 1.0 + 0.12 * s as f64;
                let jet = lifted(&Jet1::variable(base, 4)).unwrap();
                for step in [-0.01, -0.005, 0.004, 0.01] {
                    let err = (jet.eval(step) - direct(base + step)).abs();
                    assert!(
                        err < 1e-10 * (1.0 + direct(base + step).abs()),
                        "composition error {err:e} at base {base}"
                    );
                }
            }
        }
    }

    #[test]
    fn sqrt_jet_squares_back() {
        let j = Jet2::variable_u(2.0, 4).mul(&Jet2::variable_v(1.5, 4));
        let s = jet2_sqrt(&j).unwrap();
        let sq = s.mul(&s);
        for i in 0..=4 {
            for k in 0..=(4 - i) {
                assert_abs_diff_eq!(sq.coeff(i, k), j.coeff(i, k), epsilon = 1e-12);
            }
        }
    }
}
