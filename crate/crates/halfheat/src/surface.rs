//! Parametric-surface calculus in a space form.
//!
//! Charts expose bivariate Taylor jets of their ambient coordinates; all
//! curvature data is assembled by exact jet algebra on top of them, so the
//! only truncation error is the jet order itself. A finite-difference route
//! over bare positions exists alongside for cross-validation and for
//! black-box maps.

use crate::series::{jet2_powf, jet2_recip_sqrt, Jet2};
use crate::spaceform::{cross3, cross4, Curvature};
use crate::{Error, Result};
use std::sync::Arc;

/// Rectangle of valid chart parameters.
pub type Domain = ((f64, f64), (f64, f64));

/// A twice-plus differentiable parametrization exposing Taylor jets of the
/// ambient coordinates at requested order.
pub trait ChartMap: Send + Sync {
    fn curvature(&self) -> Curvature;
    fn eval_jets(&self, u: f64, v: f64, order: usize) -> Vec<Jet2>;
    fn domain(&self) -> Domain;
}

/// Chart built from a closure over coordinate jets; the workhorse for every
/// analytic fixture.
pub struct FnChart<F>
where
    F: Fn(&Jet2, &Jet2) -> Vec<Jet2> + Send + Sync,
{
    pub curvature: Curvature,
    pub f: F,
    pub domain: Domain,
}

impl<F> ChartMap for FnChart<F>
where
    F: Fn(&Jet2, &Jet2) -> Vec<Jet2> + Send + Sync,
{
    fn curvature(&self) -> Curvature {
        self.curvature
    }
    fn eval_jets(&self, u: f64, v: f64, order: usize) -> Vec<Jet2> {
        let ju = Jet2::variable_u(u, order);
        let jv = Jet2::variable_v(v, order);
        (self.f)(&ju, &jv)
    }
    fn domain(&self) -> Domain {
        ((self.domain.0 .0, self.domain.0 .1), (self.domain.1 .0, self.domain.1 .1))
    }
}

/// Chart precomposed with the coordinate scaling `(u, v) ↦ (u/c, v/c)`;
/// used to normalise asymptotic-isothermal charts so the off-diagonal
/// second-form entry is ±1.
pub struct RescaledChart {
    pub inner: Arc<dyn ChartMap>,
    /// the factor `c`: new coordinates cover `c ×` the inner ones
    pub scale: f64,
}

impl ChartMap for RescaledChart {
    fn curvature(&self) -> Curvature {
        self.inner.curvature()
    }
    fn eval_jets(&self, u: f64, v: f64, order: usize) -> Vec<Jet2> {
        let s = 1.0 / self.scale;
        self.inner
            .eval_jets(u * s, v * s, order)
            .into_iter()
            .map(|j| j.scale_variables(s, s))
            .collect()
    }
    fn domain(&self) -> Domain {
        let ((u0, u1), (v0, v1)) = self.inner.domain();
        (
            (u0 * self.scale, u1 * self.scale),
            (v0 * self.scale, v1 * self.scale),
        )
    }
}

/// A chart with a stored normal orientation.
#[derive(Clone)]
pub struct Chart {
    map: Arc<dyn ChartMap>,
    /// +1 or -1; multiplies the constructed unit normal.
    orientation: f64,
    name: String,
}

impl Chart {
    pub fn new(name: impl Into<String>, map: Arc<dyn ChartMap>) -> Self {
        Chart {
            map,
            orientation: 1.0,
            name: name.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn curvature(&self) -> Curvature {
        self.map.curvature()
    }

    pub fn domain(&self) -> Domain {
        self.map.domain()
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    /// The same chart with the normal flipped.
    pub fn flipped(&self) -> Chart {
        Chart {
            map: self.map.clone(),
            orientation: -self.orientation,
            name: self.name.clone(),
        }
    }

    pub fn with_orientation(&self, orientation: f64) -> Chart {
        Chart {
            map: self.map.clone(),
            orientation: orientation.signum(),
            name: self.name.clone(),
        }
    }

    pub fn jets(&self, u: f64, v: f64, order: usize) -> Vec<Jet2> {
        self.map.eval_jets(u, v, order)
    }

    pub fn position(&self, u: f64, v: f64) -> Vec<f64> {
        self.map
            .eval_jets(u, v, 0)
            .iter()
            .map(|j| j.value())
            .collect()
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        let ((u0, u1), (v0, v1)) = self.domain();
        u >= u0 && u <= u1 && v >= v0 && v <= v1
    }
}

/// Inner product of jet-valued ambient vectors under the induced metric
/// (ambient form, negated for the hyperboloid so that it is positive on
/// tangent vectors).
fn jet_inner(c: Curvature, a: &[Jet2], b: &[Jet2]) -> Jet2 {
    let mut acc = a[0].mul(&b[0]);
    match c {
        Curvature::Hyperbolic => {
            for i in 1..4 {
                acc = acc.sub(&a[i].mul(&b[i]));
            }
            acc.neg()
        }
        _ => {
            for i in 1..a.len() {
                acc = acc.add(&a[i].mul(&b[i]));
            }
            acc
        }
    }
}

/// All fundamental quantities of a chart point as bivariate jets of a
/// common order `m`.
pub struct FundJets {
    pub curvature: Curvature,
    pub order: usize,
    pub position: Vec<Jet2>,
    pub xu: Vec<Jet2>,
    pub xv: Vec<Jet2>,
    pub normal: Vec<Jet2>,
    /// First fundamental form (E, F; F, G).
    pub g: [[Jet2; 2]; 2],
    pub det_g: Jet2,
    pub sqrt_det_g: Jet2,
    pub g_inv: [[Jet2; 2]; 2],
    /// Second fundamental form.
    pub l: [[Jet2; 2]; 2],
    /// Shape operator in the chart basis, `S = g⁻¹ l`.
    pub s: [[Jet2; 2]; 2],
    pub gauss: Jet2,
    pub mean: Jet2,
}

/// Assemble the jet tower at `(u, v)`; `m` is the order every derived
/// quantity is certified to (chart jets are taken at `m + 2`).
pub fn fund_jets(chart: &Chart, u: f64, v: f64, m: usize) -> Result<FundJets> {
    let c = chart.curvature();
    if !chart.contains(u, v) {
        return Err(Error::usage(format!(
            "chart `{}` does not contain (u, v) = ({u}, {v})",
            chart.name()
        )));
    }
    let x = chart.jets(u, v, m + 2);
    let d = c.dim();
    assert_eq!(x.len(), d, "chart must produce {d} ambient coordinates");
    let xu: Vec<Jet2> = x.iter().map(|j| j.differentiate_u()).collect();
    let xv: Vec<Jet2> = x.iter().map(|j| j.differentiate_v()).collect();

    let guu = jet_inner(c, &xu, &xu);
    let guv = jet_inner(c, &xu, &xv);
    let gvv = jet_inner(c, &xv, &xv);
    let det_g = guu.mul(&gvv).sub(&guv.mul(&guv));
    if det_g.value() <= 1e-14 {
        return Err(Error::SingularChart {
            u,
            v,
            det_g: det_g.value(),
        });
    }

    // Unit normal: σ-form-orthogonal complement of {position (σ≠0), X_u, X_v},
    // scaled by the chart orientation.
    let raw: Vec<Jet2> = match c {
        Curvature::Flat => {
            let a: Vec<Jet2> = xu.clone();
            let b: Vec<Jet2> = xv.clone();
            vec![
                a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
                a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
                a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
            ]
        }
        Curvature::Spherical => jet_cross4(&x, &xu, &xv),
        Curvature::Hyperbolic => {
            let mut w = jet_cross4(&x, &xu, &xv);
            for wi in w.iter_mut().skip(1) {
                *wi = wi.neg();
            }
            w
        }
    };
    let n2 = jet_inner(c, &raw, &raw);
    if n2.value() <= 1e-14 {
        return Err(Error::SingularChart {
            u,
            v,
            det_g: det_g.value(),
        });
    }
    let inv_norm = jet2_recip_sqrt(&n2)?;
    let orient = chart.orientation();
    let normal: Vec<Jet2> = raw
        .iter()
        .map(|w| w.mul(&inv_norm).scale(&orient))
        .collect();

    let xuu: Vec<Jet2> = xu.iter().map(|j| j.differentiate_u()).collect();
    let xuv: Vec<Jet2> = xu.iter().map(|j| j.differentiate_v()).collect();
    let xvv: Vec<Jet2> = xv.iter().map(|j| j.differentiate_v()).collect();
    let luu = jet_inner(c, &xuu, &normal);
    let luv = jet_inner(c, &xuv, &normal);
    let lvv = jet_inner(c, &xvv, &normal);

    let inv_det = det_g.recip()?;
    let gi_uu = gvv.mul(&inv_det);
    let gi_uv = guv.mul(&inv_det).neg();
    let gi_vv = guu.mul(&inv_det);

    // S^i_j = g^{ik} l_{kj}
    let s_uu = gi_uu.mul(&luu).add(&gi_uv.mul(&luv));
    let s_uv = gi_uu.mul(&luv).add(&gi_uv.mul(&lvv));
    let s_vu = gi_uv.mul(&luu).add(&gi_vv.mul(&luv));
    let s_vv = gi_uv.mul(&luv).add(&gi_vv.mul(&lvv));

    let mean = s_uu.add(&s_vv);
    let det_s = s_uu.mul(&s_vv).sub(&s_uv.mul(&s_vu));
    let gauss = det_s.add(&Jet2::constant(c.sigma(), det_s.order()));
    let sqrt_det_g = jet2_powf(&det_g, 0.5)?;

    Ok(FundJets {
        curvature: c,
        order: m,
        position: x,
        xu,
        xv,
        normal,
        g: [[guu, guv.clone()], [guv, gvv]],
        det_g,
        sqrt_det_g,
        g_inv: [[gi_uu, gi_uv.clone()], [gi_uv, gi_vv]],
        l: [[luu, luv.clone()], [luv, lvv]],
        s: [[s_uu, s_uv], [s_vu, s_vv]],
        gauss,
        mean,
    })
}

fn jet_cross4(a: &[Jet2], b: &[Jet2], c: &[Jet2]) -> Vec<Jet2> {
    let det3 = |r: [[&Jet2; 3]; 3]| -> Jet2 {
        let m00 = r[1][1].mul(r[2][2]).sub(&r[1][2].mul(r[2][1]));
        let m01 = r[1][0].mul(r[2][2]).sub(&r[1][2].mul(r[2][0]));
        let m02 = r[1][0].mul(r[2][1]).sub(&r[1][1].mul(r[2][0]));
        r[0][0]
            .mul(&m00)
            .sub(&r[0][1].mul(&m01))
            .add(&r[0][2].mul(&m02))
    };
    (0..4)
        .map(|i| {
            let cols: Vec<usize> = (0..4).filter(|&j| j != i).collect();
            let m = [
                [&a[cols[0]], &a[cols[1]], &a[cols[2]]],
                [&b[cols[0]], &b[cols[1]], &b[cols[2]]],
                [&c[cols[0]], &c[cols[1]], &c[cols[2]]],
            ];
            let d = det3(m);
            if i % 2 == 0 {
                d
            } else {
                d.neg()
            }
        })
        .collect()
}

/// Pointwise fundamental data of a chart.
#[derive(Debug, Clone)]
pub struct FundamentalData {
    pub g: [[f64; 2]; 2],
    pub l: [[f64; 2]; 2],
    pub s: [[f64; 2]; 2],
    pub gauss: f64,
    pub mean: f64,
    pub k_principal: [f64; 2],
    pub normal: Vec<f64>,
    pub position: Vec<f64>,
    pub xu: Vec<f64>,
    pub xv: Vec<f64>,
}

impl FundamentalData {
    fn from_jets(fj: &FundJets) -> FundamentalData {
        let val = |j: &Jet2| j.value();
        let s = [
            [val(&fj.s[0][0]), val(&fj.s[0][1])],
            [val(&fj.s[1][0]), val(&fj.s[1][1])],
        ];
        let tr = s[0][0] + s[1][1];
        let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        FundamentalData {
            g: [
                [val(&fj.g[0][0]), val(&fj.g[0][1])],
                [val(&fj.g[1][0]), val(&fj.g[1][1])],
            ],
            l: [
                [val(&fj.l[0][0]), val(&fj.l[0][1])],
                [val(&fj.l[1][0]), val(&fj.l[1][1])],
            ],
            s,
            gauss: val(&fj.gauss),
            mean: tr,
            k_principal: [(tr + disc) / 2.0, (tr - disc) / 2.0],
            normal: fj.normal.iter().map(val).collect(),
            position: fj.position.iter().map(val).collect(),
            xu: fj.xu.iter().map(val).collect(),
            xv: fj.xv.iter().map(val).collect(),
        }
    }
}

/// Fundamental data via the jet route (the source of truth).
pub fn fundamental_data(chart: &Chart, u: f64, v: f64) -> Result<FundamentalData> {
    Ok(FundamentalData::from_jets(&fund_jets(chart, u, v, 0)?))
}

/// Fundamental data via central finite differences over bare positions
/// (step `h`, one Richardson pass); the cross-validation route for
/// black-box maps.
pub fn fundamental_data_fd(chart: &Chart, u: f64, v: f64, h: f64) -> Result<FundamentalData> {
    let c = chart.curvature();
    let d = c.dim();
    let pos = |uu: f64, vv: f64| chart.position(uu, vv);

    let derivs = |h: f64| -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) {
        let p00 = pos(u, v);
        let pu1 = pos(u + h, v);
        let pu_1 = pos(u - h, v);
        let pv1 = pos(u, v + h);
        let pv_1 = pos(u, v - h);
        let puv = pos(u + h, v + h);
        let pu_v = pos(u + h, v - h);
        let p_uv = pos(u - h, v + h);
        let p_u_v = pos(u - h, v - h);
        let mut xu = vec![0.0; d];
        let mut xv = vec![0.0; d];
        let mut xuu = vec![0.0; d];
        let mut xvv = vec![0.0; d];
        let mut xuv = vec![0.0; d];
        for i in 0..d {
            xu[i] = (pu1[i] - pu_1[i]) / (2.0 * h);
            xv[i] = (pv1[i] - pv_1[i]) / (2.0 * h);
            xuu[i] = (pu1[i] - 2.0 * p00[i] + pu_1[i]) / (h * h);
            xvv[i] = (pv1[i] - 2.0 * p00[i] + pv_1[i]) / (h * h);
            xuv[i] = (puv[i] - pu_v[i] - p_uv[i] + p_u_v[i]) / (4.0 * h * h);
        }
        (xu, xv, xuu, xvv, xuv)
    };
    let (au, av, auu, avv, auv) = derivs(h);
    let (bu, bv, buu, bvv, buv) = derivs(2.0 * h);
    // Richardson: second-order central differences, error ~ h^2.
    let rich = |a: &[f64], b: &[f64]| -> Vec<f64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| (4.0 * x - y) / 3.0)
            .collect()
    };
    let (xu, xv, xuu, xvv, xuv) = (
        rich(&au, &bu),
        rich(&av, &bv),
        rich(&auu, &buu),
        rich(&avv, &bvv),
        rich(&auv, &buv),
    );
    assemble_from_derivatives(chart, u, v, &pos(u, v), &xu, &xv, &xuu, &xuv, &xvv)
}

#[allow(clippy::too_many_arguments)]
fn assemble_from_derivatives(
    chart: &Chart,
    u: f64,
    v: f64,
    p: &[f64],
    xu: &[f64],
    xv: &[f64],
    xuu: &[f64],
    xuv: &[f64],
    xvv: &[f64],
) -> Result<FundamentalData> {
    let c = chart.curvature();
    let inner = |a: &[f64], b: &[f64]| crate::spaceform::tangent_inner(c, a, b);
    let guu = inner(xu, xu);
    let guv = inner(xu, xv);
    let gvv = inner(xv, xv);
    let det_g = guu * gvv - guv * guv;
    if det_g <= 1e-14 {
        return Err(Error::SingularChart { u, v, det_g });
    }
    let mut n: Vec<f64> = match c {
        Curvature::Flat => cross3(xu, xv).to_vec(),
        Curvature::Spherical => cross4(p, xu, xv).to_vec(),
        Curvature::Hyperbolic => {
            let mut w = cross4(p, xu, xv).to_vec();
            for wi in w.iter_mut().skip(1) {
                *wi = -*wi;
            }
            w
        }
    };
    let nn = inner(&n, &n).sqrt();
    for x in n.iter_mut() {
        *x *= chart.orientation() / nn;
    }
    let luu = inner(xuu, &n);
    let luv = inner(xuv, &n);
    let lvv = inner(xvv, &n);
    let s = [
        [
            (gvv * luu - guv * luv) / det_g,
            (gvv * luv - guv * lvv) / det_g,
        ],
        [
            (guu * luv - guv * luu) / det_g,
            (guu * lvv - guv * luv) / det_g,
        ],
    ];
    let tr = s[0][0] + s[1][1];
    let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    Ok(FundamentalData {
        g: [[guu, guv], [guv, gvv]],
        l: [[luu, luv], [luv, lvv]],
        s,
        gauss: c.sigma() + det,
        mean: tr,
        k_principal: [(tr + disc) / 2.0, (tr - disc) / 2.0],
        normal: n,
        position: p.to_vec(),
        xu: xu.to_vec(),
        xv: xv.to_vec(),
    })
}

/// Intrinsic Gauss curvature from the metric alone (Brioschi form),
/// independent of the second fundamental form; used to cross-check the
/// Gauss equation `K = σ + det S`.
pub fn gauss_curvature_intrinsic(chart: &Chart, u: f64, v: f64) -> Result<f64> {
    let fj = fund_jets(chart, u, v, 2)?;
    let e = &fj.g[0][0];
    let f = &fj.g[0][1];
    let g = &fj.g[1][1];
    let (ev, eu) = (e.coeff(0, 1), e.coeff(1, 0));
    let (fv, fu) = (f.coeff(0, 1), f.coeff(1, 0));
    let (gv, gu) = (g.coeff(0, 1), g.coeff(1, 0));
    let evv = 2.0 * e.coeff(0, 2);
    let fuv = f.coeff(1, 1);
    let guu = 2.0 * g.coeff(2, 0);
    let (e0, f0, g0) = (e.value(), f.value(), g.value());
    let m1 = [
        [
            -0.5 * evv + fuv - 0.5 * guu,
            0.5 * eu,
            fu - 0.5 * ev,
        ],
        [fv - 0.5 * gu, e0, f0],
        [0.5 * gv, f0, g0],
    ];
    let m2 = [
        [0.0, 0.5 * ev, 0.5 * gu],
        [0.5 * ev, e0, f0],
        [0.5 * gu, f0, g0],
    ];
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let den = e0 * g0 - f0 * f0;
    Ok((det3(m1) - det3(m2)) / (den * den))
}

/// Divergence-condition residual `div(S(∇̄K))` at a chart point, assembled
/// entirely in jet algebra. `div` is the ordinary surface divergence
/// (`div = -δ̄` in the co-divergence convention).
pub fn divergence_residual(chart: &Chart, u: f64, v: f64) -> Result<f64> {
    let fj = fund_jets(chart, u, v, 2)?;
    let ku = fj.gauss.differentiate_u();
    let kv = fj.gauss.differentiate_v();
    // grad K components
    let grad_u = fj.g_inv[0][0].mul(&ku).add(&fj.g_inv[0][1].mul(&kv));
    let grad_v = fj.g_inv[1][0].mul(&ku).add(&fj.g_inv[1][1].mul(&kv));
    // Y = S(grad K)
    let y_u = fj.s[0][0].mul(&grad_u).add(&fj.s[0][1].mul(&grad_v));
    let y_v = fj.s[1][0].mul(&grad_u).add(&fj.s[1][1].mul(&grad_v));
    // div Y = (1/sqrt g) d_i (sqrt g Y^i)
    let du = fj.sqrt_det_g.mul(&y_u).differentiate_u();
    let dv = fj.sqrt_det_g.mul(&y_v).differentiate_v();
    Ok(du.add(&dv).value() / fj.sqrt_det_g.value())
}

/// Surface divergence of a tangential field given by chart components, as
/// a jet (consumes one order).
pub fn jet_divergence(fj: &FundJets, y_u: &Jet2, y_v: &Jet2) -> Jet2 {
    let du = fj.sqrt_det_g.mul(y_u).differentiate_u();
    let dv = fj.sqrt_det_g.mul(y_v).differentiate_v();
    du.add(&dv)
        .div(&fj.sqrt_det_g.truncate(du.order()))
        .expect("sqrt det g has nonzero constant term")
}

/// Stencil configuration for finite-difference tangential calculus on
/// black-box scalar fields.
#[derive(Debug, Clone, Copy)]
pub struct StencilConfig {
    /// Base spacing; the effective spacing is `h * max(1, |v|)`.
    pub h: f64,
}

impl Default for StencilConfig {
    fn default() -> Self {
        StencilConfig { h: 1e-3 }
    }
}

fn stencil_d1(vals: &[f64; 5], h: f64) -> f64 {
    (-vals[4] + 8.0 * vals[3] - 8.0 * vals[1] + vals[0]) / (12.0 * h)
}

/// Tangential gradient of a scalar field at `(u, v)`: chart components
/// `g^{ij} ∂_j φ`.
pub fn tangential_gradient<F: Fn(f64, f64) -> f64>(
    chart: &Chart,
    field: &F,
    u: f64,
    v: f64,
    cfg: StencilConfig,
) -> Result<[f64; 2]> {
    let h = cfg.h * v.abs().max(1.0);
    check_stencil(chart, u, v, 2.0 * h)?;
    let fu = stencil_d1(
        &[
            field(u - 2.0 * h, v),
            field(u - h, v),
            field(u, v),
            field(u + h, v),
            field(u + 2.0 * h, v),
        ],
        h,
    );
    let fv = stencil_d1(
        &[
            field(u, v - 2.0 * h),
            field(u, v - h),
            field(u, v),
            field(u, v + h),
            field(u, v + 2.0 * h),
        ],
        h,
    );
    let fd = fundamental_data(chart, u, v)?;
    let det = fd.g[0][0] * fd.g[1][1] - fd.g[0][1] * fd.g[1][0];
    Ok([
        (fd.g[1][1] * fu - fd.g[0][1] * fv) / det,
        (-fd.g[0][1] * fu + fd.g[0][0] * fv) / det,
    ])
}

/// Surface divergence of a tangential field given by chart components.
pub fn tangential_divergence<F: Fn(f64, f64) -> [f64; 2]>(
    chart: &Chart,
    field: &F,
    u: f64,
    v: f64,
    cfg: StencilConfig,
) -> Result<f64> {
    let h = cfg.h * v.abs().max(1.0);
    check_stencil(chart, u, v, 2.0 * h)?;
    let weighted = |uu: f64, vv: f64| -> Result<[f64; 2]> {
        let fd = fundamental_data(chart, uu, vv)?;
        let sg = (fd.g[0][0] * fd.g[1][1] - fd.g[0][1] * fd.g[1][0]).sqrt();
        let y = field(uu, vv);
        Ok([sg * y[0], sg * y[1]])
    };
    let mut us = [0.0; 5];
    let mut vs = [0.0; 5];
    for (k, off) in [-2.0, -1.0, 0.0, 1.0, 2.0].iter().enumerate() {
        us[k] = weighted(u + off * h, v)?[0];
        vs[k] = weighted(u, v + off * h)?[1];
    }
    let fd = fundamental_data(chart, u, v)?;
    let sg = (fd.g[0][0] * fd.g[1][1] - fd.g[0][1] * fd.g[1][0]).sqrt();
    Ok((stencil_d1(&us, h) + stencil_d1(&vs, h)) / sg)
}

/// Positive tangential Laplacian `Δ̄φ = -div(grad φ)`.
pub fn tangential_laplacian<F: Fn(f64, f64) -> f64>(
    chart: &Chart,
    field: &F,
    u: f64,
    v: f64,
    cfg: StencilConfig,
) -> Result<f64> {
    let grad = |uu: f64, vv: f64| -> [f64; 2] {
        tangential_gradient(chart, field, uu, vv, cfg).expect("stencil inside domain")
    };
    Ok(-tangential_divergence(chart, &grad, u, v, cfg)?)
}

fn check_stencil(chart: &Chart, u: f64, v: f64, reach: f64) -> Result<()> {
    // the Laplacian nests two stencil layers
    let reach = 2.0 * reach;
    if !chart.contains(u - reach, v - reach) || !chart.contains(u + reach, v + reach) {
        return Err(Error::domain(format!(
            "stencil of reach {reach:.2e} exits the chart domain at ({u}, {v})"
        )));
    }
    Ok(())
}

/// Diagnostics for isothermal charts with asymptotic coordinate lines.
#[derive(Debug, Clone)]
pub struct IsothermalDiagnostics {
    pub e: f64,
    /// |F| — isothermality requires F = 0 and E = G.
    pub f_residual: f64,
    pub eg_residual: f64,
    /// max |l_11|, |l_22| — asymptotic lines require a purely off-diagonal l.
    pub l_diag_residual: f64,
    /// `E E_uv - 4 E_u E_v`.
    pub e_identity: f64,
    /// Mixed derivative of `Q = E^{-3}`.
    pub q_uv: f64,
    /// Residual of the conformal-factor equation
    /// `-(log E)_uu - (log E)_vv = 2σE - 2/E` (flat coordinate Laplacian,
    /// positive sign convention).
    pub log_e_pde_residual: f64,
}

pub fn isothermal_diagnostics(chart: &Chart, u: f64, v: f64) -> Result<IsothermalDiagnostics> {
    let fj = fund_jets(chart, u, v, 2)?;
    let e = &fj.g[0][0];
    let e0 = e.value();
    let eu = e.coeff(1, 0);
    let ev = e.coeff(0, 1);
    let euv = e.coeff(1, 1);
    let q = jet2_powf(e, -3.0)?;
    let log_e = crate::series::jet2_ln(e)?;
    let flat_lap = -2.0 * log_e.coeff(2, 0) - 2.0 * log_e.coeff(0, 2);
    let sigma = chart.curvature().sigma();
    Ok(IsothermalDiagnostics {
        e: e0,
        f_residual: fj.g[0][1].value().abs(),
        eg_residual: (fj.g[0][0].value() - fj.g[1][1].value()).abs(),
        l_diag_residual: fj.l[0][0].value().abs().max(fj.l[1][1].value().abs()),
        e_identity: e0 * euv - 4.0 * eu * ev,
        q_uv: q.coeff(1, 1),
        log_e_pde_residual: flat_lap - 2.0 * sigma * e0 + 2.0 / e0,
    })
}

/// Which coordinate line a ruling check walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineDir {
    /// the line `v = c`, parametrized by `u`
    U,
    /// the line `u = c`, parametrized by `v`
    V,
}

#[derive(Debug, Clone)]
pub struct RulingReport {
    /// Geodesic curvature of the line inside the surface.
    pub geodesic_curvature: f64,
    /// Normalized second-fundamental-form value along the line.
    pub asymptotic_residual: f64,
    /// Normalized component of the ambient acceleration outside
    /// span{position (σ≠0), velocity}; zero iff the line is an ambient
    /// geodesic up to reparametrization.
    pub ambient_geodesic_residual: f64,
}

/// Checks whether the coordinate line through `(u, v)` is asymptotic, a
/// surface geodesic, and an ambient geodesic.
pub fn geodesic_ruling_check(
    chart: &Chart,
    dir: LineDir,
    u: f64,
    v: f64,
) -> Result<RulingReport> {
    let fj = fund_jets(chart, u, v, 1)?;
    let gamma = christoffels(&fj);
    let (t, o) = match dir {
        LineDir::U => (0usize, 1usize),
        LineDir::V => (1usize, 0usize),
    };
    let g = [
        [fj.g[0][0].value(), fj.g[0][1].value()],
        [fj.g[1][0].value(), fj.g[1][1].value()],
    ];
    // unit tangent along the line and the g-orthonormal transverse direction
    let gtt = g[t][t];
    // e_perp = (∂_o - (g_to/g_tt) ∂_t), normalized
    let mut eo = [0.0; 2];
    eo[o] = 1.0;
    eo[t] = -g[t][o] / gtt;
    let eo_norm = (g[o][o] - g[t][o] * g[t][o] / gtt).sqrt();
    // ⟨∇_T T, e_perp⟩_g / g_tt with T = ∂_t
    let acc = [gamma[0][t][t], gamma[1][t][t]];
    let mut inner = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            inner += acc[i] * eo[j] * g[i][j];
        }
    }
    let geodesic_curvature = inner / (eo_norm * gtt);

    let l_tt = fj.l[t][t].value();
    let asymptotic_residual = l_tt / gtt;

    // ambient acceleration of the coordinate line
    let c = chart.curvature();
    let d = c.dim();
    let vel: Vec<f64> = if dir == LineDir::U {
        fj.xu.iter().map(|j| j.value()).collect()
    } else {
        fj.xv.iter().map(|j| j.value()).collect()
    };
    let accel: Vec<f64> = match dir {
        LineDir::U => fj.xu.iter().map(|j| j.differentiate_u().value()).collect(),
        LineDir::V => fj.xv.iter().map(|j| j.differentiate_v().value()).collect(),
    };
    let pos: Vec<f64> = fj.position.iter().map(|j| j.value()).collect();
    // project the acceleration on span{position (σ≠0), velocity}: build an
    // orthonormal basis of the span first
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for cand in if c != Curvature::Flat {
        vec![pos, vel.clone()]
    } else {
        vec![vel.clone()]
    } {
        let mut w = cand;
        for b in &basis {
            let wb: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
            for i in 0..d {
                w[i] -= wb * b[i];
            }
        }
        let norm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-13 {
            for x in w.iter_mut() {
                *x /= norm;
            }
            basis.push(w);
        }
    }
    let mut resid = accel.clone();
    for b in &basis {
        let rb: f64 = resid.iter().zip(b).map(|(x, y)| x * y).sum();
        for i in 0..d {
            resid[i] -= rb * b[i];
        }
    }
    let accel_norm: f64 = accel.iter().map(|x| x * x).sum::<f64>().sqrt();
    let resid_norm: f64 = resid.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(RulingReport {
        geodesic_curvature,
        asymptotic_residual,
        ambient_geodesic_residual: resid_norm / accel_norm.max(1.0),
    })
}

/// Christoffel symbols `Γ^k_{ij}` of the chart metric at the base point.
pub fn christoffels(fj: &FundJets) -> [[[f64; 2]; 2]; 2] {
    let dg = |i: usize, j: usize, by: usize| -> f64 {
        if by == 0 {
            fj.g[i][j].coeff(1, 0)
        } else {
            fj.g[i][j].coeff(0, 1)
        }
    };
    let gi = [
        [fj.g_inv[0][0].value(), fj.g_inv[0][1].value()],
        [fj.g_inv[1][0].value(), fj.g_inv[1][1].value()],
    ];
    let mut out = [[[0.0; 2]; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                let mut s = 0.0;
                for l in 0..2 {
                    s += gi[k][l] * (dg(j, l, i) + dg(i, l, j) - dg(i, j, l));
                }
                out[k][i][j] = 0.5 * s;
            }
        }
    }
    out
}
