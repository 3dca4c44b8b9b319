//! Heat-flow invariants of the boundary via a collar of parallel surfaces.
//!
//! The normal direction is handled analytically: positions, leaf metrics
//! and leaf mean curvatures along each normal geodesic are Taylor jets in
//! the distance ρ, with the shape operator transported by the closed-form
//! solution of `∇_N S = S² + σI` per principal curvature. Tangential
//! derivatives are grid finite differences with jet-valued coefficients,
//! evaluated at two strides and Richardson-extrapolated.
//!
//! The flux invariants are
//!
//! * `γ₀ = -η/2`,
//! * `γ₂ = 2 D₄ 1`,
//! * `γ₄ = 3 D₆ 1`,
//!
//! with `D₄ = -(ΔN + 3NΔ)/16` and
//! `D₆ = (ΔN³ - N³Δ + NΔN² - N²ΔN + 40NΔ² + 8Δ²N + 16ΔNΔ)/768`,
//! where `Nφ = 2 ∂φ/∂ρ - φ·Δρ` and `Δ` is the positive ambient Laplacian
//! split as leaf Laplacian plus radial part `-φ'' + ηφ'`.

use crate::series::Jet1;
use crate::spaceform::Curvature;
use crate::surface::{divergence_residual, fund_jets, Chart};
use crate::{Error, Result};

/// Geometry of the collar build.
#[derive(Debug, Clone, Copy)]
pub struct CollarConfig {
    /// Half-width of the tangential grid in cells.
    pub grid_half: usize,
    /// Tangential grid spacing in chart units.
    pub spacing: f64,
    /// ρ-jet order carried by every node.
    pub jet_order: usize,
    /// Collar depth guarded against focal points.
    pub rho_radius: f64,
}

impl Default for CollarConfig {
    fn default() -> Self {
        CollarConfig {
            grid_half: 20,
            spacing: 1e-2,
            jet_order: 6,
            rho_radius: 0.3,
        }
    }
}

struct Node {
    /// Leaf metric jets in ρ (first fundamental form of the parallel leaf).
    sqrt_g: Jet1,
    gi_uu: Jet1,
    gi_uv: Jet1,
    gi_vv: Jet1,
    /// Leaf mean curvature jet (trace of the transported shape operator).
    eta: Jet1,
    /// Shape operator in chart basis at ρ = 0.
    s0: [[f64; 2]; 2],
    /// Ambient ∂u/∂v of the parallel position, as ρ-jets per component.
    pu: Vec<Jet1>,
    pv: Vec<Jet1>,
}

/// A collar of parallel surfaces over a tangential grid centred at a chart
/// point.
pub struct Collar {
    pub config: CollarConfig,
    pub curvature: Curvature,
    pub center: (f64, f64),
    n: usize,
    nodes: Vec<Node>,
}

fn jet1_inner(c: Curvature, a: &[Jet1], b: &[Jet1]) -> Jet1 {
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

/// First focal distance of the inward normal flow for principal curvature
/// `k`: the smallest ρ > 0 where `cs_σ(ρ) - k sn_σ(ρ)` vanishes.
pub fn focal_distance(c: Curvature, k: f64) -> f64 {
    match c {
        Curvature::Flat => {
            if k > 0.0 {
                1.0 / k
            } else {
                f64::INFINITY
            }
        }
        Curvature::Spherical => {
            let t = (1.0 / k).atan();
            if k > 0.0 {
                t
            } else if k < 0.0 {
                t + std::f64::consts::PI
            } else {
                std::f64::consts::FRAC_PI_2
            }
        }
        Curvature::Hyperbolic => {
            if k > 1.0 {
                (1.0 / k).atanh()
            } else {
                f64::INFINITY
            }
        }
    }
}

/// Closed-form principal curvature of the parallel surface at inward
/// distance ρ: `(k cs_σ + σ sn_σ) / (cs_σ - k sn_σ)`.
pub fn riccati_closed_form(c: Curvature, k0: f64, rho: f64) -> f64 {
    let (cs, sn) = (c.cs(rho), c.sn(rho));
    (k0 * cs + c.sigma() * sn) / (cs - k0 * sn)
}

/// Numeric integration of `k' = k² + σ` by classical 4th-order steps,
/// the independent cross-check of the closed form.
pub fn riccati_numeric(c: Curvature, k0: f64, rho: f64, steps: usize) -> f64 {
    let sigma = c.sigma();
    let f = |k: f64| k * k + sigma;
    let h = rho / steps as f64;
    let mut k = k0;
    for _ in 0..steps {
        let k1 = f(k);
        let k2 = f(k + 0.5 * h * k1);
        let k3 = f(k + 0.5 * h * k2);
        let k4 = f(k + h * k3);
        k += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    k
}

fn riccati_jet(c: Curvature, k0: f64, order: usize) -> Result<Jet1> {
    let cs = c.cs_jet(0.0, order);
    let sn = c.sn_jet(0.0, order);
    let num = cs.scale(&k0).add(&sn.scale(&c.sigma()));
    let den = cs.sub(&sn.scale(&k0));
    num.div(&den)
}

/// Build the collar infrastructure at a chart point.
pub fn collar(chart: &Chart, u0: f64, v0: f64, config: CollarConfig) -> Result<Collar> {
    let c = chart.curvature();
    let n = 2 * config.grid_half + 1;
    let m = config.jet_order;
    let cs = c.cs_jet(0.0, m);
    let sn = c.sn_jet(0.0, m);
    let mut nodes = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let u = u0 + (i as f64 - config.grid_half as f64) * config.spacing;
            let v = v0 + (j as f64 - config.grid_half as f64) * config.spacing;
            let fj = fund_jets(chart, u, v, 1)?;
            let d = c.dim();
            let val = |j2: &crate::series::Jet2| j2.value();
            let du = |j2: &crate::series::Jet2| j2.coeff(1, 0);
            let dv = |j2: &crate::series::Jet2| j2.coeff(0, 1);

            // Parallel position P(ρ) = X cs(ρ) + N sn(ρ); its chart
            // derivatives as ρ-jets use X_i, N_i only.
            let mut pu = Vec::with_capacity(d);
            let mut pv = Vec::with_capacity(d);
            for comp in 0..d {
                pu.push(
                    cs.scale(&val(&fj.xu[comp]))
                        .add(&sn.scale(&du(&fj.normal[comp]))),
                );
                pv.push(
                    cs.scale(&val(&fj.xv[comp]))
                        .add(&sn.scale(&dv(&fj.normal[comp]))),
                );
            }
            let guu = jet1_inner(c, &pu, &pu);
            let guv = jet1_inner(c, &pu, &pv);
            let gvv = jet1_inner(c, &pv, &pv);
            let det = guu.mul(&gvv).sub(&guv.mul(&guv));
            if det.value() <= 1e-14 {
                return Err(Error::SingularChart {
                    u,
                    v,
                    det_g: det.value(),
                });
            }
            let sqrt_g = crate::series::jet1_powf(&det, 0.5)?;
            let inv_det = det.recip()?;
            let gi_uu = gvv.mul(&inv_det);
            let gi_uv = guv.mul(&inv_det).neg();
            let gi_vv = guu.mul(&inv_det);

            let s0 = [
                [val(&fj.s[0][0]), val(&fj.s[0][1])],
                [val(&fj.s[1][0]), val(&fj.s[1][1])],
            ];
            let tr = s0[0][0] + s0[1][1];
            let dets = s0[0][0] * s0[1][1] - s0[0][1] * s0[1][0];
            let disc = (tr * tr - 4.0 * dets).max(0.0).sqrt();
            let (k1, k2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
            for k in [k1, k2] {
                let focal = focal_distance(c, k);
                if focal <= config.rho_radius {
                    return Err(Error::CollarTooWide {
                        focal,
                        requested: config.rho_radius,
                    });
                }
            }
            let eta = riccati_jet(c, k1, m)?.add(&riccati_jet(c, k2, m)?);

            nodes.push(Node {
                sqrt_g,
                gi_uu,
                gi_uv,
                gi_vv,
                eta,
                s0,
                pu,
                pv,
            });
        }
    }
    Ok(Collar {
        config,
        curvature: c,
        center: (u0, v0),
        n,
        nodes,
    })
}

impl Collar {
    fn node(&self, i: usize, j: usize) -> &Node {
        &self.nodes[i * self.n + j]
    }

    pub fn grid_size(&self) -> usize {
        self.n
    }

    /// ρ-jet of the leaf mean curvature along the centre normal.
    pub fn eta_jet_center(&self) -> &Jet1 {
        &self.node(self.config.grid_half, self.config.grid_half).eta
    }

    /// Principal curvatures at the centre (ρ = 0).
    pub fn principal_at_center(&self) -> (f64, f64) {
        let s = self.node(self.config.grid_half, self.config.grid_half).s0;
        let tr = s[0][0] + s[1][1];
        let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        ((tr + disc) / 2.0, (tr - disc) / 2.0)
    }

    /// Constant field 1 at full jet order.
    pub fn one(&self) -> CollarField<'_> {
        CollarField {
            collar: self,
            values: vec![Jet1::constant(1.0, self.config.jet_order); self.n * self.n],
            margin: 0,
        }
    }

    /// The leaf mean curvature as a field.
    pub fn eta_field(&self) -> CollarField<'_> {
        CollarField {
            collar: self,
            values: self.nodes.iter().map(|nd| nd.eta.clone()).collect(),
            margin: 0,
        }
    }

    /// Field built from per-node ρ-jets of a scalar.
    pub fn field_from(&self, f: impl Fn(f64, f64) -> Jet1) -> CollarField<'_> {
        let h = self.config.spacing;
        let gh = self.config.grid_half as f64;
        let mut values = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let u = self.center.0 + (i as f64 - gh) * h;
                let v = self.center.1 + (j as f64 - gh) * h;
                values.push(f(u, v).truncate(self.config.jet_order));
            }
        }
        CollarField {
            collar: self,
            values,
            margin: 0,
        }
    }
}

/// A scalar field on the collar: one ρ-jet per grid node, plus a record of
/// how many border cells previous stencil passes have invalidated.
#[derive(Clone)]
pub struct CollarField<'a> {
    collar: &'a Collar,
    values: Vec<Jet1>,
    margin: usize,
}

impl<'a> CollarField<'a> {
    pub fn order(&self) -> usize {
        self.values[self.center_index()].order()
    }

    fn center_index(&self) -> usize {
        let gh = self.collar.config.grid_half;
        gh * self.collar.n + gh
    }

    /// Jet at the centre node.
    pub fn center(&self) -> &Jet1 {
        assert!(
            self.margin <= self.collar.config.grid_half,
            "stencil passes consumed the whole grid"
        );
        &self.values[self.center_index()]
    }

    /// `Nφ = 2 φ' - η φ`; consumes one jet order.
    pub fn n_op(&self) -> Result<CollarField<'a>> {
        if self.order() == 0 {
            return Err(Error::InsufficientOrder { need: 1, have: 0 });
        }
        let n = self.collar.n;
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let phi = &self.values[i * n + j];
                let eta = &self.collar.node(i, j).eta;
                values.push(phi.differentiate().scale(&2.0).sub(&eta.mul(phi)));
            }
        }
        Ok(CollarField {
            collar: self.collar,
            values,
            margin: self.margin,
        })
    }

    /// Five-point first derivative in the u grid direction.
    fn d1_u(&self, i: usize, j: usize, stride: usize) -> Jet1 {
        let n = self.collar.n;
        let h = self.collar.config.spacing * stride as f64;
        let s = stride;
        let f = |ii: usize| &self.values[ii * n + j];
        // (f(-2h) - f(2h) + 8 f(h) - 8 f(-h)) / 12h
        f(i - 2 * s)
            .sub(f(i + 2 * s))
            .add(&f(i + s).sub(f(i - s)).scale(&8.0))
            .scale(&(1.0 / (12.0 * h)))
    }

    fn d1_v(&self, i: usize, j: usize, stride: usize) -> Jet1 {
        let n = self.collar.n;
        let h = self.collar.config.spacing * stride as f64;
        let s = stride;
        let f = |jj: usize| &self.values[i * n + jj];
        f(j - 2 * s)
            .sub(f(j + 2 * s))
            .add(&f(j + s).sub(f(j - s)).scale(&8.0))
            .scale(&(1.0 / (12.0 * h)))
    }

    /// Leaf (tangential) positive Laplacian with the jet-valued metric:
    /// `Δ̄φ = -(1/√g) ∂_i(√g g^{ij} ∂_j φ)`. Keeps the jet order, consumes
    /// 4·stride border cells.
    pub fn lap_op(&self, stride: usize) -> CollarField<'a> {
        let n = self.collar.n;
        let ord = self.order();
        let pad1 = self.margin + 2 * stride;
        let mut v1 = vec![Jet1::constant(0.0, ord); n * n];
        let mut v2 = v1.clone();
        for i in pad1..n - pad1 {
            for j in pad1..n - pad1 {
                let nd = self.collar.node(i, j);
                let fu = self.d1_u(i, j, stride);
                let fv = self.d1_v(i, j, stride);
                v1[i * n + j] = nd.sqrt_g.mul(&nd.gi_uu.mul(&fu).add(&nd.gi_uv.mul(&fv)));
                v2[i * n + j] = nd.sqrt_g.mul(&nd.gi_uv.mul(&fu).add(&nd.gi_vv.mul(&fv)));
            }
        }
        let inner_u = CollarField {
            collar: self.collar,
            values: v1,
            margin: pad1,
        };
        let inner_v = CollarField {
            collar: self.collar,
            values: v2,
            margin: pad1,
        };
        let pad2 = pad1 + 2 * stride;
        let mut out = vec![Jet1::constant(0.0, ord); n * n];
        for i in pad2..n - pad2 {
            for j in pad2..n - pad2 {
                let nd = self.collar.node(i, j);
                let div = inner_u.d1_u(i, j, stride).add(&inner_v.d1_v(i, j, stride));
                out[i * n + j] = div.div(&nd.sqrt_g).expect("sqrt g > 0").neg();
            }
        }
        CollarField {
            collar: self.collar,
            values: out,
            margin: pad2,
        }
    }

    /// Full positive Laplacian `Δφ = Δ̄φ - φ'' + η φ'`; consumes two jet
    /// orders and 4·stride border cells.
    pub fn delta_op(&self, stride: usize) -> Result<CollarField<'a>> {
        if self.order() < 2 {
            return Err(Error::InsufficientOrder {
                need: 2,
                have: self.order(),
            });
        }
        let lap = self.lap_op(stride);
        let n = self.collar.n;
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let phi = &self.values[i * n + j];
                let eta = &self.collar.node(i, j).eta;
                let d = phi.differentiate();
                let radial = d.differentiate().neg().add(&eta.mul(&d));
                values.push(lap.values[i * n + j].truncate(phi.order() - 2).add(&radial));
            }
        }
        Ok(CollarField {
            collar: self.collar,
            values,
            margin: lap.margin,
        })
    }
}

/// One operator letter of a flux word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    /// `N = 2 ∂ρ - η ·`
    Flux,
    /// Full positive Laplacian.
    Lap,
}

/// A word in the operator alphabet with a prefactor, applied right-to-left.
#[derive(Debug, Clone)]
pub struct OperatorWord {
    pub prefactor: f64,
    pub ops: Vec<Op>,
}

impl OperatorWord {
    pub fn new(prefactor: f64, ops: &[Op]) -> Self {
        OperatorWord {
            prefactor,
            ops: ops.to_vec(),
        }
    }
}

use Op::{Flux, Lap};

/// `D₂ = N/2`.
pub fn d2_words() -> Vec<OperatorWord> {
    vec![OperatorWord::new(0.5, &[Flux])]
}

/// `D₄ = -(ΔN + 3NΔ)/16`.
pub fn d4_words() -> Vec<OperatorWord> {
    vec![
        OperatorWord::new(-1.0 / 16.0, &[Lap, Flux]),
        OperatorWord::new(-3.0 / 16.0, &[Flux, Lap]),
    ]
}

/// The seven degree-6 words with prefactor 1/768.
pub fn d6_words() -> Vec<OperatorWord> {
    let p = 1.0 / 768.0;
    vec![
        OperatorWord::new(p, &[Lap, Flux, Flux, Flux]),
        OperatorWord::new(-p, &[Flux, Flux, Flux, Lap]),
        OperatorWord::new(p, &[Flux, Lap, Flux, Flux]),
        OperatorWord::new(-p, &[Flux, Flux, Lap, Flux]),
        OperatorWord::new(40.0 * p, &[Flux, Lap, Lap]),
        OperatorWord::new(8.0 * p, &[Lap, Lap, Flux]),
        OperatorWord::new(16.0 * p, &[Lap, Flux, Lap]),
    ]
}

/// Apply one word to a field (rightmost operator first).
pub fn apply_word<'a>(
    word: &OperatorWord,
    field: &CollarField<'a>,
    stride: usize,
) -> Result<CollarField<'a>> {
    let mut f = field.clone();
    for op in word.ops.iter().rev() {
        f = match op {
            Op::Flux => f.n_op()?,
            Op::Lap => f.delta_op(stride)?,
        };
    }
    Ok(f)
}

fn word_sum_at_center(
    words: &[OperatorWord],
    seed: &CollarField<'_>,
    stride: usize,
) -> Result<f64> {
    let mut acc = 0.0;
    for w in words {
        let f = apply_word(w, seed, stride)?;
        acc += w.prefactor * f.center().value();
    }
    Ok(acc)
}

/// Evaluate a word sum at strides 1 and 2 and extrapolate the fourth-order
/// stencil error away.
fn richardson(words: &[OperatorWord], seed: &CollarField<'_>) -> Result<f64> {
    let f1 = word_sum_at_center(words, seed, 1)?;
    let f2 = word_sum_at_center(words, seed, 2)?;
    Ok((16.0 * f1 - f2) / 15.0)
}

/// The flux invariants at a chart point, with the degree-6 one computed by
/// two routes that must agree.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GammaReport {
    pub gamma0: f64,
    pub gamma2: f64,
    /// `3 D₆ 1` from the seven-word form.
    pub gamma4_words: f64,
    /// `3 D₆ 1` from the reduced four-term form in η.
    pub gamma4_reduced: f64,
}

/// Compute `γ₀, γ₂, γ₄` at a chart point.
pub fn gammas(chart: &Chart, u: f64, v: f64, config: CollarConfig) -> Result<GammaReport> {
    let col = collar(chart, u, v, config)?;
    let one = col.one();
    let gamma0 = -0.5 * col.eta_jet_center().value();
    let gamma2 = 2.0 * richardson(&d4_words(), &one)?;
    let gamma4_words = 3.0 * richardson(&d6_words(), &one)?;
    // Reduced route: D₆1 = (-ΔN²η - NΔNη + N²Δη - 8Δ²η)/768, which the
    // seven-word form collapses to once N1 = -η is used.
    let eta = col.eta_field();
    let p = 1.0 / 768.0;
    let reduced = [
        OperatorWord::new(-p, &[Lap, Flux, Flux]),
        OperatorWord::new(-p, &[Flux, Lap, Flux]),
        OperatorWord::new(p, &[Flux, Flux, Lap]),
        OperatorWord::new(-8.0 * p, &[Lap, Lap]),
    ];
    let gamma4_reduced = 3.0 * richardson(&reduced, &eta)?;
    Ok(GammaReport {
        gamma0,
        gamma2,
        gamma4_words,
        gamma4_reduced,
    })
}

/// One invariant of the flux expansion, by index in {0, 2, 4}.
pub fn gamma(chart: &Chart, u: f64, v: f64, k: usize, config: CollarConfig) -> Result<f64> {
    let rep = gammas(chart, u, v, config)?;
    match k {
        0 => Ok(rep.gamma0),
        2 => Ok(rep.gamma2),
        4 => Ok(rep.gamma4_words),
        other => Err(Error::usage(format!(
            "gamma index must be 0, 2 or 4, got {other}"
        ))),
    }
}

/// Residual report of the structural identities behind the degree-6
/// computation.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IdentityReport {
    /// `∂²ρ Δ̄η` at the surface.
    pub normal2_lap_eta: f64,
    /// `+8 div(S(∇̄K))`, the predicted value of the above on minimal charts
    /// (equivalently `-8 δ̄(S(∇̄K))`).
    pub eight_div_s_grad_k: f64,
    pub minimal_identity_rel_residual: f64,
    /// Second-normal-derivative commutation lemma on the test field
    /// `φ = ρ·w(u,v)`: LHS `∂²ρ Δ̄φ`.
    pub lemma_lhs: f64,
    /// RHS `Δ̄(φ'') + 4 δ̄(S(∇̄(φ')))`.
    pub lemma_rhs: f64,
    pub lemma_rel_residual: f64,
    /// Max ambient-component residual of `∇_N ∇̄φ = ∇̄(φ') + S(∇̄φ)`.
    pub commutation_residual: f64,
}

/// Check the commutation identities at a chart point. The first identity
/// assumes the chart is minimal there; the others need η constant on the
/// surface, which minimality provides.
pub fn identity_checks(
    chart: &Chart,
    u: f64,
    v: f64,
    config: CollarConfig,
) -> Result<IdentityReport> {
    let col = collar(chart, u, v, config)?;

    // (1) ∂²ρ Δ̄η against the divergence form.
    let lhs_at = |stride: usize| -> f64 {
        col.eta_field().lap_op(stride).center().derivative_at_zero(2)
    };
    let normal2_lap_eta = (16.0 * lhs_at(1) - lhs_at(2)) / 15.0;
    let eight_div = 8.0 * divergence_residual(chart, u, v)?;
    let scale = normal2_lap_eta.abs().max(eight_div.abs()).max(1e-8);
    let minimal_identity_rel_residual = (normal2_lap_eta - eight_div).abs() / scale;

    // (2) the commutation lemma with φ = ρ·w(u, v), w generic analytic.
    let w = |uu: f64, vv: f64| -> f64 {
        (1.3 * uu + 0.2).sin() * (0.9 * vv - 0.1).cos() + 0.25 * (uu - vv)
    };
    let order = config.jet_order;
    let phi = col.field_from(|uu, vv| {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[1] = w(uu, vv);
        Jet1::from_coeffs(coeffs)
    });
    let lemma_lhs_at = |stride: usize| phi.lap_op(stride).center().derivative_at_zero(2);
    let lemma_lhs = (16.0 * lemma_lhs_at(1) - lemma_lhs_at(2)) / 15.0;

    // RHS: Δ̄(φ'') vanishes for φ = ρ w; the second term is the surface
    // co-divergence of S applied to the surface gradient of φ' = w.
    let w_field = col.field_from(|uu, vv| Jet1::constant(w(uu, vv), 2));
    let delta_bar_s_grad_w =
        (16.0 * co_div_s_grad(&col, &w_field, 1) - co_div_s_grad(&col, &w_field, 2)) / 15.0;
    let lemma_rhs = 4.0 * delta_bar_s_grad_w;
    let lemma_scale = lemma_lhs.abs().max(lemma_rhs.abs()).max(1e-8);
    let lemma_rel_residual = (lemma_lhs - lemma_rhs).abs() / lemma_scale;

    // (3) first commutation rule ∇_N ∇̄φ = ∇̄(φ') + S(∇̄φ).
    let commutation_residual = commutation_residual(&col, &phi, &w_field);

    Ok(IdentityReport {
        normal2_lap_eta,
        eight_div_s_grad_k: eight_div,
        minimal_identity_rel_residual,
        lemma_lhs,
        lemma_rhs,
        lemma_rel_residual,
        commutation_residual,
    })
}

/// `δ̄(S(∇̄ w))` at the collar centre on the ρ = 0 leaf.
fn co_div_s_grad(col: &Collar, w_field: &CollarField<'_>, stride: usize) -> f64 {
    let n = col.n;
    let pad = w_field.margin + 2 * stride;
    let ord = w_field.order();
    let mut y_u = vec![Jet1::constant(0.0, ord); n * n];
    let mut y_v = y_u.clone();
    for i in pad..n - pad {
        for j in pad..n - pad {
            let nd = col.node(i, j);
            let fu = w_field.d1_u(i, j, stride);
            let fv = w_field.d1_v(i, j, stride);
            let xu = nd.gi_uu.mul(&fu).add(&nd.gi_uv.mul(&fv));
            let xv = nd.gi_uv.mul(&fu).add(&nd.gi_vv.mul(&fv));
            let s = nd.s0;
            y_u[i * n + j] = nd.sqrt_g.mul(&xu.scale(&s[0][0]).add(&xv.scale(&s[0][1])));
            y_v[i * n + j] = nd.sqrt_g.mul(&xu.scale(&s[1][0]).add(&xv.scale(&s[1][1])));
        }
    }
    let fu = CollarField {
        collar: col,
        values: y_u,
        margin: pad,
    };
    let fv = CollarField {
        collar: col,
        values: y_v,
        margin: pad,
    };
    let gh = col.config.grid_half;
    let div = fu
        .d1_u(gh, gh, stride)
        .add(&fv.d1_v(gh, gh, stride))
        .div(&col.node(gh, gh).sqrt_g)
        .expect("sqrt g > 0");
    -div.value()
}

/// Ambient components of the tangential gradient of a field at a node, as
/// ρ-jets.
fn ambient_gradient(
    col: &Collar,
    field: &CollarField<'_>,
    i: usize,
    j: usize,
    stride: usize,
) -> Vec<Jet1> {
    let nd = col.node(i, j);
    let fu = field.d1_u(i, j, stride);
    let fv = field.d1_v(i, j, stride);
    let xu = nd.gi_uu.mul(&fu).add(&nd.gi_uv.mul(&fv));
    let xv = nd.gi_uv.mul(&fu).add(&nd.gi_vv.mul(&fv));
    nd.pu
        .iter()
        .zip(&nd.pv)
        .map(|(pu, pv)| pu.mul(&xu).add(&pv.mul(&xv)))
        .collect()
}

/// Ambient residual of `∇_N ∇̄φ = ∇̄(φ') + S(∇̄φ)` at the collar centre.
/// On a space form the covariant ρ-derivative of a leaf-tangential field
/// equals the plain component derivative, because the would-be position
/// correction is weighted by form(V, N) = 0.
fn commutation_residual(
    col: &Collar,
    phi: &CollarField<'_>,
    w_field: &CollarField<'_>,
) -> f64 {
    let gh = col.config.grid_half;
    let stride = 1;
    let grad_phi = ambient_gradient(col, phi, gh, gh, stride);
    let lhs: Vec<f64> = grad_phi.iter().map(|g| g.derivative_at_zero(1)).collect();
    let grad_w = ambient_gradient(col, w_field, gh, gh, stride);
    let term1: Vec<f64> = grad_w.iter().map(|g| g.value()).collect();
    let nd = col.node(gh, gh);
    let fu = phi.d1_u(gh, gh, stride);
    let fv = phi.d1_v(gh, gh, stride);
    let xu = nd.gi_uu.mul(&fu).add(&nd.gi_uv.mul(&fv)).value();
    let xv = nd.gi_uv.mul(&fu).add(&nd.gi_vv.mul(&fv)).value();
    let su = nd.s0[0][0] * xu + nd.s0[0][1] * xv;
    let sv = nd.s0[1][0] * xu + nd.s0[1][1] * xv;
    let term2: Vec<f64> = nd
        .pu
        .iter()
        .zip(&nd.pv)
        .map(|(pu, pv)| pu.value() * su + pv.value() * sv)
        .collect();
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 1e-8;
    for c in 0..lhs.len() {
        worst = worst.max((lhs[c] - term1[c] - term2[c]).abs());
        scale = scale.max(lhs[c].abs()).max(term1[c].abs()).max(term2[c].abs());
    }
    worst / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catenoid_waist_gamma_values() {
        let s = catalog::catenoid();
        let rep = gammas(&s.chart, 0.0, 0.0, CollarConfig::default()).unwrap();
        let div = divergence_residual(&s.chart, 0.0, 0.0).unwrap();
        assert!(div.abs() > 3.9 && div.abs() < 4.1, "div = {div}");
        assert!(rep.gamma0.abs() < 1e-12, "gamma0 = {}", rep.gamma0);
        assert!(rep.gamma2.abs() < 1e-6, "gamma2 = {}", rep.gamma2);
        let expect = 5.0 / 16.0 * div;
        assert!(
            (rep.gamma4_words - expect).abs() < 1e-4,
            "gamma4 = {} vs 5/16 div = {expect}",
            rep.gamma4_words
        );
        assert!(
            (rep.gamma4_words - rep.gamma4_reduced).abs() < 1e-8,
            "routes disagree: {} vs {}",
            rep.gamma4_words,
            rep.gamma4_reduced
        );
    }

    #[test]
    fn unit_ball_eta_jet_matches_transport_oracle() {
        use crate::series::{jet2_cos, jet2_sin};
        use crate::surface::{Chart, FnChart};
        use std::sync::Arc;
        // unit sphere with inner normal: principal curvatures +1, leaf mean
        // curvature 2/(1-rho)
        let chart = Chart::new(
            "unit_sphere",
            Arc::new(FnChart {
                curvature: crate::spaceform::Curvature::Flat,
                f: |u: &crate::series::Jet2, v: &crate::series::Jet2| {
                    let cu = jet2_cos(u).unwrap();
                    let su = jet2_sin(u).unwrap();
                    let cv = jet2_cos(v).unwrap();
                    let sv = jet2_sin(v).unwrap();
                    vec![cu.mul(&cv), su.mul(&cv), sv]
                },
                domain: ((-3.0, 3.0), (-1.2, 1.2)),
            }),
        );
        // orient so that eta > 0 (inner normal of the ball)
        let fd = crate::surface::fundamental_data(&chart, 0.3, 0.2).unwrap();
        let chart = if fd.mean < 0.0 { chart.flipped() } else { chart };
        let col = collar(&chart, 0.3, 0.2, CollarConfig::default()).unwrap();
        let eta = col.eta_jet_center();
        for k in 0..=col.config.jet_order {
            assert!(
                (eta.coeff(k) - 2.0).abs() < 1e-10,
                "eta jet coeff {k} = {} (want 2)",
                eta.coeff(k)
            );
        }
    }
}
