//! Named surface fixtures: charts, side functions, isometry families, and
//! the symmetry harness that certifies them.
//!
//! Every fixture that bounds a domain fixes the convention `side > 0` on
//! `Ω₊`; chart normals are oriented at construction time so that they point
//! into `Ω₊` (the inner normal of the named domain).

use crate::series::{jet2_cos, jet2_cosh, jet2_sin, jet2_sinh, jet2_sqrt, Jet1, Jet2};
use crate::spaceform::{geodesic_unchecked, AmbientPoint, Curvature, Isometry};
use crate::surface::{fundamental_data, Chart, ChartMap, Domain, FnChart};
use crate::{Error, Result};
use std::sync::Arc;

/// How a fixture realises the swap of the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryKind {
    /// The swap isometry fixes the surface pointwise (totally geodesic
    /// fixtures).
    Reflection,
    /// The swap composes with a member of the flow family on the surface
    /// (helicoidal fixtures).
    Flow,
    /// No swap isometry exists; the fixture is a negative control.
    NoSwap,
}

type SideFn = Arc<dyn Fn(&AmbientPoint) -> f64 + Send + Sync>;
type FlowFn = Arc<dyn Fn(f64) -> Isometry + Send + Sync>;
type ChartAction = Arc<dyn Fn(f64, f64) -> (f64, f64) + Send + Sync>;

/// A catalogued surface with everything the verification passes need.
pub struct NamedSurface {
    pub name: String,
    pub curvature: Curvature,
    pub chart: Chart,
    /// Isothermal chart with asymptotic coordinate lines, where one is known.
    pub asymptotic_chart: Option<Chart>,
    side: Option<SideFn>,
    /// One-parameter family `T_β` preserving both sides.
    flow: FlowFn,
    /// Optional second commuting family (the torus needs two).
    flow2: Option<FlowFn>,
    /// Swap isometry `Ψ` exchanging the two sides (identity for `NoSwap`).
    pub swap: Isometry,
    /// Action of `Ψ` on chart coordinates.
    psi_chart: ChartAction,
    /// For each chart point, a flow member agreeing with `Ψ` there.
    psi_match: Arc<dyn Fn(f64, f64) -> Isometry + Send + Sync>,
    pub symmetry: SymmetryKind,
    pub is_half_domain_fixture: bool,
    /// Periods of the chart map in (u, v), for tori.
    pub chart_period: Option<(f64, f64)>,
}

impl NamedSurface {
    /// Wrap chart coordinates into the fundamental domain when the map is
    /// periodic.
    pub fn wrap_coords(&self, u: f64, v: f64) -> (f64, f64) {
        match self.chart_period {
            Some((pu, pv)) => (u.rem_euclid(pu), v.rem_euclid(pv)),
            None => (u, v),
        }
    }
    /// Signed side function; `side > 0` on `Ω₊`, zero set is the surface.
    pub fn side(&self, p: &AmbientPoint) -> Result<f64> {
        match &self.side {
            Some(f) => Ok(f(p)),
            None => Err(Error::NotADomain(self.name.clone())),
        }
    }

    pub fn bounds_domain(&self) -> bool {
        self.side.is_some()
    }

    pub fn flow_isometry(&self, beta: f64) -> Isometry {
        (self.flow)(beta)
    }

    pub fn second_flow_isometry(&self, beta: f64) -> Option<Isometry> {
        self.flow2.as_ref().map(|f| f(beta))
    }

    pub fn psi_chart_action(&self, u: f64, v: f64) -> (f64, f64) {
        (self.psi_chart)(u, v)
    }

    pub fn psi_matching_flow(&self, u: f64, v: f64) -> Isometry {
        (self.psi_match)(u, v)
    }

    pub fn boundary_point(&self, u: f64, v: f64) -> Result<AmbientPoint> {
        AmbientPoint::new(self.curvature, &self.chart.position(u, v))
    }

    /// Deterministic interior sample lattice, shrunk away from the chart
    /// edges so stencils and collars stay inside.
    pub fn interior_points(&self, n: usize) -> Vec<(f64, f64)> {
        let ((u0, u1), (v0, v1)) = self.chart.domain();
        let (cu, cv) = (0.5 * (u0 + u1), 0.5 * (v0 + v1));
        let (ru, rv) = (0.35 * (u1 - u0), 0.35 * (v1 - v0));
        let m = (n as f64).sqrt().ceil() as usize;
        let mut pts = Vec::with_capacity(n);
        'outer: for i in 0..m {
            for j in 0..m {
                if pts.len() == n {
                    break 'outer;
                }
                let fu = if m == 1 { 0.0 } else { i as f64 / (m - 1) as f64 - 0.5 };
                let fv = if m == 1 { 0.0 } else { j as f64 / (m - 1) as f64 - 0.5 };
                pts.push((cu + 2.0 * ru * fu, cv + 2.0 * rv * fv));
            }
        }
        pts
    }
}

fn rot2(b: f64) -> [[f64; 2]; 2] {
    [[b.cos(), -b.sin()], [b.sin(), b.cos()]]
}

/// Orient the chart normal so it points toward `side > 0`.
fn orient_into_positive_side(surface: &mut NamedSurface, u: f64, v: f64) {
    let Some(side) = surface.side.clone() else {
        return;
    };
    let fd = fundamental_data(&surface.chart, u, v).expect("fixture chart is regular");
    let p = AmbientPoint::new(surface.curvature, &fd.position).expect("fixture point on model");
    let probe = geodesic_unchecked(&p, &fd.normal, 1e-4);
    if side(&probe) < 0.0 {
        surface.chart = surface.chart.flipped();
        if let Some(a) = &surface.asymptotic_chart {
            // keep both charts consistently oriented
            let fa = fundamental_data(a, 0.0, 0.0).expect("asymptotic chart regular");
            let pa =
                AmbientPoint::new(surface.curvature, &fa.position).expect("on model");
            let pr = geodesic_unchecked(&pa, &fa.normal, 1e-4);
            if side(&pr) < 0.0 {
                surface.asymptotic_chart = Some(a.flipped());
            }
        }
    } else if let Some(a) = &surface.asymptotic_chart {
        let fa = fundamental_data(a, 0.0, 0.0).expect("asymptotic chart regular");
        let pa = AmbientPoint::new(surface.curvature, &fa.position).expect("on model");
        let pr = geodesic_unchecked(&pa, &fa.normal, 1e-4);
        if side(&pr) < 0.0 {
            surface.asymptotic_chart = Some(a.flipped());
        }
    }
}

fn chart3<F>(name: &str, domain: Domain, f: F) -> Chart
where
    F: Fn(&Jet2, &Jet2) -> Vec<Jet2> + Send + Sync + 'static,
{
    Chart::new(
        name,
        Arc::new(FnChart {
            curvature: Curvature::Flat,
            f,
            domain,
        }),
    )
}

fn chart4<F>(name: &str, curvature: Curvature, domain: Domain, f: F) -> Chart
where
    F: Fn(&Jet2, &Jet2) -> Vec<Jet2> + Send + Sync + 'static,
{
    Chart::new(
        name,
        Arc::new(FnChart {
            curvature,
            f,
            domain,
        }),
    )
}

/// The flat plane `z = 0` bounding the upper half-space.
pub fn euclidean_plane() -> NamedSurface {
    let chart = chart3("euclidean_plane", ((-3.0, 3.0), (-3.0, 3.0)), |u, v| {
        vec![u.clone(), v.clone(), Jet2::zero(u.order())]
    });
    let mut s = NamedSurface {
        name: "euclidean_plane".into(),
        curvature: Curvature::Flat,
        chart,
        asymptotic_chart: None,
        side: Some(Arc::new(|p| p.coord(2))),
        flow: Arc::new(|b| Isometry::euclidean([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], [b, 0.0, 0.0])),
        flow2: None,
        swap: Isometry::euclidean(
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]],
            [0.0; 3],
        ),
        psi_chart: Arc::new(|u, v| (u, v)),
        psi_match: Arc::new(|_, _| Isometry::identity(Curvature::Flat)),
        symmetry: SymmetryKind::Reflection,
        is_half_domain_fixture: true,
        chart_period: None,
    };
    orient_into_positive_side(&mut s, 0.4, -0.3);
    s
}

/// The right helicoid `x sin z = y cos z` in ℝ³.
pub fn right_helicoid() -> NamedSurface {
    let chart = chart3(
        "right_helicoid",
        ((-2.5, 2.5), (-2.5, 2.5)),
        |u, v| {
            let cu = jet2_cos(u).unwrap();
            let su = jet2_sin(u).unwrap();
            vec![v.mul(&cu), v.mul(&su), u.clone()]
        },
    );
    let asym = chart3(
        "right_helicoid_asymptotic",
        ((-2.5, 2.5), (-2.0, 2.0)),
        |u, v| {
            let cu = jet2_cos(u).unwrap();
            let su = jet2_sin(u).unwrap();
            let sv = jet2_sinh(v).unwrap();
            vec![sv.mul(&cu), sv.mul(&su), u.clone()]
        },
    );
    let flow: FlowFn = Arc::new(|b| {
        let r = rot2(b);
        Isometry::euclidean(
            [
                [r[0][0], r[0][1], 0.0],
                [r[1][0], r[1][1], 0.0],
                [0.0, 0.0, 1.0],
            ],
            [0.0, 0.0, b],
        )
    });
    let flow_for_match = flow.clone();
    let mut s = NamedSurface {
        name: "right_helicoid".into(),
        curvature: Curvature::Flat,
        chart,
        asymptotic_chart: Some(asym),
        side: Some(Arc::new(|p| {
            p.coord(0) * p.coord(2).sin() - p.coord(1) * p.coord(2).cos()
        })),
        flow,
        flow2: None,
        swap: Isometry::euclidean(
            [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]],
            [0.0; 3],
        ),
        psi_chart: Arc::new(|u, v| (-u, v)),
        psi_match: Arc::new(move |u, _| flow_for_match(-2.0 * u)),
        symmetry: SymmetryKind::Flow,
        is_half_domain_fixture: true,
        chart_period: None,
    };
    orient_into_positive_side(&mut s, 0.4, 0.7);
    s
}

/// The catenoid, minimal but not a half-domain: the negative control.
pub fn catenoid() -> NamedSurface {
    let chart = chart3("catenoid", ((-2.5, 2.5), (-1.5, 1.5)), |u, v| {
        let cu = jet2_cos(u).unwrap();
        let su = jet2_sin(u).unwrap();
        let cv = jet2_cosh(v).unwrap();
        vec![cv.mul(&cu), cv.mul(&su), v.clone()]
    });
    let mut s = NamedSurface {
        name: "catenoid".into(),
        curvature: Curvature::Flat,
        chart,
        asymptotic_chart: None,
        side: Some(Arc::new(|p| {
            p.coord(0).powi(2) + p.coord(1).powi(2) - p.coord(2).cosh().powi(2)
        })),
        flow: Arc::new(|b| {
            let r = rot2(b);
            Isometry::euclidean(
                [
                    [r[0][0], r[0][1], 0.0],
                    [r[1][0], r[1][1], 0.0],
                    [0.0, 0.0, 1.0],
                ],
                [0.0; 3],
            )
        }),
        flow2: None,
        swap: Isometry::identity(Curvature::Flat),
        psi_chart: Arc::new(|u, v| (u, v)),
        psi_match: Arc::new(|_, _| Isometry::identity(Curvature::Flat)),
        symmetry: SymmetryKind::NoSwap,
        is_half_domain_fixture: false,
        chart_period: None,
    };
    orient_into_positive_side(&mut s, 0.3, 0.2);
    s
}

/// Totally geodesic ℍ² inside ℍ³ (the slice `p₃ = 0`).
pub fn h2_totally_geodesic() -> NamedSurface {
    let chart = chart4(
        "h2_totally_geodesic",
        Curvature::Hyperbolic,
        ((-2.0, 2.0), (-2.0, 2.0)),
        |u, v| {
            let one = Jet2::constant(1.0, u.order());
            let w = jet2_sqrt(&one.add(&u.mul(u)).add(&v.mul(v))).unwrap();
            vec![w, u.clone(), v.clone(), Jet2::zero(u.order())]
        },
    );
    let flow: FlowFn = Arc::new(|b| {
        Isometry::linear(
            Curvature::Hyperbolic,
            [
                [b.cosh(), b.sinh(), 0.0, 0.0],
                [b.sinh(), b.cosh(), 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ],
        )
    });
    let mut s = NamedSurface {
        name: "h2_totally_geodesic".into(),
        curvature: Curvature::Hyperbolic,
        chart,
        asymptotic_chart: None,
        side: Some(Arc::new(|p| p.coord(3))),
        flow,
        flow2: None,
        swap: Isometry::linear(
            Curvature::Hyperbolic,
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, -1.0],
            ],
        ),
        psi_chart: Arc::new(|u, v| (u, v)),
        psi_match: Arc::new(|_, _| Isometry::identity(Curvature::Hyperbolic)),
        symmetry: SymmetryKind::Reflection,
        is_half_domain_fixture: true,
        chart_period: None,
    };
    orient_into_positive_side(&mut s, 0.3, -0.4);
    s
}

/// A great 2-sphere inside S³ (the slice `x₄ = 0`).
pub fn great_sphere() -> NamedSurface {
    let chart = chart4(
        "great_sphere",
        Curvature::Spherical,
        ((-3.0, 3.0), (-1.2, 1.2)),
        |u, v| {
            let cu = jet2_cos(u).unwrap();
            let su = jet2_sin(u).unwrap();
            let cv = jet2_cos(v).unwrap();
            let sv = jet2_sin(v).unwrap();
            vec![cu.mul(&cv), su.mul(&cv), sv, Jet2::zero(u.order())]
        },
    );
    let mut s = NamedSurface {
        name: "great_sphere".into(),
        curvature: Curvature::Spherical,
        chart,
        asymptotic_chart: None,
        side: Some(Arc::new(|p| p.coord(3))),
        flow: Arc::new(|b| {
            let r = rot2(b);
            Isometry::linear(
                Curvature::Spherical,
                [
                    [r[0][0], r[0][1], 0.0, 0.0],
                    [r[1][0], r[1][1], 0.0, 0.0],
                    [0.0, 0.0, 1.0, 0.0],
                    [0.0, 0.0, 0.0, 1.0],
                ],
            )
        }),
        flow2: None,
        swap: Isometry::linear(
            Curvature::Spherical,
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, -1.0],
            ],
        ),
        psi_chart: Arc::new(|u, v| (u, v)),
        psi_match: Arc::new(|_, _| Isometry::identity(Curvature::Spherical)),
        symmetry: SymmetryKind::Reflection,
        is_half_domain_fixture: true,
        chart_period: None,
    };
    orient_into_positive_side(&mut s, 0.3, 0.2);
    s
}

fn spherical_helicoid_chart(name: &str, alpha: f64) -> Chart {
    chart4(
        name,
        Curvature::Spherical,
        ((0.0, std::f64::consts::TAU), (0.0, std::f64::consts::TAU)),
        move |u, v| {
            let au = u.scale(&alpha);
            let cau = jet2_cos(&au).unwrap();
            let sau = jet2_sin(&au).unwrap();
            let cu = jet2_cos(u).unwrap();
            let su = jet2_sin(u).unwrap();
            let cv = jet2_cos(v).unwrap();
            let sv = jet2_sin(v).unwrap();
            vec![cau.mul(&cv), sau.mul(&cv), cu.mul(&sv), su.mul(&sv)]
        },
    )
}

/// The Clifford torus `x₁x₄ = x₂x₃` in S³.
pub fn clifford_torus() -> NamedSurface {
    let chart = spherical_helicoid_chart("clifford_torus", 1.0);
    // asymptotic chart: the same map already has E = G = 1, F = 0, diagonal-free l
    let asym = spherical_helicoid_chart("clifford_torus_asymptotic", 1.0);
    let flow: FlowFn = Arc::new(|b| {
        let r = rot2(b);
        Isometry::linear(
            Curvature::Spherical,
            [
                [r[0][0], r[0][1], 0.0, 0.0],
                [r[1][0], r[1][1], 0.0, 0.0],
                [0.0, 0.0, r[0][0], r[0][1]],
                [0.0, 0.0, r[1][0], r[1][1]],
            ],
        )
    });
    // second family: rotation in the (x1,x3) and (x2,x4) planes moves v
    let flow2: FlowFn = Arc::new(|b| {
        let (c, s) = (b.cos(), b.sin());
        Isometry::linear(
            Curvature::Spherical,
            [
                [c, 0.0, -s, 0.0],
                [0.0, c, 0.0, -s],
                [s, 0.0, c, 0.0],
                [0.0, s, 0.0, c],
            ],
        )
    });
    let flow2_for_match = flow2.clone();
    let mut s = NamedSurface {
        name: "clifford_torus".into(),
        curvature: Curvature::Spherical,
        chart,
        asymptotic_chart: Some(asym),
        side: Some(Arc::new(|p| {
            p.coord(0) * p.coord(3) - p.coord(1) * p.coord(2)
        })),
        flow,
        flow2: Some(flow2),
        swap: Isometry::linear(
            Curvature::Spherical,
            [
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
            ],
        ),
        psi_chart: Arc::new(|u, v| (u, std::f64::consts::FRAC_PI_2 - v)),
        psi_match: Arc::new(move |_, v| flow2_for_match(std::f64::consts::FRAC_PI_2 - 2.0 * v)),
        symmetry: SymmetryKind::Flow,
        is_half_domain_fixture: true,
        chart_period: Some((std::f64::consts::TAU, std::f64::consts::TAU)),
    };
    orient_into_positive_side(&mut s, 0.4, 0.9);
    s
}

/// The one-parameter family of ruled minimal surfaces in S³; an embedded
/// torus only for `α = 1`, otherwise it does not bound a domain and all
/// side-function operations are refused.
pub fn spherical_helicoid(alpha: f64) -> Result<NamedSurface> {
    if alpha <= 0.0 {
        return Err(Error::usage("spherical_helicoid: alpha must be positive"));
    }
    if (alpha - 1.0).abs() < 1e-12 {
        let mut s = clifford_torus();
        s.name = "spherical_helicoid".into();
        return Ok(s);
    }
    let chart = spherical_helicoid_chart("spherical_helicoid", alpha);
    Ok(NamedSurface {
        name: "spherical_helicoid".into(),
        curvature: Curvature::Spherical,
        chart,
        asymptotic_chart: None,
        side: None,
        flow: Arc::new(move |b| {
            let r1 = rot2(alpha * b);
            let r2 = rot2(b);
            Isometry::linear(
                Curvature::Spherical,
                [
                    [r1[0][0], r1[0][1], 0.0, 0.0],
                    [r1[1][0], r1[1][1], 0.0, 0.0],
                    [0.0, 0.0, r2[0][0], r2[0][1]],
                    [0.0, 0.0, r2[1][0], r2[1][1]],
                ],
            )
        }),
        flow2: None,
        swap: Isometry::identity(Curvature::Spherical),
        psi_chart: Arc::new(|u, v| (u, v)),
        psi_match: Arc::new(|_, _| Isometry::identity(Curvature::Spherical)),
        symmetry: SymmetryKind::NoSwap,
        is_half_domain_fixture: false,
        chart_period: Some((std::f64::consts::TAU, std::f64::consts::TAU)),
    })
}

/// Asymptotic-isothermal reparametrization of the hyperbolic helicoid: the
/// natural chart already has asymptotic coordinate lines and `G = 1`, so a
/// substitution `v = φ(ṽ)` with `φ' = sqrt(E(φ))` makes it isothermal. φ is
/// integrated once on a fine grid and jet-expanded on demand.
struct HypHelicoidAsymptotic {
    alpha: f64,
    step: f64,
    /// φ at ṽ = k·step for k >= 0; φ is odd in ṽ.
    grid: Vec<f64>,
    domain: Domain,
}

impl HypHelicoidAsymptotic {
    fn new(alpha: f64, v_extent: f64) -> Self {
        // March dv/dṽ = sqrt(alpha² cosh² v + sinh² v) outward from 0 and
        // stop once the natural coordinate v covers the requested extent
        // (the ODE blows up in finite ṽ, so the range must be discovered,
        // not guessed). Oddness covers negative ṽ.
        let step = 1e-3;
        let speed = |x: f64| (alpha * alpha * x.cosh().powi(2) + x.sinh().powi(2)).sqrt();
        let mut grid = vec![0.0];
        let mut x = 0.0;
        while x < v_extent {
            let h = step;
            let k1 = speed(x);
            let k2 = speed(x + 0.5 * h * k1);
            let k3 = speed(x + 0.5 * h * k2);
            let k4 = speed(x + h * k3);
            x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            grid.push(x);
        }
        let tv_max = (grid.len() - 1) as f64 * step - 0.01;
        HypHelicoidAsymptotic {
            alpha,
            step,
            grid,
            domain: ((-2.0, 2.0), (-tv_max, tv_max)),
        }
    }

    /// Taylor jet of φ at ṽ via the nearest grid node and the ODE recursion
    /// φ' = sqrt(α² cosh²φ + sinh²φ).
    fn phi_jet(&self, tv: f64, order: usize) -> Jet1 {
        let alpha = self.alpha;
        let speed_jet = |phi: &Jet1| -> Jet1 {
            let c = crate::series::jet1_cosh(phi).unwrap();
            let s = crate::series::jet1_sinh(phi).unwrap();
            let inner = c.mul(&c).scale(&(alpha * alpha)).add(&s.mul(&s));
            crate::series::jet1_sqrt(&inner).unwrap()
        };
        let max_node = (self.grid.len() - 1) as i64;
        let node = ((tv.abs() / self.step).round() as i64).clamp(0, max_node);
        let tv0 = tv.signum() * node as f64 * self.step;
        let mut phi0 = tv.signum() * self.grid[node as usize];
        // refine to the requested ṽ by a high-order local Taylor step
        let dt = tv - tv0;
        let mut local = Jet1::constant(phi0, 8);
        for _ in 0..=8 {
            local = speed_jet(&local).integrate().truncate(8);
            let mut c = local.coeffs().to_vec();
            c[0] = phi0;
            local = Jet1::from_coeffs(c);
        }
        phi0 = local.eval(dt);
        // now the jet at the exact base point
        let mut jet = Jet1::constant(phi0, order);
        for _ in 0..=order {
            jet = speed_jet(&jet).integrate().truncate(order);
            let mut c = jet.coeffs().to_vec();
            c[0] = phi0;
            jet = Jet1::from_coeffs(c);
        }
        jet
    }
}

fn lift_v_jet(j: &Jet1, order: usize) -> Jet2 {
    let mut out = Jet2::zero(order);
    for k in 0..=order.min(j.order()) {
        out.set_coeff(0, k, j.coeff(k));
    }
    out
}

impl ChartMap for HypHelicoidAsymptotic {
    fn curvature(&self) -> Curvature {
        Curvature::Hyperbolic
    }
    fn eval_jets(&self, u: f64, tv: f64, order: usize) -> Vec<Jet2> {
        let phi = lift_v_jet(&self.phi_jet(tv, order), order);
        let ju = Jet2::variable_u(u, order);
        let au = ju.scale(&self.alpha);
        let chau = jet2_cosh(&au).unwrap();
        let shau = jet2_sinh(&au).unwrap();
        let cu = jet2_cos(&ju).unwrap();
        let su = jet2_sin(&ju).unwrap();
        let chv = jet2_cosh(&phi).unwrap();
        let shv = jet2_sinh(&phi).unwrap();
        vec![
            chau.mul(&chv),
            shau.mul(&chv),
            cu.mul(&shv),
            su.mul(&shv),
        ]
    }
    fn domain(&self) -> Domain {
        self.domain
    }
}

/// The embedded minimal helicoid family of ℍ³ in the hyperboloid model.
pub fn hyperbolic_helicoid(alpha: f64) -> Result<NamedSurface> {
    if alpha <= 0.0 {
        return Err(Error::usage("hyperbolic_helicoid: alpha must be positive"));
    }
    let a = alpha;
    let chart = chart4(
        "hyperbolic_helicoid",
        Curvature::Hyperbolic,
        ((-2.0, 2.0), (-1.5, 1.5)),
        move |u, v| {
            let au = u.scale(&a);
            let chau = jet2_cosh(&au).unwrap();
            let shau = jet2_sinh(&au).unwrap();
            let cu = jet2_cos(u).unwrap();
            let su = jet2_sin(u).unwrap();
            let chv = jet2_cosh(v).unwrap();
            let shv = jet2_sinh(v).unwrap();
            vec![
                chau.mul(&chv),
                shau.mul(&chv),
                cu.mul(&shv),
                su.mul(&shv),
            ]
        },
    );
    // The substitution v = φ(ṽ) makes the ruled chart isothermal with the
    // coordinate lines still asymptotic; a final joint rescale normalises
    // the off-diagonal second-form entry to ±1, which the conformal-factor
    // equation assumes.
    let raw_asym = Chart::new(
        "hyperbolic_helicoid_asymptotic",
        Arc::new(HypHelicoidAsymptotic::new(alpha, 1.5)),
    );
    let l12 = fundamental_data(&raw_asym, 0.0, 0.0)
        .expect("asymptotic chart regular at origin")
        .l[0][1];
    let asym = Chart::new(
        "hyperbolic_helicoid_asymptotic",
        Arc::new(crate::surface::RescaledChart {
            inner: Arc::new(HypHelicoidAsymptotic::new(alpha, 1.5)),
            scale: l12.abs().sqrt(),
        }),
    );
    let flow: FlowFn = Arc::new(move |b| {
        let r = rot2(b);
        Isometry::linear(
            Curvature::Hyperbolic,
            [
                [(a * b).cosh(), (a * b).sinh(), 0.0, 0.0],
                [(a * b).sinh(), (a * b).cosh(), 0.0, 0.0],
                [0.0, 0.0, r[0][0], r[0][1]],
                [0.0, 0.0, r[1][0], r[1][1]],
            ],
        )
    });
    let flow_for_match = flow.clone();
    let side_alpha = alpha;
    let mut s = NamedSurface {
        name: "hyperbolic_helicoid".into(),
        curvature: Curvature::Hyperbolic,
        chart,
        asymptotic_chart: Some(asym),
        side: Some(Arc::new(move |p| {
            // u* recovers the helicoid angle of the point's meridian plane
            let (w, x, y, z) = (p.coord(0), p.coord(1), p.coord(2), p.coord(3));
            let q = ((w + x) / (w - x)).max(1e-300);
            let ustar = 0.5 * q.ln() / side_alpha;
            ustar.cos() * z - ustar.sin() * y
        })),
        flow,
        flow2: None,
        swap: Isometry::linear(
            Curvature::Hyperbolic,
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, -1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, -1.0],
            ],
        ),
        psi_chart: Arc::new(|u, v| (-u, v)),
        psi_match: Arc::new(move |u, _| flow_for_match(-2.0 * u)),
        symmetry: SymmetryKind::Flow,
        is_half_domain_fixture: true,
        chart_period: None,
    };
    orient_into_positive_side(&mut s, 0.4, 0.6);
    Ok(s)
}

/// Every fixture at its default parameters.
pub fn fixtures() -> Vec<NamedSurface> {
    vec![
        euclidean_plane(),
        right_helicoid(),
        catenoid(),
        hyperbolic_helicoid(0.4).unwrap(),
        h2_totally_geodesic(),
        great_sphere(),
        clifford_torus(),
        spherical_helicoid(1.0).unwrap(),
    ]
}

/// Fixture lookup by name, with the family parameter where one applies.
pub fn fixture_by_name(name: &str, alpha: Option<f64>) -> Result<NamedSurface> {
    match name {
        "euclidean_plane" => Ok(euclidean_plane()),
        "right_helicoid" => Ok(right_helicoid()),
        "catenoid" => Ok(catenoid()),
        "hyperbolic_helicoid" => hyperbolic_helicoid(alpha.unwrap_or(0.4)),
        "h2_totally_geodesic" => Ok(h2_totally_geodesic()),
        "great_sphere" => Ok(great_sphere()),
        "clifford_torus" => Ok(clifford_torus()),
        "spherical_helicoid" => spherical_helicoid(alpha.unwrap_or(1.0)),
        other => Err(Error::usage(format!(
            "unknown surface `{other}`; available: euclidean_plane, right_helicoid, catenoid, \
             hyperbolic_helicoid, h2_totally_geodesic, great_sphere, clifford_torus, \
             spherical_helicoid"
        ))),
    }
}

/// Report of the isometry harness over a chart grid.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SymmetryReport {
    pub fixture: String,
    /// max |T_β(X(u,v)) - X(u+β,v)| over the grid and tested β (flow kind).
    pub flow_chart_residual: f64,
    /// max |Ψ(X(u,v)) - X(ψ(u,v))| over the grid.
    pub swap_chart_residual: f64,
    /// max |Ψ(x) - T(x)| with the fixture's matching flow member (flow
    /// kind), or max |Ψ(x) - x| on the surface (reflection kind).
    pub swap_match_residual: f64,
    /// side classification preserved by every tested flow member
    pub side_preserved: bool,
    /// side classification inverted by Ψ
    pub side_swapped: bool,
    pub max_form_defect: f64,
}

/// Verify the fixture's isometry identities on an `nu × nv` chart grid.
pub fn symmetry_check(s: &NamedSurface, nu: usize, nv: usize) -> Result<SymmetryReport> {
    let betas = [0.7, -1.3, 0.25, 2.0, -0.4];
    let offsets = [0.05, 0.2, -0.08];
    let ((u0, u1), (v0, v1)) = s.chart.domain();
    let margin_u = 0.18 * (u1 - u0);
    let margin_v = 0.18 * (v1 - v0);
    let mut flow_chart_residual: f64 = 0.0;
    let mut swap_chart_residual: f64 = 0.0;
    let mut swap_match_residual: f64 = 0.0;
    let mut side_preserved = true;
    let mut side_swapped = true;
    let mut max_form_defect: f64 = 0.0;

    for &b in &betas {
        max_form_defect = max_form_defect.max(s.flow_isometry(b).form_defect());
        if let Some(t2) = s.second_flow_isometry(b) {
            max_form_defect = max_form_defect.max(t2.form_defect());
        }
    }
    max_form_defect = max_form_defect.max(s.swap.form_defect());

    let dist = |p: &AmbientPoint, q: &AmbientPoint| -> f64 {
        p.coords()
            .iter()
            .zip(q.coords())
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt()
    };

    for i in 0..nu {
        for j in 0..nv {
            let u = u0 + margin_u + (u1 - u0 - 2.0 * margin_u) * i as f64 / (nu - 1).max(1) as f64;
            let v = v0 + margin_v + (v1 - v0 - 2.0 * margin_v) * j as f64 / (nv - 1).max(1) as f64;
            let x = s.boundary_point(u, v)?;

            if s.symmetry == SymmetryKind::Flow {
                for &b in &betas {
                    let (ub, vb) = s.wrap_coords(u + b, v);
                    if !s.chart.contains(ub, vb) {
                        continue;
                    }
                    let moved = s.flow_isometry(b).apply(&x);
                    let direct = s.boundary_point(ub, vb)?;
                    flow_chart_residual = flow_chart_residual.max(dist(&moved, &direct));
                }
                let (pu, pv) = s.psi_chart_action(u, v);
                let (pu, pv) = s.wrap_coords(pu, pv);
                if s.chart.contains(pu, pv) {
                    let swapped = s.swap.apply(&x);
                    let direct = s.boundary_point(pu, pv)?;
                    swap_chart_residual = swap_chart_residual.max(dist(&swapped, &direct));
                }
                let matched = s.psi_matching_flow(u, v).apply(&x);
                swap_match_residual = swap_match_residual.max(dist(&s.swap.apply(&x), &matched));
            } else if s.symmetry == SymmetryKind::Reflection {
                // Ψ fixes the surface pointwise
                swap_match_residual = swap_match_residual.max(dist(&s.swap.apply(&x), &x));
            }

            // side behaviour off the surface
            if s.bounds_domain() && s.symmetry != SymmetryKind::NoSwap {
                let fd = fundamental_data(&s.chart, u, v)?;
                for &off in &offsets {
                    let p = geodesic_unchecked(&x, &fd.normal, off);
                    let sp = s.side(&p)?;
                    if sp.abs() < 1e-9 {
                        continue;
                    }
                    for &b in &betas {
                        let st = s.side(&s.flow_isometry(b).apply(&p))?;
                        if st * sp <= 0.0 {
                            side_preserved = false;
                        }
                        if let Some(t2) = s.second_flow_isometry(b) {
                            if s.side(&t2.apply(&p))? * sp <= 0.0 {
                                side_preserved = false;
                            }
                        }
                    }
                    let ss = s.side(&s.swap.apply(&p))?;
                    if ss * sp >= 0.0 {
                        side_swapped = false;
                    }
                }
            }
        }
    }

    let report = SymmetryReport {
        fixture: s.name.clone(),
        flow_chart_residual,
        swap_chart_residual,
        swap_match_residual,
        side_preserved,
        side_swapped,
        max_form_defect,
    };
    let tol = 1e-10;
    let identities_ok = report.flow_chart_residual < tol
        && report.swap_chart_residual < tol
        && report.swap_match_residual < tol
        && report.max_form_defect < 1e-12;
    let sides_ok = s.symmetry == SymmetryKind::NoSwap
        || !s.bounds_domain()
        || (report.side_preserved && report.side_swapped);
    if !(identities_ok && sides_ok) {
        return Err(Error::FixtureDefect {
            fixture: s.name.clone(),
            detail: format!("{report:?}"),
        });
    }
    Ok(report)
}
