//! The end-to-end verification suite: ten criteria with pinned tolerances,
//! each reporting one pass/fail line. The CLI `acceptance` subcommand and
//! the integration test target both drive exactly this module.

use crate::catalog::{self, NamedSurface};
use crate::density::{self, DensityConfig};
use crate::heat::{self, FractionCache, HeatConfig};
use crate::identities;
use crate::invariants::{self, CollarConfig};
use crate::spaceform::Curvature;
use crate::surface::{
    divergence_residual, fundamental_data, geodesic_ruling_check, isothermal_diagnostics, Chart,
    FnChart, LineDir,
};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    fn new(id: usize, name: &str) -> Self {
        CriterionResult {
            id,
            name: name.to_string(),
            passed: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if !ok {
            self.passed = false;
        }
        self.details.push(format!(
            "{} {detail}",
            if ok { "ok  " } else { "FAIL" }
        ));
    }

    pub fn summary_line(&self) -> String {
        format!(
            "criterion {:2} [{}] {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name
        )
    }
}

/// The minimal fixtures named by the classification, with generic sample
/// points on each.
fn minimal_fixtures() -> Vec<NamedSurface> {
    vec![
        catalog::right_helicoid(),
        catalog::clifford_torus(),
        catalog::hyperbolic_helicoid(0.14).unwrap(),
        catalog::hyperbolic_helicoid(0.2).unwrap(),
        catalog::hyperbolic_helicoid(0.4).unwrap(),
        catalog::hyperbolic_helicoid(1.0).unwrap(),
        catalog::spherical_helicoid(1.0).unwrap(),
    ]
}

fn half_domain_fixtures() -> Vec<NamedSurface> {
    vec![
        catalog::right_helicoid(),
        catalog::hyperbolic_helicoid(0.4).unwrap(),
        catalog::clifford_torus(),
        catalog::euclidean_plane(),
        catalog::h2_totally_geodesic(),
        catalog::great_sphere(),
    ]
}

/// Collar configuration for invariant sweeps: the jet guard radius stays
/// below the sharpest fixture's focal distance (the invariants only read
/// jets at ρ = 0).
fn sweep_collar_config() -> CollarConfig {
    CollarConfig {
        rho_radius: 0.05,
        ..CollarConfig::default()
    }
}

fn grid_points(s: &NamedSurface, n: usize) -> Vec<(f64, f64)> {
    let ((u0, u1), (v0, v1)) = s.chart.domain();
    let (cu, cv) = (0.5 * (u0 + u1), 0.5 * (v0 + v1));
    let (ru, rv) = (0.35 * (u1 - u0), 0.35 * (v1 - v0));
    let mut pts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let fu = i as f64 / (n - 1) as f64 - 0.5;
            let fv = j as f64 / (n - 1) as f64 - 0.5;
            pts.push((cu + 2.0 * ru * fu, cv + 2.0 * rv * fv));
        }
    }
    pts
}

/// 1: every classified boundary is minimal.
pub fn criterion_minimality() -> CriterionResult {
    let mut res = CriterionResult::new(1, "minimality of the classified boundaries");
    for s in minimal_fixtures() {
        let worst = grid_points(&s, 20)
            .par_iter()
            .map(|&(u, v)| {
                fundamental_data(&s.chart, u, v)
                    .map(|fd| fd.mean.abs())
                    .unwrap_or(f64::INFINITY)
            })
            .reduce(|| 0.0, f64::max);
        res.check(
            worst < 1e-8,
            format!("{:24} max |eta| over 20x20 grid = {worst:.2e} (tol 1e-8)", s.name),
        );
    }
    res
}

/// Closed-form divergence residual of the catenoid in its rotational
/// chart, derived by hand from `K = -cosh⁻⁴ v`, `S = diag(-1, 1)/cosh² v`:
/// `div(S(∇̄K)) = 4 cosh⁻⁸ v - 28 sinh² v cosh⁻¹⁰ v`.
pub fn catenoid_divergence_closed_form(v: f64) -> f64 {
    4.0 * v.cosh().powi(-8) - 28.0 * v.sinh().powi(2) * v.cosh().powi(-10)
}

/// 2: the divergence condition holds on the classified boundaries and
/// fails quantitatively on the catenoid.
pub fn criterion_divergence() -> CriterionResult {
    let mut res = CriterionResult::new(2, "divergence condition on classified boundaries");
    for s in minimal_fixtures() {
        let worst = grid_points(&s, 12)
            .par_iter()
            .map(|&(u, v)| {
                let fd = fundamental_data(&s.chart, u, v).expect("regular chart");
                let scale = (fd.gauss.abs()
                    * fd.k_principal[0].abs().max(fd.k_principal[1].abs()))
                .max(1.0);
                divergence_residual(&s.chart, u, v).expect("regular chart") / scale
            })
            .map(f64::abs)
            .reduce(|| 0.0, f64::max);
        res.check(
            worst < 1e-6,
            format!(
                "{:24} max scale-normalized |div(S(grad K))| = {worst:.2e} (tol 1e-6)",
                s.name
            ),
        );
    }
    let cat = catalog::catenoid();
    for v in [0.0, 0.3] {
        let got = divergence_residual(&cat.chart, 0.2, v).unwrap();
        let want = catenoid_divergence_closed_form(v);
        let rel = (got.abs() - want.abs()).abs() / want.abs();
        res.check(
            rel < 0.02,
            format!(
                "catenoid v={v}: |div| = {:.6} vs closed form {:.6} (rel {rel:.2e}, tol 2e-2)",
                got.abs(),
                want.abs()
            ),
        );
    }
    res
}

/// 3: flux invariants vanish on the classified boundaries and the
/// degree-4 invariant matches `(5/16) div(S(∇̄K))` on the catenoid.
pub fn criterion_flux_invariants() -> CriterionResult {
    let mut res = CriterionResult::new(3, "flux invariants and the degree-4 divergence form");
    let cfg = sweep_collar_config();
    for s in minimal_fixtures() {
        let pts = grid_points(&s, 5);
        let reports: Vec<_> = pts
            .par_iter()
            .map(|&(u, v)| invariants::gammas(&s.chart, u, v, cfg).expect("collar builds"))
            .collect();
        let g0 = reports.iter().map(|g| g.gamma0.abs()).fold(0.0, f64::max);
        let g2 = reports.iter().map(|g| g.gamma2.abs()).fold(0.0, f64::max);
        let g4 = reports
            .iter()
            .map(|g| g.gamma4_words.abs())
            .fold(0.0, f64::max);
        let route = reports
            .iter()
            .map(|g| {
                (g.gamma4_words - g.gamma4_reduced).abs() / g.gamma4_words.abs().max(1.0)
            })
            .fold(0.0, f64::max);
        res.check(
            g0 < 1e-9,
            format!("{:24} max |gamma0| = {g0:.2e} (tol 1e-9)", s.name),
        );
        res.check(
            g2 < 1e-4,
            format!("{:24} max |gamma2| = {g2:.2e} (tol 1e-4)", s.name),
        );
        res.check(
            g4 < 1e-4,
            format!("{:24} max |gamma4| = {g4:.2e} (tol 1e-4)", s.name),
        );
        res.check(
            route < 1e-6,
            format!(
                "{:24} word-form vs reduced-form gamma4: rel {route:.2e} (tol 1e-6)",
                s.name
            ),
        );
    }
    let cat = catalog::catenoid();
    for (u, v) in [(0.0, 0.0), (0.5, 0.2), (1.0, -0.3)] {
        let g = invariants::gammas(&cat.chart, u, v, cfg).unwrap();
        let div = divergence_residual(&cat.chart, u, v).unwrap();
        let rel = (g.gamma4_words - 5.0 / 16.0 * div).abs() / g.gamma4_words.abs().max(1e-8);
        res.check(
            rel < 1e-2,
            format!(
                "catenoid ({u},{v}): gamma4 = {:+.6e} vs (5/16) div = {:+.6e} (rel {rel:.2e}, tol 1e-2)",
                g.gamma4_words,
                5.0 / 16.0 * div
            ),
        );
        let route = (g.gamma4_words - g.gamma4_reduced).abs() / g.gamma4_words.abs().max(1e-8);
        res.check(
            route < 1e-6,
            format!("catenoid ({u},{v}): route agreement rel {route:.2e} (tol 1e-6)"),
        );
    }
    res
}

/// 4: second normal derivative of the leaf Laplacian of η equals
/// `-8 δ̄(S(∇̄K))` at catenoid points.
pub fn criterion_normal_identity() -> CriterionResult {
    let mut res = CriterionResult::new(4, "second-normal-derivative identity for the mean curvature");
    let cat = catalog::catenoid();
    let pts: Vec<(f64, f64)> = (0..10)
        .map(|k| (-1.2 + 0.27 * k as f64, -0.45 + 0.1 * k as f64))
        .collect();
    let cfg = sweep_collar_config();
    let worst = pts
        .par_iter()
        .map(|&(u, v)| {
            invariants::identity_checks(&cat.chart, u, v, cfg)
                .expect("collar builds")
                .minimal_identity_rel_residual
        })
        .reduce(|| 0.0, f64::max);
    res.check(
        worst < 1e-3,
        format!("catenoid, 10 points: max relative residual = {worst:.2e} (tol 1e-3)"),
    );
    res
}

fn unit_sphere_chart() -> Chart {
    use crate::series::{jet2_cos, jet2_sin, Jet2};
    let chart = Chart::new(
        "unit_sphere",
        Arc::new(FnChart {
            curvature: Curvature::Flat,
            f: |u: &Jet2, v: &Jet2| {
                let cu = jet2_cos(u).unwrap();
                let su = jet2_sin(u).unwrap();
                let cv = jet2_cos(v).unwrap();
                let sv = jet2_sin(v).unwrap();
                vec![cu.mul(&cv), su.mul(&cv), sv]
            },
            domain: ((-3.0, 3.0), (-1.2, 1.2)),
        }),
    );
    // inner normal of the unit ball: eta = +2
    let fd = fundamental_data(&chart, 0.3, 0.2).unwrap();
    if fd.mean < 0.0 {
        chart.flipped()
    } else {
        chart
    }
}

/// 5: even normal derivatives of η vanish on minimal boundaries; the unit
/// ball reproduces the transported curvature oracle.
pub fn criterion_even_normal_derivatives() -> CriterionResult {
    let mut res = CriterionResult::new(5, "even normal derivatives of the mean curvature");
    let cfg = sweep_collar_config();
    for s in minimal_fixtures() {
        let pts = grid_points(&s, 3);
        let worst = pts
            .par_iter()
            .map(|&(u, v)| {
                let col = invariants::collar(&s.chart, u, v, cfg).expect("collar builds");
                let eta = col.eta_jet_center();
                [0, 2, 4]
                    .into_iter()
                    .map(|k| eta.coeff(k).abs())
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max);
        res.check(
            worst < 1e-9,
            format!(
                "{:24} max |even eta-jet coefficient| through order 4 = {worst:.2e} (tol 1e-9)",
                s.name
            ),
        );
    }
    let ball = unit_sphere_chart();
    let col = invariants::collar(&ball, 0.3, 0.2, CollarConfig::default()).unwrap();
    let eta = col.eta_jet_center();
    let worst = (0..=col.config.jet_order)
        .map(|k| (eta.coeff(k) - 2.0).abs())
        .fold(0.0, f64::max);
    res.check(
        worst < 1e-10,
        format!("unit ball eta-jet vs 2/(1-rho) oracle: max coeff dev = {worst:.2e} (tol 1e-10)"),
    );
    res
}

fn density_radii(c: Curvature) -> [f64; 5] {
    match c {
        Curvature::Spherical => [0.3, 0.8, 1.3, 1.9, 2.6],
        _ => [0.3, 0.6, 1.0, 1.5, 2.2],
    }
}

/// 6: half-domains are uniformly dense at 1/2; the catenoid is not, with
/// leading deviation order 5 at the waist.
pub fn criterion_uniform_density() -> CriterionResult {
    let mut res = CriterionResult::new(6, "uniform density 1/2 on geodesic spheres");
    let cfg = DensityConfig::default();
    for s in half_domain_fixtures() {
        let pts = s.interior_points(5);
        let radii = density_radii(s.curvature);
        let worst = pts
            .par_iter()
            .flat_map(|&(u, v)| radii.into_par_iter().map(move |r| (u, v, r)))
            .map(|(u, v, r)| {
                let x = s.boundary_point(u, v).expect("fixture point on model");
                (density::density(&s, &x, r, &cfg).expect("density computes") - 0.5).abs()
            })
            .reduce(|| 0.0, f64::max);
        res.check(
            worst < 2e-3,
            format!(
                "{:24} max |sigma - 1/2| over 5 points x 5 radii = {worst:.2e} (tol 2e-3)",
                s.name
            ),
        );
    }

    // catenoid waist: deviation at r = 1 against the frozen quadrature
    // oracle value 1.23e-3, and leading order 5 of the small-r deviation
    let cat = catalog::catenoid();
    let x = cat.boundary_point(0.0, 0.0).unwrap();
    let hi = DensityConfig {
        polar_order: 20,
        azimuth_order: 256,
        ..DensityConfig::default()
    };
    let dev1 = (density::density(&cat, &x, 1.0, &hi).unwrap() - 0.5).abs();
    res.check(
        dev1 > 8e-4 && (dev1 - 1.23e-3).abs() < 0.2 * 1.23e-3,
        format!("catenoid waist r=1: |sigma - 1/2| = {dev1:.3e} (golden 1.23e-3 +- 20%)"),
    );
    let radii: Vec<f64> = (0..8)
        .map(|k| 0.35 * (1.0f64 / 0.35).powf(k as f64 / 7.0))
        .collect();
    let prof = density::profile(&cat, (0.0, 0.0), &radii, &hi).unwrap();
    let fit = density::expansion_fit(&prof);
    res.check(
        fit.conclusive && (fit.leading_order - 5.0).abs() < 0.5,
        format!(
            "catenoid waist log-log fit: order = {:.3} (want 5 +- 0.5), residual {:.2e}, conclusive {}",
            fit.leading_order, fit.residual, fit.conclusive
        ),
    );

    // ball splitting into equal halves
    for (s, r) in [
        (catalog::clifford_torus(), 1.0),
        (catalog::hyperbolic_helicoid(0.4).unwrap(), 1.0),
        (catalog::right_helicoid(), 1.2),
    ] {
        let pt = s.interior_points(1)[0];
        let x = s.boundary_point(pt.0, pt.1).unwrap();
        let split = density::ball_split(&s, &x, r, 24, &cfg).unwrap();
        let rel = (split.vol_plus - split.vol_minus).abs() / split.ball_volume;
        res.check(
            rel < 2e-3,
            format!(
                "{:24} ball R={r}: |vol+ - vol-|/|B_R| = {rel:.2e} (tol 2e-3)",
                s.name
            ),
        );
    }
    res
}

/// 7: the boundary temperature of half-domains is 1/2 for all tested
/// times; kernels are normalized; the flat half-space matches the
/// reflection oracle.
pub fn criterion_boundary_temperature() -> CriterionResult {
    let mut res = CriterionResult::new(7, "boundary temperature 1/2 under heat flow");
    let cfg = HeatConfig::default();
    let times = [0.05, 0.5, 2.0];
    for s in half_domain_fixtures() {
        let pts = s.interior_points(5);
        let worst = pts
            .par_iter()
            .map(|&(u, v)| {
                let x = s.boundary_point(u, v).expect("fixture point on model");
                let mut cache = FractionCache::new(&s, x, cfg.density);
                times
                    .iter()
                    .map(|&t| {
                        (heat::cauchy_temperature_at(&s, t, &mut cache, None, &cfg)
                            .expect("co-area integral computes")
                            - 0.5)
                            .abs()
                    })
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max);
        res.check(
            worst < 5e-3,
            format!(
                "{:24} max |u(t, x) - 1/2| over 5 points x 3 times = {worst:.2e} (tol 5e-3)",
                s.name
            ),
        );
    }

    for c in [Curvature::Flat, Curvature::Hyperbolic, Curvature::Spherical] {
        let worst = [0.1, 0.5, 2.0]
            .iter()
            .map(|&t| (heat::RadialKernel::new(c, t).unwrap().mass(96) - 1.0).abs())
            .fold(0.0, f64::max);
        res.check(
            worst < 1e-6,
            format!("kernel mass ({c:?}): max |mass - 1| = {worst:.2e} (tol 1e-6)"),
        );
    }

    // flat half-space against the reflection oracle, including the
    // boundary-value relation u_D = 2 u_C - 1
    let plane = catalog::euclidean_plane();
    let report =
        heat::dirichlet_relation_check(&plane, &[0.1, 0.3, 1.0], &[0.1, 0.2, 0.5], &cfg).unwrap();
    res.check(
        report.max_deviation < 1e-8,
        format!(
            "half-space reflection oracle: max |2u_C - 1 - u_D| = {:.2e} (tol 1e-8)",
            report.max_deviation
        ),
    );
    res.check(
        report.flux_quarter_residual == 0.0,
        format!(
            "half-space flux at t=1/4 equals 2/sqrt(pi) exactly (residual {:.1e})",
            report.flux_quarter_residual
        ),
    );

    // the negative control visibly misses 1/2
    let cat = catalog::catenoid();
    let x = cat.boundary_point(0.0, 0.0).unwrap();
    let u = heat::cauchy_temperature(&cat, 0.2, &x, &cfg).unwrap();
    res.check(
        (u - 0.5).abs() > 1e-3,
        format!("catenoid waist t=0.2: |u - 1/2| = {:.3e} (must exceed 1e-3)", (u - 0.5).abs()),
    );
    res
}

/// 8: the coefficient identities reproduce exactly over the rationals.
pub fn criterion_coefficient_identities() -> CriterionResult {
    let mut res = CriterionResult::new(8, "exact coefficient identities");
    match identities::check_stored_relations() {
        Ok(rows) => {
            res.check(
                rows.len() == 9,
                format!("all {} stored relations reproduced with zero residual", rows.len()),
            );
        }
        Err(e) => res.check(false, format!("stored relations: {e}")),
    }
    match identities::derive_lemma_identities() {
        Ok(derived) => {
            res.check(
                derived.len() == 4 && derived.iter().all(|d| d.exact),
                "all 4 derived identities are exact linear combinations".to_string(),
            );
        }
        Err(e) => res.check(false, format!("derived identities: {e}")),
    }
    for sigma in [-1, 0, 1] {
        let rep = identities::psi_condition(sigma, Some(1.3)).unwrap();
        res.check(
            rep.locus_discrepancy,
            format!(
                "sigma {sigma:+}: condition = {} k + {} sigma/k; computed locus k^2 = {}, stated {} (discrepancy reported)",
                rep.condition.0, rep.condition.1, rep.vanishing_locus_k2, rep.stated_locus_k2
            ),
        );
    }
    let cx = identities::counterexample_check();
    res.check(
        cx.c_magnitude_is_four && cx.p_uv_zero && cx.condition_value == 0.0,
        format!(
            "two-variable counterexample: P^2 (positive-Laplacian log P) = {:+.6} constant, condition degenerates",
            cx.c_positive_convention
        ),
    );
    res
}

/// 9: the isometry harness holds on every fixture.
pub fn criterion_symmetry() -> CriterionResult {
    let mut res = CriterionResult::new(9, "isometry harness on all fixtures");
    for s in catalog::fixtures() {
        // 19 x 18 grid with 3 normal offsets ≈ 10³ side probes
        match catalog::symmetry_check(&s, 19, 18) {
            Ok(rep) => {
                let worst = rep
                    .flow_chart_residual
                    .max(rep.swap_chart_residual)
                    .max(rep.swap_match_residual);
                res.check(
                    worst < 1e-12 && rep.side_preserved && rep.side_swapped,
                    format!(
                        "{:24} chart identities {worst:.1e} (tol 1e-12), side preserved {} swapped {}",
                        s.name, rep.side_preserved, rep.side_swapped
                    ),
                );
            }
            Err(e) => res.check(false, format!("{:24} {e}", s.name)),
        }
    }
    res
}

/// 10: asymptotic-isothermal charts and rulings behave as derived.
pub fn criterion_chart_machinery() -> CriterionResult {
    let mut res = CriterionResult::new(10, "asymptotic isothermal charts and geodesic rulings");
    let helicoid = catalog::right_helicoid();
    let asym = helicoid.asymptotic_chart.as_ref().unwrap();
    let mut worst_e: f64 = 0.0;
    let mut worst_ident: f64 = 0.0;
    let mut worst_quv: f64 = 0.0;
    let mut worst_pde: f64 = 0.0;
    for (u, v) in grid_points(&helicoid, 8) {
        let d = isothermal_diagnostics(asym, u, v).unwrap();
        worst_e = worst_e.max((d.e - v.cosh().powi(2)).abs());
        worst_ident = worst_ident.max(d.e_identity.abs());
        worst_quv = worst_quv.max(d.q_uv.abs());
        worst_pde = worst_pde.max(d.log_e_pde_residual.abs());
    }
    res.check(
        worst_e < 1e-12,
        format!("right helicoid asymptotic chart: max |E - cosh^2 v| = {worst_e:.2e} (tol 1e-12)"),
    );
    res.check(
        worst_ident < 1e-10,
        format!("right helicoid: max |E E_uv - 4 E_u E_v| = {worst_ident:.2e} (tol 1e-10)"),
    );
    res.check(
        worst_quv < 1e-10,
        format!("right helicoid: max |(E^-3)_uv| = {worst_quv:.2e} (tol 1e-10)"),
    );
    res.check(
        worst_pde < 1e-8,
        format!("right helicoid: max conformal-factor equation residual = {worst_pde:.2e} (tol 1e-8)"),
    );

    for alpha in [0.14, 0.4, 1.0] {
        let s = catalog::hyperbolic_helicoid(alpha).unwrap();
        let asym = s.asymptotic_chart.as_ref().unwrap();
        let ((u0, u1), (v0, v1)) = asym.domain();
        let mut worst_ident: f64 = 0.0;
        let mut worst_pde: f64 = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                let u = u0 + (u1 - u0) * (0.2 + 0.12 * i as f64);
                let v = v0 + (v1 - v0) * (0.2 + 0.12 * j as f64);
                let d = isothermal_diagnostics(asym, u, v).unwrap();
                worst_ident = worst_ident.max(d.e_identity.abs());
                worst_pde = worst_pde.max(d.log_e_pde_residual.abs());
            }
        }
        res.check(
            worst_ident < 1e-6,
            format!(
                "hyperbolic helicoid alpha={alpha}: max |E E_uv - 4 E_u E_v| = {worst_ident:.2e} (tol 1e-6)"
            ),
        );
        res.check(
            worst_pde < 1e-8,
            format!(
                "hyperbolic helicoid alpha={alpha}: max conformal-factor residual = {worst_pde:.2e} (tol 1e-8)"
            ),
        );
    }

    for s in minimal_fixtures() {
        let mut charts = vec![&s.chart];
        if let Some(a) = &s.asymptotic_chart {
            charts.push(a);
        }
        let mut worst: f64 = 0.0;
        for chart in charts {
            let ((u0, u1), (v0, v1)) = chart.domain();
            for i in 0..5 {
                for j in 0..5 {
                    let u = u0 + (u1 - u0) * (0.25 + 0.12 * i as f64);
                    let v = v0 + (v1 - v0) * (0.25 + 0.12 * j as f64);
                    let r = geodesic_ruling_check(chart, LineDir::V, u, v).unwrap();
                    worst = worst
                        .max(r.ambient_geodesic_residual.abs())
                        .max(r.asymptotic_residual.abs());
                }
            }
        }
        res.check(
            worst < 1e-8,
            format!("{:24} ruling residuals = {worst:.2e} (tol 1e-8)", s.name),
        );
    }

    // the Clifford torus chart is already isothermal-asymptotic with E = 1
    let ct = catalog::clifford_torus();
    let d = isothermal_diagnostics(ct.asymptotic_chart.as_ref().unwrap(), 0.7, 1.1).unwrap();
    res.check(
        (d.e - 1.0).abs() < 1e-12
            && d.f_residual < 1e-12
            && d.e_identity.abs() < 1e-12
            && d.q_uv.abs() < 1e-12
            && d.log_e_pde_residual.abs() < 1e-12,
        format!(
            "clifford torus chart: E = {:.12}, all residuals below 1e-12",
            d.e
        ),
    );
    res
}

/// Run the whole suite in criterion order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_minimality(),
        criterion_divergence(),
        criterion_flux_invariants(),
        criterion_normal_identity(),
        criterion_even_normal_derivatives(),
        criterion_uniform_density(),
        criterion_boundary_temperature(),
        criterion_coefficient_identities(),
        criterion_symmetry(),
        criterion_chart_machinery(),
    ]
}
