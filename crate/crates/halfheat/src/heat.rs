//! Radial heat kernels of the three space forms and boundary-temperature
//! checks through the co-area reduction.
//!
//! With a radial kernel `p(t, r)` around `x`, the temperature at time `t`
//! of the indicator initial datum is
//!
//! `u(t, x) = ∫₀^∞ p(t, r) · |∂B_r(x)| · frac(r, x) dr`,
//!
//! where `frac(r, x)` is the positive-side fraction of the geodesic sphere
//! — the density module's integrand. On the boundary of a half-domain the
//! result must be 1/2 at every positive time.

use crate::catalog::NamedSurface;
use crate::density::{sphere_fraction, DensityConfig};
use crate::quad;
use crate::spaceform::{sphere_area, AmbientPoint, Curvature};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Radial heat kernel of the space form at a fixed time.
#[derive(Debug, Clone, Copy)]
pub struct RadialKernel {
    pub curvature: Curvature,
    pub t: f64,
}

impl RadialKernel {
    pub fn new(curvature: Curvature, t: f64) -> Result<Self> {
        if t <= 0.0 {
            return Err(Error::usage("kernel time must be positive"));
        }
        Ok(RadialKernel { curvature, t })
    }

    pub fn eval(&self, r: f64) -> f64 {
        kernel_unchecked(self.curvature, self.t, r)
    }

    /// Total mass `∫ p(t, r) |∂B_r| dr`, which must equal 1.
    pub fn mass(&self, nodes: usize) -> f64 {
        let rmax = r_max(self.curvature, self.t, 1e-16);
        quad::integrate_panels(1e-12, rmax, 8, nodes, |r| {
            self.eval(r) * sphere_area(self.curvature, r).unwrap()
        })
    }
}

/// Heat kernel value at distance `r` and time `t`.
pub fn kernel(c: Curvature, t: f64, r: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::usage("kernel time must be positive"));
    }
    if r < 0.0 {
        return Err(Error::usage("kernel distance must be nonnegative"));
    }
    Ok(kernel_unchecked(c, t, r))
}

fn kernel_unchecked(c: Curvature, t: f64, r: f64) -> f64 {
    let gauss_norm = (4.0 * PI * t).powf(-1.5);
    match c {
        Curvature::Flat => gauss_norm * (-r * r / (4.0 * t)).exp(),
        Curvature::Hyperbolic => {
            let ratio = if r < 1e-12 { 1.0 } else { r / r.sinh() };
            gauss_norm * ratio * (-t - r * r / (4.0 * t)).exp()
        }
        Curvature::Spherical => {
            // wrapped form: sum over geodesics winding around the sphere
            let r = r.clamp(1e-12, PI - 1e-15);
            let mut acc = 0.0;
            for m in 0..=40i64 {
                let mut term = 0.0;
                for sgn in [1i64, -1] {
                    if m == 0 && sgn < 0 {
                        continue;
                    }
                    let rm = r + 2.0 * PI * (sgn * m) as f64;
                    term += rm * (-rm * rm / (4.0 * t)).exp();
                }
                acc += term;
                if m > 0 && term.abs() < 1e-18 * acc.abs().max(1e-300) {
                    break;
                }
            }
            gauss_norm * t.exp() * acc / r.sin()
        }
    }
}

/// Radius beyond which the kernel-weighted sphere areas hold less than
/// `eps` of the mass.
pub fn r_max(c: Curvature, t: f64, eps: f64) -> f64 {
    let log_term = (1.0 / eps).ln().max(1.0);
    match c {
        Curvature::Flat => (4.0 * t * log_term).sqrt() + 8.0 * t.sqrt(),
        Curvature::Hyperbolic => 4.0 * t + (4.0 * t * log_term).sqrt() + 8.0 * t.sqrt(),
        Curvature::Spherical => PI - 1e-6,
    }
}

/// Per-point cache of sphere fractions, shared across times (the time
/// dependence lives entirely in the kernel weight).
pub struct FractionCache<'a> {
    surface: &'a NamedSurface,
    x: AmbientPoint,
    cfg: DensityConfig,
    values: HashMap<u64, f64>,
}

impl<'a> FractionCache<'a> {
    pub fn new(surface: &'a NamedSurface, x: AmbientPoint, cfg: DensityConfig) -> Self {
        FractionCache {
            surface,
            x,
            cfg,
            values: HashMap::new(),
        }
    }

    pub fn fraction(&mut self, r: f64) -> Result<f64> {
        if let Some(v) = self.values.get(&r.to_bits()) {
            return Ok(*v);
        }
        let (v, _) = sphere_fraction(self.surface, &self.x, r, &self.cfg)?;
        self.values.insert(r.to_bits(), v);
        Ok(v)
    }
}

/// Numerical controls of the co-area integration.
#[derive(Debug, Clone, Copy)]
pub struct HeatConfig {
    /// Gauss-Legendre nodes per radial segment.
    pub radial_nodes: usize,
    /// Kernel tail cutoff that picks the outer radius.
    pub tail_eps: f64,
    pub density: DensityConfig,
}

impl Default for HeatConfig {
    fn default() -> Self {
        HeatConfig {
            radial_nodes: 64,
            tail_eps: 1e-12,
            density: DensityConfig::default(),
        }
    }
}

/// Temperature of the indicator initial datum at `(t, x)` by co-area
/// integration. `split_at` marks a known kink radius of the sphere
/// fraction (the distance to the surface, for off-surface points); the
/// radial rule is split there to keep spectral accuracy.
pub fn cauchy_temperature_at(
    s: &NamedSurface,
    t: f64,
    cache: &mut FractionCache<'_>,
    split_at: Option<f64>,
    cfg: &HeatConfig,
) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::usage("time must be positive"));
    }
    let c = s.curvature;
    let rmax = r_max(c, t, cfg.tail_eps);
    let mut cuts = vec![1e-12, rmax];
    if let Some(sp) = split_at {
        if sp > 1e-10 && sp < rmax {
            cuts.insert(1, sp);
        }
    }
    let (gl_nodes, gl_weights) = quad::gauss_legendre(cfg.radial_nodes);
    let mut acc = 0.0;
    for seg in cuts.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (node, w) in gl_nodes.iter().zip(&gl_weights) {
            let r = mid + half * node;
            let frac = cache.fraction(r)?;
            acc += half * w * kernel_unchecked(c, t, r) * sphere_area(c, r)? * frac;
        }
    }
    Ok(acc)
}

/// Convenience wrapper building a fresh cache.
pub fn cauchy_temperature(
    s: &NamedSurface,
    t: f64,
    x: &AmbientPoint,
    cfg: &HeatConfig,
) -> Result<f64> {
    let mut cache = FractionCache::new(s, x.clone(), cfg.density);
    cauchy_temperature_at(s, t, &mut cache, None, cfg)
}

/// Closed-form temperature of the flat half-space `{z > 0}` at depth ρ:
/// `(1 + erf(ρ / 2√t)) / 2`.
pub fn half_space_cauchy_oracle(t: f64, depth: f64) -> f64 {
    0.5 * (1.0 + libm::erf(depth / (2.0 * t.sqrt())))
}

/// Closed-form zero-boundary temperature of the flat half-space (the
/// reflection solution): `erf(ρ / 2√t)`.
pub fn half_space_dirichlet_oracle(t: f64, depth: f64) -> f64 {
    libm::erf(depth / (2.0 * t.sqrt()))
}

/// Boundary flux of the half-space solution: `1/√(πt)`.
pub fn half_space_flux(t: f64) -> f64 {
    1.0 / (PI * t).sqrt()
}

#[derive(Debug, Clone, Serialize)]
pub struct DirichletRelationRow {
    pub t: f64,
    pub depth: f64,
    pub u_c: f64,
    pub u_d_from_u_c: f64,
    pub u_d_oracle: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirichletRelationReport {
    pub rows: Vec<DirichletRelationRow>,
    pub max_deviation: f64,
    /// Flux at t = 1/4 minus its exact value `2/√π`.
    pub flux_quarter_residual: f64,
}

/// Check `u_D = 2 u_C - 1` on the flat half-space fixture: the co-area
/// value of `u_C` at depth ρ against the reflection solution, plus the
/// boundary-flux anchor at t = 1/4.
pub fn dirichlet_relation_check(
    s: &NamedSurface,
    times: &[f64],
    depths: &[f64],
    cfg: &HeatConfig,
) -> Result<DirichletRelationReport> {
    if s.curvature != Curvature::Flat {
        return Err(Error::usage(
            "the reflection oracle compares against the flat half-space fixture",
        ));
    }
    let mut rows = Vec::new();
    let mut max_deviation: f64 = 0.0;
    for &depth in depths {
        let x = AmbientPoint::new(Curvature::Flat, &[0.0, 0.0, depth])?;
        let mut cache = FractionCache::new(s, x, cfg.density);
        for &t in times {
            let u_c = cauchy_temperature_at(s, t, &mut cache, Some(depth), cfg)?;
            let u_d_from_u_c = 2.0 * u_c - 1.0;
            let u_d_oracle = half_space_dirichlet_oracle(t, depth);
            let deviation = (u_d_from_u_c - u_d_oracle).abs();
            max_deviation = max_deviation.max(deviation);
            rows.push(DirichletRelationRow {
                t,
                depth,
                u_c,
                u_d_from_u_c,
                u_d_oracle,
                deviation,
            });
        }
    }
    let flux_quarter_residual = half_space_flux(0.25) - 2.0 / PI.sqrt();
    Ok(DirichletRelationReport {
        rows,
        max_deviation,
        flux_quarter_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn kernel_rejects_bad_time() {
        assert!(kernel(Curvature::Flat, 0.0, 1.0).is_err());
        assert!(kernel(Curvature::Flat, -1.0, 1.0).is_err());
    }

    #[test]
    fn flat_kernel_mass_is_one() {
        for t in [0.05, 0.5, 2.0] {
            let k = RadialKernel::new(Curvature::Flat, t).unwrap();
            assert!((k.mass(64) - 1.0).abs() < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn half_space_temperature_matches_erf_oracle() {
        let s = catalog::euclidean_plane();
        let t = 0.3;
        let depth = 0.2;
        let x = AmbientPoint::new(Curvature::Flat, &[0.0, 0.0, depth]).unwrap();
        let mut cache = FractionCache::new(&s, x, DensityConfig::default());
        let u = cauchy_temperature_at(&s, t, &mut cache, Some(depth), &HeatConfig::default())
            .unwrap();
        let oracle = half_space_cauchy_oracle(t, depth);
        assert!(
            (u - oracle).abs() < 1e-8,
            "u_C = {u}, oracle = {oracle}, dev = {:e}",
            (u - oracle).abs()
        );
    }

    #[test]
    fn flux_anchor_at_quarter() {
        assert_eq!(half_space_flux(0.25), 2.0 / PI.sqrt());
    }
}
