//! Geodesic-sphere density of a domain at boundary points.
//!
//! `density(r, x)` is the fraction of the geodesic sphere `∂B_r(x)` lying
//! on the positive side of the fixture. In a space form the exponential
//! map carries the uniform measure of the unit direction sphere to the
//! area measure of `∂B_r(x)`, so the density is the measure of the set of
//! unit directions whose geodesic endpoint classifies positive.
//!
//! Two deterministic quadratures share that reduction:
//!
//! * node classification — a Gauss-Legendre × uniform-azimuth product grid
//!   of directions, each endpoint classified by the side function;
//! * arc resolution — per polar latitude the azimuthal crossings of the
//!   side function are bisected to near machine precision, making the
//!   latitude integrand piecewise smooth; the polar integral is then done
//!   adaptively. This is the high-accuracy route that the small-radius
//!   order fits need.

use crate::catalog::NamedSurface;
use crate::quad;
use crate::spaceform::{geodesic_unchecked, sphere_area, tangent_frame, AmbientPoint, Curvature};
use crate::{Error, Result};
use serde::Serialize;

/// Side classification band: |side| below this counts half to either side.
pub const SIDE_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuadratureMode {
    NodeClassify,
    ArcResolved,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityConfig {
    pub mode: QuadratureMode,
    /// Polar Gauss-Legendre order (node mode) or panel order (arc mode).
    pub polar_order: usize,
    /// Azimuth nodes (node mode) or crossing-scan resolution (arc mode).
    pub azimuth_order: usize,
    /// Polar adaptive tolerance (arc mode).
    pub polar_tol: f64,
}

impl Default for DensityConfig {
    fn default() -> Self {
        DensityConfig {
            mode: QuadratureMode::ArcResolved,
            polar_order: 10,
            azimuth_order: 128,
            polar_tol: 1e-7,
        }
    }
}

impl DensityConfig {
    pub fn node_classify(polar: usize, azimuth: usize) -> Self {
        DensityConfig {
            mode: QuadratureMode::NodeClassify,
            polar_order: polar,
            azimuth_order: azimuth,
            polar_tol: 0.0,
        }
    }
}

/// Fraction of the geodesic sphere `∂B_r(x)` on the positive side, with an
/// error estimate. `x` may be anywhere on the model.
pub fn sphere_fraction(
    s: &NamedSurface,
    x: &AmbientPoint,
    r: f64,
    cfg: &DensityConfig,
) -> Result<(f64, f64)> {
    if !s.bounds_domain() {
        return Err(Error::NotADomain(s.name.clone()));
    }
    if r <= 0.0 {
        return Err(Error::usage("sphere radius must be positive"));
    }
    if s.curvature == Curvature::Spherical && r >= std::f64::consts::PI {
        return Err(Error::usage(
            "sphere radius must be below pi on the round sphere",
        ));
    }
    let frame = tangent_frame(x);
    let d = s.curvature.dim();
    let dir = |t: f64, phi: f64| -> [f64; 4] {
        let st = (1.0 - t * t).max(0.0).sqrt();
        let (sp, cp) = phi.sin_cos();
        let mut xi = [0.0; 4];
        for i in 0..d {
            xi[i] = st * (cp * frame[0][i] + sp * frame[1][i]) + t * frame[2][i];
        }
        xi
    };
    let side_at = |t: f64, phi: f64| -> f64 {
        let xi = dir(t, phi);
        let p = geodesic_unchecked(x, &xi[..d], r);
        s.side(&p).expect("side checked above")
    };

    match cfg.mode {
        QuadratureMode::NodeClassify => {
            let (tn, tw) = quad::gauss_legendre(cfg.polar_order);
            let naz = cfg.azimuth_order;
            let mut acc = 0.0;
            for (ti, wi) in tn.iter().zip(&tw) {
                let mut pos = 0.0;
                for k in 0..naz {
                    let phi = std::f64::consts::TAU * k as f64 / naz as f64;
                    let sd = side_at(*ti, phi);
                    if sd > SIDE_BAND {
                        pos += 1.0;
                    } else if sd.abs() <= SIDE_BAND {
                        pos += 0.5;
                    }
                }
                acc += wi * pos / naz as f64;
            }
            // crude error estimate: one azimuth cell per latitude jump
            let err = 2.0 / cfg.azimuth_order as f64 / cfg.polar_order as f64;
            Ok((acc / 2.0, err))
        }
        QuadratureMode::ArcResolved => {
            let arc = |t: f64| positive_arc_info(&side_at, t, cfg.azimuth_order);
            // The latitude integrand is analytic wherever the azimuthal
            // crossing structure is stable; scan for structure changes,
            // bisect each to a breakpoint, then use fixed panels between
            // breakpoints with an embedded lower-order error estimate.
            let nt = 65usize;
            let samples: Vec<(f64, (f64, usize))> = (0..nt)
                .map(|k| {
                    let t = -1.0 + 2.0 * k as f64 / (nt - 1) as f64;
                    (t, arc(t))
                })
                .collect();
            let mut breaks = vec![-1.0];
            let jump_thresh = std::f64::consts::PI / 8.0;
            for w in samples.windows(2) {
                let (t0, (a0, c0)) = w[0];
                let (t1, (a1, c1)) = w[1];
                if c0 != c1 || (a1 - a0).abs() > jump_thresh {
                    let mut lo = (t0, a0, c0);
                    let mut hi = (t1, a1, c1);
                    for _ in 0..45 {
                        let mid_t = 0.5 * (lo.0 + hi.0);
                        let (am, cm) = arc(mid_t);
                        let lo_change = cm != lo.2 || (am - lo.1).abs() > jump_thresh;
                        if lo_change {
                            hi = (mid_t, am, cm);
                        } else {
                            lo = (mid_t, am, cm);
                        }
                    }
                    breaks.push(0.5 * (lo.0 + hi.0));
                }
            }
            breaks.push(1.0);
            breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut integral = 0.0;
            let mut err = 0.0;
            for seg in breaks.windows(2) {
                let (a, b) = (seg[0], seg[1]);
                if b - a < 1e-13 {
                    continue;
                }
                let f = |t: f64| arc(t).0;
                let fine = quad::integrate_panels(a, b, 2, 2 * cfg.polar_order, f);
                let coarse = quad::integrate_panels(a, b, 2, cfg.polar_order, f);
                integral += fine;
                err += (fine - coarse).abs();
            }
            Ok((
                integral / (4.0 * std::f64::consts::PI),
                err / (4.0 * std::f64::consts::PI) + 1e-11,
            ))
        }
    }
}

/// Measure of `{φ : side(t, φ) > 0}` and the number of azimuthal sign
/// changes, bisecting every change found by a uniform scan.
fn positive_arc_info<F: Fn(f64, f64) -> f64>(
    side_at: &F,
    t: f64,
    n_scan: usize,
) -> (f64, usize) {
    let tau = std::f64::consts::TAU;
    let vals: Vec<f64> = (0..n_scan)
        .map(|k| side_at(t, tau * k as f64 / n_scan as f64))
        .collect();
    let mut crossings: Vec<f64> = Vec::new();
    for k in 0..n_scan {
        let a = vals[k];
        let b = vals[(k + 1) % n_scan];
        if (a > 0.0) != (b > 0.0) {
            let mut lo = tau * k as f64 / n_scan as f64;
            let mut hi = tau * (k + 1) as f64 / n_scan as f64;
            let mut flo = a;
            for _ in 0..45 {
                let mid = 0.5 * (lo + hi);
                let fm = side_at(t, mid);
                if (fm > 0.0) == (flo > 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            crossings.push(0.5 * (lo + hi));
        }
    }
    if crossings.is_empty() {
        let positives = vals.iter().filter(|&&v| v > SIDE_BAND).count();
        let boundary = vals.iter().filter(|&&v| v.abs() <= SIDE_BAND).count();
        return (
            tau * (positives as f64 + 0.5 * boundary as f64) / n_scan as f64,
            0,
        );
    }
    crossings.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut measure = 0.0;
    let m = crossings.len();
    for k in 0..m {
        let a = crossings[k];
        let b = if k + 1 == m {
            crossings[0] + tau
        } else {
            crossings[k + 1]
        };
        let mid = 0.5 * (a + b) % tau;
        if side_at(t, mid) > 0.0 {
            measure += b - a;
        }
    }
    (measure, m)
}

/// The density `σ(r, x) = |Ω₊ ∩ ∂B_r(x)| / |∂B_r(x)|` at a boundary point.
pub fn density(s: &NamedSurface, x: &AmbientPoint, r: f64, cfg: &DensityConfig) -> Result<f64> {
    let side = s.side(x)?;
    if side.abs() > SIDE_BAND {
        return Err(Error::usage(format!(
            "density base point must lie on the surface: side = {side:e}"
        )));
    }
    Ok(sphere_fraction(s, x, r, cfg)?.0)
}

/// One row of a density profile.
#[derive(Debug, Clone, Serialize)]
pub struct DensityRow {
    pub r: f64,
    pub sigma: f64,
    pub err: f64,
}

/// Sampled density profile over an r-grid at a fixed boundary point.
#[derive(Debug, Clone, Serialize)]
pub struct DensityProfile {
    pub surface: String,
    /// chart coordinates of the base point
    pub point: (f64, f64),
    pub config: DensityConfig,
    pub rows: Vec<DensityRow>,
}

pub fn profile(
    s: &NamedSurface,
    point: (f64, f64),
    radii: &[f64],
    cfg: &DensityConfig,
) -> Result<DensityProfile> {
    let x = s.boundary_point(point.0, point.1)?;
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let (sigma, err) = sphere_fraction(s, &x, r, cfg)?;
        rows.push(DensityRow { r, sigma, err });
    }
    Ok(DensityProfile {
        surface: s.name.clone(),
        point,
        config: *cfg,
        rows,
    })
}

/// Log-log fit of `|σ(r) - 1/2| ~ c · r^p`.
#[derive(Debug, Clone, Serialize)]
pub struct ExpansionFit {
    /// Fitted exponent `p` (the leading order of the deviation).
    pub leading_order: f64,
    /// Fitted prefactor `c`.
    pub leading_coeff: f64,
    /// Root-mean-square residual of the log-log regression.
    pub residual: f64,
    /// False when the deviations drown in quadrature error or the
    /// regression residual is too large to name an order.
    pub conclusive: bool,
}

pub fn expansion_fit(profile: &DensityProfile) -> ExpansionFit {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut signal_ok = true;
    for row in &profile.rows {
        let dev = (row.sigma - 0.5).abs();
        if dev < 5.0 * row.err.max(1e-12) {
            signal_ok = false;
            continue;
        }
        xs.push(row.r.ln());
        ys.push(dev.ln());
    }
    if xs.len() < 3 {
        return ExpansionFit {
            leading_order: f64::NAN,
            leading_coeff: f64::NAN,
            residual: f64::NAN,
            conclusive: false,
        };
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let residual = (rss / n).sqrt();
    ExpansionFit {
        leading_order: slope,
        leading_coeff: intercept.exp(),
        residual,
        conclusive: signal_ok && residual < 0.2,
    }
}

/// Volumes of the two sides of the fixture inside the geodesic ball
/// `B_R(x)`.
#[derive(Debug, Clone, Serialize)]
pub struct BallSplit {
    pub vol_plus: f64,
    pub vol_minus: f64,
    /// Closed-form ball volume, for consistency checks.
    pub ball_volume: f64,
}

/// Closed-form volume of the geodesic ball of radius `R`.
pub fn ball_volume(c: Curvature, r: f64) -> f64 {
    use std::f64::consts::PI;
    match c {
        Curvature::Flat => 4.0 * PI * r.powi(3) / 3.0,
        Curvature::Spherical => 2.0 * PI * (r - r.sin() * r.cos()),
        Curvature::Hyperbolic => 2.0 * PI * (r.sinh() * r.cosh() - r),
    }
}

/// Split the ball `B_R(x)` into the two side volumes by a radial
/// Gauss-Legendre layer over sphere fractions.
pub fn ball_split(
    s: &NamedSurface,
    x: &AmbientPoint,
    big_r: f64,
    radial_nodes: usize,
    cfg: &DensityConfig,
) -> Result<BallSplit> {
    if big_r <= 0.0 {
        return Err(Error::usage("ball radius must be positive"));
    }
    if s.curvature == Curvature::Spherical && big_r >= std::f64::consts::PI {
        return Err(Error::usage("ball radius must be below pi on the sphere"));
    }
    let (rn, rw) = quad::gauss_legendre(radial_nodes);
    let mut vol_plus = 0.0;
    let mut vol_minus = 0.0;
    for (node, w) in rn.iter().zip(&rw) {
        let r = 0.5 * big_r * (node + 1.0);
        let weight = 0.5 * big_r * w;
        let (frac, _) = sphere_fraction(s, x, r, cfg)?;
        let area = sphere_area(s.curvature, r)?;
        vol_plus += weight * area * frac;
        vol_minus += weight * area * (1.0 - frac);
    }
    Ok(BallSplit {
        vol_plus,
        vol_minus,
        ball_volume: ball_volume(s.curvature, big_r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn plane_density_is_exactly_half() {
        let s = catalog::euclidean_plane();
        let x = s.boundary_point(0.3, -0.2).unwrap();
        for r in [0.5, 1.0, 2.0] {
            let (frac, _) = sphere_fraction(&s, &x, r, &DensityConfig::default()).unwrap();
            assert!((frac - 0.5).abs() < 1e-13, "sigma = {frac} at r = {r}");
        }
    }

    #[test]
    fn half_space_fraction_matches_cap_formula() {
        // centre at depth rho inside the half-space: fraction is 1 for
        // r < rho and (1 + rho/r)/2 beyond
        let s = catalog::euclidean_plane();
        let x = crate::spaceform::AmbientPoint::new(crate::spaceform::Curvature::Flat, &[
            0.1, 0.4, 0.25,
        ])
        .unwrap();
        for r in [0.1, 0.2, 0.5, 1.5] {
            let (frac, _) = sphere_fraction(&s, &x, r, &DensityConfig::default()).unwrap();
            let expect = if r <= 0.25 { 1.0 } else { 0.5 * (1.0 + 0.25 / r) };
            assert!(
                (frac - expect).abs() < 1e-9,
                "r = {r}: frac = {frac}, cap formula = {expect}"
            );
        }
    }

    #[test]
    fn off_surface_base_point_rejected_for_density() {
        let s = catalog::euclidean_plane();
        let x = crate::spaceform::AmbientPoint::new(crate::spaceform::Curvature::Flat, &[
            0.0, 0.0, 0.5,
        ])
        .unwrap();
        assert!(matches!(
            density(&s, &x, 1.0, &DensityConfig::default()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn non_domain_fixture_refuses_density() {
        let s = catalog::spherical_helicoid(0.618).unwrap();
        let x = s.boundary_point(0.5, 0.5).unwrap();
        assert!(matches!(
            sphere_fraction(&s, &x, 0.5, &DensityConfig::default()),
            Err(Error::NotADomain(_))
        ));
    }

    #[test]
    fn ball_split_half_space_is_even() {
        let s = catalog::euclidean_plane();
        let x = s.boundary_point(0.0, 0.0).unwrap();
        let split = ball_split(&s, &x, 1.0, 32, &DensityConfig::default()).unwrap();
        assert!((split.vol_plus - split.vol_minus).abs() < 1e-12);
        assert!(
            ((split.vol_plus + split.vol_minus) - split.ball_volume).abs()
                < 1e-10 * split.ball_volume
        );
    }
}
