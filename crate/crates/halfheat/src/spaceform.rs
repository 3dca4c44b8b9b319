//! Ambient models of the three simply connected 3-dimensional space forms.
//!
//! * `σ = 0`: Euclidean 3-space, points are plain 3-vectors.
//! * `σ = +1`: the unit sphere in ℝ⁴.
//! * `σ = -1`: the upper hyperboloid sheet in Minkowski ℝ^{1,3} with the
//!   `+---` form, so the model constraint reads `p₀² - p₁² - p₂² - p₃² = 1`
//!   with `p₀ ≥ 1`. The Riemannian metric on tangent vectors is the
//!   **negative** of the restricted form; [`tangent_inner`] hides that sign.

use crate::series::{jet1_cos, jet1_cosh, jet1_sin, jet1_sinh, Jet1};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Constant sectional curvature of the ambient space form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Curvature {
    Hyperbolic,
    Flat,
    Spherical,
}

impl Curvature {
    pub fn sigma(self) -> f64 {
        match self {
            Curvature::Hyperbolic => -1.0,
            Curvature::Flat => 0.0,
            Curvature::Spherical => 1.0,
        }
    }

    pub fn from_sigma(sigma: i32) -> Result<Self> {
        match sigma {
            -1 => Ok(Curvature::Hyperbolic),
            0 => Ok(Curvature::Flat),
            1 => Ok(Curvature::Spherical),
            other => Err(Error::usage(format!(
                "curvature must be one of -1, 0, +1, got {other}"
            ))),
        }
    }

    /// Ambient linear dimension of the model (3 or 4).
    pub fn dim(self) -> usize {
        match self {
            Curvature::Flat => 3,
            _ => 4,
        }
    }

    /// Generalized cosine: `cos`, `1`, `cosh`.
    pub fn cs(self, s: f64) -> f64 {
        match self {
            Curvature::Spherical => s.cos(),
            Curvature::Flat => 1.0,
            Curvature::Hyperbolic => s.cosh(),
        }
    }

    /// Generalized sine: `sin`, `s`, `sinh`.
    pub fn sn(self, s: f64) -> f64 {
        match self {
            Curvature::Spherical => s.sin(),
            Curvature::Flat => s,
            Curvature::Hyperbolic => s.sinh(),
        }
    }

    /// Jets of the generalized trig pair around a base parameter.
    pub fn cs_jet(self, base: f64, order: usize) -> Jet1 {
        let t = Jet1::variable(base, order);
        match self {
            Curvature::Spherical => jet1_cos(&t).unwrap(),
            Curvature::Flat => Jet1::constant(1.0, order),
            Curvature::Hyperbolic => jet1_cosh(&t).unwrap(),
        }
    }

    pub fn sn_jet(self, base: f64, order: usize) -> Jet1 {
        let t = Jet1::variable(base, order);
        match self {
            Curvature::Spherical => jet1_sin(&t).unwrap(),
            Curvature::Flat => t,
            Curvature::Hyperbolic => jet1_sinh(&t).unwrap(),
        }
    }
}

/// Ambient bilinear form of the model: Euclidean dot for `σ ∈ {0, +1}`,
/// the `+---` Lorentz form for `σ = -1`.
pub fn ambient_form(c: Curvature, a: &[f64], b: &[f64]) -> Result<f64> {
    let d = c.dim();
    if a.len() != d || b.len() != d {
        return Err(Error::usage(format!(
            "ambient_form: expected vectors of length {d}, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(match c {
        Curvature::Flat | Curvature::Spherical => a.iter().zip(b).map(|(x, y)| x * y).sum(),
        Curvature::Hyperbolic => a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
    })
}

/// Riemannian inner product induced on tangent vectors: equals the ambient
/// form except for `σ = -1`, where tangent vectors are spacelike and the
/// metric is the negated form.
pub fn tangent_inner(c: Curvature, a: &[f64], b: &[f64]) -> f64 {
    let raw = ambient_form(c, a, b).expect("dimension already checked by caller");
    match c {
        Curvature::Hyperbolic => -raw,
        _ => raw,
    }
}

const MODEL_TOL: f64 = 1e-10;

/// A point of the model, stored in ambient coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientPoint {
    curvature: Curvature,
    coords: [f64; 4],
}

impl AmbientPoint {
    pub fn new(curvature: Curvature, coords: &[f64]) -> Result<Self> {
        if coords.len() != curvature.dim() {
            return Err(Error::usage(format!(
                "point needs {} coordinates for this model, got {}",
                curvature.dim(),
                coords.len()
            )));
        }
        let mut x = [0.0; 4];
        x[..coords.len()].copy_from_slice(coords);
        let p = AmbientPoint { curvature, coords: x };
        p.check_on_model()?;
        Ok(p)
    }

    fn check_on_model(&self) -> Result<()> {
        let c = self.curvature;
        if c == Curvature::Flat {
            return Ok(());
        }
        let q = ambient_form(c, self.coords(), self.coords())?;
        let scale = self.coords.iter().map(|x| x * x).sum::<f64>().max(1.0);
        if (q - 1.0).abs() > MODEL_TOL * scale {
            return Err(Error::usage(format!(
                "point off the model: form(p,p) = {q} (tolerance {:.1e})",
                MODEL_TOL * scale
            )));
        }
        if c == Curvature::Hyperbolic && self.coords[0] < 1.0 - MODEL_TOL {
            return Err(Error::usage("hyperboloid point must have p0 >= 1"));
        }
        Ok(())
    }

    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.curvature.dim()]
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.coords[i]
    }
}

/// A tangent vector attached to a base point of the model.
#[derive(Debug, Clone)]
pub struct TangentVector {
    pub base: AmbientPoint,
    vec: [f64; 4],
}

impl TangentVector {
    pub fn new(base: AmbientPoint, vec: &[f64]) -> Result<Self> {
        let c = base.curvature();
        if vec.len() != c.dim() {
            return Err(Error::usage("tangent vector dimension mismatch"));
        }
        let mut v = [0.0; 4];
        v[..vec.len()].copy_from_slice(vec);
        if c != Curvature::Flat {
            let f = ambient_form(c, base.coords(), &v[..c.dim()])?;
            let scale = (base.coords.iter().map(|x| x * x).sum::<f64>()
                * v.iter().map(|x| x * x).sum::<f64>())
            .sqrt()
            .max(1.0);
            if f.abs() > 1e-9 * scale {
                return Err(Error::usage(format!(
                    "vector not tangent to the model: form(p, v) = {f:e}"
                )));
            }
        }
        Ok(TangentVector { base, vec: v })
    }

    pub fn vec(&self) -> &[f64] {
        &self.vec[..self.base.curvature().dim()]
    }

    pub fn norm(&self) -> f64 {
        tangent_inner(self.base.curvature(), self.vec(), self.vec()).sqrt()
    }
}

/// Unit-speed geodesic through `p` with initial direction `xi`, evaluated
/// at arclength `s`: `p·cs_σ(s) + ξ·sn_σ(s)`.
pub fn geodesic(p: &AmbientPoint, xi: &TangentVector, s: f64) -> Result<AmbientPoint> {
    let n = xi.norm();
    if (n - 1.0).abs() > 1e-8 {
        return Err(Error::usage(format!(
            "geodesic direction must be unit, |xi| = {n}"
        )));
    }
    Ok(geodesic_unchecked(p, xi.vec(), s))
}

/// Same as [`geodesic`] but trusting the caller on unit length and
/// tangency; kept separate because quadrature loops call this millions of
/// times.
pub fn geodesic_unchecked(p: &AmbientPoint, xi: &[f64], s: f64) -> AmbientPoint {
    let c = p.curvature();
    let (cs, sn) = (c.cs(s), c.sn(s));
    let mut coords = [0.0; 4];
    for i in 0..c.dim() {
        coords[i] = p.coord(i) * cs + xi[i] * sn;
    }
    AmbientPoint {
        curvature: c,
        coords,
    }
}

/// Geodesic distance between two model points.
pub fn distance(p: &AmbientPoint, q: &AmbientPoint) -> Result<f64> {
    let c = p.curvature();
    if q.curvature() != c {
        return Err(Error::usage("distance: mixed curvatures"));
    }
    Ok(match c {
        Curvature::Flat => {
            let mut s = 0.0;
            for i in 0..3 {
                s += (p.coord(i) - q.coord(i)).powi(2);
            }
            s.sqrt()
        }
        Curvature::Spherical => ambient_form(c, p.coords(), q.coords())?
            .clamp(-1.0, 1.0)
            .acos(),
        Curvature::Hyperbolic => {
            let f = ambient_form(c, p.coords(), q.coords())?.max(1.0);
            f.acosh()
        }
    })
}

/// Area of the geodesic sphere of radius `r`: `4π sn_σ(r)²`.
pub fn sphere_area(c: Curvature, r: f64) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::usage("sphere_area: radius must be positive"));
    }
    if c == Curvature::Spherical && r >= PI {
        return Err(Error::usage(
            "sphere_area: radius must be below pi on the sphere (antipodal degeneracy)",
        ));
    }
    Ok(4.0 * PI * c.sn(r).powi(2))
}

/// Hyperboloid-to-Poincaré-ball coordinates: `(p1, p2, p3) / (1 + p0)`.
pub fn poincare_from_hyperboloid(p: &AmbientPoint) -> Result<[f64; 3]> {
    if p.curvature() != Curvature::Hyperbolic {
        return Err(Error::usage("poincare_from_hyperboloid: not a hyperboloid point"));
    }
    let d = 1.0 + p.coord(0);
    Ok([p.coord(1) / d, p.coord(2) / d, p.coord(3) / d])
}

/// An ambient isometry of the model: orthogonal/Lorentz matrix plus, for
/// the flat case, a translation.
#[derive(Debug, Clone)]
pub struct Isometry {
    curvature: Curvature,
    matrix: [[f64; 4]; 4],
    translation: [f64; 3],
}

impl Isometry {
    pub fn identity(c: Curvature) -> Self {
        let mut matrix = [[0.0; 4]; 4];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Isometry {
            curvature: c,
            matrix,
            translation: [0.0; 3],
        }
    }

    /// Flat rigid motion `x ↦ R x + b`.
    pub fn euclidean(rot: [[f64; 3]; 3], translation: [f64; 3]) -> Self {
        let mut matrix = [[0.0; 4]; 4];
        for i in 0..3 {
            matrix[i][..3].copy_from_slice(&rot[i]);
        }
        matrix[3][3] = 1.0;
        Isometry {
            curvature: Curvature::Flat,
            matrix,
            translation,
        }
    }

    /// Linear model isometry for `σ = ±1` (O(4) resp. O(1,3) preserving the
    /// upper sheet).
    pub fn linear(c: Curvature, matrix: [[f64; 4]; 4]) -> Self {
        Isometry {
            curvature: c,
            matrix,
            translation: [0.0; 3],
        }
    }

    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    pub fn apply(&self, p: &AmbientPoint) -> AmbientPoint {
        let mut coords = [0.0; 4];
        let d = self.curvature.dim();
        for i in 0..d {
            for j in 0..d {
                coords[i] += self.matrix[i][j] * p.coord(j);
            }
        }
        if self.curvature == Curvature::Flat {
            for i in 0..3 {
                coords[i] += self.translation[i];
            }
        }
        AmbientPoint {
            curvature: self.curvature,
            coords,
        }
    }

    /// Push a tangent vector forward (the linear part only).
    pub fn apply_vec(&self, v: &[f64]) -> [f64; 4] {
        let mut out = [0.0; 4];
        let d = self.curvature.dim();
        for i in 0..d {
            for j in 0..d {
                out[i] += self.matrix[i][j] * v[j];
            }
        }
        out
    }

    /// Largest violation of form preservation on a basis pair, for fixture
    /// self-checks.
    pub fn form_defect(&self) -> f64 {
        let c = self.curvature;
        let d = c.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut ei = [0.0; 4];
                let mut ej = [0.0; 4];
                ei[i] = 1.0;
                ej[j] = 1.0;
                let fi = self.apply_vec(&ei);
                let fj = self.apply_vec(&ej);
                let before = ambient_form(c, &ei[..d], &ej[..d]).unwrap();
                let after = ambient_form(c, &fi[..d], &fj[..d]).unwrap();
                worst = worst.max((before - after).abs());
            }
        }
        worst
    }
}

/// Euclidean 3D cross product.
pub fn cross3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Euclidean 4D generalized cross product: the vector orthogonal to
/// `a, b, c` given by cofactor expansion.
pub fn cross4(a: &[f64], b: &[f64], c: &[f64]) -> [f64; 4] {
    let det3 = |r: [[f64; 3]; 3]| -> f64 {
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    };
    let mut out = [0.0; 4];
    for i in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let m = [
            [a[cols[0]], a[cols[1]], a[cols[2]]],
            [b[cols[0]], b[cols[1]], b[cols[2]]],
            [c[cols[0]], c[cols[1]], c[cols[2]]],
        ];
        out[i] = if i % 2 == 0 { det3(m) } else { -det3(m) };
    }
    out
}

/// An orthonormal tangent frame at `p` with respect to the induced metric,
/// built by Gram-Schmidt against the σ-form. The frame itself is an
/// arbitrary gauge; quadrature over directions only uses that it is
/// orthonormal.
pub fn tangent_frame(p: &AmbientPoint) -> [[f64; 4]; 3] {
    let c = p.curvature();
    let d = c.dim();
    let mut frame = [[0.0; 4]; 3];
    let mut found = 0;
    for seed in 0..4 {
        if found == 3 {
            break;
        }
        let mut v = [0.0; 4];
        v[seed % d] = 1.0;
        // project out the position (σ≠0) and previous frame vectors
        if c != Curvature::Flat {
            let fp = ambient_form(c, &v[..d], p.coords()).unwrap();
            let pp = ambient_form(c, p.coords(), p.coords()).unwrap();
            for i in 0..d {
                v[i] -= fp / pp * p.coord(i);
            }
        }
        for prev in frame.iter().take(found) {
            let num = tangent_inner(c, &v[..d], &prev[..d]);
            for i in 0..d {
                v[i] -= num * prev[i];
            }
        }
        let n2 = tangent_inner(c, &v[..d], &v[..d]);
        if n2 > 1e-12 {
            let n = n2.sqrt();
            for x in v.iter_mut() {
                *x /= n;
            }
            frame[found] = v;
            found += 1;
        }
    }
    assert_eq!(found, 3, "tangent frame construction failed");
    frame
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn form_basis_cases() {
        let e1 = [1.0, 0.0, 0.0, 0.0];
        assert_eq!(ambient_form(Curvature::Spherical, &e1, &e1).unwrap(), 1.0);
        assert_eq!(ambient_form(Curvature::Hyperbolic, &e1, &e1).unwrap(), 1.0);
        // 4 - 3 by direct arithmetic
        let p = [2.0, 3.0f64.sqrt(), 0.0, 0.0];
        assert_abs_diff_eq!(
            ambient_form(Curvature::Hyperbolic, &p, &p).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn form_dimension_mismatch_is_usage_error() {
        let a = [1.0, 0.0, 0.0];
        let b = [1.0, 0.0, 0.0, 0.0];
        assert!(matches!(
            ambient_form(Curvature::Spherical, &a, &b),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn flat_geodesic_is_a_line() {
        let p = AmbientPoint::new(Curvature::Flat, &[0.0, 0.0, 0.0]).unwrap();
        let xi = TangentVector::new(p.clone(), &[0.0, 0.0, 1.0]).unwrap();
        let q = geodesic(&p, &xi, 2.0).unwrap();
        assert_eq!(q.coords(), &[0.0, 0.0, 2.0]);
    }

    #[test]
    fn quarter_great_circle() {
        let p = AmbientPoint::new(Curvature::Spherical, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let xi = TangentVector::new(p.clone(), &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let q = geodesic(&p, &xi, std::f64::consts::FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(q.coord(0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.coord(1), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn hyperboloid_geodesic_formula() {
        let p = AmbientPoint::new(Curvature::Hyperbolic, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let xi = TangentVector::new(p.clone(), &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let q = geodesic(&p, &xi, 1.0).unwrap();
        assert_abs_diff_eq!(q.coord(0), 1f64.cosh(), epsilon = 1e-14);
        assert_abs_diff_eq!(q.coord(1), 1f64.sinh(), epsilon = 1e-14);
    }

    #[test]
    fn non_unit_direction_rejected() {
        let p = AmbientPoint::new(Curvature::Flat, &[0.0, 0.0, 0.0]).unwrap();
        let xi = TangentVector::new(p.clone(), &[0.0, 0.0, 2.0]).unwrap();
        assert!(matches!(geodesic(&p, &xi, 1.0), Err(Error::Usage(_))));
    }

    #[test]
    fn areas_and_distances() {
        use std::f64::consts::PI;
        assert_abs_diff_eq!(
            sphere_area(Curvature::Flat, 2.0).unwrap(),
            16.0 * PI,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            sphere_area(Curvature::Hyperbolic, 1.0).unwrap(),
            4.0 * PI * 1f64.sinh().powi(2),
            epsilon = 1e-12
        );
        assert!(sphere_area(Curvature::Spherical, PI).is_err());
        let p = AmbientPoint::new(Curvature::Spherical, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let q = AmbientPoint::new(Curvature::Spherical, &[-1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(distance(&p, &q).unwrap(), PI, epsilon = 1e-12);
    }

    #[test]
    fn poincare_map() {
        let pole = AmbientPoint::new(Curvature::Hyperbolic, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(poincare_from_hyperboloid(&pole).unwrap(), [0.0, 0.0, 0.0]);
        let p =
            AmbientPoint::new(Curvature::Hyperbolic, &[1f64.cosh(), 1f64.sinh(), 0.0, 0.0])
                .unwrap();
        let ball = poincare_from_hyperboloid(&p).unwrap();
        assert_abs_diff_eq!(ball[0], (0.5f64).tanh(), epsilon = 1e-14);
        assert_abs_diff_eq!(ball[0], 0.4621, epsilon = 1e-4);
    }

    #[test]
    fn frame_is_orthonormal() {
        for p in [
            AmbientPoint::new(Curvature::Flat, &[1.0, -2.0, 0.5]).unwrap(),
            AmbientPoint::new(Curvature::Spherical, &[0.5, 0.5, 0.5, 0.5]).unwrap(),
            AmbientPoint::new(
                Curvature::Hyperbolic,
                &[(3.0f64).sqrt(), 1.0, 1.0, 0.0],
            )
            .unwrap(),
        ] {
            let c = p.curvature();
            let f = tangent_frame(&p);
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(
                        tangent_inner(c, &f[i][..c.dim()], &f[j][..c.dim()]),
                        want,
                        epsilon = 1e-10
                    );
                }
                if c != Curvature::Flat {
                    assert_abs_diff_eq!(
                        ambient_form(c, &f[i][..c.dim()], p.coords()).unwrap(),
                        0.0,
                        epsilon = 1e-10
                    );
                }
            }
        }
    }
}
