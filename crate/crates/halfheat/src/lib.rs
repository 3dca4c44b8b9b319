//! Numerical and exact-rational verification toolkit for the geometry of
//! domains in the three simply connected 3-dimensional space forms whose
//! boundary temperature stays at 1/2 under heat flow.
//!
//! The library is organised around a single sign ledger, shared by every
//! module:
//!
//! * the Laplacian is positive (`Δu = -u''` on a line),
//! * the tangential co-divergence `δ̄` equals `-div`,
//! * the shape operator is `S(X) = -∇_X N` with `N` the inner unit normal
//!   of the named domain, so the boundary of a convex Euclidean ball with
//!   inner normal has mean curvature `η = tr S > 0`,
//! * Gauss curvature of a surface is `K = σ + det S`.
//!
//! Modules:
//!
//! * [`spaceform`] — ambient models of `M³_σ`, `σ ∈ {-1, 0, +1}`: bilinear
//!   forms, geodesics, distances, isometries.
//! * [`series`] — truncated Taylor jets (univariate and bivariate) over
//!   `f64` or exact rationals, and sparse multivariate polynomials with
//!   rational coefficients.
//! * [`surface`] — parametric surface calculus: fundamental forms, shape
//!   operator, tangential gradient/divergence/Laplacian, the divergence
//!   residual `div(S(∇̄K))`, isothermal diagnostics and ruling checks.
//! * [`catalog`] — named surface fixtures (plane, helicoids, Clifford
//!   torus, catenoid, totally geodesic surfaces) with side functions and
//!   isometry families, plus the symmetry harness.
//! * [`invariants`] — heat-flow invariants `γ₀, γ₂, γ₄` via the collar of
//!   parallel surfaces and the 𝒩/Δ operator algebra.
//! * [`density`] — geodesic-sphere density `σ(r,x)`, small-radius order
//!   fits and ball-volume splitting.
//! * [`heat`] — radial heat kernels, Cauchy temperature via the co-area
//!   reduction, and the Dirichlet half-space oracle.
//! * [`identities`] — exact-rational re-derivation of the Taylor
//!   coefficient identities behind the one-variable reduction.
//! * [`acceptance`] — the end-to-end criteria suite shared by the CLI and
//!   the integration tests.

pub mod acceptance;
pub mod catalog;
pub mod density;
pub mod heat;
pub mod identities;
pub mod invariants;
pub mod quad;
pub mod series;
pub mod spaceform;
pub mod surface;

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation precondition (wrong dimension,
    /// non-unit tangent, point off the model or off the surface, bad
    /// parameter range).
    #[error("usage error: {0}")]
    Usage(String),

    /// Arithmetic that is undefined for the given operands, e.g. dividing
    /// by a jet with zero constant term.
    #[error("domain error: {0}")]
    Domain(String),

    /// The immersion is degenerate at the requested chart point.
    #[error("singular chart at (u, v) = ({u}, {v}): det g = {det_g:e}")]
    SingularChart { u: f64, v: f64, det_g: f64 },

    /// Parallel surfaces hit a focal point before the requested collar
    /// depth; the caller must shrink the collar.
    #[error("collar too wide: focal point at distance {focal:.6} <= requested {requested:.6}")]
    CollarTooWide { focal: f64, requested: f64 },

    /// An operator word needs more jet orders than the field carries.
    #[error("insufficient jet order: need {need}, field has {have}")]
    InsufficientOrder { need: usize, have: usize },

    /// A fixture failed one of its own defining identities.
    #[error("fixture defect in `{fixture}`: {detail}")]
    FixtureDefect { fixture: String, detail: String },

    /// An exact coefficient identity did not reproduce; names the monomial.
    #[error("identity regression at monomial u^{i} v^{j}: residual {residual}")]
    IdentityRegression { i: usize, j: usize, residual: String },

    /// The requested fixture does not bound a domain, so side-function
    /// based operations are refused.
    #[error("fixture `{0}` does not bound a domain; side operations refused")]
    NotADomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
