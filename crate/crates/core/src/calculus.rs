//! Fundamental forms and curvatures of admissible charts in I³.
//!
//! The induced metric is the top-view metric: `g_ij = ⟨r_i, r_j⟩` using only
//! the first two coordinates. The normal field is the isotropic vector
//! `(0, 0, 1)`, and the second form is realised as
//!
//! ```text
//! h_ij = det(r_u, r_v, r_ij) / sqrt(det g)
//! ```
//!
//! which reduces to the Hessian on graphs `(x, y, F(x, y))` and to
//! `(g″, −h/u, u g′)` on helicoidal charts.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::isotropic::{Motion, Point3};
use crate::numdiff;

/// Charts with `det g` at or below this value are treated as having an isotropic tangent plane.
pub const ADMISSIBILITY_TOL: f64 = 1e-12;

/// Default initial step for finite-difference charts.
pub const DEFAULT_FD_STEP: f64 = 1e-2;

/// Hessians of graph hypersurfaces must be symmetric to this tolerance.
pub const HESSIAN_SYMMETRY_TOL: f64 = 1e-10;

/// A real interval whose ends may be open, closed or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub const REAL: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        lo_open: true,
        hi_open: true,
    };

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: false, hi_open: false }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: true, hi_open: true }
    }

    pub fn contains(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        let lo_ok = other.lo > self.lo || (other.lo == self.lo && (!self.lo_open || other.lo_open));
        let hi_ok = other.hi < self.hi || (other.hi == self.hi && (!self.hi_open || other.hi_open));
        lo_ok && hi_ok
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi || (self.lo == self.hi && !self.lo_open && !self.hi_open))
    }

    /// Distance from `x` to the nearer end (infinite for unbounded sides).
    pub fn margin(&self, x: f64) -> f64 {
        (x - self.lo).min(self.hi - x)
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_open) = if self.lo > other.lo {
            (self.lo, self.lo_open)
        } else if other.lo > self.lo {
            (other.lo, other.lo_open)
        } else {
            (self.lo, self.lo_open || other.lo_open)
        };
        let (hi, hi_open) = if self.hi < other.hi {
            (self.hi, self.hi_open)
        } else if other.hi < self.hi {
            (other.hi, other.hi_open)
        } else {
            (self.hi, self.hi_open || other.hi_open)
        };
        Interval { lo, hi, lo_open, hi_open }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Rectangular parameter domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub u: Interval,
    pub v: Interval,
}

impl Rect {
    pub const PLANE: Rect = Rect { u: Interval::REAL, v: Interval::REAL };

    pub fn new(u: Interval, v: Interval) -> Self {
        Self { u, v }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.u.contains(u) && self.v.contains(v)
    }
}

/// Position and all first and second partials of a chart at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub r: Point3,
    pub r_u: Vector3<f64>,
    pub r_v: Vector3<f64>,
    pub r_uu: Vector3<f64>,
    pub r_uv: Vector3<f64>,
    pub r_vv: Vector3<f64>,
}

impl Jet {
    pub fn transformed(&self, m: &Motion) -> Jet {
        Jet {
            r: m.apply(&self.r),
            r_u: m.apply_vector(&self.r_u),
            r_v: m.apply_vector(&self.r_v),
            r_uu: m.apply_vector(&self.r_uu),
            r_uv: m.apply_vector(&self.r_uv),
            r_vv: m.apply_vector(&self.r_vv),
        }
    }

    fn is_finite(&self) -> bool {
        self.r.is_finite()
            && [self.r_u, self.r_v, self.r_uu, self.r_uv, self.r_vv]
                .iter()
                .all(|w| w.iter().all(|c| c.is_finite()))
    }
}

/// Where a chart's partial derivatives come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DerivativeSource {
    Analytic,
    /// Extrapolated central differences of positions, starting at `step`.
    FiniteDifference { step: f64 },
}

pub type JetFn = dyn Fn(f64, f64) -> Result<Jet> + Send + Sync;
pub type PositionFn = dyn Fn(f64, f64) -> Result<Point3> + Send + Sync;

#[derive(Clone)]
enum ChartSource {
    Analytic(Arc<JetFn>),
    Sampled { map: Arc<PositionFn>, step: f64 },
}

/// A twice-differentiable map `(u, v) → I³` over a rectangular domain.
///
/// Charts are immutable and cheap to clone; evaluation outside the domain is
/// an error rather than an extrapolation.
#[derive(Clone)]
pub struct SurfaceChart {
    label: String,
    domain: Rect,
    source: ChartSource,
    motion: Option<Motion>,
}

impl fmt::Debug for SurfaceChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceChart")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("source", &self.derivative_source())
            .field("motion", &self.motion)
            .finish()
    }
}

impl SurfaceChart {
    pub fn analytic<F>(label: impl Into<String>, domain: Rect, jet: F) -> Self
    where
        F: Fn(f64, f64) -> Result<Jet> + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            domain,
            source: ChartSource::Analytic(Arc::new(jet)),
            motion: None,
        }
    }

    /// Chart known only through positions; partials are finite-differenced.
    pub fn from_positions<F>(label: impl Into<String>, domain: Rect, step: f64, map: F) -> Self
    where
        F: Fn(f64, f64) -> Result<Point3> + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            domain,
            source: ChartSource::Sampled { map: Arc::new(map), step },
            motion: None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> &Rect {
        &self.domain
    }

    pub fn derivative_source(&self) -> DerivativeSource {
        match &self.source {
            ChartSource::Analytic(_) => DerivativeSource::Analytic,
            ChartSource::Sampled { step, .. } => DerivativeSource::FiniteDifference { step: *step },
        }
    }

    /// The same chart followed by an i-motion.
    pub fn transformed(&self, m: &Motion) -> SurfaceChart {
        let motion = match &self.motion {
            Some(prev) => m.compose(prev),
            None => *m,
        };
        SurfaceChart { motion: Some(motion), ..self.clone() }
    }

    /// Same map, derivatives recomputed from positions with the given initial step.
    pub fn sampled(&self, step: f64) -> SurfaceChart {
        let inner = self.clone();
        SurfaceChart::from_positions(format!("{} (sampled)", self.label), self.domain, step, move |u, v| {
            inner.position(u, v)
        })
    }

    fn check_domain(&self, u: f64, v: f64) -> Result<()> {
        if self.domain.contains(u, v) {
            Ok(())
        } else {
            Err(GeometryError::OutOfDomain { u, v })
        }
    }

    pub fn position(&self, u: f64, v: f64) -> Result<Point3> {
        self.check_domain(u, v)?;
        let p = match &self.source {
            ChartSource::Analytic(f) => f(u, v)?.r,
            ChartSource::Sampled { map, .. } => map(u, v)?,
        };
        let p = match &self.motion {
            Some(m) => m.apply(&p),
            None => p,
        };
        if p.is_finite() {
            Ok(p)
        } else {
            Err(GeometryError::NonFinite(format!("{} at ({u}, {v})", self.label)))
        }
    }

    pub fn jet(&self, u: f64, v: f64) -> Result<Jet> {
        self.check_domain(u, v)?;
        let jet = match &self.source {
            ChartSource::Analytic(f) => f(u, v)?,
            ChartSource::Sampled { map, step } => self.sampled_jet(map.as_ref(), *step, u, v)?,
        };
        let jet = match &self.motion {
            Some(m) => jet.transformed(m),
            None => jet,
        };
        if jet.is_finite() {
            Ok(jet)
        } else {
            Err(GeometryError::NonFinite(format!("{} jet at ({u}, {v})", self.label)))
        }
    }

    fn sampled_jet(&self, map: &PositionFn, step: f64, u: f64, v: f64) -> Result<Jet> {
        let h0 = step
            .min(0.5 * self.domain.u.margin(u))
            .min(0.5 * self.domain.v.margin(v));
        if !(h0 > 0.0) {
            return Err(GeometryError::OutOfDomain { u, v });
        }
        let r = map(u, v)?;
        // Stencil failures inside the domain are not expected; surface them as NaN.
        let at = |a: f64, b: f64| -> [f64; 3] {
            map(a, b)
                .map(|p| [p.x1, p.x2, p.x3])
                .unwrap_or([f64::NAN; 3])
        };
        let r0 = [r.x1, r.x2, r.x3];
        let vec = |e: [numdiff::Estimate; 3]| Vector3::new(e[0].value, e[1].value, e[2].value);
        let r_u = vec(numdiff::ridders3(
            |h| sub_scale(at(u + h, v), at(u - h, v), 2.0 * h),
            h0,
        ));
        let r_v = vec(numdiff::ridders3(
            |h| sub_scale(at(u, v + h), at(u, v - h), 2.0 * h),
            h0,
        ));
        let r_uu = vec(numdiff::ridders3(|h| second(at(u + h, v), r0, at(u - h, v), h), h0));
        let r_vv = vec(numdiff::ridders3(|h| second(at(u, v + h), r0, at(u, v - h), h), h0));
        let r_uv = vec(numdiff::ridders3(
            |h| {
                let (pp, pm, mp, mm) = (at(u + h, v + h), at(u + h, v - h), at(u - h, v + h), at(u - h, v - h));
                std::array::from_fn(|k| (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h * h))
            },
            h0,
        ));
        Ok(Jet { r, r_u, r_v, r_uu, r_uv, r_vv })
    }
}

fn sub_scale(a: [f64; 3], b: [f64; 3], d: f64) -> [f64; 3] {
    std::array::from_fn(|k| (a[k] - b[k]) / d)
}

fn second(p: [f64; 3], c: [f64; 3], m: [f64; 3], h: f64) -> [f64; 3] {
    std::array::from_fn(|k| (p[k] - 2.0 * c[k] + m[k]) / (h * h))
}

/// Symmetric 2×2 coefficient triple.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SymForm2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl SymForm2 {
    pub const ZERO: SymForm2 = SymForm2 { a11: 0.0, a12: 0.0, a22: 0.0 };

    pub const fn new(a11: f64, a12: f64, a22: f64) -> Self {
        Self { a11, a12, a22 }
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    /// Value of the quadratic form on `(du, dv)`.
    pub fn quadratic(&self, du: f64, dv: f64) -> f64 {
        self.a11 * du * du + 2.0 * self.a12 * du * dv + self.a22 * dv * dv
    }

    pub fn max_abs_diff(&self, other: &SymForm2) -> f64 {
        (self.a11 - other.a11)
            .abs()
            .max((self.a12 - other.a12).abs())
            .max((self.a22 - other.a22).abs())
    }
}

/// Relative curvature, isotropic mean curvature and metric determinant at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    /// Relative curvature `det h / det g`.
    pub k: f64,
    /// Isotropic mean curvature `(g11 h22 − 2 g12 h12 + g22 h11) / (2 det g)`.
    pub h: f64,
    pub det_g: f64,
}

fn tv_dot(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.x * b.x + a.y * b.y
}

fn first_form_of(jet: &Jet) -> SymForm2 {
    SymForm2 {
        a11: tv_dot(&jet.r_u, &jet.r_u),
        a12: tv_dot(&jet.r_u, &jet.r_v),
        a22: tv_dot(&jet.r_v, &jet.r_v),
    }
}

fn admissible_first_form(jet: &Jet, u: f64, v: f64) -> Result<SymForm2> {
    let g = first_form_of(jet);
    let det_g = g.det();
    if det_g > ADMISSIBILITY_TOL {
        Ok(g)
    } else {
        Err(GeometryError::NotAdmissible { u, v, det_g })
    }
}

fn second_form_of(jet: &Jet, g: &SymForm2) -> SymForm2 {
    let n = jet.r_u.cross(&jet.r_v);
    let s = g.det().sqrt();
    SymForm2 {
        a11: n.dot(&jet.r_uu) / s,
        a12: n.dot(&jet.r_uv) / s,
        a22: n.dot(&jet.r_vv) / s,
    }
}

/// Both fundamental forms at one admissible point.
pub fn forms(chart: &SurfaceChart, u: f64, v: f64) -> Result<(SymForm2, SymForm2)> {
    forms_of_jet(&chart.jet(u, v)?, u, v)
}

/// Both forms from an already evaluated jet; `(u, v)` only label the error.
pub fn forms_of_jet(jet: &Jet, u: f64, v: f64) -> Result<(SymForm2, SymForm2)> {
    let g = admissible_first_form(jet, u, v)?;
    Ok((g, second_form_of(jet, &g)))
}

pub fn first_form(chart: &SurfaceChart, u: f64, v: f64) -> Result<SymForm2> {
    let jet = chart.jet(u, v)?;
    admissible_first_form(&jet, u, v)
}

pub fn second_form(chart: &SurfaceChart, u: f64, v: f64) -> Result<SymForm2> {
    forms(chart, u, v).map(|(_, h)| h)
}

/// K and H from the two forms. Coordinates in the error are unknown here and reported as NaN.
pub fn curvatures(g: &SymForm2, h: &SymForm2) -> Result<CurvatureSample> {
    let det_g = g.det();
    if !(det_g > ADMISSIBILITY_TOL) {
        return Err(GeometryError::NotAdmissible { u: f64::NAN, v: f64::NAN, det_g });
    }
    Ok(CurvatureSample {
        k: h.det() / det_g,
        h: (g.a11 * h.a22 - 2.0 * g.a12 * h.a12 + g.a22 * h.a11) / (2.0 * det_g),
        det_g,
    })
}

pub fn curvature_at(chart: &SurfaceChart, u: f64, v: f64) -> Result<CurvatureSample> {
    let (g, h) = forms(chart, u, v)?;
    curvatures(&g, &h)
}

/// The mean-curvature expression used for helicoidal surfaces, `g′/u + g″`.
///
/// Under the `2 det g` normalisation of [`curvatures`] this is `2H`, not `H`.
pub fn helicoidal_h_expr(g1: f64, g2: f64, u: f64) -> f64 {
    g1 / u + g2
}

/// Laplace–Beltrami operator of the induced metric applied to each coordinate function.
///
/// Uses `Δf = g^{ij} (f_ij − Γ^m_ij f_m)`, with the metric derivatives read off
/// the second partials of the chart.
pub fn laplace_coordinates(chart: &SurfaceChart, u: f64, v: f64) -> Result<Point3> {
    let jet = chart.jet(u, v)?;
    let g = admissible_first_form(&jet, u, v)?;
    let det = g.det();
    let inv = [[g.a22 / det, -g.a12 / det], [-g.a12 / det, g.a11 / det]];
    let d = [jet.r_u, jet.r_v];
    let dd = [[jet.r_uu, jet.r_uv], [jet.r_uv, jet.r_vv]];
    // dg[k][i][j] = ∂_k g_ij
    let mut dg = [[[0.0; 2]; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                dg[k][i][j] = tv_dot(&dd[i][k], &d[j]) + tv_dot(&d[i], &dd[j][k]);
            }
        }
    }
    // c^m = g^{ij} Γ^m_ij with Γ_{ij,l} = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij)
    let mut c = [0.0; 2];
    for m in 0..2 {
        for l in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let gamma = 0.5 * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                    c[m] += inv[m][l] * inv[i][j] * gamma;
                }
            }
        }
    }
    let lap = |k: usize| -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += inv[i][j] * dd[i][j][k];
            }
        }
        s - c[0] * d[0][k] - c[1] * d[1][k]
    };
    Ok(Point3::new(lap(0), lap(1), lap(2)))
}

pub type ScalarFieldFn = dyn Fn(&[f64]) -> Result<f64> + Send + Sync;
pub type GradientFn = dyn Fn(&[f64]) -> Result<DVector<f64>> + Send + Sync;
pub type HessianFn = dyn Fn(&[f64]) -> Result<DMatrix<f64>> + Send + Sync;

/// Graph hypersurface `x ↦ (x, F(x))` in I^{n+1}; its induced metric is the identity.
#[derive(Clone)]
pub struct GraphHypersurface {
    label: String,
    n: usize,
    domain: Vec<Interval>,
    f: Arc<ScalarFieldFn>,
    grad: Arc<GradientFn>,
    hess: Arc<HessianFn>,
}

impl fmt::Debug for GraphHypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphHypersurface")
            .field("label", &self.label)
            .field("n", &self.n)
            .field("domain", &self.domain)
            .finish()
    }
}

/// Relative and mean curvature of a graph hypersurface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphCurvature {
    pub k: f64,
    pub h: f64,
}

impl GraphHypersurface {
    pub fn new<F, G, H>(label: impl Into<String>, domain: Vec<Interval>, f: F, grad: G, hess: H) -> Result<Self>
    where
        F: Fn(&[f64]) -> Result<f64> + Send + Sync + 'static,
        G: Fn(&[f64]) -> Result<DVector<f64>> + Send + Sync + 'static,
        H: Fn(&[f64]) -> Result<DMatrix<f64>> + Send + Sync + 'static,
    {
        let n = domain.len();
        if n < 2 {
            return Err(GeometryError::InvalidConstant(format!("graph dimension n = {n}, need n >= 2")));
        }
        Ok(Self {
            label: label.into(),
            n,
            domain,
            f: Arc::new(f),
            grad: Arc::new(grad),
            hess: Arc::new(hess),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> &[Interval] {
        &self.domain
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(GeometryError::DomainError(format!(
                "point has {} coordinates, hypersurface has n = {}",
                x.len(),
                self.n
            )));
        }
        for (j, (xi, iv)) in x.iter().zip(&self.domain).enumerate() {
            if !iv.contains(*xi) {
                return Err(GeometryError::DomainError(format!("x{} = {xi} outside {iv}", j + 1)));
            }
        }
        Ok(())
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        (self.f)(x)
    }

    pub fn gradient(&self, x: &[f64]) -> Result<DVector<f64>> {
        self.check(x)?;
        (self.grad)(x)
    }

    pub fn hessian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.check(x)?;
        let hess = (self.hess)(x)?;
        let asym = (&hess - hess.transpose()).amax();
        if asym > HESSIAN_SYMMETRY_TOL {
            return Err(GeometryError::DomainError(format!(
                "hessian of {} not symmetric (asymmetry {asym:e})",
                self.label
            )));
        }
        Ok(hess)
    }

    /// The surface `(x, y, F(x, y))` as a chart; only for `n = 2`.
    pub fn as_chart(&self) -> Result<SurfaceChart> {
        if self.n != 2 {
            return Err(GeometryError::InvalidConstant(format!(
                "as_chart needs n = 2, got n = {}",
                self.n
            )));
        }
        let gh = self.clone();
        let domain = Rect::new(self.domain[0], self.domain[1]);
        Ok(SurfaceChart::analytic(self.label.clone(), domain, move |x, y| {
            let p = [x, y];
            let f = gh.value(&p)?;
            let grad = gh.gradient(&p)?;
            let hess = gh.hessian(&p)?;
            Ok(Jet {
                r: Point3::new(x, y, f),
                r_u: Vector3::new(1.0, 0.0, grad[0]),
                r_v: Vector3::new(0.0, 1.0, grad[1]),
                r_uu: Vector3::new(0.0, 0.0, hess[(0, 0)]),
                r_uv: Vector3::new(0.0, 0.0, hess[(0, 1)]),
                r_vv: Vector3::new(0.0, 0.0, hess[(1, 1)]),
            })
        }))
    }
}

/// `K = det(hess F)` and `H = trace(hess F) / n`.
pub fn graph_curvatures(gh: &GraphHypersurface, x: &[f64]) -> Result<GraphCurvature> {
    let hess = gh.hessian(x)?;
    Ok(GraphCurvature {
        k: hess.determinant(),
        h: hess.trace() / gh.dim() as f64,
    })
}
