//! Curves on helicoidal surfaces: geodesic curvature, normal curvature,
//! geodesic torsion, and classification of the parameter curves.
//!
//! Along a unit-speed curve `s ↦ r(u(s), v(s))` the frame `{t, σ, N}` has
//! `N = (0, 0, 1)` and `σ` the tangent vector whose top view is the top view
//! of `t` turned by a right angle, so that `r̈ = κ_g σ + κ_n N`.

use serde::{Deserialize, Serialize};

use crate::calculus::{forms_of_jet, SurfaceChart, SymForm2, ADMISSIBILITY_TOL};
use crate::error::{GeometryError, Result};
use crate::families::{ProfileFunction, ScalarFn};
use crate::isotropic::Point3;

/// Allowed deviation of the first-form value from 1 for a unit-speed state.
pub const UNIT_SPEED_TOL: f64 = 1e-10;
/// Classification tolerance with analytic derivatives.
pub const CLASSIFY_TOL: f64 = 1e-9;
/// Classification tolerance when derivatives are finite-differenced.
pub const CLASSIFY_TOL_FD: f64 = 1e-5;

/// Position and arc-length derivatives `(u̇, v̇, ü, v̈)` of a curve on a helicoidal chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveState {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub ddu: f64,
    pub ddv: f64,
}

impl CurveState {
    pub fn new(u: f64, v: f64, du: f64, dv: f64, ddu: f64, ddv: f64) -> Self {
        Self { u, v, du, dv, ddu, ddv }
    }

    /// `du² + u² dv²`, the squared speed in the helicoidal metric.
    pub fn speed_sq(&self) -> f64 {
        self.du * self.du + self.u * self.u * self.dv * self.dv
    }

    pub fn check_unit_speed(&self) -> Result<()> {
        let speed_sq = self.speed_sq();
        if (speed_sq - 1.0).abs() <= UNIT_SPEED_TOL {
            Ok(())
        } else {
            Err(GeometryError::NotUnitSpeed { speed_sq })
        }
    }

    /// Unit-speed state from derivatives with respect to an arbitrary regular parameter.
    pub fn from_parametrization(u: f64, v: f64, u1: f64, v1: f64, u2: f64, v2: f64) -> Result<Self> {
        let speed_sq = u1 * u1 + u * u * v1 * v1;
        if !(speed_sq > 0.0) || !speed_sq.is_finite() {
            return Err(GeometryError::NotUnitSpeed { speed_sq });
        }
        let speed = speed_sq.sqrt();
        let speed1 = (u1 * u2 + u * u1 * v1 * v1 + u * u * v1 * v2) / speed;
        let to_s = |x1: f64, x2: f64| (x1 / speed, (x2 - x1 * speed1 / speed) / speed_sq);
        let (du, ddu) = to_s(u1, u2);
        let (dv, ddv) = to_s(v1, v2);
        Ok(Self { u, v, du, dv, ddu, ddv })
    }
}

/// Curvature data of a curve at one point, with the boolean verdicts at a fixed tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveClassification {
    pub is_geodesic: bool,
    pub is_asymptotic: bool,
    pub is_line_of_curvature: bool,
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_g_numerator: f64,
}

impl CurveClassification {
    pub fn from_values(kappa_g: f64, kappa_n: f64, tau_g_numerator: f64, tol: f64) -> Self {
        Self {
            is_geodesic: kappa_g.abs() <= tol,
            is_asymptotic: kappa_n.abs() <= tol,
            is_line_of_curvature: tau_g_numerator.abs() <= tol,
            kappa_g,
            kappa_n,
            tau_g_numerator,
        }
    }
}

fn checked(profile: &ProfileFunction, cs: &CurveState) -> Result<(f64, f64)> {
    cs.check_unit_speed()?;
    let p = profile.eval(cs.u)?;
    Ok((p.g1, p.g2))
}

/// Signed curvature of the top view: `u² v̇³ + u u̇ v̈ + 2 u̇² v̇ − u v̇ ü`.
pub fn geodesic_curvature(profile: &ProfileFunction, _h: f64, cs: &CurveState) -> Result<f64> {
    checked(profile, cs)?;
    let CurveState { u, du, dv, ddu, ddv, .. } = *cs;
    Ok(u * u * dv.powi(3) + u * du * ddv + 2.0 * du * du * dv - u * dv * ddu)
}

/// `g″ u̇² − 2 (h/u) u̇ v̇ + u g′ v̇²`.
pub fn normal_curvature(profile: &ProfileFunction, h: f64, cs: &CurveState) -> Result<f64> {
    let (g1, g2) = checked(profile, cs)?;
    let CurveState { u, du, dv, .. } = *cs;
    Ok(g2 * du * du - 2.0 * (h / u) * du * dv + u * g1 * dv * dv)
}

/// The determinant `|dv², −du dv, du²; g11 g12 g22; h11 h12 h22|` for a general chart.
pub fn torsion_determinant(g: &SymForm2, hf: &SymForm2, du: f64, dv: f64) -> f64 {
    dv * dv * (g.a12 * hf.a22 - g.a22 * hf.a12) + du * dv * (g.a11 * hf.a22 - g.a22 * hf.a11)
        + du * du * (g.a11 * hf.a12 - g.a12 * hf.a11)
}

/// `−(h/u) du² + (u g′ − u² g″) du dv + h u dv²`; it vanishes exactly on lines of curvature.
pub fn geodesic_torsion_numerator(profile: &ProfileFunction, h: f64, u: f64, du: f64, dv: f64) -> Result<f64> {
    let p = profile.eval(u)?;
    Ok(-(h / u) * du * du + (u * p.g1 - u * u * p.g2) * du * dv + h * u * dv * dv)
}

/// Numerator over `det g · I(du, dv)`, with `det g = u²`.
pub fn geodesic_torsion(profile: &ProfileFunction, h: f64, u: f64, du: f64, dv: f64) -> Result<f64> {
    let num = geodesic_torsion_numerator(profile, h, u, du, dv)?;
    let first = du * du + u * u * dv * dv;
    if !(first > 0.0) {
        return Err(GeometryError::NotUnitSpeed { speed_sq: first });
    }
    Ok(num / (u * u * first))
}

pub fn classify(profile: &ProfileFunction, h: f64, cs: &CurveState, tol: f64) -> Result<CurveClassification> {
    Ok(CurveClassification::from_values(
        geodesic_curvature(profile, h, cs)?,
        normal_curvature(profile, h, cs)?,
        geodesic_torsion_numerator(profile, h, cs.u, cs.du, cs.dv)?,
        tol,
    ))
}

/// Classification of the two parameter curves through one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterCurves {
    /// `v = const`, traversed with `u̇ = 1`.
    pub along_u: CurveClassification,
    /// `u = const`, traversed with `v̇ = 1/u0`.
    pub along_v: CurveClassification,
}

pub fn classify_parameter_curves(profile: &ProfileFunction, h: f64, u0: f64, v0: f64) -> Result<ParameterCurves> {
    let det_g = u0 * u0;
    if !(u0 > 0.0) || !(det_g > ADMISSIBILITY_TOL) {
        return Err(GeometryError::NotAdmissible { u: u0, v: v0, det_g });
    }
    let along_u = CurveState::new(u0, v0, 1.0, 0.0, 0.0, 0.0);
    let along_v = CurveState::new(u0, v0, 0.0, 1.0 / u0, 0.0, 0.0);
    Ok(ParameterCurves {
        along_u: classify(profile, h, &along_u, CLASSIFY_TOL)?,
        along_v: classify(profile, h, &along_v, CLASSIFY_TOL)?,
    })
}

/// One evaluated point of [`sample_curve`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t: f64,
    /// Arc length from the first grid value.
    pub s: f64,
    pub u: f64,
    pub v: f64,
    pub point: Point3,
    pub classification: CurveClassification,
}

/// Evaluates `t ↦ r(u(t), v(t))` on any chart at the given parameter values.
///
/// The curve need not be unit speed: curvatures are computed in the unit-speed
/// normalisation and `s` is the arc length accumulated by quadrature.
/// `κ_g` is the signed top-view curvature, `κ_n = II(ẋ)/I(ẋ)` and the torsion
/// numerator is [`torsion_determinant`] in the unit tangent direction.
pub fn sample_curve(
    chart: &SurfaceChart,
    u_of_t: &ScalarFn,
    v_of_t: &ScalarFn,
    t_grid: &[f64],
    tol: f64,
) -> Result<Vec<CurveSample>> {
    let speed = |t: f64| -> f64 {
        let (u, u1, _) = u_of_t.eval3(t);
        let (v, v1, _) = v_of_t.eval3(t);
        match chart.jet(u, v) {
            Ok(j) => {
                let d = j.r_u * u1 + j.r_v * v1;
                d.x.hypot(d.y)
            }
            Err(_) => f64::NAN,
        }
    };
    let mut out = Vec::with_capacity(t_grid.len());
    let mut s = 0.0;
    for (k, &t) in t_grid.iter().enumerate() {
        if k > 0 {
            s += quadrature::integrate(speed, t_grid[k - 1], t, 1e-12).integral;
        }
        let (u, u1, u2) = u_of_t.eval3(t);
        let (v, v1, v2) = v_of_t.eval3(t);
        let jet = chart.jet(u, v)?;
        let (g, hf) = forms_of_jet(&jet, u, v)?;
        let r1 = jet.r_u * u1 + jet.r_v * v1;
        let r2 = jet.r_uu * (u1 * u1) + jet.r_uv * (2.0 * u1 * v1) + jet.r_vv * (v1 * v1) + jet.r_u * u2 + jet.r_v * v2;
        let speed_sq = g.quadratic(u1, v1);
        if !(speed_sq > 0.0) {
            return Err(GeometryError::NotUnitSpeed { speed_sq });
        }
        let sp = speed_sq.sqrt();
        let kappa_g = (r1.x * r2.y - r1.y * r2.x) / (sp * speed_sq);
        let kappa_n = hf.quadratic(u1, v1) / speed_sq;
        let tau = torsion_determinant(&g, &hf, u1 / sp, v1 / sp);
        out.push(CurveSample {
            t,
            s,
            u,
            v,
            point: jet.r,
            classification: CurveClassification::from_values(kappa_g, kappa_n, tau, tol),
        });
    }
    Ok(out)
}
