use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::profile::ProfileFunction;
use crate::calculus::{Interval, Jet, Rect, SurfaceChart};
use crate::error::{GeometryError, Result};
use crate::isotropic::Point3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum HelicoidalType {
    /// `(u cos v, u sin v, g(u) + h v)`
    #[default]
    First,
    /// `(−u sin v, u cos v, g(u) + h v)`
    Second,
}

/// A helicoidal surface: profile `(u, 0, g(u))` screwed about the x3-axis with pitch `h`.
#[derive(Debug, Clone)]
pub struct HelicoidalParams {
    pub profile: ProfileFunction,
    pub pitch: f64,
    pub kind: HelicoidalType,
    pub v_range: Interval,
}

impl HelicoidalParams {
    pub fn new(profile: ProfileFunction, pitch: f64) -> Self {
        Self { profile, pitch, kind: HelicoidalType::First, v_range: Interval::REAL }
    }

    pub fn with_kind(mut self, kind: HelicoidalType) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_v_range(mut self, v_range: Interval) -> Self {
        self.v_range = v_range;
        self
    }
}

/// Analytic chart of a helicoidal surface. Pitch zero gives a surface of
/// revolution; a constant profile gives a Euclidean helicoid.
pub fn helicoidal_chart(p: &HelicoidalParams) -> Result<SurfaceChart> {
    let range = p.profile.valid_range();
    if range.is_empty() || range.lo < 0.0 {
        return Err(GeometryError::InvalidRange(format!(
            "helicoidal profile range {range} must be a nonempty part of u > 0"
        )));
    }
    if p.v_range.is_empty() {
        return Err(GeometryError::InvalidRange(format!("empty v range {}", p.v_range)));
    }
    if !p.pitch.is_finite() {
        return Err(GeometryError::InvalidConstant(format!("pitch {}", p.pitch)));
    }
    let profile = p.profile.clone();
    let (h, kind) = (p.pitch, p.kind);
    let label = format!("helicoidal[{:?}](h={h}, {})", kind, profile.label());
    Ok(SurfaceChart::analytic(label, Rect::new(range, p.v_range), move |u, v| {
        let g = profile.eval(u)?;
        let (s, c) = v.sin_cos();
        let jet = Jet {
            r: Point3::new(u * c, u * s, g.g + h * v),
            r_u: Vector3::new(c, s, g.g1),
            r_v: Vector3::new(-u * s, u * c, h),
            r_uu: Vector3::new(0.0, 0.0, g.g2),
            r_uv: Vector3::new(-s, c, 0.0),
            r_vv: Vector3::new(-u * c, -u * s, 0.0),
        };
        Ok(match kind {
            HelicoidalType::First => jet,
            HelicoidalType::Second => quarter_turn(&jet),
        })
    }))
}

/// `(x1, x2, x3) ↦ (−x2, x1, x3)` applied to every entry of the jet.
fn quarter_turn(j: &Jet) -> Jet {
    let t = |w: &Vector3<f64>| Vector3::new(-w.y, w.x, w.z);
    Jet {
        r: Point3::new(-j.r.x2, j.r.x1, j.r.x3),
        r_u: t(&j.r_u),
        r_v: t(&j.r_v),
        r_uu: t(&j.r_uu),
        r_uv: t(&j.r_uv),
        r_vv: t(&j.r_vv),
    }
}

/// The i-sphere of parabolic type `x3 = (A/2)(x1² + x2²) + B x1 + C x2 + D`.
pub fn parabolic_i_sphere(a: f64, b: f64, c: f64, d: f64) -> Result<SurfaceChart> {
    if a == 0.0 || !a.is_finite() {
        return Err(GeometryError::InvalidConstant(format!("parabolic i-sphere needs A != 0, got {a}")));
    }
    let label = format!("i-sphere(A={a}, B={b}, C={c}, D={d})");
    Ok(SurfaceChart::analytic(label, Rect::PLANE, move |x, y| {
        Ok(Jet {
            r: Point3::new(x, y, 0.5 * a * (x * x + y * y) + b * x + c * y + d),
            r_u: Vector3::new(1.0, 0.0, a * x + b),
            r_v: Vector3::new(0.0, 1.0, a * y + c),
            r_uu: Vector3::new(0.0, 0.0, a),
            r_uv: Vector3::zeros(),
            r_vv: Vector3::new(0.0, 0.0, a),
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{curvature_at, first_form, forms, SymForm2};
    use crate::families::profile::{polynomial_profile, ScalarFn};
    use crate::isotropic::Motion;
    use std::f64::consts::FRAC_PI_2;

    fn square_profile() -> ProfileFunction {
        polynomial_profile(&[0.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn first_form_is_polar_metric() {
        let chart = helicoidal_chart(&HelicoidalParams::new(square_profile(), 1.0)).unwrap();
        for (u, v) in [(2.0, 0.0), (0.5, 1.3), (3.7, -2.0)] {
            let g = first_form(&chart, u, v).unwrap();
            assert!(g.max_abs_diff(&SymForm2::new(1.0, 0.0, u * u)) < 1e-14);
        }
        let (_, h) = forms(&chart, 2.0, 0.9).unwrap();
        assert!(h.max_abs_diff(&SymForm2::new(2.0, -0.5, 8.0)) < 1e-14);
    }

    #[test]
    fn zero_pitch_is_a_surface_of_revolution() {
        let chart = helicoidal_chart(&HelicoidalParams::new(square_profile(), 0.0)).unwrap();
        let p = chart.position(1.5, 0.0).unwrap();
        for v in [0.4, 2.0, -1.0] {
            let q = chart.position(1.5, v).unwrap();
            assert_eq!(q.x3, p.x3);
            assert!((q.x1.hypot(q.x2) - 1.5).abs() < 1e-14);
        }
    }

    #[test]
    fn constant_profile_is_a_helicoid() {
        let prof = ProfileFunction::custom(ScalarFn::constant(2.0), Interval::open(0.0, f64::INFINITY)).unwrap();
        let chart = helicoidal_chart(&HelicoidalParams::new(prof, 0.5)).unwrap();
        // every point satisfies x3 = 2 + 0.5 v and lies on the ray at angle v
        let p = chart.position(3.0, 0.7).unwrap();
        assert!((p.x3 - 2.35).abs() < 1e-14);
        assert!((p.x2.atan2(p.x1) - 0.7).abs() < 1e-14);
    }

    #[test]
    fn second_type_is_a_quarter_turn_of_the_first() {
        let params = HelicoidalParams::new(square_profile(), 1.3);
        let first = helicoidal_chart(&params).unwrap();
        let second = helicoidal_chart(&params.clone().with_kind(HelicoidalType::Second)).unwrap();
        let m = Motion::rotation(FRAC_PI_2);
        for (u, v) in [(0.7, 0.1), (2.0, -3.0), (4.1, 5.5)] {
            let a = m.apply(&first.position(u, v).unwrap());
            let b = second.position(u, v).unwrap();
            assert!((a.x1 - b.x1).abs() < 1e-12 && (a.x2 - b.x2).abs() < 1e-12 && (a.x3 - b.x3).abs() < 1e-12);
            let ka = curvature_at(&first, u, v).unwrap();
            let kb = curvature_at(&second, u, v).unwrap();
            assert!((ka.k - kb.k).abs() < 1e-12 && (ka.h - kb.h).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_profiles_reaching_negative_u() {
        let prof = ProfileFunction::custom(ScalarFn::identity(), Interval::open(-1.0, 1.0)).unwrap();
        assert!(matches!(
            helicoidal_chart(&HelicoidalParams::new(prof, 0.0)),
            Err(GeometryError::InvalidRange(_))
        ));
    }

    #[test]
    fn parabolic_sphere_curvatures() {
        for (a, k, h) in [(1.0, 1.0, 1.0), (-2.0, 4.0, -2.0), (2.0, 4.0, 2.0)] {
            let chart = parabolic_i_sphere(a, 0.3, -1.0, 2.0).unwrap();
            let c = curvature_at(&chart, 0.4, -2.2).unwrap();
            assert!((c.k - k).abs() < 1e-13 && (c.h - h).abs() < 1e-13);
        }
        assert!(matches!(parabolic_i_sphere(0.0, 1.0, 1.0, 1.0), Err(GeometryError::InvalidConstant(_))));
    }
}
