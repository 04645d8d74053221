//! Points, i-distance and the six-parameter motion group of isotropic 3-space.
//!
//! The metric of I³ only sees the top view `(x1, x2)`. Two distinct points on
//! the same isotropic line (differing only in `x3`) are at distance zero; this
//! degeneracy is the defining feature of the space, not an error condition.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// Relative tolerance used by [`motion_preserves_distance`].
pub const ISOMETRY_TOL: f64 = 1e-12;

/// Affine point of I³.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x1: 0.0, x2: 0.0, x3: 0.0 };

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let p = Self::new(x1, x2, x3);
        if p.is_finite() {
            Ok(p)
        } else {
            Err(GeometryError::NonFinite(format!("point ({x1}, {x2}, {x3})")))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x1, self.x2, self.x3)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v.x, v.y, v.z)
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

/// Isotropic distance: the Euclidean distance of the top views.
pub fn i_distance(x: &Point3, y: &Point3) -> f64 {
    (y.x1 - x.x1).hypot(y.x2 - x.x2)
}

pub fn top_view(x: &Point3) -> (f64, f64) {
    (x.x1, x.x2)
}

/// An i-motion: Euclidean motion of the top view combined with a shear in `x3`.
///
/// ```text
/// x1' = a + x1 cos φ − x2 sin φ
/// x2' = b + x1 sin φ + x2 cos φ
/// x3' = c + d x1 + e x2 + x3
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Motion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub phi: f64,
}

impl Motion {
    pub const IDENTITY: Motion = Motion { a: 0.0, b: 0.0, c: 0.0, d: 0.0, e: 0.0, phi: 0.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64, phi: f64) -> Self {
        Self { a, b, c, d, e, phi }
    }

    pub fn rotation(phi: f64) -> Self {
        Self { phi, ..Self::IDENTITY }
    }

    pub fn translation(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c, ..Self::IDENTITY }
    }

    pub fn apply(&self, x: &Point3) -> Point3 {
        let (s, c) = self.phi.sin_cos();
        Point3 {
            x1: self.a + x.x1 * c - x.x2 * s,
            x2: self.b + x.x1 * s + x.x2 * c,
            x3: self.c + self.d * x.x1 + self.e * x.x2 + x.x3,
        }
    }

    /// Linear part only; this is how tangent and higher derivative vectors transform.
    pub fn apply_vector(&self, v: &Vector3<f64>) -> Vector3<f64> {
        let (s, c) = self.phi.sin_cos();
        Vector3::new(
            v.x * c - v.y * s,
            v.x * s + v.y * c,
            self.d * v.x + self.e * v.y + v.z,
        )
    }

    /// `self ∘ first`: apply `first`, then `self`.
    ///
    /// Writing the second motion's shear row `(d2, e2)` through the first
    /// motion's rotation gives the composite shear
    /// `d = d1 + d2 cos φ1 + e2 sin φ1`, `e = e1 − d2 sin φ1 + e2 cos φ1`
    /// and offset `c = c2 + c1 + d2 a1 + e2 b1`.
    pub fn compose(&self, first: &Motion) -> Motion {
        let (s2, c2) = self.phi.sin_cos();
        let (s1, c1) = first.phi.sin_cos();
        Motion {
            a: self.a + first.a * c2 - first.b * s2,
            b: self.b + first.a * s2 + first.b * c2,
            c: self.c + first.c + self.d * first.a + self.e * first.b,
            d: first.d + self.d * c1 + self.e * s1,
            e: first.e - self.d * s1 + self.e * c1,
            phi: self.phi + first.phi,
        }
    }
}

pub fn apply_motion(m: &Motion, x: &Point3) -> Point3 {
    m.apply(x)
}

/// Isometry check for one motion and one pair of points (relative tolerance [`ISOMETRY_TOL`]).
pub fn motion_preserves_distance(m: &Motion, x: &Point3, y: &Point3) -> bool {
    let before = i_distance(x, y);
    let after = i_distance(&m.apply(x), &m.apply(y));
    (after - before).abs() <= ISOMETRY_TOL * before.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn close(a: &Point3, b: &Point3, tol: f64) -> bool {
        (a.x1 - b.x1).abs() <= tol && (a.x2 - b.x2).abs() <= tol && (a.x3 - b.x3).abs() <= tol
    }

    #[test]
    fn distance_examples() {
        assert_eq!(i_distance(&Point3::new(0., 0., 0.), &Point3::new(3., 4., 7.)), 5.0);
        assert_eq!(i_distance(&Point3::new(1., 2., 3.), &Point3::new(1., 2., 10.)), 0.0);
        assert_eq!(i_distance(&Point3::new(-1., 0., 5.), &Point3::new(2., 4., 1.)), 5.0);
    }

    #[test]
    fn isotropic_line_is_degenerate() {
        let x = Point3::new(0.3, -1.2, 0.0);
        let y = Point3::new(0.3, -1.2, 42.0);
        assert_ne!(x, y);
        assert_eq!(i_distance(&x, &y), 0.0);
    }

    #[test]
    fn top_view_examples() {
        assert_eq!(top_view(&Point3::new(1., 2., 3.)), (1., 2.));
        assert_eq!(top_view(&Point3::new(0., 0., 9.)), (0., 0.));
        assert_eq!(top_view(&Point3::new(-4., 5., 0.)), (-4., 5.));
    }

    #[test]
    fn motion_examples() {
        let x = Point3::new(0.7, -2.0, 3.5);
        assert_eq!(apply_motion(&Motion::IDENTITY, &x), x);
        assert_eq!(
            apply_motion(&Motion::translation(1., 2., 3.), &Point3::ORIGIN),
            Point3::new(1., 2., 3.)
        );
        let shear = Motion { d: 1.0, ..Motion::IDENTITY };
        assert_eq!(apply_motion(&shear, &Point3::new(1., 0., 5.)), Point3::new(1., 0., 6.));
    }

    #[test]
    fn quarter_turn_preserves_distance() {
        let m = Motion::rotation(FRAC_PI_2);
        let (x, y) = (Point3::new(1., 0., 0.), Point3::ORIGIN);
        // direct evaluation: m·x = (0, 1, 0), m·y = origin, both distances 1
        let mx = m.apply(&x);
        assert!(close(&mx, &Point3::new(0., 1., 0.), 1e-15));
        assert_eq!(i_distance(&mx, &m.apply(&y)), 1.0);
        assert!(motion_preserves_distance(&m, &x, &y));
        assert!(motion_preserves_distance(&Motion::IDENTITY, &Point3::ORIGIN, &x));
    }

    #[test]
    fn non_finite_points_rejected() {
        assert!(Point3::try_new(f64::NAN, 0., 0.).is_err());
        assert!(Point3::try_new(0., f64::INFINITY, 0.).is_err());
        assert!(Point3::try_new(0., 1., 2.).is_ok());
    }

    #[test]
    fn vector_part_matches_point_difference() {
        let m = Motion::new(0.5, -1.0, 2.0, 0.3, -0.7, 1.1);
        let (p, q) = (Point3::new(1., 2., 3.), Point3::new(-0.5, 0.25, 8.));
        let diff = m.apply(&q).to_vector() - m.apply(&p).to_vector();
        let lin = m.apply_vector(&(q.to_vector() - p.to_vector()));
        assert!((diff - lin).norm() < 1e-12);
    }
}
