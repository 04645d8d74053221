//! Translation surfaces `(f1(u), f2(u) + g2(w), f3(u) + g3(w))` with constant
//! relative or mean curvature, and translation hypersurfaces `x ↦ (x, Σ f_j(x_j))`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector, Vector3};
use serde::{Deserialize, Serialize};

use super::profile::ScalarFn;
use crate::calculus::{GraphHypersurface, Interval, Jet, Rect, SurfaceChart};
use crate::error::{GeometryError, Result};
use crate::isotropic::Point3;

/// Constant-curvature translation surface families. `a*` constants must be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TranslationFamily {
    /// `(f1, b1 f1 + g2, a1 f1² + (K0/a1) g2² + b2 f1 + b3 g2)`
    ConstantKFirst { a1: f64, k0: f64, b1: f64, b2: f64, b3: f64 },
    /// `(f1, a2 f1² + b4 f1 + g2, b5 f1² + (−2 K0 g2)^{3/2} / (K0 a3) + b6 f1 + a4 g2)`
    ConstantKSecond { k0: f64, a2: f64, a3: f64, a4: f64, b4: f64, b5: f64, b6: f64 },
    /// `(f1, f2 + g2, H0 f1² + b1 f2 + b2 f1 + b3 g2)`
    ConstantHFirst { h0: f64, b1: f64, b2: f64, b3: f64 },
    /// `(f1, b4 f1 + g2, (H0 − a1) f1² + a2 g2² + b5 f1 + b6 g2)`
    ConstantHSecond { h0: f64, a1: f64, a2: f64, b4: f64, b5: f64, b6: f64 },
    /// `(f1, −ln|cos(a3 f1)|/a3 + g2, H0 f1² + exp(a3 g2)/a3² + b8 f1 + b9 g2)`.
    ///
    /// No `b7 f2` term: `f2` is not part of this family.
    ConstantHThird { h0: f64, a3: f64, b8: f64, b9: f64 },
}

/// A translation family together with its free generating functions.
#[derive(Debug, Clone)]
pub struct TranslationSpec {
    pub family: TranslationFamily,
    pub f1: ScalarFn,
    /// Only used by [`TranslationFamily::ConstantHFirst`].
    pub f2: ScalarFn,
    pub g2: ScalarFn,
    pub domain: Rect,
}

impl TranslationSpec {
    /// Defaults `f1(u) = u`, `f2(u) = u²`, `g2(w) = w`, on the natural domain of the family.
    pub fn new(family: TranslationFamily) -> Self {
        let domain = match family {
            TranslationFamily::ConstantKSecond { k0, .. } => {
                // −2 K0 w > 0
                let w = if k0 < 0.0 {
                    Interval::open(0.0, f64::INFINITY)
                } else {
                    Interval::open(f64::NEG_INFINITY, 0.0)
                };
                Rect::new(Interval::REAL, w)
            }
            TranslationFamily::ConstantHThird { a3, .. } => {
                let half = FRAC_PI_2 / a3.abs();
                Rect::new(Interval::open(-half, half), Interval::REAL)
            }
            _ => Rect::PLANE,
        };
        Self {
            family,
            f1: ScalarFn::identity(),
            f2: ScalarFn::polynomial(&[0.0, 0.0, 1.0]),
            g2: ScalarFn::identity(),
            domain,
        }
    }
}

fn require_nonzero(names: &[(&str, f64)]) -> Result<()> {
    for (name, value) in names {
        if *value == 0.0 || !value.is_finite() {
            return Err(GeometryError::InvalidConstant(format!("{name} must be nonzero, got {value}")));
        }
    }
    Ok(())
}

fn square() -> ScalarFn {
    ScalarFn::polynomial(&[0.0, 0.0, 1.0])
}

/// Analytic chart of a translation family; every component splits as `A(u) + B(w)`.
pub fn translation_chart(spec: &TranslationSpec) -> Result<SurfaceChart> {
    use TranslationFamily::*;
    let f1 = &spec.f1;
    let g2 = &spec.g2;
    let f1_sq = ScalarFn::compose(&square(), f1);
    let g2_sq = ScalarFn::compose(&square(), g2);

    // x2 = p(u) + g2(w), x3 = q(u) + s(w)
    let (p, q, s, guard): (ScalarFn, ScalarFn, ScalarFn, Guard) = match spec.family {
        ConstantKFirst { a1, k0, b1, b2, b3 } => {
            require_nonzero(&[("a1", a1)])?;
            (
                ScalarFn::combination(&[(b1, f1.clone())]),
                ScalarFn::combination(&[(a1, f1_sq), (b2, f1.clone())]),
                ScalarFn::combination(&[(k0 / a1, g2_sq), (b3, g2.clone())]),
                Guard::None,
            )
        }
        ConstantKSecond { k0, a2, a3, a4, b4, b5, b6 } => {
            require_nonzero(&[("K0", k0), ("a2", a2), ("a3", a3), ("a4", a4)])?;
            let pow = ScalarFn::compose(&ScalarFn::power_of_linear(-2.0 * k0, 0.0, 1.5), g2);
            (
                ScalarFn::combination(&[(a2, f1_sq.clone()), (b4, f1.clone())]),
                ScalarFn::combination(&[(b5, f1_sq), (b6, f1.clone())]),
                ScalarFn::combination(&[(1.0 / (k0 * a3), pow), (a4, g2.clone())]),
                Guard::PositiveRadicand { k0 },
            )
        }
        ConstantHFirst { h0, b1, b2, b3 } => (
            spec.f2.clone(),
            ScalarFn::combination(&[(h0, f1_sq), (b1, spec.f2.clone()), (b2, f1.clone())]),
            ScalarFn::combination(&[(b3, g2.clone())]),
            Guard::None,
        ),
        ConstantHSecond { h0, a1, a2, b4, b5, b6 } => {
            require_nonzero(&[("a1", a1), ("a2", a2)])?;
            (
                ScalarFn::combination(&[(b4, f1.clone())]),
                ScalarFn::combination(&[(h0 - a1, f1_sq), (b5, f1.clone())]),
                ScalarFn::combination(&[(a2, g2_sq), (b6, g2.clone())]),
                Guard::None,
            )
        }
        ConstantHThird { h0, a3, b8, b9 } => {
            require_nonzero(&[("a3", a3)])?;
            let log_cos = ScalarFn::new(
                format!("-ln|cos({a3} t)|/{a3}"),
                move |x| -(a3 * x).cos().abs().ln() / a3,
                move |x| (a3 * x).tan(),
                move |x| a3 / (a3 * x).cos().powi(2),
            );
            (
                ScalarFn::compose(&log_cos, f1),
                ScalarFn::combination(&[(h0, f1_sq), (b8, f1.clone())]),
                ScalarFn::combination(&[
                    (1.0 / (a3 * a3), ScalarFn::compose(&ScalarFn::exp_linear(a3), g2)),
                    (b9, g2.clone()),
                ]),
                Guard::PositiveCosine { a3 },
            )
        }
    };
    let (f1, g2) = (f1.clone(), g2.clone());
    let label = format!("translation {:?}", spec.family);
    Ok(SurfaceChart::analytic(label, spec.domain, move |u, w| {
        let (x1, x1u, x1uu) = f1.eval3(u);
        let (gw, gw1, gw2) = g2.eval3(w);
        guard.check(x1, gw)?;
        let (pu, pu1, pu2) = p.eval3(u);
        let (qu, qu1, qu2) = q.eval3(u);
        let (sw, sw1, sw2) = s.eval3(w);
        Ok(Jet {
            r: Point3::new(x1, pu + gw, qu + sw),
            r_u: Vector3::new(x1u, pu1, qu1),
            r_v: Vector3::new(0.0, gw1, sw1),
            r_uu: Vector3::new(x1uu, pu2, qu2),
            r_uv: Vector3::zeros(),
            r_vv: Vector3::new(0.0, gw2, sw2),
        })
    }))
}

#[derive(Debug, Clone, Copy)]
enum Guard {
    None,
    PositiveRadicand { k0: f64 },
    PositiveCosine { a3: f64 },
}

impl Guard {
    fn check(&self, f1: f64, g2: f64) -> Result<()> {
        match *self {
            Guard::None => Ok(()),
            Guard::PositiveRadicand { k0 } if -2.0 * k0 * g2 > 0.0 => Ok(()),
            Guard::PositiveRadicand { k0 } => Err(GeometryError::DomainError(format!(
                "-2 K0 g2 = {} is not positive",
                -2.0 * k0 * g2
            ))),
            Guard::PositiveCosine { a3 } if (a3 * f1).cos() > 0.0 => Ok(()),
            Guard::PositiveCosine { a3 } => Err(GeometryError::DomainError(format!(
                "cos(a3 f1) = {} is not positive",
                (a3 * f1).cos()
            ))),
        }
    }
}

/// `x ↦ (x, Σ α_j x_j² + β_j x_j + ε)` in I^{n+1}.
///
/// Its Hessian is `diag(2 α_j)`, so `K ≡ 2ⁿ Π α_j` and `H ≡ (2/n) Σ α_j`.
pub fn translation_hypersurface(n: usize, alphas: &[f64], betas: &[f64], eps: f64) -> Result<GraphHypersurface> {
    if n < 2 {
        return Err(GeometryError::InvalidConstant(format!("need n >= 2, got {n}")));
    }
    if alphas.len() != n || betas.len() != n {
        return Err(GeometryError::InvalidConstant(format!(
            "n = {n} but {} alphas and {} betas",
            alphas.len(),
            betas.len()
        )));
    }
    let a: Vec<f64> = alphas.to_vec();
    let b: Vec<f64> = betas.to_vec();
    let (a1, b1, a2) = (a.clone(), b.clone(), a.clone());
    GraphHypersurface::new(
        format!("translation(alphas={alphas:?}, betas={betas:?}, eps={eps})"),
        vec![Interval::REAL; n],
        move |x| Ok(x.iter().zip(a.iter().zip(&b)).map(|(xi, (al, be))| al * xi * xi + be * xi).sum::<f64>() + eps),
        move |x| Ok(DVector::from_iterator(n, x.iter().zip(a1.iter().zip(&b1)).map(|(xi, (al, be))| 2.0 * al * xi + be))),
        move |_| Ok(DMatrix::from_diagonal(&DVector::from_iterator(n, a2.iter().map(|al| 2.0 * al)))),
    )
}

/// Translation hypersurface with nonzero constant relative curvature (every α nonzero).
pub fn constant_k_translation_hypersurface(alphas: &[f64], betas: &[f64], eps: f64) -> Result<GraphHypersurface> {
    for (j, al) in alphas.iter().enumerate() {
        if *al == 0.0 {
            return Err(GeometryError::InvalidConstant(format!("alpha{} must be nonzero", j + 1)));
        }
    }
    translation_hypersurface(alphas.len(), alphas, betas, eps)
}

pub fn expected_translation_k(alphas: &[f64]) -> f64 {
    2f64.powi(alphas.len() as i32) * alphas.iter().product::<f64>()
}

pub fn expected_translation_h(alphas: &[f64]) -> f64 {
    2.0 * alphas.iter().sum::<f64>() / alphas.len() as f64
}
