use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::calculus::Interval;
use crate::error::{GeometryError, Result};
use crate::numdiff;

/// Absolute tolerance for the numerically integrated constant-K profile.
pub const PROFILE_QUADRATURE_TOL: f64 = 1e-12;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function of one variable together with its first two derivatives.
///
/// Values outside the natural domain come back as NaN; callers that know the
/// domain check it before evaluating.
#[derive(Clone)]
pub struct ScalarFn {
    label: String,
    f: RealFn,
    d1: RealFn,
    d2: RealFn,
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFn({})", self.label)
    }
}

impl ScalarFn {
    pub fn new<F, D1, D2>(label: impl Into<String>, f: F, d1: D1, d2: D2) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D1: Fn(f64) -> f64 + Send + Sync + 'static,
        D2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { label: label.into(), f: Arc::new(f), d1: Arc::new(d1), d2: Arc::new(d2) }
    }

    /// Function known only by values; derivatives are extrapolated differences.
    pub fn from_values<F>(label: impl Into<String>, f: F, step: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let f: RealFn = Arc::new(f);
        let (fa, fb) = (f.clone(), f.clone());
        Self {
            label: label.into(),
            f,
            d1: Arc::new(move |x| numdiff::derivative(|t| fa(t), x, step).value),
            d2: Arc::new(move |x| numdiff::second_derivative(|t| fb(t), x, step).value),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn d1(&self, x: f64) -> f64 {
        (self.d1)(x)
    }

    pub fn d2(&self, x: f64) -> f64 {
        (self.d2)(x)
    }

    /// `(f, f′, f″)` at `x`.
    pub fn eval3(&self, x: f64) -> (f64, f64, f64) {
        (self.value(x), self.d1(x), self.d2(x))
    }

    pub fn identity() -> Self {
        Self::new("t", |x| x, |_| 1.0, |_| 0.0)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("{c}"), move |_| c, |_| 0.0, |_| 0.0)
    }

    /// `a x + b`
    pub fn linear(a: f64, b: f64) -> Self {
        Self::new(format!("{a}*t + {b}"), move |x| a * x + b, move |_| a, |_| 0.0)
    }

    /// `Σ c_k x^k` with coefficients in ascending order.
    pub fn polynomial(coeffs: &[f64]) -> Self {
        let c: Arc<[f64]> = coeffs.into();
        let (c0, c1, c2) = (c.clone(), c.clone(), c.clone());
        let horner = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck);
        let deriv = |c: &[f64]| -> Vec<f64> { c.iter().enumerate().skip(1).map(|(k, ck)| k as f64 * ck).collect() };
        let label = coeffs
            .iter()
            .enumerate()
            .map(|(k, ck)| format!("{ck}*t^{k}"))
            .collect::<Vec<_>>()
            .join(" + ");
        Self::new(
            label,
            move |x| horner(&c0, x),
            move |x| horner(&deriv(&c1), x),
            move |x| horner(&deriv(&deriv(&c2)), x),
        )
    }

    /// `exp(a x)`
    pub fn exp_linear(a: f64) -> Self {
        Self::new(
            format!("exp({a}*t)"),
            move |x| (a * x).exp(),
            move |x| a * (a * x).exp(),
            move |x| a * a * (a * x).exp(),
        )
    }

    /// `(c x + d)^p`, real only where `c x + d > 0`.
    pub fn power_of_linear(c: f64, d: f64, p: f64) -> Self {
        Self::new(
            format!("({c}*t + {d})^{p}"),
            move |x| (c * x + d).powf(p),
            move |x| p * c * (c * x + d).powf(p - 1.0),
            move |x| p * (p - 1.0) * c * c * (c * x + d).powf(p - 2.0),
        )
    }

    /// `outer ∘ inner` by the chain rule.
    pub fn compose(outer: &ScalarFn, inner: &ScalarFn) -> Self {
        let (o, i) = (outer.clone(), inner.clone());
        let label = format!("{}∘{}", outer.label, inner.label);
        let (o1, i1) = (o.clone(), i.clone());
        let (o2, i2) = (o.clone(), i.clone());
        Self::new(
            label,
            move |x| o.value(i.value(x)),
            move |x| o1.d1(i1.value(x)) * i1.d1(x),
            move |x| {
                let (iv, id1, id2) = i2.eval3(x);
                o2.d2(iv) * id1 * id1 + o2.d1(iv) * id2
            },
        )
    }

    /// Linear combination `Σ w_k f_k`.
    pub fn combination(terms: &[(f64, ScalarFn)]) -> Self {
        let t: Arc<[(f64, ScalarFn)]> = terms.into();
        let (t0, t1, t2) = (t.clone(), t.clone(), t.clone());
        let label = terms
            .iter()
            .map(|(w, f)| format!("{w}*({})", f.label))
            .collect::<Vec<_>>()
            .join(" + ");
        Self::new(
            label,
            move |x| t0.iter().map(|(w, f)| w * f.value(x)).sum(),
            move |x| t1.iter().map(|(w, f)| w * f.d1(x)).sum(),
            move |x| t2.iter().map(|(w, f)| w * f.d2(x)).sum(),
        )
    }
}

/// Which closed-form family a profile belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ProfileKind {
    /// `g′ = sqrt(α − h²/u²)`, relative curvature zero.
    Flat { alpha: f64, h: f64 },
    /// `g′ = sqrt(K0 u² − h²/u² + γ)`, relative curvature `K0`.
    ConstantK { k0: f64, gamma: f64, h: f64 },
    /// `g = (H0/4) u² + α ln u + β`.
    ConstantH { h0: f64, alpha: f64, beta: f64 },
    Polynomial { coeffs: Vec<f64> },
    Custom,
}

/// `(g, g′, g″)` at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileValue {
    pub g: f64,
    pub g1: f64,
    pub g2: f64,
}

/// The height function `g(u)` of the profile curve `(u, 0, g(u))`.
#[derive(Debug, Clone)]
pub struct ProfileFunction {
    func: ScalarFn,
    valid_range: Interval,
    kind: ProfileKind,
}

impl ProfileFunction {
    pub fn new(func: ScalarFn, valid_range: Interval, kind: ProfileKind) -> Result<Self> {
        if valid_range.is_empty() {
            return Err(GeometryError::EmptyRange(format!("profile {} has range {valid_range}", func.label())));
        }
        Ok(Self { func, valid_range, kind })
    }

    pub fn custom(func: ScalarFn, valid_range: Interval) -> Result<Self> {
        Self::new(func, valid_range, ProfileKind::Custom)
    }

    pub fn label(&self) -> &str {
        self.func.label()
    }

    pub fn valid_range(&self) -> Interval {
        self.valid_range
    }

    pub fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    pub fn function(&self) -> &ScalarFn {
        &self.func
    }

    fn check(&self, u: f64) -> Result<()> {
        if self.valid_range.contains(u) {
            Ok(())
        } else {
            Err(GeometryError::DomainError(format!(
                "u = {u} outside profile range {} of {}",
                self.valid_range,
                self.label()
            )))
        }
    }

    pub fn eval(&self, u: f64) -> Result<ProfileValue> {
        self.check(u)?;
        let (g, g1, g2) = self.func.eval3(u);
        if g.is_finite() && g1.is_finite() && g2.is_finite() {
            Ok(ProfileValue { g, g1, g2 })
        } else {
            Err(GeometryError::NonFinite(format!("profile {} at u = {u}", self.label())))
        }
    }

    pub fn g(&self, u: f64) -> Result<f64> {
        self.eval(u).map(|p| p.g)
    }

    /// `g′/u + g″`, which is twice the mean curvature of the helicoidal chart.
    pub fn helicoidal_h_expr(&self, u: f64) -> Result<f64> {
        let p = self.eval(u)?;
        Ok(crate::calculus::helicoidal_h_expr(p.g1, p.g2, u))
    }
}

fn positive_half_line() -> Interval {
    Interval::open(0.0, f64::INFINITY)
}

/// Profile of the helicoidal surfaces with vanishing relative curvature.
///
/// `g(u) = sqrt(α u² − h²) + h·atan(h / sqrt(α u² − h²))`, so that
/// `g′ = sqrt(α − h²/u²)`, on `α u² > h²`.
pub fn flat_helicoidal_profile(alpha: f64, h: f64) -> Result<ProfileFunction> {
    if !(alpha > 0.0) || !h.is_finite() {
        return Err(GeometryError::EmptyRange(format!("flat profile needs alpha > 0, got {alpha}")));
    }
    let root = move |u: f64| (alpha * u * u - h * h).sqrt();
    let g = move |u: f64| {
        let s = root(u);
        if h == 0.0 {
            s
        } else {
            s + h * (h / s).atan()
        }
    };
    let g1 = move |u: f64| (alpha - h * h / (u * u)).sqrt();
    // differentiating g′² = α − h²/u² gives u³ g′ g″ = h²
    let g2 = move |u: f64| h * h / (u * u * u * g1(u));
    let func = ScalarFn::new(format!("flat(alpha={alpha}, h={h})"), g, g1, g2);
    let lo = h.abs() / alpha.sqrt();
    ProfileFunction::new(func, Interval::open(lo, f64::INFINITY), ProfileKind::Flat { alpha, h })
}

/// Positivity interval in `u > 0` of `K0 u² − h²/u² + γ`.
fn constant_k_range(k0: f64, gamma: f64, h: f64) -> Result<Interval> {
    let h2 = h * h;
    // in t = u²: q(t) = K0 t² + γ t − h²
    let disc = gamma * gamma + 4.0 * k0 * h2;
    if k0 > 0.0 {
        let sq = disc.sqrt();
        let t_lo = if gamma > 0.0 {
            2.0 * h2 / (gamma + sq)
        } else {
            (sq - gamma) / (2.0 * k0)
        };
        Ok(Interval::open(t_lo.max(0.0).sqrt(), f64::INFINITY))
    } else {
        let ak = -k0;
        if !(gamma > 0.0) || !(disc > 0.0) {
            return Err(GeometryError::EmptyRange(format!(
                "K0 = {k0}, gamma = {gamma}, h = {h}: radicand never positive"
            )));
        }
        let t_hi = (gamma + disc.sqrt()) / (2.0 * ak);
        let t_lo = h2 / (ak * t_hi);
        Ok(Interval::open(t_lo.sqrt(), t_hi.sqrt()))
    }
}

/// Profile of the helicoidal surfaces with constant nonzero relative curvature `K0`.
///
/// `g′ = sqrt(K0 u² − h²/u² + γ)`. For `K0 > 0` the closed-form antiderivative
/// with `a(u) = sqrt(K0 u⁴ − h² + γ u²)` is used; that expression is not real
/// for `K0 < 0`, where `g` is integrated numerically from the middle of the range.
pub fn constant_k_profile(k0: f64, gamma: f64, h: f64) -> Result<ProfileFunction> {
    if k0 == 0.0 || !k0.is_finite() {
        return Err(GeometryError::InvalidConstant(format!("constant-K profile needs K0 != 0, got {k0}")));
    }
    let range = constant_k_range(k0, gamma, h)?;
    if range.is_empty() {
        return Err(GeometryError::EmptyRange(format!("K0 = {k0}, gamma = {gamma}, h = {h}")));
    }
    let a = move |u: f64| (k0 * u.powi(4) - h * h + gamma * u * u).sqrt();
    let g1 = move |u: f64| a(u) / u;
    // g′ g″ = K0 u + h²/u³
    let g2 = move |u: f64| (k0 * u + h * h / u.powi(3)) / g1(u);
    let label = format!("constant-K(K0={k0}, gamma={gamma}, h={h})");
    let func = if k0 > 0.0 {
        let sk = k0.sqrt();
        let g = move |u: f64| {
            let au = a(u);
            let twist = if h == 0.0 {
                0.0
            } else {
                2.0 * h * ((gamma * u * u - 2.0 * h * h) / (2.0 * h * au)).atan()
            };
            let log = gamma / sk * (gamma + 2.0 * (k0 * u * u + sk * au)).abs().ln();
            0.25 * (2.0 * au - twist + log)
        };
        ScalarFn::new(label, g, g1, g2)
    } else {
        let u_ref = 0.5 * (range.lo + range.hi);
        let g = move |u: f64| {
            if u == u_ref {
                return 0.0;
            }
            quadrature::integrate(g1, u_ref, u, PROFILE_QUADRATURE_TOL).integral
        };
        ScalarFn::new(label, g, g1, g2)
    };
    ProfileFunction::new(func, range, ProfileKind::ConstantK { k0, gamma, h })
}

/// Profile of the helicoidal surfaces with constant mean curvature:
/// `g = (H0/4) u² + α ln u + β`, solving `p′ + p/u = H0` for `p = g′`.
pub fn constant_h_profile(h0: f64, alpha: f64, beta: f64) -> Result<ProfileFunction> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(GeometryError::InvalidConstant(format!("constant-H profile needs alpha != 0, got {alpha}")));
    }
    let func = ScalarFn::new(
        format!("constant-H(H0={h0}, alpha={alpha}, beta={beta})"),
        move |u| 0.25 * h0 * u * u + alpha * u.ln() + beta,
        move |u| 0.5 * h0 * u + alpha / u,
        move |u| 0.5 * h0 - alpha / (u * u),
    );
    ProfileFunction::new(func, positive_half_line(), ProfileKind::ConstantH { h0, alpha, beta })
}

/// `α ln u + β`: the helicoidal surfaces whose coordinate functions are
/// eigenfunctions of the Laplacian, all of them isotropic minimal.
pub fn minimal_profile(alpha: f64, beta: f64) -> Result<ProfileFunction> {
    constant_h_profile(0.0, alpha, beta)
}

pub fn polynomial_profile(coeffs: &[f64]) -> Result<ProfileFunction> {
    ProfileFunction::new(
        ScalarFn::polynomial(coeffs),
        positive_half_line(),
        ProfileKind::Polynomial { coeffs: coeffs.to_vec() },
    )
}

/// Planar i-curvature of the graph `x3 = f(x1)` in an isotropic plane.
pub fn planar_i_curvature(f: &ScalarFn, x: f64) -> f64 {
    f.d2(x)
}
