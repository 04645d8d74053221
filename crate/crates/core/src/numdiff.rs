//! Finite-difference derivatives from function samples only.
//!
//! Plain central differences are exposed for reference, but second
//! derivatives at a 1e-5 step lose about five digits to rounding. The
//! [`ridders`] extrapolation starts from a coarse step and cancels the
//! h², h⁴, ... error terms, tracking its own error estimate.

/// Step-shrink factor between successive tableau columns.
const SHRINK: f64 = 1.4;
const SHRINK2: f64 = SHRINK * SHRINK;
const TABLEAU: usize = 10;
/// Stop once the error grows by this factor over the best estimate so far.
const SAFE: f64 = 2.0;

/// Result of an extrapolated estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Ridders' polynomial extrapolation of `formula(h)` to `h → 0`.
///
/// `formula` must be a difference quotient whose error expands in even
/// powers of `h` (any symmetric central stencil qualifies).
pub fn ridders<F>(formula: F, initial_step: f64) -> Estimate
where
    F: Fn(f64) -> f64,
{
    let mut a = [[0.0_f64; TABLEAU]; TABLEAU];
    let mut h = initial_step;
    a[0][0] = formula(h);
    let mut best = Estimate { value: a[0][0], error: f64::INFINITY };
    for i in 1..TABLEAU {
        h /= SHRINK;
        a[0][i] = formula(h);
        let mut fac = SHRINK2;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK2;
            let err = (a[j][i] - a[j - 1][i])
                .abs()
                .max((a[j][i] - a[j - 1][i - 1]).abs());
            if err <= best.error {
                best = Estimate { value: a[j][i], error: err };
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= SAFE * best.error {
            break;
        }
    }
    best
}

/// Vector-valued variant: each component is extrapolated separately.
pub fn ridders3<F>(formula: F, initial_step: f64) -> [Estimate; 3]
where
    F: Fn(f64) -> [f64; 3],
{
    std::array::from_fn(|k| ridders(|h| formula(h)[k], initial_step))
}

pub fn central_first<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

pub fn central_second<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// First derivative of a scalar function by extrapolation.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, initial_step: f64) -> Estimate {
    ridders(|h| central_first(&f, x, h), initial_step)
}

/// Second derivative of a scalar function by extrapolation.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, initial_step: f64) -> Estimate {
    let f0 = f(x);
    ridders(|h| (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h), initial_step)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_differences_are_second_order() {
        let f = |x: f64| x.sin();
        let e1 = (central_first(f, 1.0, 1e-2) - 1f64.cos()).abs();
        let e2 = (central_first(f, 1.0, 5e-3) - 1f64.cos()).abs();
        assert!((e1 / e2 - 4.0).abs() < 0.01);
        let s = central_second(f, 1.0, 1e-3);
        assert!((s + 1f64.sin()).abs() < 1e-6);
    }

    #[test]
    fn ridders_reaches_near_machine_precision() {
        let d = derivative(|x| x.exp(), 0.5, 0.1);
        assert!((d.value - 0.5f64.exp()).abs() < 1e-12, "{d:?}");
        let d2 = second_derivative(|x| x.ln(), 2.0, 0.1);
        assert!((d2.value + 0.25).abs() < 1e-9, "{d2:?}");
        assert!(d2.error < 1e-8);
    }

    #[test]
    fn ridders_near_a_square_root_singularity() {
        // sqrt(x - 1) at x = 1.01: derivative 0.5 / sqrt(0.01) = 5
        let f = |x: f64| (x - 1.0).sqrt();
        let d = derivative(f, 1.01, 0.005);
        assert!((d.value - 5.0).abs() < 1e-7, "{d:?}");
        let d2 = second_derivative(f, 1.01, 0.005);
        assert!((d2.value + 250.0).abs() < 1e-4, "{d2:?}");
    }
}
