//! Homothetical (factorable) hypersurfaces: graphs of `γ Π h_j(x_j)`.

use nalgebra::{DMatrix, DVector};

use super::profile::ScalarFn;
use crate::calculus::{GraphHypersurface, Interval};
use crate::error::{GeometryError, Result};

/// Tolerance on the exponent-sum constraint of [`HomotheticalFamily::FlatPower`].
pub const EXPONENT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub enum HomotheticalFamily {
    /// `Π (γ_j x_j + ε_j)`: isotropic minimal.
    MinimalLinearProduct { gammas: Vec<f64>, epsilons: Vec<f64> },
    /// `γ exp(α1 x1 + α2 x2) Π_{j≥3} h_j(x_j)`: isotropic flat.
    FlatExp { gamma: f64, alpha1: f64, alpha2: f64, tail: Vec<(ScalarFn, Interval)> },
    /// `γ Π (x_j + β_j)^{α_j}` with `Σ α_j = 1`: isotropic flat.
    FlatPower { gamma: f64, alphas: Vec<f64>, betas: Vec<f64> },
    /// `c h(x)` (axis 0) or `c h(y)` (axis 1).
    SingleFactor { c: f64, axis: usize, h: ScalarFn },
    /// `c1 exp(c2 x + c3 y)`.
    ExpProduct { c1: f64, c2: f64, c3: f64 },
    /// `(c1 x + d1)^{1/c2} (c3 y + d2)^{1/c4}`, `c2 ≠ 1 ≠ c4`.
    ///
    /// The relative curvature of this form is proportional to
    /// `1 − 1/c2 − 1/c4`; it vanishes only when the exponents sum to one.
    PowerProduct { c1: f64, d1: f64, c2: f64, c3: f64, d2: f64, c4: f64 },
    /// `(a x + b)(c y + d)`: `K = −a² c² < 0`.
    LinearProduct { a: f64, b: f64, c: f64, d: f64 },
}

fn nonzero(name: &str, x: f64) -> Result<()> {
    if x == 0.0 || !x.is_finite() {
        Err(GeometryError::InvalidConstant(format!("{name} must be nonzero, got {x}")))
    } else {
        Ok(())
    }
}

/// Half-line where `c x + d > 0`.
fn positive_linear(c: f64, d: f64) -> Interval {
    let root = -d / c;
    if c > 0.0 {
        Interval::open(root, f64::INFINITY)
    } else {
        Interval::open(f64::NEG_INFINITY, root)
    }
}

/// Graph of `scale · Π factors[j](x_j)` with the product-rule gradient and Hessian.
pub fn product_hypersurface(label: impl Into<String>, scale: f64, factors: Vec<(ScalarFn, Interval)>) -> Result<GraphHypersurface> {
    let n = factors.len();
    let domain: Vec<Interval> = factors.iter().map(|(_, iv)| *iv).collect();
    let fs: Vec<ScalarFn> = factors.into_iter().map(|(f, _)| f).collect();
    let (f0, f1, f2) = (fs.clone(), fs.clone(), fs);
    let eval = move |fs: &[ScalarFn], x: &[f64]| -> Vec<(f64, f64, f64)> {
        fs.iter().zip(x).map(|(f, xi)| f.eval3(*xi)).collect()
    };
    // product of the values, skipping the listed indices
    let prod_except = |vals: &[(f64, f64, f64)], skip: &[usize]| -> f64 {
        vals.iter()
            .enumerate()
            .filter(|(j, _)| !skip.contains(j))
            .map(|(_, v)| v.0)
            .product()
    };
    GraphHypersurface::new(
        label,
        domain,
        move |x| Ok(scale * f0.iter().zip(x).map(|(f, xi)| f.value(*xi)).product::<f64>()),
        move |x| {
            let vals = eval(&f1, x);
            Ok(DVector::from_fn(n, |i, _| scale * vals[i].1 * prod_except(&vals, &[i])))
        },
        move |x| {
            let vals = eval(&f2, x);
            Ok(DMatrix::from_fn(n, n, |i, k| {
                if i == k {
                    scale * vals[i].2 * prod_except(&vals, &[i])
                } else {
                    scale * vals[i].1 * vals[k].1 * prod_except(&vals, &[i, k])
                }
            }))
        },
    )
}

pub fn homothetical_hypersurface(family: &HomotheticalFamily) -> Result<GraphHypersurface> {
    use HomotheticalFamily::*;
    let label = format!("homothetical {family:?}");
    match family {
        MinimalLinearProduct { gammas, epsilons } => {
            if gammas.len() != epsilons.len() {
                return Err(GeometryError::InvalidConstant(format!(
                    "{} gammas but {} epsilons",
                    gammas.len(),
                    epsilons.len()
                )));
            }
            let factors = gammas
                .iter()
                .zip(epsilons)
                .map(|(g, e)| (ScalarFn::linear(*g, *e), Interval::REAL))
                .collect();
            product_hypersurface(label, 1.0, factors)
        }
        FlatExp { gamma, alpha1, alpha2, tail } => {
            nonzero("gamma", *gamma)?;
            nonzero("alpha1", *alpha1)?;
            nonzero("alpha2", *alpha2)?;
            let mut factors = vec![
                (ScalarFn::exp_linear(*alpha1), Interval::REAL),
                (ScalarFn::exp_linear(*alpha2), Interval::REAL),
            ];
            factors.extend(tail.iter().cloned());
            product_hypersurface(label, *gamma, factors)
        }
        FlatPower { gamma, alphas, betas } => {
            nonzero("gamma", *gamma)?;
            if alphas.len() != betas.len() || alphas.len() < 2 {
                return Err(GeometryError::InvalidConstant(format!(
                    "need n >= 2 matching alphas and betas, got {} and {}",
                    alphas.len(),
                    betas.len()
                )));
            }
            for (j, a) in alphas.iter().enumerate() {
                nonzero(&format!("alpha{}", j + 1), *a)?;
            }
            let sum: f64 = alphas.iter().sum();
            if (sum - 1.0).abs() > EXPONENT_SUM_TOL {
                return Err(GeometryError::InvalidConstant(format!("exponents must sum to 1, got {sum}")));
            }
            let factors = alphas
                .iter()
                .zip(betas)
                .map(|(a, b)| (ScalarFn::power_of_linear(1.0, *b, *a), positive_linear(1.0, *b)))
                .collect();
            product_hypersurface(label, *gamma, factors)
        }
        SingleFactor { c, axis, h } => {
            nonzero("c", *c)?;
            let one = (ScalarFn::constant(1.0), Interval::REAL);
            let factors = match axis {
                0 => vec![(h.clone(), Interval::REAL), one],
                1 => vec![one, (h.clone(), Interval::REAL)],
                _ => return Err(GeometryError::InvalidConstant(format!("axis must be 0 or 1, got {axis}"))),
            };
            product_hypersurface(label, *c, factors)
        }
        ExpProduct { c1, c2, c3 } => {
            for (name, x) in [("c1", c1), ("c2", c2), ("c3", c3)] {
                nonzero(name, *x)?;
            }
            let factors = vec![
                (ScalarFn::exp_linear(*c2), Interval::REAL),
                (ScalarFn::exp_linear(*c3), Interval::REAL),
            ];
            product_hypersurface(label, *c1, factors)
        }
        PowerProduct { c1, d1, c2, c3, d2, c4 } => {
            for (name, x) in [("c1", c1), ("c2", c2), ("c3", c3), ("c4", c4)] {
                nonzero(name, *x)?;
            }
            if *c2 == 1.0 || *c4 == 1.0 {
                return Err(GeometryError::InvalidConstant("c2 and c4 must differ from 1".into()));
            }
            let factors = vec![
                (ScalarFn::power_of_linear(*c1, *d1, 1.0 / c2), positive_linear(*c1, *d1)),
                (ScalarFn::power_of_linear(*c3, *d2, 1.0 / c4), positive_linear(*c3, *d2)),
            ];
            product_hypersurface(label, 1.0, factors)
        }
        LinearProduct { a, b, c, d } => {
            nonzero("a", *a)?;
            nonzero("c", *c)?;
            let factors = vec![(ScalarFn::linear(*a, *b), Interval::REAL), (ScalarFn::linear(*c, *d), Interval::REAL)];
            product_hypersurface(label, 1.0, factors)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::graph_curvatures;

    #[test]
    fn linear_product_has_negative_k() {
        let gh = homothetical_hypersurface(&HomotheticalFamily::LinearProduct { a: 2.0, b: 1.0, c: 3.0, d: -1.0 }).unwrap();
        for x in [[0.0, 0.0], [1.5, -2.0], [-3.0, 0.7]] {
            let c = graph_curvatures(&gh, &x).unwrap();
            assert!((c.k + 36.0).abs() < 1e-12);
            assert_eq!(c.h, 0.0);
        }
    }

    #[test]
    fn linear_products_are_minimal() {
        let fam = HomotheticalFamily::MinimalLinearProduct { gammas: vec![1.0, -2.0, 0.5], epsilons: vec![0.3, 1.0, -2.0] };
        let gh = homothetical_hypersurface(&fam).unwrap();
        let hess = gh.hessian(&[0.2, -0.4, 1.1]).unwrap();
        assert_eq!((0..3).map(|i| hess[(i, i)]).sum::<f64>(), 0.0);
        // off-diagonal entry (0,1): γ1 γ2 (γ3 x3 + ε3)
        assert!((hess[(0, 1)] - (-2.0) * (0.5 * 1.1 - 2.0)).abs() < 1e-14);
    }

    #[test]
    fn square_root_product_is_flat() {
        let fam = HomotheticalFamily::FlatPower { gamma: 1.0, alphas: vec![0.5, 0.5], betas: vec![0.0, 0.0] };
        let gh = homothetical_hypersurface(&fam).unwrap();
        assert!((gh.value(&[4.0, 9.0]).unwrap() - 6.0).abs() < 1e-14);
        assert!(graph_curvatures(&gh, &[0.7, 2.2]).unwrap().k.abs() < 1e-14);
        assert!(gh.value(&[-1.0, 1.0]).is_err());
        let bad = HomotheticalFamily::FlatPower { gamma: 1.0, alphas: vec![0.5, 0.6], betas: vec![0.0, 0.0] };
        assert!(matches!(homothetical_hypersurface(&bad), Err(GeometryError::InvalidConstant(_))));
    }

    #[test]
    fn exponential_families_are_flat() {
        let tail = vec![(ScalarFn::polynomial(&[1.0, 0.0, 1.0]), Interval::REAL)];
        let fam = HomotheticalFamily::FlatExp { gamma: 0.5, alpha1: 0.3, alpha2: -0.7, tail };
        let gh = homothetical_hypersurface(&fam).unwrap();
        assert_eq!(gh.dim(), 3);
        assert!(graph_curvatures(&gh, &[0.1, 0.4, -0.9]).unwrap().k.abs() < 1e-14);
        let gh = homothetical_hypersurface(&HomotheticalFamily::ExpProduct { c1: 2.0, c2: 0.5, c3: -1.0 }).unwrap();
        assert!(graph_curvatures(&gh, &[0.3, 0.2]).unwrap().k.abs() < 1e-14);
    }

    #[test]
    fn power_product_flat_only_when_exponents_sum_to_one() {
        // K ∝ pq (1 − p − q) with p = 1/c2, q = 1/c4
        let flat = HomotheticalFamily::PowerProduct { c1: 1.0, d1: 0.5, c2: 2.0, c3: 2.0, d2: 1.0, c4: 2.0 };
        let gh = homothetical_hypersurface(&flat).unwrap();
        assert!(graph_curvatures(&gh, &[1.0, 0.8]).unwrap().k.abs() < 1e-14);
        let curved = HomotheticalFamily::PowerProduct { c1: 1.0, d1: 0.5, c2: 3.0, c3: 2.0, d2: 1.0, c4: 3.0 };
        let gh = homothetical_hypersurface(&curved).unwrap();
        assert!(graph_curvatures(&gh, &[1.0, 0.8]).unwrap().k.abs() > 1e-3);
        let bad = HomotheticalFamily::PowerProduct { c1: 1.0, d1: 0.0, c2: 1.0, c3: 1.0, d2: 0.0, c4: 2.0 };
        assert!(homothetical_hypersurface(&bad).is_err());
    }

    #[test]
    fn single_factor_is_a_cylinder() {
        let fam = HomotheticalFamily::SingleFactor { c: 3.0, axis: 1, h: ScalarFn::polynomial(&[0.0, 0.0, 0.0, 1.0]) };
        let gh = homothetical_hypersurface(&fam).unwrap();
        assert_eq!(graph_curvatures(&gh, &[5.0, 2.0]).unwrap().k, 0.0);
        assert!((gh.value(&[5.0, 2.0]).unwrap() - 24.0).abs() < 1e-14);
    }
}
