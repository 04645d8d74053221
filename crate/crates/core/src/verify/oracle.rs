//! Independent numerical oracles: position-only fundamental forms, grid
//! constancy sweeps, and the randomized equivalence/invariance checks.

use std::f64::consts::PI;

use nalgebra::Vector3;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::{curvatures, forms, graph_curvatures, GraphHypersurface, Interval, SurfaceChart, SymForm2};
use crate::error::{GeometryError, Result};
use crate::families::{
    constant_h_profile, constant_k_profile, flat_helicoidal_profile, helicoidal_chart, homothetical_hypersurface,
    minimal_profile, parabolic_i_sphere, polynomial_profile, translation_chart, HelicoidalParams, HelicoidalType,
    HomotheticalFamily, ProfileFunction, TranslationFamily, TranslationSpec,
};
use crate::isotropic::Motion;
use crate::numdiff;

/// Steps below this are raised to it by [`fd_forms_oracle`].
pub const ORACLE_MIN_STEP: f64 = 1e-3;
/// Default initial step of [`fd_forms_oracle`].
pub const ORACLE_STEP: f64 = 1e-2;

/// A tensor grid of `nu × nv` nodes spanning two closed ranges, ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub u_range: Interval,
    pub v_range: Interval,
    pub nu: usize,
    pub nv: usize,
}

impl GridSpec {
    pub fn new(u: (f64, f64), v: (f64, f64), nu: usize, nv: usize) -> Result<Self> {
        if nu < 2 || nv < 2 {
            return Err(GeometryError::InvalidGrid(format!("need at least 2x2 nodes, got {nu}x{nv}")));
        }
        for (lo, hi) in [u, v] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(GeometryError::InvalidGrid(format!("range {lo}:{hi} is not a finite increasing pair")));
            }
        }
        Ok(Self { u_range: Interval::closed(u.0, u.1), v_range: Interval::closed(v.0, v.1), nu, nv })
    }

    pub fn u_at(&self, i: usize) -> f64 {
        lerp(&self.u_range, i, self.nu)
    }

    pub fn v_at(&self, j: usize) -> f64 {
        lerp(&self.v_range, j, self.nv)
    }

    /// Nodes with `u` varying slowest.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        (0..self.nu)
            .flat_map(|i| (0..self.nv).map(move |j| (i, j)))
            .map(|(i, j)| (self.u_at(i), self.v_at(j)))
            .collect()
    }

    pub fn check_within(&self, chart: &SurfaceChart) -> Result<()> {
        let d = chart.domain();
        if d.u.contains_interval(&self.u_range) && d.v.contains_interval(&self.v_range) {
            Ok(())
        } else {
            Err(GeometryError::InvalidGrid(format!(
                "grid {} x {} leaves chart domain {} x {}",
                self.u_range, self.v_range, d.u, d.v
            )))
        }
    }
}

fn lerp(iv: &Interval, i: usize, n: usize) -> f64 {
    if i + 1 == n {
        iv.hi
    } else {
        iv.lo + (iv.hi - iv.lo) * i as f64 / (n - 1) as f64
    }
}

/// Both fundamental forms from chart positions alone.
///
/// Partials are Ridders-extrapolated central differences starting at `step`
/// (at least [`ORACLE_MIN_STEP`], at most half the distance to the domain edge).
pub fn fd_forms_oracle(chart: &SurfaceChart, u: f64, v: f64, step: f64) -> Result<(SymForm2, SymForm2)> {
    let d = chart.domain();
    if !d.contains(u, v) {
        return Err(GeometryError::OutOfDomain { u, v });
    }
    let h0 = step.max(ORACLE_MIN_STEP).min(0.5 * d.u.margin(u)).min(0.5 * d.v.margin(v));
    if !(h0 > 0.0) {
        return Err(GeometryError::OutOfDomain { u, v });
    }
    let p = |a: f64, b: f64| chart.position(a, b).map(|q| q.to_vector());
    // probe the full stencil once so domain failures surface as errors
    for (a, b) in [(u + h0, v + h0), (u - h0, v - h0), (u + h0, v - h0), (u - h0, v + h0)] {
        p(a, b)?;
    }
    let at = |a: f64, b: f64| p(a, b).unwrap_or_else(|_| Vector3::repeat(f64::NAN));
    let c = at(u, v);
    let arr = |w: Vector3<f64>| [w.x, w.y, w.z];
    let est = |f: &dyn Fn(f64) -> Vector3<f64>| {
        let e = numdiff::ridders3(|h| arr(f(h)), h0);
        Vector3::new(e[0].value, e[1].value, e[2].value)
    };
    let xu = est(&|h| (at(u + h, v) - at(u - h, v)) / (2.0 * h));
    let xv = est(&|h| (at(u, v + h) - at(u, v - h)) / (2.0 * h));
    let xuu = est(&|h| (at(u + h, v) - c * 2.0 + at(u - h, v)) / (h * h));
    let xvv = est(&|h| (at(u, v + h) - c * 2.0 + at(u, v - h)) / (h * h));
    let xuv = est(&|h| (at(u + h, v + h) - at(u + h, v - h) - at(u - h, v + h) + at(u - h, v - h)) / (4.0 * h * h));

    let g = SymForm2::new(
        xu.x * xu.x + xu.y * xu.y,
        xu.x * xv.x + xu.y * xv.y,
        xv.x * xv.x + xv.y * xv.y,
    );
    let det_g = g.det();
    if !(det_g > crate::calculus::ADMISSIBILITY_TOL) {
        return Err(GeometryError::NotAdmissible { u, v, det_g });
    }
    let root = det_g.sqrt();
    // det(r_u, r_v, w) expanded along the third column
    let n = Vector3::new(xu.y * xv.z - xu.z * xv.y, xu.z * xv.x - xu.x * xv.z, xu.x * xv.y - xu.y * xv.x);
    let hf = SymForm2::new(n.dot(&xuu) / root, n.dot(&xuv) / root, n.dot(&xvv) / root);
    Ok((g, hf))
}

/// Scalar fields accepted by [`constancy_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    K,
    HDef,
    /// `(g11 h22 − 2 g12 h12 + g22 h11) / det g`, which on helicoidal charts is `g′/u + g″`.
    HSection3Expr,
}

impl Quantity {
    pub fn of(&self, g: &SymForm2, h: &SymForm2) -> Result<f64> {
        let c = curvatures(g, h)?;
        Ok(match self {
            Quantity::K => c.k,
            Quantity::HDef => c.h,
            Quantity::HSection3Expr => 2.0 * c.h,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepStats {
    pub mean: f64,
    pub max_deviation: f64,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl SweepStats {
    pub fn from_values(values: &[f64]) -> Self {
        let count = values.len();
        let mean = values.iter().sum::<f64>() / count as f64;
        let max_deviation = values.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self { mean, max_deviation, min, max, count }
    }

    /// Largest `|value − target|` over the sweep.
    pub fn max_error_from(&self, target: f64) -> f64 {
        (self.min - target).abs().max((self.max - target).abs())
    }
}

/// Evaluates `f` at every node in parallel; results keep node order.
pub fn grid_values<F>(grid: &GridSpec, f: F) -> Result<Vec<f64>>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    grid.nodes().par_iter().map(|&(u, v)| f(u, v)).collect()
}

pub fn constancy_sweep(chart: &SurfaceChart, quantity: Quantity, grid: &GridSpec) -> Result<SweepStats> {
    grid.check_within(chart)?;
    let values = grid_values(grid, |u, v| {
        let (g, h) = forms(chart, u, v)?;
        quantity.of(&g, &h).map_err(|_| GeometryError::NotAdmissible { u, v, det_g: g.det() })
    })?;
    Ok(SweepStats::from_values(&values))
}

/// Same sweep with forms taken from [`fd_forms_oracle`].
pub fn fd_constancy_sweep(chart: &SurfaceChart, quantity: Quantity, grid: &GridSpec, step: f64) -> Result<SweepStats> {
    grid.check_within(chart)?;
    let values = grid_values(grid, |u, v| {
        let (g, h) = fd_forms_oracle(chart, u, v, step)?;
        quantity.of(&g, &h)
    })?;
    Ok(SweepStats::from_values(&values))
}

/// Sweep of a graph hypersurface over the tensor grid with `per_axis` nodes on each closed range.
pub fn graph_sweep(gh: &GraphHypersurface, quantity: Quantity, ranges: &[(f64, f64)], per_axis: usize) -> Result<SweepStats> {
    if ranges.len() != gh.dim() || per_axis < 2 {
        return Err(GeometryError::InvalidGrid(format!(
            "{} ranges with {per_axis} nodes each for a graph over R^{}",
            ranges.len(),
            gh.dim()
        )));
    }
    let total = per_axis.pow(ranges.len() as u32);
    let values: Result<Vec<f64>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let x: Vec<f64> = ranges
                .iter()
                .map(|&(lo, hi)| {
                    let i = idx % per_axis;
                    idx /= per_axis;
                    lerp(&Interval::closed(lo, hi), i, per_axis)
                })
                .collect();
            let c = graph_curvatures(gh, &x)?;
            Ok(match quantity {
                Quantity::K => c.k,
                Quantity::HDef => c.h,
                Quantity::HSection3Expr => 2.0 * c.h,
            })
        })
        .collect();
    Ok(SweepStats::from_values(&values?))
}

/// Closed sub-range of `iv` suitable for sampling: unbounded ends are cut at
/// `span` from the other end, then both ends are pulled in by 2% of the width.
pub fn sampling_range(iv: &Interval, span: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (iv.lo, iv.hi);
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {}
        (true, false) => hi = lo + span,
        (false, true) => lo = hi - span,
        (false, false) => (lo, hi) = (-0.5 * span, 0.5 * span),
    }
    let pad = 0.02 * (hi - lo);
    (lo + pad, hi - pad)
}

/// A chart drawn from the implemented families with a compact sampling box.
pub struct RandomChart {
    pub chart: SurfaceChart,
    pub u: (f64, f64),
    pub v: (f64, f64),
    /// True when the chart is the graph of a function over the `(u, v)` plane.
    pub graph: Option<GraphHypersurface>,
}

/// One profile from the helicoidal families, valid somewhere in `u ∈ [0.5, 5]`.
pub fn random_profile(rng: &mut ChaCha8Rng, h: f64) -> ProfileFunction {
    loop {
        let pick = rng.random_range(0..5);
        let p = match pick {
            0 => flat_helicoidal_profile(rng.random_range(0.5..3.0), h),
            1 => {
                let k0 = rng.random_range(0.2..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                constant_k_profile(k0, rng.random_range(0.0..10.0), h)
            }
            2 => constant_h_profile(rng.random_range(-2.0..2.0), rng.random_range(0.5..2.0), rng.random_range(-1.0..1.0)),
            3 => minimal_profile(rng.random_range(-2.0..2.0), rng.random_range(-1.0..1.0)),
            _ => polynomial_profile(&[rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]),
        };
        if let Ok(p) = p {
            if usable_u_range(&p).is_some() {
                return p;
            }
        }
    }
}

/// Part of `[0.5, 5]` inside the profile range, pulled away from its ends.
pub fn usable_u_range(p: &ProfileFunction) -> Option<(f64, f64)> {
    let r = p.valid_range().intersect(&Interval::closed(0.5, 5.0));
    if r.is_empty() || r.hi - r.lo < 0.1 {
        return None;
    }
    let pad = 0.02 * (r.hi - r.lo);
    Some((r.lo + pad, r.hi - pad))
}

pub fn random_chart(rng: &mut ChaCha8Rng) -> RandomChart {
    loop {
        let pick = rng.random_range(0..5);
        let out = match pick {
            0 | 1 => {
                let h = rng.random_range(-3.0..3.0);
                let profile = random_profile(rng, h);
                let u = usable_u_range(&profile).expect("random_profile checks the range");
                let kind = if pick == 0 { HelicoidalType::First } else { HelicoidalType::Second };
                helicoidal_chart(&HelicoidalParams::new(profile, h).with_kind(kind))
                    .map(|chart| RandomChart { chart, u, v: (-PI, PI), graph: None })
            }
            2 => {
                let a = rng.random_range(0.5..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                parabolic_i_sphere(a, rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), 0.0)
                    .map(|chart| RandomChart { chart, u: (-2.0, 2.0), v: (-2.0, 2.0), graph: None })
            }
            3 => {
                let fam = match rng.random_range(0..3) {
                    0 => TranslationFamily::ConstantKFirst {
                        a1: rng.random_range(0.5..2.0),
                        k0: rng.random_range(-2.0..2.0),
                        b1: rng.random_range(-1.0..1.0),
                        b2: rng.random_range(-1.0..1.0),
                        b3: rng.random_range(-1.0..1.0),
                    },
                    1 => TranslationFamily::ConstantHSecond {
                        h0: rng.random_range(-1.0..1.0),
                        a1: rng.random_range(0.5..2.0),
                        a2: rng.random_range(0.5..2.0),
                        b4: rng.random_range(-1.0..1.0),
                        b5: rng.random_range(-1.0..1.0),
                        b6: rng.random_range(-1.0..1.0),
                    },
                    _ => TranslationFamily::ConstantHThird {
                        h0: rng.random_range(-1.0..1.0),
                        a3: rng.random_range(0.5..1.5),
                        b8: rng.random_range(-1.0..1.0),
                        b9: rng.random_range(-1.0..1.0),
                    },
                };
                let spec = TranslationSpec::new(fam);
                let u = sampling_range(&spec.domain.u, 3.0);
                let u = (u.0.max(-1.5), u.1.min(1.5));
                translation_chart(&spec).map(|chart| RandomChart { chart, u, v: (-1.5, 1.5), graph: None })
            }
            _ => {
                let fam = match rng.random_range(0..3) {
                    0 => HomotheticalFamily::LinearProduct {
                        a: rng.random_range(0.5..2.0),
                        b: rng.random_range(-1.0..1.0),
                        c: rng.random_range(0.5..2.0),
                        d: rng.random_range(-1.0..1.0),
                    },
                    1 => HomotheticalFamily::ExpProduct {
                        c1: rng.random_range(0.5..2.0),
                        c2: rng.random_range(-1.0..1.0),
                        c3: rng.random_range(-1.0..1.0),
                    },
                    _ => {
                        let a = rng.random_range(0.2..0.8);
                        HomotheticalFamily::FlatPower { gamma: rng.random_range(0.5..2.0), alphas: vec![a, 1.0 - a], betas: vec![0.0, 0.0] }
                    }
                };
                let box_ = if matches!(fam, HomotheticalFamily::FlatPower { .. }) { (0.5, 3.0) } else { (-1.5, 1.5) };
                homothetical_hypersurface(&fam)
                    .and_then(|gh| gh.as_chart().map(|chart| RandomChart { chart, u: box_, v: box_, graph: Some(gh) }))
            }
        };
        if let Ok(rc) = out {
            return rc;
        }
    }
}

pub fn random_motion(rng: &mut ChaCha8Rng) -> Motion {
    Motion::new(
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-PI..PI),
    )
}

fn random_point(rng: &mut ChaCha8Rng, rc: &RandomChart) -> (f64, f64) {
    (rng.random_range(rc.u.0..rc.u.1), rng.random_range(rc.v.0..rc.v.1))
}

/// Worst disagreements found by [`oracle_equivalence`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub charts: usize,
    pub max_forms_error: f64,
    pub graphs: usize,
    pub max_graph_error: f64,
}

/// Analytic versus position-only forms on `charts` random charts (one random point each),
/// plus graph curvatures versus the chart pipeline wherever the chart is a graph.
pub fn oracle_equivalence(seed: u64, charts: usize) -> Result<EquivalenceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = EquivalenceReport { charts, max_forms_error: 0.0, graphs: 0, max_graph_error: 0.0 };
    for _ in 0..charts {
        let rc = random_chart(&mut rng);
        let (u, v) = random_point(&mut rng, &rc);
        let (ga, ha) = forms(&rc.chart, u, v)?;
        let (gf, hf) = fd_forms_oracle(&rc.chart, u, v, ORACLE_STEP)?;
        rep.max_forms_error = rep.max_forms_error.max(ga.max_abs_diff(&gf)).max(ha.max_abs_diff(&hf));
        if let Some(gh) = &rc.graph {
            let a = curvatures(&ga, &ha)?;
            let b = graph_curvatures(gh, &[u, v])?;
            rep.graphs += 1;
            rep.max_graph_error = rep.max_graph_error.max((a.k - b.k).abs()).max((a.h - b.h).abs());
        }
    }
    Ok(rep)
}

/// Largest change of `K` or `H` at `points` random points under `motions` random i-motions.
pub fn motion_invariance(seed: u64, points: usize, motions: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let rc = random_chart(&mut rng);
        let (u, v) = random_point(&mut rng, &rc);
        let (g, h) = forms(&rc.chart, u, v)?;
        let base = curvatures(&g, &h)?;
        for _ in 0..motions {
            let moved = rc.chart.transformed(&random_motion(&mut rng));
            let (g2, h2) = forms(&moved, u, v)?;
            let c = curvatures(&g2, &h2)?;
            worst = worst.max((c.k - base.k).abs()).max((c.h - base.h).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::polynomial_profile;

    fn helicoid_square() -> SurfaceChart {
        helicoidal_chart(&HelicoidalParams::new(polynomial_profile(&[0.0, 0.0, 1.0]).unwrap(), 1.0)).unwrap()
    }

    #[test]
    fn oracle_on_helicoidal_chart() {
        let (g, h) = fd_forms_oracle(&helicoid_square(), 2.0, 0.3, 1e-5).unwrap();
        assert!(g.max_abs_diff(&SymForm2::new(1.0, 0.0, 4.0)) < 1e-6);
        assert!(h.max_abs_diff(&SymForm2::new(2.0, -0.5, 8.0)) < 1e-6);
    }

    #[test]
    fn oracle_on_plane_and_sphere() {
        let plane = SurfaceChart::from_positions("plane", crate::calculus::Rect::PLANE, 1e-2, |u, v| {
            Ok(crate::isotropic::Point3::new(u, v, 0.0))
        });
        let (g, h) = fd_forms_oracle(&plane, 0.4, -1.0, ORACLE_STEP).unwrap();
        assert!(g.max_abs_diff(&SymForm2::new(1.0, 0.0, 1.0)) < 1e-12);
        assert!(h.max_abs_diff(&SymForm2::ZERO) < 1e-12);
        let (_, h) = fd_forms_oracle(&parabolic_i_sphere(1.0, 0.0, 0.0, 0.0).unwrap(), 0.7, 0.2, ORACLE_STEP).unwrap();
        assert!(h.max_abs_diff(&SymForm2::new(1.0, 0.0, 1.0)) < 1e-6);
    }

    #[test]
    fn oracle_rejects_points_outside() {
        let c = helicoid_square();
        assert!(matches!(fd_forms_oracle(&c, -1.0, 0.0, 1e-2), Err(GeometryError::OutOfDomain { .. })));
    }

    #[test]
    fn sweeps() {
        let flat = helicoidal_chart(&HelicoidalParams::new(flat_helicoidal_profile(1.0, 1.0).unwrap(), 1.0)).unwrap();
        let grid = GridSpec::new((1.01, 5.0), (0.0, 4.0 * PI), 51, 51).unwrap();
        let s = constancy_sweep(&flat, Quantity::K, &grid).unwrap();
        assert!(s.mean.abs() < 1e-8 && s.max_deviation <= 1e-8);
        assert_eq!(s.count, 51 * 51);

        let cmc = helicoidal_chart(&HelicoidalParams::new(constant_h_profile(-1.0, 1.0, 0.0).unwrap(), 1.5)).unwrap();
        let grid = GridSpec::new((0.5, 5.0), (-PI, PI), 21, 21).unwrap();
        let s3 = constancy_sweep(&cmc, Quantity::HSection3Expr, &grid).unwrap();
        assert!((s3.mean + 1.0).abs() < 1e-10 && s3.max_deviation <= 1e-9);
        let hd = constancy_sweep(&cmc, Quantity::HDef, &grid).unwrap();
        assert!((hd.mean + 0.5).abs() < 1e-10);

        let cubic = helicoidal_chart(&HelicoidalParams::new(polynomial_profile(&[0.0, 0.0, 0.0, 1.0]).unwrap(), 0.0)).unwrap();
        assert!(constancy_sweep(&cubic, Quantity::K, &grid).unwrap().max_deviation > 1.0);
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new((0.0, 1.0), (0.0, 1.0), 1, 5).is_err());
        assert!(GridSpec::new((1.0, 0.0), (0.0, 1.0), 3, 5).is_err());
        let g = GridSpec::new((0.0, 1.0), (0.0, 2.0), 3, 2).unwrap();
        assert_eq!(g.nodes(), vec![(0.0, 0.0), (0.0, 2.0), (0.5, 0.0), (0.5, 2.0), (1.0, 0.0), (1.0, 2.0)]);
        assert!(matches!(
            constancy_sweep(&helicoid_square(), Quantity::K, &g),
            Err(GeometryError::InvalidGrid(_))
        ));
    }

    #[test]
    fn randomized_checks_are_reproducible() {
        let a = oracle_equivalence(3, 10).unwrap();
        assert_eq!(a, oracle_equivalence(3, 10).unwrap());
        assert!(a.max_forms_error < 1e-6, "{a:?}");
        assert!(motion_invariance(3, 4, 4).unwrap() < 1e-9);
    }
}
