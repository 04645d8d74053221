//! The theorem suite: every classification claim re-derived numerically,
//! each reported as pass, fail or a documented discrepancy.

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::oracle::{
    constancy_sweep, fd_constancy_sweep, graph_sweep, grid_values, random_profile, sampling_range, usable_u_range,
    GridSpec, Quantity, ORACLE_STEP,
};
use crate::calculus::{laplace_coordinates, Interval, SurfaceChart};
use crate::curves::classify_parameter_curves;
use crate::error::{GeometryError, Result};
use crate::families::{
    constant_h_profile, constant_k_profile, expected_translation_h, expected_translation_k, flat_helicoidal_profile,
    helicoidal_chart, homothetical_hypersurface, minimal_profile, polynomial_profile, translation_chart,
    translation_hypersurface, HelicoidalParams, HomotheticalFamily, ProfileFunction, ScalarFn, TranslationFamily,
    TranslationSpec,
};

pub const DEFAULT_SEED: u64 = 0;
/// Environment variable that overrides [`DEFAULT_SEED`].
pub const SEED_ENV: &str = "ISOKIT_SEED";
pub const DEFAULT_DRAWS: usize = 100;

/// Seed from [`SEED_ENV`] if set, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| GeometryError::InvalidConstant(format!("{SEED_ENV}={s} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Curvature constancy with analytic derivatives.
    pub analytic: f64,
    /// Curvature constancy through the position-only oracle.
    pub finite_difference: f64,
    /// The helicoidal mean-curvature expression.
    pub mean_expression: f64,
    pub laplacian: f64,
    /// Curve curvatures and nonzero torsion numerators.
    pub curve: f64,
    /// Torsion numerators that must vanish.
    pub torsion_zero: f64,
    pub hypersurface: f64,
    /// Flatness of power products.
    pub power_flat: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            analytic: 1e-8,
            finite_difference: 1e-5,
            mean_expression: 1e-10,
            laplacian: 1e-8,
            curve: 1e-9,
            torsion_zero: 1e-12,
            hypersurface: 1e-9,
            power_flat: 1e-7,
        }
    }
}

/// Inputs of [`run_theorem_suite`]; the `k0`, `gamma`, `h` overrides replace the
/// built-in constant-curvature configurations with a single one.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub draws: usize,
    pub k0: Option<f64>,
    pub gamma: Option<f64>,
    pub h: Option<f64>,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, draws: DEFAULT_DRAWS, k0: None, gamma: None, h: None, tolerances: Tolerances::default() }
    }
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DiscrepancyDocumented,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub max_abs_error: f64,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claims: Vec<ClaimResult>,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are plain data")
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn get(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }
}

/// Which claims to run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Selection {
    #[default]
    All,
    Only(Vec<String>),
}

struct Outcome {
    status: Status,
    error: f64,
    notes: String,
}

impl Outcome {
    fn check(error: f64, tol: f64, notes: impl Into<String>) -> Self {
        let notes = notes.into();
        if error <= tol {
            Self { status: Status::Pass, error, notes }
        } else {
            Self { status: Status::Fail, error, notes: format!("error {error:e} exceeds {tol:e}; {notes}") }
        }
    }

    /// A documented discrepancy, provided the observed behaviour matched within `tol`.
    fn discrepancy(observed_error: f64, tol: f64, claim_gap: f64, notes: impl Into<String>) -> Self {
        let notes = notes.into();
        if observed_error <= tol {
            Self { status: Status::DiscrepancyDocumented, error: claim_gap, notes }
        } else {
            Self {
                status: Status::Fail,
                error: observed_error,
                notes: format!("observed behaviour off by {observed_error:e} (tolerance {tol:e}); {notes}"),
            }
        }
    }
}

type Runner = fn(&SuiteConfig) -> Result<Outcome>;

struct Claim {
    id: &'static str,
    anchor: &'static str,
    run: Runner,
}

const CLAIMS: &[Claim] = &[
    Claim { id: "Prop2.2", anchor: "Prop 2.2: helicoidal surfaces with Δr = λr have λ = 0 and logarithmic profile", run: prop_2_2 },
    Claim { id: "Thm3.1.i", anchor: "Thm 3.1(i) with Eq (3.5): flat helicoidal surfaces; Example 3.2", run: thm_3_1_i },
    Claim { id: "Thm3.1.ii", anchor: "Thm 3.1(ii) with Eq (3.4)-(3.6): constant relative curvature K0", run: thm_3_1_ii },
    Claim { id: "Thm3.3", anchor: "Thm 3.3 with Eq (3.7)-(3.8): constant mean curvature via the Riccati equation; Example 3.4", run: thm_3_3 },
    Claim { id: "Thm3.3.Hdef", anchor: "Thm 3.3 against the mean curvature normalisation of Section 1", run: thm_3_3_hdef },
    Claim { id: "Thm4.1", anchor: "Thm 4.1 with Eq (4.2): v = const curves are geodesics, u = const curves are not", run: thm_4_1 },
    Claim { id: "Thm4.2.i", anchor: "Thm 4.2(i) with Eq (4.3): asymptotic parameter curves and helicoids", run: thm_4_2_i },
    Claim { id: "Thm4.2.ii", anchor: "Thm 4.2(ii) with Eq (4.3): asymptotic parameter curves and linear profiles", run: thm_4_2_ii },
    Claim { id: "Thm4.3", anchor: "Thm 4.3: parameter curves are lines of curvature iff h = 0", run: thm_4_3 },
    Claim { id: "Thm2.1.i", anchor: "Thm 2.1(i): translation surfaces of constant relative curvature, first form", run: thm_2_1_i },
    Claim { id: "Thm2.1.ii", anchor: "Thm 2.1(ii): translation surfaces of constant relative curvature, second form", run: thm_2_1_ii },
    Claim { id: "Thm2.2.i", anchor: "Thm 2.2(i): translation surfaces of constant mean curvature, first form", run: thm_2_2_i },
    Claim { id: "Thm2.2.ii", anchor: "Thm 2.2(ii): translation surfaces of constant mean curvature, second form", run: thm_2_2_ii },
    Claim { id: "Thm2.2.iii", anchor: "Thm 2.2(iii): translation surfaces of constant mean curvature, logarithmic form", run: thm_2_2_iii },
    Claim { id: "Thm2.4", anchor: "Thm 2.4: translation hypersurfaces of nonzero constant relative curvature", run: thm_2_4 },
    Claim { id: "Thm2.5", anchor: "Thm 2.5: translation hypersurfaces of constant mean curvature", run: thm_2_5 },
    Claim { id: "Thm2.7", anchor: "Thm 2.7: minimal homothetical hypersurfaces are products of linear factors", run: thm_2_7 },
    Claim { id: "Thm2.8.i", anchor: "Thm 2.8(i): flat homothetical hypersurfaces, exponential form", run: thm_2_8_i },
    Claim { id: "Thm2.8.ii", anchor: "Thm 2.8(ii): flat homothetical hypersurfaces, power form", run: thm_2_8_ii },
    Claim { id: "Thm2.9.A", anchor: "Thm 2.9(A): flat homothetical surfaces", run: thm_2_9_a },
    Claim { id: "Thm2.9.B", anchor: "Thm 2.9(B): homothetical surfaces with linear factors have negative constant K", run: thm_2_9_b },
];

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

/// Runs the selected claims (in registry order) and assembles the report.
///
/// Unknown ids are an error; failures inside a claim become `fail` entries.
pub fn run_theorem_suite(selection: &Selection, config: &SuiteConfig) -> Result<VerificationReport> {
    let chosen: Vec<(usize, &Claim)> = match selection {
        Selection::All => CLAIMS.iter().enumerate().collect(),
        Selection::Only(ids) => {
            for id in ids {
                if !CLAIMS.iter().any(|c| c.id == id) {
                    return Err(GeometryError::InvalidConstant(format!(
                        "unknown claim id {id}; known ids: {}",
                        claim_ids().join(", ")
                    )));
                }
            }
            CLAIMS.iter().enumerate().filter(|(_, c)| ids.iter().any(|id| id == c.id)).collect()
        }
    };
    let claims = chosen
        .par_iter()
        .map(|(_, c)| {
            let out = (c.run)(config).unwrap_or_else(|e| Outcome {
                status: Status::Fail,
                error: f64::INFINITY,
                notes: format!("evaluation error: {e}"),
            });
            ClaimResult {
                id: c.id.to_string(),
                anchor: c.anchor.to_string(),
                status: out.status,
                max_abs_error: if out.error.is_finite() { out.error } else { f64::MAX },
                notes: out.notes,
            }
        })
        .collect();
    Ok(VerificationReport { claims, seed: config.seed, tolerances: config.tolerances })
}

fn helicoidal(profile: &ProfileFunction, h: f64) -> Result<SurfaceChart> {
    helicoidal_chart(&HelicoidalParams::new(profile.clone(), h))
}

fn fmt_list(xs: &[String]) -> String {
    xs.join("; ")
}

fn prop_2_2(cfg: &SuiteConfig) -> Result<Outcome> {
    let grid = GridSpec::new((0.5, 5.0), (0.0, 2.0 * PI), 51, 51)?;
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for alpha in [1.0, -2.0] {
        for h in [0.0, 1.0] {
            let chart = helicoidal(&minimal_profile(alpha, 0.0)?, h)?;
            let lap = grid_values(&grid, |u, v| {
                let d = laplace_coordinates(&chart, u, v)?;
                Ok(d.x1.abs().max(d.x2.abs()).max(d.x3.abs()))
            })?;
            let lap_max = lap.iter().copied().fold(0.0, f64::max);
            let hd = constancy_sweep(&chart, Quantity::HDef, &grid)?.max_error_from(0.0);
            worst = worst.max(lap_max).max(hd);
            notes.push(format!("alpha={alpha}, h={h}: max|Δr|={lap_max:.2e}, max|H|={hd:.2e}"));
        }
    }
    // a non-logarithmic profile is not harmonic, so Δr = λr cannot hold with λ ≠ 0 there either
    let control = laplace_coordinates(&helicoidal(&polynomial_profile(&[0.0, 0.0, 1.0])?, 1.0)?, 1.0, 0.0)?;
    notes.push(format!("control g=u^2 has Δx3 = {}", control.x3));
    if (control.x3 - 4.0).abs() > 1e-9 {
        return Ok(Outcome { status: Status::Fail, error: (control.x3 - 4.0).abs(), notes: fmt_list(&notes) });
    }
    Ok(Outcome::check(worst, cfg.tolerances.laplacian, fmt_list(&notes)))
}

fn thm_3_1_i(cfg: &SuiteConfig) -> Result<Outcome> {
    let t = cfg.tolerances;
    let grid = GridSpec::new((1.01, 5.0), (0.0, 4.0 * PI), 51, 51)?;
    let chart = helicoidal(&flat_helicoidal_profile(1.0, 1.0)?, 1.0)?;
    let analytic = constancy_sweep(&chart, Quantity::K, &grid)?.max_error_from(0.0);
    let fd = fd_constancy_sweep(&chart, Quantity::K, &grid, ORACLE_STEP)?.max_error_from(0.0);
    let mut worst = analytic;
    let mut notes = vec![format!("alpha=1, h=1: max|K| analytic {analytic:.2e}, finite-difference {fd:.2e}")];
    for (alpha, h) in [(2.0, 0.5), (1.0, 0.0), (0.5, -2.0)] {
        let p = flat_helicoidal_profile(alpha, h)?;
        let u = sampling_range(&p.valid_range(), 4.0);
        let g = GridSpec::new(u, (0.0, 2.0 * PI), 51, 51)?;
        let e = constancy_sweep(&helicoidal(&p, h)?, Quantity::K, &g)?.max_error_from(0.0);
        worst = worst.max(e);
        notes.push(format!("alpha={alpha}, h={h}: max|K| {e:.2e}"));
    }
    if fd > t.finite_difference {
        return Ok(Outcome { status: Status::Fail, error: fd, notes: fmt_list(&notes) });
    }
    Ok(Outcome::check(worst, t.analytic, fmt_list(&notes)))
}

fn constant_k_configs(cfg: &SuiteConfig) -> Vec<(f64, f64, f64)> {
    if cfg.k0.is_some() || cfg.gamma.is_some() || cfg.h.is_some() {
        vec![(cfg.k0.unwrap_or(0.5), cfg.gamma.unwrap_or(1.0), cfg.h.unwrap_or(1.0))]
    } else {
        vec![(0.5, 1.0, 1.0), (2.0, 0.0, 0.5), (-1.0, 10.0, 0.0)]
    }
}

fn thm_3_1_ii(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (k0, gamma, h) in constant_k_configs(cfg) {
        let p = constant_k_profile(k0, gamma, h)?;
        let u = sampling_range(&p.valid_range(), 4.0);
        let grid = GridSpec::new(u, (0.0, 2.0 * PI), 51, 51)?;
        let s = constancy_sweep(&helicoidal(&p, h)?, Quantity::K, &grid)?;
        let e = s.max_error_from(k0);
        worst = worst.max(e);
        notes.push(format!(
            "K0={k0}, gamma={gamma}, h={h} on u in [{:.4}, {:.4}]: mean K {:.12}, max|K-K0| {e:.2e}",
            u.0, u.1, s.mean
        ));
    }
    Ok(Outcome::check(worst, cfg.tolerances.analytic, fmt_list(&notes)))
}

const CMC_CONFIGS: [(f64, f64, f64, f64); 3] = [(-1.0, 1.0, 0.0, 1.5), (2.0, 1.0, 0.0, 0.0), (0.5, -0.7, 1.0, 2.0)];

fn cmc_grid() -> Result<GridSpec> {
    GridSpec::new((0.5, 5.0), (-PI, PI), 51, 51)
}

fn thm_3_3(cfg: &SuiteConfig) -> Result<Outcome> {
    let grid = cmc_grid()?;
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (h0, alpha, beta, h) in CMC_CONFIGS {
        let p = constant_h_profile(h0, alpha, beta)?;
        let direct = grid_values(&grid, |u, _| Ok((p.helicoidal_h_expr(u)? - h0).abs()))?;
        let direct = direct.iter().copied().fold(0.0, f64::max);
        let swept = constancy_sweep(&helicoidal(&p, h)?, Quantity::HSection3Expr, &grid)?.max_error_from(h0);
        worst = worst.max(direct).max(swept);
        notes.push(format!("H0={h0}, alpha={alpha}, beta={beta}, h={h}: g'/u+g'' error {direct:.2e}, from forms {swept:.2e}"));
    }
    Ok(Outcome::check(worst, cfg.tolerances.mean_expression, fmt_list(&notes)))
}

fn thm_3_3_hdef(cfg: &SuiteConfig) -> Result<Outcome> {
    let grid = cmc_grid()?;
    let mut observed: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for (h0, alpha, beta, h) in CMC_CONFIGS {
        let s = constancy_sweep(&helicoidal(&constant_h_profile(h0, alpha, beta)?, h)?, Quantity::HDef, &grid)?;
        observed = observed.max(s.max_error_from(0.5 * h0));
        gap = gap.max(s.max_error_from(h0));
    }
    Ok(Outcome::discrepancy(
        observed,
        cfg.tolerances.mean_expression,
        gap,
        "the helicoidal expression g'/u + g'' equals 2H for H = (g11 h22 - 2 g12 h12 + g22 h11)/(2 det g); \
         on these profiles H is constant and equal to H0/2, so the claims hold for g'/u + g'' and the report keeps both",
    ))
}

/// Random `(profile, h, u0, v0)`; `h` is zero on every other draw when `alternate_zero_h`.
fn draws(cfg: &SuiteConfig, salt: u64, alternate_zero_h: bool) -> Vec<(ProfileFunction, f64, f64, f64)> {
    let mut rng = cfg.rng(salt);
    (0..cfg.draws)
        .map(|k| {
            let h = if alternate_zero_h && k % 2 == 0 { 0.0 } else { rng.random_range(-3.0..3.0) };
            let p = random_profile(&mut rng, h);
            let (lo, hi) = usable_u_range(&p).expect("random_profile checks the range");
            let u0 = rng.random_range(lo..hi);
            let v0 = rng.random_range(-PI..PI);
            (p, h, u0, v0)
        })
        .collect()
}

fn thm_4_1(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut flags = 0;
    for (p, h, u0, v0) in draws(cfg, 41, false) {
        let pc = classify_parameter_curves(&p, h, u0, v0)?;
        worst = worst.max(pc.along_u.kappa_g.abs()).max((pc.along_v.kappa_g - 1.0 / u0).abs());
        if !pc.along_u.is_geodesic || pc.along_v.is_geodesic {
            flags += 1;
        }
    }
    let notes = format!(
        "{} draws: kappa_g = 0 on v = const curves and 1/u0 on u = const curves; {flags} classification mismatches",
        cfg.draws
    );
    if flags > 0 {
        return Ok(Outcome { status: Status::Fail, error: worst, notes });
    }
    Ok(Outcome::check(worst, cfg.tolerances.curve, notes))
}

fn thm_4_2_i(cfg: &SuiteConfig) -> Result<Outcome> {
    let tol = cfg.tolerances.curve;
    let mut worst: f64 = 0.0;
    let mut mismatches = 0;
    for (p, h, u0, v0) in draws(cfg, 42, false) {
        let pc = classify_parameter_curves(&p, h, u0, v0)?;
        let g = p.eval(u0)?;
        worst = worst.max((pc.along_u.kappa_n - g.g2).abs()).max((pc.along_v.kappa_n - g.g1 / u0).abs());
        if pc.along_v.is_asymptotic != (g.g1.abs() <= tol * u0) {
            mismatches += 1;
        }
    }
    let helicoid = polynomial_profile(&[1.3])?;
    for (h, u0) in [(1.0, 0.7), (-2.0, 3.0), (0.5, 1.9)] {
        let pc = classify_parameter_curves(&helicoid, h, u0, 0.0)?;
        if !(pc.along_u.is_asymptotic && pc.along_v.is_asymptotic) {
            mismatches += 1;
        }
    }
    let notes = format!(
        "kappa_n = g'' on v = const curves and g'/u0 on u = const curves; constant profiles make both asymptotic, \
         and over {} draws the u = const curve is asymptotic exactly when g' = 0; {mismatches} mismatches",
        cfg.draws
    );
    if mismatches > 0 {
        return Ok(Outcome { status: Status::Fail, error: worst, notes });
    }
    Ok(Outcome::check(worst, tol, notes))
}

fn thm_4_2_ii(cfg: &SuiteConfig) -> Result<Outcome> {
    let tol = cfg.tolerances.curve;
    let (c, u0) = (0.8, 2.0);
    let linear = polynomial_profile(&[0.3, c])?;
    let pc = classify_parameter_curves(&linear, 1.0, u0, 0.0)?;
    // the formula's verdict on du = 0 must be the nonzero g'/u0, and du = 1 must give g'' = 0
    let observed = (pc.along_v.kappa_n - c / u0).abs().max(pc.along_u.kappa_n.abs());
    Ok(Outcome::discrepancy(
        observed,
        tol,
        pc.along_v.kappa_n.abs(),
        format!(
            "claim: asymptotic for linear g; normal curvature with du = 0 is u g' dv^2 = {:.6} for g = {c}u + 0.3 at u0 = {u0}, \
             so that curve is asymptotic only for constant g; the du = 1 curve has kappa_n = g'' = {:.1e} and is asymptotic \
             for every linear g",
            pc.along_v.kappa_n, pc.along_u.kappa_n
        ),
    ))
}

fn thm_4_3(cfg: &SuiteConfig) -> Result<Outcome> {
    let t = cfg.tolerances;
    let mut zero_err: f64 = 0.0;
    let mut value_err: f64 = 0.0;
    let mut mismatches = 0;
    for (p, h, u0, v0) in draws(cfg, 43, true) {
        let pc = classify_parameter_curves(&p, h, u0, v0)?;
        if h == 0.0 {
            zero_err = zero_err.max(pc.along_u.tau_g_numerator.abs()).max(pc.along_v.tau_g_numerator.abs());
        } else {
            value_err = value_err.max((pc.along_u.tau_g_numerator + h / u0).abs());
            if pc.along_u.is_line_of_curvature {
                mismatches += 1;
            }
        }
    }
    let notes = format!(
        "{} draws, half with h = 0: max zero numerator {zero_err:.2e}, max |numerator + h/u0| {value_err:.2e}; \
         {mismatches} h != 0 draws classified as lines of curvature",
        cfg.draws
    );
    if zero_err > t.torsion_zero || mismatches > 0 {
        return Ok(Outcome { status: Status::Fail, error: zero_err.max(value_err), notes });
    }
    Ok(Outcome::check(value_err, t.curve, notes))
}

fn translation_sweep(family: TranslationFamily, quantity: Quantity, v: (f64, f64)) -> Result<(f64, f64)> {
    let spec = TranslationSpec::new(family);
    let u = sampling_range(&spec.domain.u.intersect(&Interval::closed(-2.0, 2.0)), 4.0);
    let grid = GridSpec::new(u, v, 31, 31)?;
    let s = constancy_sweep(&translation_chart(&spec)?, quantity, &grid)?;
    Ok((s.mean, s.max_deviation))
}

fn thm_2_1_i(cfg: &SuiteConfig) -> Result<Outcome> {
    let tol = cfg.tolerances.hypersurface;
    let mut observed: f64 = 0.0;
    let mut gap: f64 = 0.0;
    let mut notes = Vec::new();
    for (a1, k0, b1, b2, b3) in [(1.0, 1.0, 0.0, 0.0, 0.0), (2.0, -0.5, 1.5, 0.3, -1.0)] {
        let (mean, dev) = translation_sweep(TranslationFamily::ConstantKFirst { a1, k0, b1, b2, b3 }, Quantity::K, (-2.0, 2.0))?;
        observed = observed.max(dev).max((mean - 4.0 * k0).abs());
        gap = gap.max((mean - k0).abs());
        notes.push(format!("a1={a1}, K0={k0}: K constant {mean:.12} (deviation {dev:.1e})"));
    }
    notes.push("K is constant but equals 4 K0, not K0".into());
    Ok(Outcome::discrepancy(observed, tol, gap, fmt_list(&notes)))
}

fn thm_2_1_ii(cfg: &SuiteConfig) -> Result<Outcome> {
    let (k0, a2, a3, a4) = (-1.0, 0.5, 3.0, 1.0);
    let fam = TranslationFamily::ConstantKSecond { k0, a2, a3, a4, b4: 0.3, b5: a2 * a4, b6: -0.2 };
    let (mean, dev) = translation_sweep(fam, Quantity::K, (0.2, 3.0))?;
    let expect = 18.0 * a2 * k0 / (a3 * a3);
    let err = dev.max((mean - k0).abs());
    Ok(Outcome::check(
        err,
        cfg.tolerances.hypersurface,
        format!(
            "K is constant only when b5 = a2 a4, and then equals 18 a2 K0 / a3^2 = {expect}; \
             with a2 = 0.5, a3 = 3 this is K0; observed mean {mean:.12}"
        ),
    ))
}

fn thm_2_2_i(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (h0, b1, b2, b3) in [(0.5, 0.0, 0.0, 0.0), (-1.2, 0.7, -0.3, 0.7)] {
        let (mean, dev) = translation_sweep(TranslationFamily::ConstantHFirst { h0, b1, b2, b3 }, Quantity::HDef, (-2.0, 2.0))?;
        worst = worst.max(dev).max((mean - h0).abs());
    }
    Ok(Outcome::check(
        worst,
        cfg.tolerances.hypersurface,
        "H = H0 + (b1 - b3) f2''/2, constant H0 for b1 = b3 with f2 = u^2",
    ))
}

fn thm_2_2_ii(cfg: &SuiteConfig) -> Result<Outcome> {
    let (h0, a2, b4) = (0.7, 0.4, 0.5);
    let a1 = a2 * (1.0 + b4 * b4);
    let (mean, dev) =
        translation_sweep(TranslationFamily::ConstantHSecond { h0, a1, a2, b4, b5: 0.2, b6: -0.1 }, Quantity::HDef, (-2.0, 2.0))?;
    let skew = TranslationFamily::ConstantHSecond { h0, a1: 1.0, a2, b4, b5: 0.2, b6: -0.1 };
    let (mean2, dev2) = translation_sweep(skew, Quantity::HDef, (-2.0, 2.0))?;
    let expect2 = h0 - 1.0 + a2 * (1.0 + b4 * b4);
    let err = dev.max((mean - h0).abs()).max(dev2).max((mean2 - expect2).abs());
    Ok(Outcome::check(
        err,
        cfg.tolerances.hypersurface,
        format!("H = H0 - a1 + a2 (1 + b4^2) is constant for all constants; it equals H0 when a1 = a2 (1 + b4^2); a1 = 1 gives {mean2:.12}"),
    ))
}

fn thm_2_2_iii(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut observed: f64 = 0.0;
    for h0 in [0.0, 0.8] {
        let (mean, dev) =
            translation_sweep(TranslationFamily::ConstantHThird { h0, a3: 1.0, b8: 0.4, b9: 0.0 }, Quantity::HDef, (-1.0, 1.0))?;
        observed = observed.max(dev).max((mean - h0).abs());
    }
    Ok(Outcome::discrepancy(
        observed,
        cfg.tolerances.hypersurface,
        0.0,
        "the printed form carries a b7 f2 term with f2 undefined; it is omitted. The remaining family has H = H0 - b9 a3 sec^2(a3 u)/2, \
         constant H0 for b9 = 0, which is what was checked",
    ))
}

fn thm_2_4(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for alphas in [vec![1.0, 2.0], vec![0.5, -1.0, 1.5]] {
        let n = alphas.len();
        let gh = translation_hypersurface(n, &alphas, &vec![0.3; n], -1.0)?;
        let s = graph_sweep(&gh, Quantity::K, &vec![(-2.0, 2.0); n], 9)?;
        let expect = expected_translation_k(&alphas);
        worst = worst.max(s.max_error_from(expect));
        notes.push(format!("n={n}: K = {} (expected 2^n prod alpha = {expect})", s.mean));
    }
    let cyl = translation_hypersurface(3, &[1.0, 0.0, 2.0], &[0.0; 3], 0.0)?;
    worst = worst.max(graph_sweep(&cyl, Quantity::K, &[(-2.0, 2.0); 3], 5)?.max_error_from(0.0));
    notes.push("a zero alpha gives K = 0".into());
    Ok(Outcome::check(worst, cfg.tolerances.hypersurface, fmt_list(&notes)))
}

fn thm_2_5(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (h0, alphas) in [(1.0, vec![0.2, 0.5, 0.8]), (-0.6, vec![-0.1, -0.5])] {
        let n = alphas.len();
        let gh = translation_hypersurface(n, &alphas, &vec![-0.4; n], 2.0)?;
        let s = graph_sweep(&gh, Quantity::HDef, &vec![(-2.0, 2.0); n], 9)?;
        worst = worst.max(s.max_error_from(h0)).max((expected_translation_h(&alphas) - h0).abs());
    }
    Ok(Outcome::check(
        worst,
        cfg.tolerances.hypersurface,
        "constraint read as the full sum over j = 1..n of alpha_j = (n/2) H0",
    ))
}

fn thm_2_7(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (gammas, epsilons) in [(vec![2.0, -1.0], vec![0.5, 1.0]), (vec![1.0, 0.5, -3.0], vec![0.0, -1.0, 2.0])] {
        let n = gammas.len();
        let gh = homothetical_hypersurface(&HomotheticalFamily::MinimalLinearProduct { gammas, epsilons })?;
        worst = worst.max(graph_sweep(&gh, Quantity::HDef, &vec![(-2.0, 2.0); n], 9)?.max_error_from(0.0));
    }
    Ok(Outcome::check(worst, cfg.tolerances.hypersurface, "Hessian trace vanishes for n = 2, 3"))
}

fn thm_2_8_i(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let tails: [Vec<(ScalarFn, Interval)>; 2] = [vec![], vec![(ScalarFn::polynomial(&[1.0, 0.5, 0.25]), Interval::REAL)]];
    for tail in tails {
        let n = 2 + tail.len();
        let gh = homothetical_hypersurface(&HomotheticalFamily::FlatExp { gamma: 0.7, alpha1: 0.4, alpha2: -0.9, tail })?;
        worst = worst.max(graph_sweep(&gh, Quantity::K, &vec![(-1.0, 1.0); n], 9)?.max_error_from(0.0));
    }
    Ok(Outcome::check(worst, cfg.tolerances.hypersurface, "K = 0 with and without a free third factor"))
}

fn thm_2_8_ii(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for alphas in [vec![0.5, 0.5], vec![0.2, 0.3, 0.5]] {
        let n = alphas.len();
        let gh = homothetical_hypersurface(&HomotheticalFamily::FlatPower { gamma: 1.0, alphas, betas: vec![0.0; n] })?;
        worst = worst.max(graph_sweep(&gh, Quantity::K, &vec![(0.5, 3.0); n], 11)?.max_error_from(0.0));
    }
    Ok(Outcome::check(worst, cfg.tolerances.power_flat, "exponents summing to 1 make the product homogeneous of degree 1"))
}

fn thm_2_9_a(cfg: &SuiteConfig) -> Result<Outcome> {
    let families = [
        HomotheticalFamily::SingleFactor { c: 2.0, axis: 0, h: ScalarFn::polynomial(&[0.0, 1.0, 0.0, 1.0]) },
        HomotheticalFamily::ExpProduct { c1: 1.5, c2: 0.6, c3: -0.8 },
        HomotheticalFamily::PowerProduct { c1: 1.0, d1: 0.5, c2: 2.0, c3: 2.0, d2: 1.0, c4: 2.0 },
    ];
    let mut worst: f64 = 0.0;
    for fam in &families {
        let gh = homothetical_hypersurface(fam)?;
        worst = worst.max(graph_sweep(&gh, Quantity::K, &[(0.5, 2.0), (0.5, 2.0)], 11)?.max_error_from(0.0));
    }
    Ok(Outcome::check(
        worst,
        cfg.tolerances.hypersurface,
        "single factor, exponential and power forms; the power form has K proportional to (1 - 1/c2 - 1/c4) and is flat only \
         when 1/c2 + 1/c4 = 1, so c2 = c4 = 2 is used",
    ))
}

fn thm_2_9_b(cfg: &SuiteConfig) -> Result<Outcome> {
    let gh = homothetical_hypersurface(&HomotheticalFamily::LinearProduct { a: 2.0, b: 0.5, c: 3.0, d: -1.0 })?;
    let s = graph_sweep(&gh, Quantity::K, &[(-2.0, 2.0), (-2.0, 2.0)], 11)?;
    Ok(Outcome::check(s.max_error_from(-36.0), cfg.tolerances.hypersurface, format!("K = -a^2 c^2 = -36; mean {}", s.mean)))
}
