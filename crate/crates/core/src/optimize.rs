//! Grid-search threshold optimization and parameter sweeps.
//!
//! Optimization targets the closed-form BEP evaluators, never Monte Carlo
//! estimates: that keeps it deterministic, and simulation confirms the
//! optima downstream. Grids are exhaustive. Each detector's four-term
//! objective is a sum of terms that depend on disjoint threshold pairs —
//! `(beta, xi)` and `(kappa, eta)` for ND-I, single thresholds for the
//! rest — so the exhaustive product-grid minimum is found by scanning the
//! groups independently, which keeps even the four-dimensional ND-I search
//! at the finest resolution cheap. Ties break toward the smallest
//! parameter values in `(beta, kappa, eta, xi)` order.

use crate::error::{Error, Result};
use crate::kljn::{
    bep_current, bep_ndi, bep_ndii, bep_voltage, CurrentThresholds, DetectorKind, KljnConfig,
    VoltageThresholds,
};
use crate::math::q;
use crate::thermod::{thermod_bep, thermod_bep_uniform, thermod_variances, ThermodConfig,
    ThermodThreshold};

/// Smallest allowed grid step.
pub const MIN_GRID_STEP: f64 = 0.001;
/// Largest allowed grid step.
pub const MAX_GRID_STEP: f64 = 0.05;

/// One uniformly spaced search axis: `lower, lower+step, ...` up to
/// `upper`. The step must lie in `[0.001, 0.05]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    lower: f64,
    upper: f64,
    step: f64,
}

impl GridAxis {
    pub fn new(lower: f64, upper: f64, step: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::domain(format!(
                "grid bounds must satisfy lower < upper, got [{lower}, {upper}]"
            )));
        }
        if !(step.is_finite() && step >= MIN_GRID_STEP - 1e-12 && step <= MAX_GRID_STEP + 1e-12) {
            return Err(Error::domain(format!(
                "grid step must lie in [{MIN_GRID_STEP}, {MAX_GRID_STEP}], got {step}"
            )));
        }
        Ok(Self { lower, upper, step })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        ((self.upper - self.lower) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid points `lower + k*step`.
    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.lower + k as f64 * self.step).collect()
    }
}

/// Per-threshold search axes; only the axes a detector needs are required.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GridSpec {
    pub beta: Option<GridAxis>,
    pub kappa: Option<GridAxis>,
    pub eta: Option<GridAxis>,
    pub xi: Option<GridAxis>,
}

impl GridSpec {
    /// Full-range grid for a detector: each needed axis spans the open
    /// feasibility interval shrunk by one step at both ends, so every grid
    /// point is strictly feasible.
    pub fn default_for(cfg: &KljnConfig, detector: DetectorKind, step: f64) -> Result<GridSpec> {
        let alpha = cfg.alpha();
        let mv = 2.0 * alpha / (1.0 + alpha);
        let mc = 2.0 / (1.0 + alpha);
        let axis = |lo: f64, hi: f64, name: &str| -> Result<GridAxis> {
            let (lower, upper) = (lo + step, hi - step);
            if lower >= upper {
                return Err(Error::domain(format!(
                    "step {step} too coarse for the {name} feasibility interval ({lo}, {hi})"
                )));
            }
            GridAxis::new(lower, upper, step)
        };
        let mut spec = GridSpec::default();
        match detector {
            DetectorKind::ClassicalVoltage => {
                spec.beta = Some(axis(1.0, mv, "beta")?);
                spec.kappa = Some(axis(mv, alpha, "kappa")?);
            }
            DetectorKind::ClassicalCurrent => {
                spec.eta = Some(axis(1.0 / alpha, mc, "eta")?);
                spec.xi = Some(axis(mc, 1.0, "xi")?);
            }
            DetectorKind::NewDetectorI => {
                spec.beta = Some(axis(1.0, mv, "beta")?);
                spec.kappa = Some(axis(mv, alpha, "kappa")?);
                spec.eta = Some(axis(1.0 / alpha, mc, "eta")?);
                spec.xi = Some(axis(mc, 1.0, "xi")?);
            }
            DetectorKind::NewDetectorII => {
                spec.kappa = Some(axis(mv, alpha, "kappa")?);
                spec.xi = Some(axis(mc, 1.0, "xi")?);
            }
        }
        Ok(spec)
    }
}

/// One named sweep axis with its grid values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub name: String,
    pub values: Vec<f64>,
}

/// An evaluated sweep: objective values over the product grid of `axes`
/// (row-major, first axis outermost), the argmin index per axis, and the
/// attained minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<SweepAxis>,
    pub objective: Vec<f64>,
    pub argmin: Vec<usize>,
    pub min_value: f64,
}

impl SweepResult {
    /// Coordinates of the argmin.
    pub fn argmin_values(&self) -> Vec<f64> {
        self.argmin
            .iter()
            .zip(&self.axes)
            .map(|(&i, ax)| ax.values[i])
            .collect()
    }

    /// Row-major flat index of the argmin.
    pub fn argmin_flat_index(&self) -> usize {
        let mut idx = 0;
        for (i, ax) in self.argmin.iter().zip(&self.axes) {
            idx = idx * ax.values.len() + i;
        }
        idx
    }
}

/// Optimized thresholds; only the detector's own slots are populated.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThresholdSet {
    pub beta: Option<f64>,
    pub kappa: Option<f64>,
    pub eta: Option<f64>,
    pub xi: Option<f64>,
}

impl ThresholdSet {
    pub fn voltage(&self) -> Option<VoltageThresholds> {
        match (self.beta, self.kappa) {
            (Some(b), Some(k)) => VoltageThresholds::new(b, k).ok(),
            _ => None,
        }
    }

    pub fn current(&self) -> Option<CurrentThresholds> {
        match (self.eta, self.xi) {
            (Some(e), Some(x)) => CurrentThresholds::new(e, x).ok(),
            _ => None,
        }
    }
}

/// Result of a threshold optimization: the best grid point, its BEP (as
/// computed by the detector's public evaluator), and one-dimensional
/// objective profiles through the optimum along each searched axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub thresholds: ThresholdSet,
    pub bep: f64,
    pub profiles: Vec<SweepResult>,
}

/// Exhaustive grid search of a detector's closed-form BEP.
///
/// With `reduce_ndii` set, the ND-II search is one-dimensional over
/// `kappa` with `xi = kappa/alpha` tied (the uniform-error reduction; the
/// tied value always lands inside `xi`'s feasibility interval).
pub fn optimize_kljn_thresholds(
    cfg: &KljnConfig,
    detector: DetectorKind,
    grid: &GridSpec,
    reduce_ndii: bool,
) -> Result<Optimum> {
    let alpha = cfg.alpha();
    let s = (2.0 / cfg.n_samples() as f64).sqrt();
    let mv = 2.0 * alpha / (1.0 + alpha);
    let mc = 2.0 / (1.0 + alpha);

    match detector {
        DetectorKind::ClassicalVoltage => {
            let betas = feasible_axis(grid.beta, "beta", 1.0, mv)?.values();
            let kappas = feasible_axis(grid.kappa, "kappa", mv, alpha)?.values();
            // The four-term objective splits into a beta group and a kappa
            // group; scan each alone.
            let ib = argmin_by(&betas, |b| q((b - 1.0) / s) + q((mv - b) / (mv * s)));
            let ik = argmin_by(&kappas, |k| {
                q((alpha - k) / (alpha * s)) + q((k - mv) / (mv * s))
            });
            let best = VoltageThresholds::new(betas[ib], kappas[ik])?;
            let bep = bep_voltage(cfg, &best)?;
            let beta_profile = profile("beta", &betas, ib, |b| {
                bep_voltage(cfg, &VoltageThresholds::new(b, kappas[ik]).expect("feasible"))
                    .expect("feasible")
            });
            let kappa_profile = profile("kappa", &kappas, ik, |k| {
                bep_voltage(cfg, &VoltageThresholds::new(betas[ib], k).expect("feasible"))
                    .expect("feasible")
            });
            Ok(Optimum {
                thresholds: ThresholdSet {
                    beta: Some(betas[ib]),
                    kappa: Some(kappas[ik]),
                    ..Default::default()
                },
                bep,
                profiles: vec![beta_profile, kappa_profile],
            })
        }
        DetectorKind::ClassicalCurrent => {
            let etas = feasible_axis(grid.eta, "eta", 1.0 / alpha, mc)?.values();
            let xis = feasible_axis(grid.xi, "xi", mc, 1.0)?.values();
            let inv_a = 1.0 / alpha;
            let ie = argmin_by(&etas, |e| {
                q((e - inv_a) / (inv_a * s)) + q((mc - e) / (mc * s))
            });
            let ix = argmin_by(&xis, |x| q((1.0 - x) / s) + q((x - mc) / (mc * s)));
            let best = CurrentThresholds::new(etas[ie], xis[ix])?;
            let bep = bep_current(cfg, &best)?;
            let eta_profile = profile("eta", &etas, ie, |e| {
                bep_current(cfg, &CurrentThresholds::new(e, xis[ix]).expect("feasible"))
                    .expect("feasible")
            });
            let xi_profile = profile("xi", &xis, ix, |x| {
                bep_current(cfg, &CurrentThresholds::new(etas[ie], x).expect("feasible"))
                    .expect("feasible")
            });
            Ok(Optimum {
                thresholds: ThresholdSet {
                    eta: Some(etas[ie]),
                    xi: Some(xis[ix]),
                    ..Default::default()
                },
                bep,
                profiles: vec![eta_profile, xi_profile],
            })
        }
        DetectorKind::NewDetectorI => {
            let betas = feasible_axis(grid.beta, "beta", 1.0, mv)?.values();
            let kappas = feasible_axis(grid.kappa, "kappa", mv, alpha)?.values();
            let etas = feasible_axis(grid.eta, "eta", 1.0 / alpha, mc)?.values();
            let xis = feasible_axis(grid.xi, "xi", mc, 1.0)?.values();
            let inv_a = 1.0 / alpha;

            // Correct-detection terms pair (beta, xi) and (kappa, eta);
            // maximize the two pair sums independently.
            let a1: Vec<f64> = betas.iter().map(|&b| q((1.0 - b) / s)).collect();
            let a2: Vec<f64> = betas.iter().map(|&b| q((b - mv) / (mv * s))).collect();
            let b1: Vec<f64> = xis.iter().map(|&x| q((x - 1.0) / s)).collect();
            let b2: Vec<f64> = xis.iter().map(|&x| q((mc - x) / (mc * s))).collect();
            let (ib, ix) = argmax_pair(&a1, &a2, &b1, &b2);

            let c1: Vec<f64> = kappas
                .iter()
                .map(|&k| q((k - alpha) / (alpha * s)))
                .collect();
            let c2: Vec<f64> = kappas.iter().map(|&k| q((mv - k) / (mv * s))).collect();
            let d1: Vec<f64> = etas
                .iter()
                .map(|&e| q((inv_a - e) / (inv_a * s)))
                .collect();
            let d2: Vec<f64> = etas.iter().map(|&e| q((e - mc) / (mc * s))).collect();
            let (ik, ie) = argmax_pair(&c1, &c2, &d1, &d2);

            let vth = VoltageThresholds::new(betas[ib], kappas[ik])?;
            let cth = CurrentThresholds::new(etas[ie], xis[ix])?;
            let bep = bep_ndi(cfg, &vth, &cth)?;
            let eval = |b: f64, k: f64, e: f64, x: f64| {
                bep_ndi(
                    cfg,
                    &VoltageThresholds::new(b, k).expect("feasible"),
                    &CurrentThresholds::new(e, x).expect("feasible"),
                )
                .expect("feasible")
            };
            let profiles = vec![
                profile("beta", &betas, ib, |b| eval(b, kappas[ik], etas[ie], xis[ix])),
                profile("kappa", &kappas, ik, |k| eval(betas[ib], k, etas[ie], xis[ix])),
                profile("eta", &etas, ie, |e| eval(betas[ib], kappas[ik], e, xis[ix])),
                profile("xi", &xis, ix, |x| eval(betas[ib], kappas[ik], etas[ie], x)),
            ];
            Ok(Optimum {
                thresholds: ThresholdSet {
                    beta: Some(betas[ib]),
                    kappa: Some(kappas[ik]),
                    eta: Some(etas[ie]),
                    xi: Some(xis[ix]),
                },
                bep,
                profiles,
            })
        }
        DetectorKind::NewDetectorII => {
            let kappas = feasible_axis(grid.kappa, "kappa", mv, alpha)?.values();
            if reduce_ndii {
                // One-dimensional uniform-error search with xi = kappa/alpha.
                let ik = argmin_by(&kappas, |k| bep_ndii(cfg, k, k / alpha).expect("feasible"));
                let bep = bep_ndii(cfg, kappas[ik], kappas[ik] / alpha)?;
                let kappa_profile = profile("kappa", &kappas, ik, |k| {
                    bep_ndii(cfg, k, k / alpha).expect("feasible")
                });
                Ok(Optimum {
                    thresholds: ThresholdSet {
                        kappa: Some(kappas[ik]),
                        xi: Some(kappas[ik] / alpha),
                        ..Default::default()
                    },
                    bep,
                    profiles: vec![kappa_profile],
                })
            } else {
                let xis = feasible_axis(grid.xi, "xi", mc, 1.0)?.values();
                let ik = argmin_by(&kappas, |k| {
                    q((alpha - k) / (alpha * s)) + q((k - mv) / (mv * s))
                });
                let ix = argmin_by(&xis, |x| q((1.0 - x) / s) + q((x - mc) / (mc * s)));
                let bep = bep_ndii(cfg, kappas[ik], xis[ix])?;
                let profiles = vec![
                    profile("kappa", &kappas, ik, |k| {
                        bep_ndii(cfg, k, xis[ix]).expect("feasible")
                    }),
                    profile("xi", &xis, ix, |x| {
                        bep_ndii(cfg, kappas[ik], x).expect("feasible")
                    }),
                ];
                Ok(Optimum {
                    thresholds: ThresholdSet {
                        kappa: Some(kappas[ik]),
                        xi: Some(xis[ix]),
                        ..Default::default()
                    },
                    bep,
                    profiles,
                })
            }
        }
    }
}

/// The full (beta, kappa) BEP surface of the classical voltage detector,
/// evaluated point by point with [`bep_voltage`].
pub fn sweep_beta_kappa_surface(
    cfg: &KljnConfig,
    beta_axis: &GridAxis,
    kappa_axis: &GridAxis,
) -> Result<SweepResult> {
    let alpha = cfg.alpha();
    let mv = 2.0 * alpha / (1.0 + alpha);
    check_axis_bounds(beta_axis, "beta", 1.0, mv)?;
    check_axis_bounds(kappa_axis, "kappa", mv, alpha)?;
    let betas = beta_axis.values();
    let kappas = kappa_axis.values();
    let mut objective = Vec::with_capacity(betas.len() * kappas.len());
    let mut best = f64::INFINITY;
    let mut argmin = vec![0, 0];
    for (i, &b) in betas.iter().enumerate() {
        for (j, &k) in kappas.iter().enumerate() {
            let v = bep_voltage(cfg, &VoltageThresholds::new(b, k)?)?;
            if v < best {
                best = v;
                argmin = vec![i, j];
            }
            objective.push(v);
        }
    }
    Ok(SweepResult {
        axes: vec![
            SweepAxis {
                name: "beta".to_string(),
                values: betas,
            },
            SweepAxis {
                name: "kappa".to_string(),
                values: kappas,
            },
        ],
        objective,
        argmin,
        min_value: best,
    })
}

/// TherMod BEP across a threshold grid (inside the open feasibility
/// interval), with the argmin located.
pub fn sweep_chi(cfg: &ThermodConfig, chi_axis: &GridAxis) -> Result<SweepResult> {
    let v = thermod_variances(cfg);
    check_axis_bounds(chi_axis, "chi", v.tilde0, v.tilde1)?;
    let chis = chi_axis.values();
    let mut objective = Vec::with_capacity(chis.len());
    let mut best = f64::INFINITY;
    let mut argmin = 0;
    for (i, &chi) in chis.iter().enumerate() {
        let p = thermod_bep(cfg, &ThermodThreshold::new(chi, cfg)?)?;
        if p < best {
            best = p;
            argmin = i;
        }
        objective.push(p);
    }
    Ok(SweepResult {
        axes: vec![SweepAxis {
            name: "chi".to_string(),
            values: chis,
        }],
        objective,
        argmin: vec![argmin],
        min_value: best,
    })
}

/// Uniform-threshold TherMod BEP along a resistance-ratio grid.
pub fn sweep_alpha(delta: f64, n_samples: u32, alpha_axis: &GridAxis) -> Result<SweepResult> {
    if !(alpha_axis.lower() > 1.0) {
        return Err(Error::domain(format!(
            "alpha grid must start above 1, got lower bound {}",
            alpha_axis.lower()
        )));
    }
    let alphas = alpha_axis.values();
    let mut objective = Vec::with_capacity(alphas.len());
    let mut best = f64::INFINITY;
    let mut argmin = 0;
    for (i, &alpha) in alphas.iter().enumerate() {
        let cfg = ThermodConfig::new(alpha, delta, n_samples)?;
        let p = thermod_bep_uniform(&cfg);
        if p < best {
            best = p;
            argmin = i;
        }
        objective.push(p);
    }
    Ok(SweepResult {
        axes: vec![SweepAxis {
            name: "alpha".to_string(),
            values: alphas,
        }],
        objective,
        argmin: vec![argmin],
        min_value: best,
    })
}

fn feasible_axis(axis: Option<GridAxis>, name: &str, lo: f64, hi: f64) -> Result<GridAxis> {
    let axis = axis.ok_or_else(|| Error::config(format!("missing {name} grid axis")))?;
    check_axis_bounds(&axis, name, lo, hi)?;
    Ok(axis)
}

fn check_axis_bounds(axis: &GridAxis, name: &str, lo: f64, hi: f64) -> Result<()> {
    if axis.lower() > lo && axis.upper() < hi {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} grid [{}, {}] must lie strictly inside the feasibility interval ({lo}, {hi})",
            axis.lower(),
            axis.upper()
        )))
    }
}

/// First index attaining the minimum (strict-less scan, so ties resolve to
/// the smallest parameter value).
fn argmin_by(values: &[f64], f: impl Fn(f64) -> f64) -> usize {
    let mut best = f64::INFINITY;
    let mut arg = 0;
    for (i, &v) in values.iter().enumerate() {
        let y = f(v);
        if y < best {
            best = y;
            arg = i;
        }
    }
    arg
}

/// Maximize `p1[i]*q1[j] + p2[i]*q2[j]` over the product grid; first-wins
/// scan in row-major order keeps tie-breaking lexicographic.
fn argmax_pair(p1: &[f64], p2: &[f64], q1: &[f64], q2: &[f64]) -> (usize, usize) {
    let mut best = f64::NEG_INFINITY;
    let mut arg = (0, 0);
    for i in 0..p1.len() {
        for j in 0..q1.len() {
            let v = p1[i] * q1[j] + p2[i] * q2[j];
            if v > best {
                best = v;
                arg = (i, j);
            }
        }
    }
    arg
}

fn profile(name: &str, values: &[f64], center: usize, f: impl Fn(f64) -> f64) -> SweepResult {
    let objective: Vec<f64> = values.iter().map(|&v| f(v)).collect();
    let mut best = f64::INFINITY;
    let mut arg = 0;
    for (i, &v) in objective.iter().enumerate() {
        if v < best {
            best = v;
            arg = i;
        }
    }
    // The slice passes through the optimum, so the scan can only move the
    // argmin across exact ties.
    debug_assert!(objective[arg] <= objective[center]);
    SweepResult {
        axes: vec![SweepAxis {
            name: name.to_string(),
            values: values.to_vec(),
        }],
        objective,
        argmin: vec![arg],
        min_value: best,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u32) -> KljnConfig {
        KljnConfig::new(10.0, n).unwrap()
    }

    #[test]
    fn grid_axis_rejects_bad_parameters() {
        assert!(GridAxis::new(2.0, 1.0, 0.01).is_err());
        assert!(GridAxis::new(1.0, 2.0, 0.0005).is_err());
        assert!(GridAxis::new(1.0, 2.0, 0.1).is_err());
    }

    #[test]
    fn grid_axis_values_cover_range() {
        let axis = GridAxis::new(1.0, 1.01, 0.001).unwrap();
        let vals = axis.values();
        assert_eq!(vals.len(), 11);
        assert_eq!(vals[0], 1.0);
        assert!((vals[10] - 1.01).abs() < 1e-12);
    }

    #[test]
    fn default_grid_rejects_too_coarse_step() {
        // eta's interval (0.1, 0.1818) cannot hold a 0.05-step grid shrunk
        // by one step at each end.
        let err = GridSpec::default_for(&cfg(100), DetectorKind::NewDetectorI, 0.05);
        assert!(err.is_err());
        assert!(GridSpec::default_for(&cfg(100), DetectorKind::NewDetectorI, 0.001).is_ok());
    }

    #[test]
    fn optimizer_rejects_infeasible_grid() {
        let mut grid = GridSpec::default_for(&cfg(100), DetectorKind::ClassicalVoltage, 0.001)
            .unwrap();
        grid.kappa = Some(GridAxis::new(5.0, 12.0, 0.01).unwrap()); // exceeds alpha
        assert!(
            optimize_kljn_thresholds(&cfg(100), DetectorKind::ClassicalVoltage, &grid, false)
                .is_err()
        );
    }

    #[test]
    fn voltage_optimum_matches_nested_exhaustive_on_coarse_grid() {
        let c = cfg(100);
        let grid = GridSpec {
            beta: Some(GridAxis::new(1.05, 1.75, 0.05).unwrap()),
            kappa: Some(GridAxis::new(1.9, 9.9, 0.05).unwrap()),
            ..Default::default()
        };
        let opt =
            optimize_kljn_thresholds(&c, DetectorKind::ClassicalVoltage, &grid, false).unwrap();
        // Brute-force reference over the same product grid.
        let mut best = f64::INFINITY;
        let mut arg = (0.0, 0.0);
        for &b in &grid.beta.unwrap().values() {
            for &k in &grid.kappa.unwrap().values() {
                let v = bep_voltage(&c, &VoltageThresholds::new(b, k).unwrap()).unwrap();
                if v < best {
                    best = v;
                    arg = (b, k);
                }
            }
        }
        assert_eq!(opt.thresholds.beta.unwrap(), arg.0);
        assert_eq!(opt.thresholds.kappa.unwrap(), arg.1);
        assert!((opt.bep - best).abs() / best < 1e-12);
    }

    #[test]
    fn ndi_optimum_matches_nested_exhaustive_on_coarse_grid() {
        let c = cfg(100);
        let grid = GridSpec {
            beta: Some(GridAxis::new(1.1, 1.7, 0.03).unwrap()),
            kappa: Some(GridAxis::new(2.0, 9.8, 0.05).unwrap()),
            eta: Some(GridAxis::new(0.105, 0.175, 0.005).unwrap()),
            xi: Some(GridAxis::new(0.2, 0.95, 0.03).unwrap()),
        };
        let opt = optimize_kljn_thresholds(&c, DetectorKind::NewDetectorI, &grid, false).unwrap();
        let mut best = f64::INFINITY;
        let mut arg = (0.0, 0.0, 0.0, 0.0);
        for &b in &grid.beta.unwrap().values() {
            for &k in &grid.kappa.unwrap().values() {
                for &e in &grid.eta.unwrap().values() {
                    for &x in &grid.xi.unwrap().values() {
                        let v = bep_ndi(
                            &c,
                            &VoltageThresholds::new(b, k).unwrap(),
                            &CurrentThresholds::new(e, x).unwrap(),
                        )
                        .unwrap();
                        if v < best {
                            best = v;
                            arg = (b, k, e, x);
                        }
                    }
                }
            }
        }
        assert_eq!(opt.thresholds.beta.unwrap(), arg.0);
        assert_eq!(opt.thresholds.kappa.unwrap(), arg.1);
        assert_eq!(opt.thresholds.eta.unwrap(), arg.2);
        assert_eq!(opt.thresholds.xi.unwrap(), arg.3);
        assert!((opt.bep - best).abs() / best < 1e-12);
    }

    #[test]
    fn ndii_reduction_ties_xi_to_kappa() {
        let c = cfg(100);
        let grid = GridSpec::default_for(&c, DetectorKind::NewDetectorII, 0.001).unwrap();
        let opt = optimize_kljn_thresholds(&c, DetectorKind::NewDetectorII, &grid, true).unwrap();
        let k = opt.thresholds.kappa.unwrap();
        assert_eq!(opt.thresholds.xi.unwrap(), k / 10.0);
        assert_eq!(opt.profiles.len(), 1);
        // The reduced optimum cannot beat the free two-dimensional one.
        let free = optimize_kljn_thresholds(&c, DetectorKind::NewDetectorII, &grid, false).unwrap();
        assert!(free.bep <= opt.bep * (1.0 + 1e-12));
    }

    #[test]
    fn profiles_pass_through_optimum() {
        let c = cfg(100);
        let grid = GridSpec::default_for(&c, DetectorKind::ClassicalVoltage, 0.005).unwrap();
        let opt =
            optimize_kljn_thresholds(&c, DetectorKind::ClassicalVoltage, &grid, false).unwrap();
        for p in &opt.profiles {
            assert_eq!(p.axes.len(), 1);
            assert_eq!(p.objective.len(), p.axes[0].values.len());
            // Internal consistency: recorded argmin attains the recorded min.
            assert_eq!(p.objective[p.argmin[0]], p.min_value);
            assert!((p.min_value - opt.bep).abs() <= opt.bep * 1e-12);
        }
    }

    #[test]
    fn surface_is_consistent_with_evaluator() {
        let c = cfg(100);
        let beta_axis = GridAxis::new(1.3, 1.4, 0.05).unwrap();
        let kappa_axis = GridAxis::new(4.95, 5.05, 0.05).unwrap();
        let surface = sweep_beta_kappa_surface(&c, &beta_axis, &kappa_axis).unwrap();
        let idx = surface.argmin_flat_index();
        assert_eq!(surface.objective[idx], surface.min_value);
        // Every surface value matches bep_voltage exactly at its grid point.
        let (i, j) = (1, 1);
        let b = surface.axes[0].values[i];
        let k = surface.axes[1].values[j];
        let direct = bep_voltage(&c, &VoltageThresholds::new(b, k).unwrap()).unwrap();
        assert_eq!(surface.objective[i * kappa_axis.len() + j], direct);
    }

    #[test]
    fn chi_sweep_locates_interior_minimum() {
        let c = ThermodConfig::new(10.0, 0.1, 100).unwrap();
        let axis = GridAxis::new(1.101, 1.999, 0.001).unwrap();
        let sweep = sweep_chi(&c, &axis).unwrap();
        assert_eq!(sweep.objective.len(), axis.len());
        assert!(sweep.objective.iter().all(|v| v.is_finite() && *v > 0.0));
        let chi_star = sweep.argmin_values()[0];
        assert!(1.101 < chi_star && chi_star < 1.999);
        // Boundary-touching grid is rejected.
        let bad = GridAxis::new(1.1, 1.999, 0.001).unwrap();
        assert!(sweep_chi(&c, &bad).is_err());
    }

    #[test]
    fn alpha_sweep_is_decreasing() {
        let axis = GridAxis::new(1.05, 40.0, 0.05).unwrap();
        let sweep = sweep_alpha(0.2, 100, &axis).unwrap();
        for w in sweep.objective.windows(2) {
            assert!(w[1] < w[0]);
        }
        assert_eq!(sweep.argmin[0], sweep.objective.len() - 1);
        assert!(GridAxis::new(0.9, 40.0, 0.05)
            .and_then(|ax| sweep_alpha(0.2, 100, &ax))
            .is_err());
    }

    #[test]
    fn refinement_never_increases_minimum() {
        let c = cfg(100);
        for step in [0.004, 0.002, 0.001] {
            let coarse = GridSpec::default_for(&c, DetectorKind::ClassicalVoltage, 2.0 * step);
            let fine = GridSpec::default_for(&c, DetectorKind::ClassicalVoltage, step);
            if let (Ok(coarse), Ok(fine)) = (coarse, fine) {
                let oc = optimize_kljn_thresholds(&c, DetectorKind::ClassicalVoltage, &coarse, false)
                    .unwrap();
                let of = optimize_kljn_thresholds(&c, DetectorKind::ClassicalVoltage, &fine, false)
                    .unwrap();
                assert!(of.bep <= oc.bep * (1.0 + 1e-12));
            }
        }
    }
}
