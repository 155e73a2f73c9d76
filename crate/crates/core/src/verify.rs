//! Independent numerical oracles for the analytic results: a seeded Monte
//! Carlo assembly simulation to confirm the composition formulas, an
//! exhaustive offset-grid search to confirm the capability floor and its
//! location, and a finite-difference check of the derivative expression.
//!
//! These routines never call the closed forms they validate other than to
//! compare against them.

use rand::distributions::Uniform;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::Normal;

use crate::corrected;
use crate::error::{Error, Result};
use crate::stack::{AssemblyModel, BatchStats};

/// Sampling distribution for one component. The composition of dispersions
/// is distribution-free, so both choices must produce the same resultant
/// dispersion at a fixed component sigma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleDistribution {
    Normal,
    /// Uniform over `delta +- sigma * sqrt(3)`, matching the requested
    /// standard deviation.
    Uniform,
}

/// Production assumption for one component: deviations from its target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentDraw {
    pub delta: f64,
    pub sigma: f64,
    pub distribution: SampleDistribution,
}

/// Deterministic simulation request. Identical plans produce bit-identical
/// results: component `i` draws from stream `i` of a counter-based generator
/// seeded with `seed`, so adding a component never perturbs the draws of the
/// earlier ones.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationPlan {
    pub model: AssemblyModel,
    pub draws: Vec<ComponentDraw>,
    pub sample_count: usize,
    pub seed: u64,
}

impl SimulationPlan {
    /// Plan with the same deviation assumption for every component.
    pub fn common(
        model: AssemblyModel,
        delta: f64,
        sigma: f64,
        distribution: SampleDistribution,
        sample_count: usize,
        seed: u64,
    ) -> Self {
        let draws = vec![
            ComponentDraw {
                delta,
                sigma,
                distribution,
            };
            model.len()
        ];
        Self {
            model,
            draws,
            sample_count,
            seed,
        }
    }
}

/// Empirical resultant statistics with standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalStats {
    /// Empirical deviation statistics of the simulated resultant.
    pub stats: BatchStats,
    pub se_delta: f64,
    pub se_sigma: f64,
    pub se_inertia: f64,
    pub sample_count: usize,
    /// Absolute resultant mean: `alpha0` plus the empirical mean deviation.
    pub mean_resultant: f64,
}

/// Simulate the assembly and summarize the resultant deviations.
///
/// Standard errors come from the sample moments (delta method for the
/// dispersion and inertia estimates), so they stay honest for non-normal
/// component distributions. Sums are accumulated sequentially in component
/// and sample order, which makes reruns bit-identical.
pub fn monte_carlo_assembly(plan: &SimulationPlan) -> Result<EmpiricalStats> {
    let n = plan.model.len();
    if plan.draws.len() != n {
        return Err(Error::InvalidInput(format!(
            "model has {} components but {} draw specs were given",
            n,
            plan.draws.len()
        )));
    }
    if plan.sample_count < 100 {
        return Err(Error::InvalidInput(format!(
            "need at least 100 samples, got {}",
            plan.sample_count
        )));
    }
    for (i, d) in plan.draws.iter().enumerate() {
        if !d.delta.is_finite() || !d.sigma.is_finite() || d.sigma < 0.0 {
            return Err(Error::InvalidInput(format!(
                "component {}: delta must be finite and sigma >= 0",
                plan.model.components[i].name
            )));
        }
    }

    let mut resultant = vec![0.0_f64; plan.sample_count];
    for (i, draw) in plan.draws.iter().enumerate() {
        let alpha = plan.model.components[i].alpha;
        let mut rng = ChaCha12Rng::seed_from_u64(plan.seed);
        rng.set_stream(i as u64);
        match draw.distribution {
            SampleDistribution::Normal => {
                if draw.sigma == 0.0 {
                    for y in resultant.iter_mut() {
                        *y += alpha * draw.delta;
                    }
                } else {
                    let dist = Normal::new(draw.delta, draw.sigma)
                        .map_err(|e| Error::InvalidInput(format!("normal draw: {e}")))?;
                    for y in resultant.iter_mut() {
                        *y += alpha * rng.sample(dist);
                    }
                }
            }
            SampleDistribution::Uniform => {
                let half_width = draw.sigma * 3.0_f64.sqrt();
                if half_width == 0.0 {
                    for y in resultant.iter_mut() {
                        *y += alpha * draw.delta;
                    }
                } else {
                    let dist =
                        Uniform::new_inclusive(draw.delta - half_width, draw.delta + half_width);
                    for y in resultant.iter_mut() {
                        *y += alpha * rng.sample(dist);
                    }
                }
            }
        }
    }

    let count = plan.sample_count as f64;
    let mean = resultant.iter().sum::<f64>() / count;
    let mut m2 = 0.0;
    let mut m4 = 0.0;
    let mut r2 = 0.0;
    let mut r4 = 0.0;
    for &y in &resultant {
        let c = y - mean;
        let c2 = c * c;
        m2 += c2;
        m4 += c2 * c2;
        let y2 = y * y;
        r2 += y2;
        r4 += y2 * y2;
    }
    m2 /= count;
    m4 /= count;
    r2 /= count;
    r4 /= count;

    let sigma = m2.sqrt();
    let stats = BatchStats::new(mean, sigma)?;
    let se_delta = sigma / count.sqrt();
    let se_sigma = if sigma > 0.0 {
        ((m4 - m2 * m2).max(0.0) / count).sqrt() / (2.0 * sigma)
    } else {
        0.0
    };
    let inertia = r2.sqrt();
    let se_inertia = if inertia > 0.0 {
        ((r4 - r2 * r2).max(0.0) / count).sqrt() / (2.0 * inertia)
    } else {
        0.0
    };
    Ok(EmpiricalStats {
        stats,
        se_delta,
        se_sigma,
        se_inertia,
        sample_count: plan.sample_count,
        mean_resultant: plan.model.alpha0 + mean,
    })
}

/// Outcome of an exhaustive offset-grid search.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSearchResult {
    pub min_cpk: f64,
    pub argmin_offsets: Vec<f64>,
    pub grid_resolution: usize,
    pub evaluations: u64,
}

const MAX_GRID_DIMENSIONS: usize = 4;
const MIN_GRID_RESOLUTION: usize = 11;
/// Sliver excluded at the top of each axis to keep every evaluation finite.
const GRID_EDGE_MARGIN: f64 = 1e-6;

fn check_grid_args(n: usize, resolution: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "chain needs at least one component".into(),
        ));
    }
    if n > MAX_GRID_DIMENSIONS {
        return Err(Error::UnsupportedSize(format!(
            "exhaustive grid search supports up to {MAX_GRID_DIMENSIONS} components, got {n}"
        )));
    }
    if resolution < MIN_GRID_RESOLUTION {
        return Err(Error::InvalidInput(format!(
            "grid resolution must be at least {MIN_GRID_RESOLUTION}, got {resolution}"
        )));
    }
    Ok(())
}

/// Exhaustively search the resultant index over per-component offsets
/// `delta_i in [0, limit_i (1 - 1e-6)]`, each component's dispersion tied to
/// its offset by `sigma_i = sqrt(limit_i^2 - delta_i^2)`, with the numerator
/// taking each offset at its worst sign:
///
/// ```text
/// cpk(d) = (r_y/2 - sum |alpha_i| d_i) / (3 sqrt(sum alpha_i^2 (limit_i^2 - d_i^2)))
/// ```
///
/// Costs `resolution^n` evaluations, so the dimension is capped at 4.
fn grid_search(alphas: &[f64], limits: &[f64], r_y: f64, resolution: usize) -> GridSearchResult {
    let n = alphas.len();
    let axes: Vec<Vec<f64>> = limits
        .iter()
        .map(|&limit| {
            let top = limit * (1.0 - GRID_EDGE_MARGIN);
            (0..resolution)
                .map(|j| top * j as f64 / (resolution - 1) as f64)
                .collect()
        })
        .collect();

    let mut index = vec![0usize; n];
    let mut best = f64::INFINITY;
    let mut best_index = index.clone();
    let mut evaluations = 0u64;
    loop {
        let mut numerator = r_y / 2.0;
        let mut disc = 0.0;
        for i in 0..n {
            let d = axes[i][index[i]];
            numerator -= alphas[i].abs() * d;
            disc += alphas[i] * alphas[i] * (limits[i] * limits[i] - d * d);
        }
        let value = numerator / (3.0 * disc.sqrt());
        evaluations += 1;
        if value < best {
            best = value;
            best_index.copy_from_slice(&index);
        }
        // Odometer increment; the axes are swept in a fixed order so the
        // argmin of a tie is deterministic.
        let mut axis = 0;
        loop {
            if axis == n {
                let argmin_offsets = best_index
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| axes[i][j])
                    .collect();
                return GridSearchResult {
                    min_cpk: best,
                    argmin_offsets,
                    grid_resolution: resolution,
                    evaluations,
                };
            }
            index[axis] += 1;
            if index[axis] < resolution {
                break;
            }
            index[axis] = 0;
            axis += 1;
        }
    }
}

/// Grid search over a uniform chain of `n` components allocated at
/// coefficient `icc`: every component limit is `r_y / (6 icc sqrt(n))`.
/// The found minimum independently confirms the analytic floor
/// `sqrt(icc^2 - n/9)` and its all-equal location.
pub fn grid_min_cpk(n: usize, r_y: f64, icc: f64, resolution: usize) -> Result<GridSearchResult> {
    check_grid_args(n, resolution)?;
    let limit = corrected::component_inertia(r_y, icc, n)?;
    Ok(grid_search(&vec![1.0; n], &vec![limit; n], r_y, resolution))
}

/// Grid search over an arbitrary-incidence chain allocated by the corrected
/// method, each component searched up to its own allocated inertia.
pub fn grid_min_cpk_general(
    model: &AssemblyModel,
    r_y: f64,
    icc: f64,
    resolution: usize,
) -> Result<GridSearchResult> {
    check_grid_args(model.len(), resolution)?;
    if model.components.iter().any(|c| c.alpha == 0.0) {
        return Err(Error::InvalidInput(
            "grid search requires every incidence coefficient to be nonzero".into(),
        ));
    }
    let allocation = corrected::icc_allocate(model, r_y, icc)?;
    let alphas: Vec<f64> = model.components.iter().map(|c| c.alpha).collect();
    Ok(grid_search(
        &alphas,
        &allocation.inertias(),
        r_y,
        resolution,
    ))
}

/// Relative disagreement between the analytic derivative and a central
/// finite difference of the index profile at `delta`, normalized by
/// `max(1, |analytic|)`.
pub fn derivative_check(r_y: f64, icc: f64, n: usize, delta: f64, step: f64) -> Result<f64> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidInput(format!(
            "step must be finite and > 0, got {step}"
        )));
    }
    let i_x = corrected::component_inertia(r_y, icc, n)?;
    if !(delta - step > 0.0 && delta + step < i_x) {
        return Err(Error::InvalidInput(format!(
            "stencil [{} , {}] must stay inside (0, {i_x})",
            delta - step,
            delta + step
        )));
    }
    let analytic = corrected::cpk_derivative(r_y, icc, n, delta)?;
    let plus = corrected::cpk_at_offset(r_y, icc, n, delta + step)?;
    let minus = corrected::cpk_at_offset(r_y, icc, n, delta - step)?;
    let central = (plus - minus) / (2.0 * step);
    Ok((analytic - central).abs() / analytic.abs().max(1.0))
}
