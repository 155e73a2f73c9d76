//! Core domain types for 1D assembly chains: component and resultant
//! specifications, batch statistics, capability indices, and the exact
//! composition of component statistics into resultant statistics.
//!
//! A batch is summarized by its mean offset from target `delta`, its
//! population standard deviation `sigma`, and the derived scalar
//! `inertia = sqrt(sigma^2 + delta^2)` that bounds both.

use crate::error::{Error, Result};

/// One component of a linearized assembly chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSpec {
    /// Component identifier, unique within the model.
    pub name: String,
    /// Incidence coefficient: first-order sensitivity of the resultant to
    /// this characteristic. Zero is allowed but flagged as non-influential.
    pub alpha: f64,
    /// Feasibility weight (> 0). Only relative magnitudes matter; budgets
    /// are invariant under common scaling of all weights.
    pub beta: f64,
}

impl ComponentSpec {
    pub fn new(name: impl Into<String>, alpha: f64, beta: f64) -> Result<Self> {
        let name = name.into();
        if !alpha.is_finite() {
            return Err(Error::InvalidInput(format!(
                "component {name}: alpha must be finite"
            )));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidInput(format!(
                "component {name}: beta must be finite and > 0, got {beta}"
            )));
        }
        Ok(Self { name, alpha, beta })
    }

    /// Component with unit incidence and unit feasibility weight.
    pub fn uniform(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            alpha: 1.0,
            beta: 1.0,
        }
    }
}

/// How the resultant characteristic is toleranced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ToleranceKind {
    /// Symmetric interval about the target; `full_width` is UT - LT.
    Interval { full_width: f64 },
    /// Scalar bound on the resultant inertia.
    Inertia { max_inertia: f64 },
}

/// Requirement on the assembly resultant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultantSpec {
    /// Nominal value of the resultant characteristic.
    pub target: f64,
    pub kind: ToleranceKind,
}

impl ResultantSpec {
    pub fn interval(target: f64, full_width: f64) -> Result<Self> {
        if !target.is_finite() {
            return Err(Error::InvalidInput(
                "resultant target must be finite".into(),
            ));
        }
        if !(full_width.is_finite() && full_width > 0.0) {
            return Err(Error::InvalidInput(format!(
                "interval full width must be finite and > 0, got {full_width}"
            )));
        }
        Ok(Self {
            target,
            kind: ToleranceKind::Interval { full_width },
        })
    }

    pub fn inertia(target: f64, max_inertia: f64) -> Result<Self> {
        if !target.is_finite() {
            return Err(Error::InvalidInput(
                "resultant target must be finite".into(),
            ));
        }
        if !(max_inertia.is_finite() && max_inertia > 0.0) {
            return Err(Error::InvalidInput(format!(
                "resultant inertia must be finite and > 0, got {max_inertia}"
            )));
        }
        Ok(Self {
            target,
            kind: ToleranceKind::Inertia { max_inertia },
        })
    }

    /// Lower and upper tolerance bounds for interval specs, `None` for
    /// inertia specs. The interval is symmetric about the target.
    pub fn interval_bounds(&self) -> Option<(f64, f64)> {
        match self.kind {
            ToleranceKind::Interval { full_width } => Some((
                self.target - full_width / 2.0,
                self.target + full_width / 2.0,
            )),
            ToleranceKind::Inertia { .. } => None,
        }
    }

    /// Interval full width, if this is an interval spec.
    pub fn full_width(&self) -> Option<f64> {
        match self.kind {
            ToleranceKind::Interval { full_width } => Some(full_width),
            ToleranceKind::Inertia { .. } => None,
        }
    }

    /// Maximum resultant inertia, if this is an inertia spec.
    pub fn max_inertia(&self) -> Option<f64> {
        match self.kind {
            ToleranceKind::Inertia { max_inertia } => Some(max_inertia),
            ToleranceKind::Interval { .. } => None,
        }
    }
}

/// Linearized assembly chain: `Y = alpha0 + sum(alpha_i * x_i)` where the
/// `x_i` are component deviations from their own targets, so `alpha0` is the
/// resultant value when every component sits on target.
#[derive(Debug, Clone, PartialEq)]
pub struct AssemblyModel {
    pub name: String,
    pub alpha0: f64,
    pub components: Vec<ComponentSpec>,
    pub resultant: ResultantSpec,
}

impl AssemblyModel {
    pub fn new(
        name: impl Into<String>,
        alpha0: f64,
        components: Vec<ComponentSpec>,
        resultant: ResultantSpec,
    ) -> Result<Self> {
        let name = name.into();
        if !alpha0.is_finite() {
            return Err(Error::InvalidInput("alpha0 must be finite".into()));
        }
        if components.is_empty() {
            return Err(Error::InvalidInput(
                "assembly model needs at least one component".into(),
            ));
        }
        for (i, c) in components.iter().enumerate() {
            if !c.alpha.is_finite() || !(c.beta.is_finite() && c.beta > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "component {}: alpha must be finite and beta > 0",
                    c.name
                )));
            }
            if components[..i].iter().any(|p| p.name == c.name) {
                return Err(Error::InvalidInput(format!(
                    "duplicate component name {}",
                    c.name
                )));
            }
        }
        Ok(Self {
            name,
            alpha0,
            components,
            resultant,
        })
    }

    /// Number of components in the chain.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// True when every incidence coefficient is 1 and every feasibility
    /// weight is 1, the shape required by the shift hypotheses.
    pub fn is_uniform(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.alpha == 1.0 && c.beta == 1.0)
    }

    /// True when no component influences the resultant at all.
    pub fn all_alpha_zero(&self) -> bool {
        self.components.iter().all(|c| c.alpha == 0.0)
    }

    /// Soft diagnostics: conditions that do not invalidate the model but
    /// that reports should surface.
    pub fn warnings(&self) -> Vec<String> {
        self.components
            .iter()
            .filter(|c| c.alpha == 0.0)
            .map(|c| format!("component {} has zero incidence (non-influential)", c.name))
            .collect()
    }
}

/// Production state of one characteristic: mean offset from target,
/// population standard deviation, and the derived inertia.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchStats {
    delta: f64,
    sigma: f64,
    inertia: f64,
}

impl BatchStats {
    /// Build from a mean offset and a population standard deviation.
    /// The inertia is derived and always satisfies
    /// `inertia >= max(|delta|, sigma)`.
    pub fn new(delta: f64, sigma: f64) -> Result<Self> {
        if !delta.is_finite() || !sigma.is_finite() {
            return Err(Error::InvalidInput("batch stats must be finite".into()));
        }
        if sigma < 0.0 {
            return Err(Error::InvalidInput(format!(
                "sigma must be >= 0, got {sigma}"
            )));
        }
        Ok(Self {
            delta,
            sigma,
            inertia: sigma.hypot(delta),
        })
    }

    /// Batch centered on target with the given dispersion.
    pub fn centered(sigma: f64) -> Result<Self> {
        Self::new(0.0, sigma)
    }

    /// Batch with zero dispersion, entirely off-center.
    pub fn pure_offset(delta: f64) -> Result<Self> {
        Self::new(delta, 0.0)
    }

    /// Descriptive statistics of a sample against a target value.
    /// `delta` is the sample mean minus target and `sigma` the population
    /// standard deviation (divisor n).
    pub fn from_samples(samples: &[f64], target: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidInput("empty sample set".into()));
        }
        if !target.is_finite() || samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(
                "samples and target must be finite".into(),
            ));
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        Self::new(mean - target, var.sqrt())
    }

    /// Mean offset from target.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Population standard deviation.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `sqrt(sigma^2 + delta^2)`.
    pub fn inertia(&self) -> f64 {
        self.inertia
    }
}

/// Combined dispersion and off-centering of a batch.
///
/// Equals `sqrt(mean((x - target)^2))` over the batch, which splits exactly
/// into the dispersion and off-centering contributions.
pub fn inertia_from_stats(sigma: f64, delta: f64) -> Result<f64> {
    if !sigma.is_finite() || !delta.is_finite() {
        return Err(Error::InvalidInput("sigma and delta must be finite".into()));
    }
    if sigma < 0.0 {
        return Err(Error::InvalidInput(format!(
            "sigma must be >= 0, got {sigma}"
        )));
    }
    Ok(sigma.hypot(delta))
}

/// Quadratic loss `k * inertia^2`: the expected cost of a batch's deviation
/// from target under a squared-loss model.
pub fn taguchi_loss(k: f64, stats: &BatchStats) -> Result<f64> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidInput(format!(
            "loss coefficient must be finite and > 0, got {k}"
        )));
    }
    Ok(k * stats.inertia() * stats.inertia())
}

/// Centered capability against an inertia budget: `i_max / sigma`.
/// Returns `None` when the batch has zero dispersion (perfect batch).
pub fn cp_inertial(i_max: f64, sigma: f64) -> Result<Option<f64>> {
    if !(i_max.is_finite() && i_max > 0.0) {
        return Err(Error::InvalidInput(format!(
            "inertia budget must be finite and > 0, got {i_max}"
        )));
    }
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::InvalidInput(format!(
            "sigma must be >= 0, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(None);
    }
    Ok(Some(i_max / sigma))
}

/// Capability against an inertia budget including off-centering:
/// `i_max / inertia`. Returns `None` for a batch with zero inertia.
pub fn cpi(i_max: f64, stats: &BatchStats) -> Result<Option<f64>> {
    if !(i_max.is_finite() && i_max > 0.0) {
        return Err(Error::InvalidInput(format!(
            "inertia budget must be finite and > 0, got {i_max}"
        )));
    }
    if stats.inertia() == 0.0 {
        return Ok(None);
    }
    Ok(Some(i_max / stats.inertia()))
}

/// Interval capability including off-centering:
/// `(full_width/2 - |delta|) / (3 sigma)` for a symmetric interval.
/// Returns `None` when the batch has zero dispersion.
pub fn cpk(full_width: f64, delta: f64, sigma: f64) -> Result<Option<f64>> {
    if !(full_width.is_finite() && full_width > 0.0) {
        return Err(Error::InvalidInput(format!(
            "interval width must be finite and > 0, got {full_width}"
        )));
    }
    if !delta.is_finite() || !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::InvalidInput(
            "delta must be finite and sigma >= 0".into(),
        ));
    }
    if sigma == 0.0 {
        return Ok(None);
    }
    Ok(Some((full_width / 2.0 - delta.abs()) / (3.0 * sigma)))
}

/// Capability indices of one batch against its spec. `None` fields mark
/// capabilities that are undefined because the batch is degenerate
/// (zero dispersion or zero inertia); reports must treat that case
/// explicitly rather than as an infinite index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapabilitySet {
    pub cp: Option<f64>,
    pub cpi: Option<f64>,
    pub cpk: Option<f64>,
}

impl CapabilitySet {
    /// Indices of a batch against an inertia budget. `cpk` stays `None`
    /// because no interval is involved.
    pub fn against_inertia(i_max: f64, stats: &BatchStats) -> Result<Self> {
        Ok(Self {
            cp: cp_inertial(i_max, stats.sigma())?,
            cpi: cpi(i_max, stats)?,
            cpk: None,
        })
    }

    /// Indices of a batch against a symmetric interval of the given full
    /// width: centered capability `full_width / (6 sigma)` and the
    /// off-centering-aware index.
    pub fn against_interval(full_width: f64, stats: &BatchStats) -> Result<Self> {
        let cp = if stats.sigma() == 0.0 {
            None
        } else {
            Some(full_width / (6.0 * stats.sigma()))
        };
        Ok(Self {
            cp,
            cpi: None,
            cpk: cpk(full_width, stats.delta(), stats.sigma())?,
        })
    }
}

/// Neumaier compensated sum; keeps cancellation-heavy term lists accurate
/// to a couple of ulps of the exact value.
pub(crate) fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

fn check_component_stats(model: &AssemblyModel, stats: &[BatchStats]) -> Result<()> {
    if stats.len() != model.len() {
        return Err(Error::InvalidInput(format!(
            "model has {} components but {} batch stats were given",
            model.len(),
            stats.len()
        )));
    }
    Ok(())
}

/// Exact composition of component statistics into resultant statistics:
/// `sigma_Y = sqrt(sum(alpha_i^2 sigma_i^2))`, `delta_Y = sum(alpha_i delta_i)`.
pub fn resultant_stats(model: &AssemblyModel, stats: &[BatchStats]) -> Result<BatchStats> {
    check_component_stats(model, stats)?;
    let var = model
        .components
        .iter()
        .zip(stats)
        .map(|(c, s)| c.alpha * c.alpha * s.sigma() * s.sigma())
        .sum::<f64>();
    let delta = compensated_sum(
        model
            .components
            .iter()
            .zip(stats)
            .map(|(c, s)| c.alpha * s.delta()),
    );
    BatchStats::new(delta, var.sqrt())
}

/// Resultant inertia composed directly from component inertias and
/// off-centerings:
/// `sqrt(sum(alpha_i^2 I_i^2) + 2 sum_{i<j}(alpha_i alpha_j delta_i delta_j))`.
///
/// Algebraically identical to the inertia of [`resultant_stats`]; the double
/// product carries the interaction of same-side offsets. Terms are summed
/// with compensation because the double product can cancel almost entirely.
pub fn resultant_inertia(model: &AssemblyModel, stats: &[BatchStats]) -> Result<f64> {
    check_component_stats(model, stats)?;
    let squares = model
        .components
        .iter()
        .zip(stats)
        .map(|(c, s)| c.alpha * c.alpha * s.inertia() * s.inertia());
    let n = model.len();
    let cross = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    let cross_terms: Vec<f64> = cross
        .map(|(i, j)| {
            2.0 * model.components[i].alpha
                * model.components[j].alpha
                * stats[i].delta()
                * stats[j].delta()
        })
        .collect();
    let total = compensated_sum(squares.chain(cross_terms));
    // Exact value is >= 0; tiny negative round-off maps to 0.
    Ok(total.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model_from_alphas(alphas: &[f64]) -> AssemblyModel {
        let components = alphas
            .iter()
            .enumerate()
            .map(|(i, &a)| ComponentSpec::new(format!("x{}", i + 1), a, 1.0).unwrap())
            .collect();
        AssemblyModel::new(
            "test",
            0.0,
            components,
            ResultantSpec::interval(0.0, 1.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn inertia_three_four_five() {
        assert_eq!(inertia_from_stats(0.03, 0.04).unwrap(), 0.05);
    }

    #[test]
    fn inertia_centered_is_sigma() {
        for sigma in [0.0, 0.1, 0.0596, 3.5] {
            assert_eq!(inertia_from_stats(sigma, 0.0).unwrap(), sigma);
        }
    }

    #[test]
    fn inertia_rejects_non_finite() {
        assert!(inertia_from_stats(f64::NAN, 0.0).is_err());
        assert!(inertia_from_stats(0.1, f64::INFINITY).is_err());
        assert!(inertia_from_stats(-0.1, 0.0).is_err());
    }

    #[test]
    fn samples_symmetric_pair() {
        let s = BatchStats::from_samples(&[9.0, 11.0], 10.0).unwrap();
        assert_eq!(s.delta(), 0.0);
        assert_eq!(s.sigma(), 1.0);
        assert_eq!(s.inertia(), 1.0);
    }

    #[test]
    fn samples_on_target_constant() {
        let s = BatchStats::from_samples(&[10.0, 10.0, 10.0], 10.0).unwrap();
        assert_eq!(s.delta(), 0.0);
        assert_eq!(s.sigma(), 0.0);
        assert_eq!(s.inertia(), 0.0);
    }

    #[test]
    fn samples_empty_is_error() {
        assert!(BatchStats::from_samples(&[], 0.0).is_err());
    }

    #[test]
    fn samples_monte_carlo_consistency() {
        // 1e5 normal(10.04, 0.03) draws against target 10: the sample inertia
        // must land within 3 standard errors of sqrt(0.03^2 + 0.04^2) = 0.05.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let normal = rand_distr::Normal::new(10.04, 0.03).unwrap();
        let samples: Vec<f64> = (0..100_000).map(|_| rng.sample(normal)).collect();
        let stats = BatchStats::from_samples(&samples, 10.0).unwrap();
        // SE of the inertia estimate via the delta method on mean((x-t)^2).
        let n = samples.len() as f64;
        let q: Vec<f64> = samples.iter().map(|x| (x - 10.0) * (x - 10.0)).collect();
        let q_mean = q.iter().sum::<f64>() / n;
        let q_var = q.iter().map(|v| (v - q_mean) * (v - q_mean)).sum::<f64>() / n;
        let se = (q_var / n).sqrt() / (2.0 * q_mean.sqrt());
        assert!(
            (stats.inertia() - 0.05).abs() < 3.0 * se,
            "inertia {} vs 0.05, se {}",
            stats.inertia(),
            se
        );
    }

    #[test]
    fn taguchi_loss_values() {
        let b = BatchStats::new(0.04, 0.03).unwrap();
        assert!((taguchi_loss(1.0, &b).unwrap() - 0.0025).abs() < 1e-15);
        let centered = BatchStats::centered(0.1).unwrap();
        assert!((taguchi_loss(100.0, &centered).unwrap() - 1.0).abs() < 1e-12);
        let unit = BatchStats::new(1.0, 1.0).unwrap();
        assert!((taguchi_loss(2.0, &unit).unwrap() - 4.0).abs() < 1e-12);
        assert!(taguchi_loss(0.0, &b).is_err());
    }

    #[test]
    fn cp_inertial_values() {
        assert_eq!(cp_inertial(0.06, 0.03).unwrap(), Some(2.0));
        assert_eq!(cp_inertial(0.4, 0.4).unwrap(), Some(1.0));
        assert_eq!(cp_inertial(0.0745, 0.0745).unwrap(), Some(1.0));
        assert_eq!(cp_inertial(0.06, 0.0).unwrap(), None);
    }

    #[test]
    fn cpi_values() {
        let b = BatchStats::new(0.04, 0.03).unwrap();
        assert!((cpi(0.06, &b).unwrap().unwrap() - 1.2).abs() < 1e-12);
        let centered = BatchStats::centered(0.06).unwrap();
        assert!((cpi(0.06, &centered).unwrap().unwrap() - 1.0).abs() < 1e-12);
        let perfect = BatchStats::new(0.0, 0.0).unwrap();
        assert_eq!(cpi(0.06, &perfect).unwrap(), None);
    }

    #[test]
    fn cpi_equals_cp_when_centered() {
        for sigma in [0.01, 0.3, 2.0] {
            let b = BatchStats::centered(sigma).unwrap();
            assert_eq!(
                cpi(0.5, &b).unwrap().unwrap(),
                cp_inertial(0.5, sigma).unwrap().unwrap()
            );
        }
    }

    #[test]
    fn cpk_values() {
        assert!((cpk(1.0, 0.0, 1.0 / 6.0).unwrap().unwrap() - 1.0).abs() < 1e-12);
        assert!((cpk(1.0, 0.1, 0.1).unwrap().unwrap() - 4.0 / 3.0).abs() < 1e-12);
        // Centered batch sized so the index equals 1.25.
        let sigma = 1.0 / (6.0 * 1.25);
        assert!((cpk(1.0, 0.0, sigma).unwrap().unwrap() - 1.25).abs() < 1e-12);
        assert_eq!(cpk(1.0, 0.1, 0.0).unwrap(), None);
    }

    #[test]
    fn cpk_matches_two_sided_min_form() {
        let (width, delta, sigma) = (2.0, 0.3, 0.25);
        let one_sided = cpk(width, delta, sigma).unwrap().unwrap();
        let upper = (width / 2.0 - delta) / (3.0 * sigma);
        let lower = (width / 2.0 + delta) / (3.0 * sigma);
        assert!((one_sided - upper.min(lower)).abs() < 1e-12);
    }

    #[test]
    fn resultant_stats_centered_components() {
        let model = model_from_alphas(&[1.0, -1.0, 2.0]);
        let stats = vec![BatchStats::centered(0.1).unwrap(); 3];
        let r = resultant_stats(&model, &stats).unwrap();
        assert_eq!(r.delta(), 0.0);
    }

    #[test]
    fn resultant_stats_five_component_chain() {
        // Y = x1 - x2 - x3 - x4 - x5, every component at sigma 0.03, delta 0.01:
        // delta_Y = 0.01 * (1 - 4) and sigma_Y = 0.03 * sqrt(5) by direct
        // substitution into the composition formulas.
        let model = model_from_alphas(&[1.0, -1.0, -1.0, -1.0, -1.0]);
        let stats = vec![BatchStats::new(0.01, 0.03).unwrap(); 5];
        let r = resultant_stats(&model, &stats).unwrap();
        assert!((r.delta() - (-0.03)).abs() < 1e-15);
        assert!((r.sigma() - 0.03 * 5.0_f64.sqrt()).abs() < 1e-15);
        assert!((r.sigma() - 0.067_082_039_324_993_7).abs() < 1e-15);
    }

    #[test]
    fn resultant_stats_single_component_identity() {
        let model = model_from_alphas(&[1.0]);
        let s = BatchStats::new(0.2, 0.5).unwrap();
        let r = resultant_stats(&model, &[s]).unwrap();
        assert!((r.delta() - s.delta()).abs() < 1e-15);
        assert!((r.sigma() - s.sigma()).abs() < 1e-15);
    }

    #[test]
    fn resultant_stats_length_mismatch() {
        let model = model_from_alphas(&[1.0, 1.0]);
        let stats = vec![BatchStats::centered(0.1).unwrap()];
        assert!(resultant_stats(&model, &stats).is_err());
    }

    #[test]
    fn resultant_inertia_pure_offsets_stack() {
        let model = model_from_alphas(&[1.0, 1.0]);
        let stats = vec![BatchStats::pure_offset(1.0).unwrap(); 2];
        assert!((resultant_inertia(&model, &stats).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn resultant_inertia_centered_quadrature() {
        let model = model_from_alphas(&[1.0, 1.0]);
        let stats = vec![BatchStats::centered(1.0).unwrap(); 2];
        assert!((resultant_inertia(&model, &stats).unwrap() - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn resultant_inertia_matches_stats_route() {
        let model = model_from_alphas(&[1.0, -0.5, 2.0, -1.0]);
        let stats = vec![
            BatchStats::new(0.02, 0.11).unwrap(),
            BatchStats::new(-0.07, 0.35).unwrap(),
            BatchStats::new(0.15, 0.08).unwrap(),
            BatchStats::new(-0.01, 0.50).unwrap(),
        ];
        let direct = resultant_inertia(&model, &stats).unwrap();
        let via_stats = resultant_stats(&model, &stats).unwrap().inertia();
        assert!(
            (direct - via_stats).abs() <= 1e-12 * via_stats.max(1.0),
            "{direct} vs {via_stats}"
        );
    }

    #[test]
    fn model_validation() {
        let c = |n: &str, a: f64| ComponentSpec::new(n, a, 1.0).unwrap();
        let spec = ResultantSpec::interval(0.0, 1.0).unwrap();
        assert!(AssemblyModel::new("m", 0.0, vec![], spec).is_err());
        assert!(AssemblyModel::new("m", 0.0, vec![c("a", 1.0), c("a", 2.0)], spec).is_err());
        assert!(ComponentSpec::new("b", 1.0, 0.0).is_err());
        assert!(ComponentSpec::new("b", 1.0, -2.0).is_err());
        assert!(ComponentSpec::new("b", f64::NAN, 1.0).is_err());
        assert!(ResultantSpec::interval(0.0, 0.0).is_err());
        assert!(ResultantSpec::inertia(0.0, -1.0).is_err());
    }

    #[test]
    fn zero_alpha_is_warned_not_rejected() {
        let model = model_from_alphas(&[1.0, 0.0]);
        let warnings = model.warnings();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("x2"));
    }

    #[test]
    fn interval_bounds_symmetric() {
        let spec = ResultantSpec::interval(1.0, 1.0).unwrap();
        assert_eq!(spec.interval_bounds(), Some((0.5, 1.5)));
        assert_eq!(spec.full_width(), Some(1.0));
        assert_eq!(spec.max_inertia(), None);
    }

    #[test]
    fn capability_set_centered_consistency() {
        // Centered batch: cpi equals cp, and the interval cpk equals the
        // interval cp.
        let b = BatchStats::centered(0.02).unwrap();
        let inertial = CapabilitySet::against_inertia(0.06, &b).unwrap();
        assert_eq!(inertial.cp, inertial.cpi);
        let interval = CapabilitySet::against_interval(0.36, &b).unwrap();
        assert!((interval.cp.unwrap() - interval.cpk.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn capability_set_perfect_batch_undefined() {
        let b = BatchStats::new(0.0, 0.0).unwrap();
        let caps = CapabilitySet::against_inertia(0.06, &b).unwrap();
        assert_eq!(caps.cp, None);
        assert_eq!(caps.cpi, None);
    }
}
