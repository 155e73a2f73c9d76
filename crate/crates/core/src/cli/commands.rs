//! Implementations of the CLI commands.

use std::path::Path;

use crate::classical::{self, IntervalMethod};
use crate::corrected::{self, CpkMin};
use crate::inertial::{self, InertialHypothesis};
use crate::stack::{self, BatchStats, ToleranceKind};
use crate::verify::{self, SampleDistribution, SimulationPlan};

use super::batch;
use super::format::{dec3, full, full_opt, sig, sig_opt, DisplayConfig, Report};
use super::spec_file::{self, SpecFile};
use super::{
    AbacusArgs, AllocateArgs, CapabilityArgs, CliError, CompareArgs, DistArg, MethodArg,
    VerifyArgs, VerifyMode,
};

fn interval_width(spec: &SpecFile, what: &str) -> Result<f64, CliError> {
    spec.model.resultant.full_width().ok_or_else(|| {
        CliError::Unsupported(format!(
            "{what} requires an interval resultant spec, but {} bounds inertia",
            spec.model.name
        ))
    })
}

/// Inertia budget for the plain inertial methods: direct for inertia specs,
/// bridged as `width / 6` for interval specs (centered unit capability).
fn inertia_budget(spec: &SpecFile) -> Result<(f64, bool), CliError> {
    match spec.model.resultant.kind {
        ToleranceKind::Inertia { max_inertia } => Ok((max_inertia, false)),
        ToleranceKind::Interval { full_width } => {
            Ok((inertial::budget_from_interval(full_width)?, true))
        }
    }
}

fn resolve_icc(
    icc: Option<f64>,
    cpk: Option<f64>,
    n: usize,
    default_cpk: Option<f64>,
) -> Result<(f64, Option<f64>), CliError> {
    match (icc, cpk) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--icc and --cpk are exclusive; give one".into(),
        )),
        (Some(icc), None) => Ok((icc, None)),
        (None, Some(cpk)) => Ok((corrected::icc_for_cpk(cpk, n)?, Some(cpk))),
        (None, None) => match default_cpk {
            Some(cpk) => Ok((corrected::icc_for_cpk(cpk, n)?, Some(cpk))),
            None => Err(CliError::Usage(
                "the corrected method needs --icc or --cpk".into(),
            )),
        },
    }
}

fn spec_header(report: &mut Report, spec: &SpecFile) {
    let model = &spec.model;
    let unit = spec
        .unit
        .as_deref()
        .map(|u| format!(" [{u}]"))
        .unwrap_or_default();
    report.line(format!(
        "assembly: {} (n = {}){unit}",
        model.name,
        model.len()
    ));
    match model.resultant.kind {
        ToleranceKind::Interval { full_width } => {
            let (lo, hi) = model.resultant.interval_bounds().expect("interval");
            report.line(format!(
                "resultant: target {} in [{}, {}] (full width {})",
                model.resultant.target, lo, hi, full_width
            ));
        }
        ToleranceKind::Inertia { max_inertia } => {
            report.line(format!(
                "resultant: target {} with inertia <= {}",
                model.resultant.target, max_inertia
            ));
        }
    }
    for w in model.warnings() {
        report.line(format!("warning: {w}"));
    }
    report.record(&["spec", &model.name]);
    if let Some(u) = &spec.unit {
        report.record(&["unit", u]);
    }
}

pub fn allocate(args: AllocateArgs, display: DisplayConfig) -> Result<(), CliError> {
    let spec = spec_file::load_spec(&args.spec)?;
    let model = &spec.model;
    let d = display.sig_digits;
    let mut report = Report::new();
    report.line("== allocation ==");
    report.record(&["schema", "allocate/1"]);
    spec_header(&mut report, &spec);

    match args.method {
        MethodArg::WorstCase | MethodArg::Statistical | MethodArg::Inflated => {
            let method = match args.method {
                MethodArg::WorstCase => IntervalMethod::WorstCase,
                MethodArg::Statistical => IntervalMethod::Statistical,
                MethodArg::Inflated => {
                    let f = args.f.ok_or_else(|| {
                        CliError::Usage("--f is required for --method inflated".into())
                    })?;
                    IntervalMethod::Inflated { f }
                }
                _ => unreachable!(),
            };
            let r_y = interval_width(&spec, &method.label())?;
            if let IntervalMethod::Inflated { f } = method {
                if let Some(w) = classical::inflated_factor_warning(model.len(), f) {
                    report.line(format!("warning: {w}"));
                }
            }
            let alloc = classical::allocate(model, method, r_y)?;
            report.line(format!("method: {}", method.label()));
            report.line(format!("interval budget: {}", sig(r_y, d)));
            report.blank();
            report.line(format!(
                "{:<12} {:>10} {:>8} {:>14} {:>14}",
                "component", "alpha", "beta", "R_xi", "sigma_max"
            ));
            for e in &alloc.per_component {
                let note = if e.influential {
                    ""
                } else {
                    "  (non-influential)"
                };
                report.line(format!(
                    "{:<12} {:>10} {:>8} {:>14} {:>14}{note}",
                    e.name,
                    sig(e.alpha, d),
                    sig(e.beta, d),
                    sig(e.budget, d),
                    sig(e.budget / 6.0, d),
                ));
            }
            let recomposed = alloc.recompose(model)?;
            report.blank();
            report.line(format!(
                "closure: recomposed width {} against budget {}",
                sig(recomposed, d),
                sig(r_y, d)
            ));
            report.record(&["method", &method.label()]);
            report.record(&["budget", "interval-width", &full(r_y)]);
            for e in &alloc.per_component {
                report.record(&[
                    "component",
                    &e.name,
                    &full(e.alpha),
                    &full(e.beta),
                    &full(e.budget),
                    if e.influential { "true" } else { "false" },
                ]);
            }
            report.record(&["closure", &full(recomposed), &full(r_y)]);
        }
        MethodArg::InertialH1
        | MethodArg::InertialH2
        | MethodArg::InertialH3
        | MethodArg::InertialH4 => {
            let hypothesis = match args.method {
                MethodArg::InertialH1 => InertialHypothesis::WorstCase,
                MethodArg::InertialH2 => InertialHypothesis::RandomMeans,
                MethodArg::InertialH3 => {
                    let k = args.k.ok_or_else(|| {
                        CliError::Usage("--k is required for --method inertial-h3".into())
                    })?;
                    InertialHypothesis::SystematicShift { k }
                }
                MethodArg::InertialH4 => {
                    let k = args.k.ok_or_else(|| {
                        CliError::Usage("--k is required for --method inertial-h4".into())
                    })?;
                    let m = args.m.ok_or_else(|| {
                        CliError::Usage("--m is required for --method inertial-h4".into())
                    })?;
                    InertialHypothesis::PartialShift { m, k }
                }
                _ => unreachable!(),
            };
            let (i_y, bridged) = inertia_budget(&spec)?;
            let alloc = inertial::allocate(model, hypothesis, i_y)?;
            report.line(format!("method: {}", hypothesis.label()));
            if bridged {
                report.line(format!(
                    "inertia budget: {} (interval width {} / 6)",
                    sig(i_y, d),
                    sig(spec.model.resultant.full_width().expect("interval"), d)
                ));
            } else {
                report.line(format!("inertia budget: {}", sig(i_y, d)));
            }
            report.blank();
            report.line(format!(
                "{:<12} {:>10} {:>8} {:>14} {:>14}",
                "component", "alpha", "beta", "I_xi", "sigma_max"
            ));
            for e in &alloc.per_component {
                let note = if e.influential {
                    ""
                } else {
                    "  (non-influential)"
                };
                report.line(format!(
                    "{:<12} {:>10} {:>8} {:>14} {:>14}{note}",
                    e.name,
                    sig(e.alpha, d),
                    sig(e.beta, d),
                    sig(e.budget, d),
                    sig(e.budget, d),
                ));
            }
            let recomposed = alloc.recompose(model)?;
            report.blank();
            report.line(format!(
                "closure: recomposed inertia {} against budget {}",
                sig(recomposed, d),
                sig(i_y, d)
            ));
            report.record(&["method", &hypothesis.label()]);
            report.record(&["budget", "inertia", &full(i_y)]);
            for e in &alloc.per_component {
                report.record(&[
                    "component",
                    &e.name,
                    &full(e.alpha),
                    &full(e.beta),
                    &full(e.budget),
                    if e.influential { "true" } else { "false" },
                ]);
            }
            report.record(&["closure", &full(recomposed), &full(i_y)]);
        }
        MethodArg::Corrected => {
            let r_y = interval_width(&spec, "the corrected method")?;
            let (icc, cpk_target) = resolve_icc(args.icc, args.cpk, model.len(), None)?;
            let alloc = corrected::icc_allocate(model, r_y, icc)?;
            report.line(format!("method: corrected (icc = {icc:.2})"));
            match cpk_target {
                Some(t) => report.line(format!(
                    "coefficient from cpk target {}: icc = {}",
                    sig(t, d),
                    sig(icc, d)
                )),
                None => report.line(format!("coefficient given directly: icc = {}", sig(icc, d))),
            }
            match alloc.guaranteed_cpk_min {
                CpkMin::Value(v) => report.line(format!(
                    "guaranteed resultant cpk: >= {} at worst common offset",
                    sig(v, d)
                )),
                CpkMin::UnboundedBelow => report
                    .line("guaranteed resultant cpk: none (chain too long for this coefficient)"),
            }
            report.blank();
            report.line(format!(
                "{:<12} {:>10} {:>8} {:>14} {:>14}",
                "component", "alpha", "beta", "I_xi", "sigma_max"
            ));
            for e in &alloc.per_component {
                let note = if e.influential {
                    ""
                } else {
                    "  (non-influential)"
                };
                report.line(format!(
                    "{:<12} {:>10} {:>8} {:>14} {:>14}{note}",
                    e.name,
                    sig(e.alpha, d),
                    sig(e.beta, d),
                    sig(e.budget, d),
                    sig(e.budget, d),
                ));
            }
            let centered_cp = alloc.recompose_centered_cp(model)?;
            report.blank();
            report.line(format!(
                "closure: centered resultant capability {} against icc {}",
                sig(centered_cp, d),
                sig(icc, d)
            ));
            report.record(&["method", "corrected"]);
            report.record(&["budget", "interval-width", &full(r_y)]);
            report.record(&["icc", &full(icc)]);
            if let Some(t) = cpk_target {
                report.record(&["cpk_target", &full(t)]);
            }
            report.record(&["guaranteed_cpk_min", &alloc.guaranteed_cpk_min.to_string()]);
            for e in &alloc.per_component {
                report.record(&[
                    "component",
                    &e.name,
                    &full(e.alpha),
                    &full(e.beta),
                    &full(e.budget),
                    if e.influential { "true" } else { "false" },
                ]);
            }
            report.record(&["closure", &full(centered_cp), &full(icc)]);

            if let Some(curve_path) = &args.curve {
                write_curve(curve_path, r_y, icc, model.len(), args.curve_points)?;
                report.line(format!(
                    "capability profile written: {}",
                    curve_path.display()
                ));
                report.record(&["curve", &curve_path.display().to_string()]);
            }
        }
    }

    super::emit(&report, args.out.as_deref())
}

fn write_curve(path: &Path, r_y: f64, icc: f64, n: usize, points: usize) -> Result<(), CliError> {
    let curve = corrected::sample_cpk_curve(r_y, icc, n, points)?;
    let mut text = String::new();
    text.push_str(&format!(
        "# resultant capability vs common component offset\n# r_y={} icc={} n={}\n",
        full(curve.r_y),
        full(curve.icc),
        curve.n
    ));
    text.push_str(&format!(
        "# delta_star={} cpk_min={}\n# columns: delta cpk\n",
        full(curve.delta_star),
        curve.cpk_min
    ));
    for (delta, value) in &curve.samples {
        text.push_str(&format!("{} {}\n", full(*delta), full(*value)));
    }
    std::fs::write(path, text)?;
    Ok(())
}

pub fn compare(args: CompareArgs, _display: DisplayConfig) -> Result<(), CliError> {
    let spec = spec_file::load_spec(&args.spec)?;
    let model = &spec.model;
    let r_y = interval_width(&spec, "method comparison")?;
    let i_y = inertial::budget_from_interval(r_y)?;
    let (icc, _) = resolve_icc(None, Some(args.cpk), model.len(), None)?;

    let interval_rows = [
        classical::allocate(model, IntervalMethod::WorstCase, r_y)?,
        classical::allocate(model, IntervalMethod::Statistical, r_y)?,
        classical::allocate(model, IntervalMethod::Inflated { f: args.f }, r_y)?,
    ];
    let inertia_rows = [
        inertial::allocate(model, InertialHypothesis::WorstCase, i_y)?,
        inertial::allocate(model, InertialHypothesis::RandomMeans, i_y)?,
    ];
    let corrected_alloc = corrected::icc_allocate(model, r_y, icc)?;

    let mut report = Report::new();
    report.line("== method comparison ==");
    report.record(&["schema", "compare/1"]);
    spec_header(&mut report, &spec);
    report.line(format!(
        "interval budget {}, bridged inertia budget {} (width / 6)",
        dec3(r_y),
        dec3(i_y)
    ));
    report.blank();
    report.line(format!(
        "{:<22} {:>8} {:>10} {:>8}",
        "method", "R_xi", "sigma_max", "I_xi"
    ));
    report.record(&["r_y", &full(r_y)]);
    report.record(&["i_y", &full(i_y)]);
    report.record(&["corrected_icc", &full(icc)]);
    report.record(&["cpk_target", &full(args.cpk)]);
    report.record(&["f", &full(args.f)]);

    // Budgets can differ per component on weighted models; the table shows
    // the common value when they agree and the range otherwise. The machine
    // section always carries every component.
    let summarize = |budgets: &[f64]| -> (String, String) {
        let min = budgets.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = budgets.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if (max - min).abs() <= 1e-12 * max.abs().max(1.0) {
            (dec3(min), dec3(min / 6.0))
        } else {
            (
                format!("{}..{}", dec3(min), dec3(max)),
                format!("{}..{}", dec3(min / 6.0), dec3(max / 6.0)),
            )
        }
    };

    for alloc in &interval_rows {
        let budgets = alloc.widths();
        let (shown, sigma_shown) = summarize(&budgets);
        report.line(format!(
            "{:<22} {:>8} {:>10} {:>8}",
            alloc.method.label(),
            shown,
            sigma_shown,
            "-"
        ));
        for (e, b) in alloc.per_component.iter().zip(&budgets) {
            report.record(&[
                "row",
                &alloc.method.label(),
                &e.name,
                &full(*b),
                &full(*b / 6.0),
                "-",
            ]);
        }
    }
    for alloc in &inertia_rows {
        let budgets = alloc.inertias();
        let (shown, _) = summarize(&budgets);
        report.line(format!(
            "{:<22} {:>8} {:>10} {:>8}",
            alloc.hypothesis.label(),
            "-",
            shown,
            shown
        ));
        for (e, b) in alloc.per_component.iter().zip(&budgets) {
            report.record(&[
                "row",
                &alloc.hypothesis.label(),
                &e.name,
                "-",
                &full(*b),
                &full(*b),
            ]);
        }
    }
    {
        let budgets = corrected_alloc.inertias();
        let (shown, _) = summarize(&budgets);
        let label = format!("corrected (icc={icc:.2})");
        report.line(format!("{label:<22} {:>8} {shown:>10} {shown:>8}", "-"));
        for (e, b) in corrected_alloc.per_component.iter().zip(&budgets) {
            report.record(&["row", "corrected", &e.name, "-", &full(*b), &full(*b)]);
        }
    }
    report.blank();
    report.line(
        "sigma_max: largest centered dispersion each method tolerates (R_xi/6 for \
         interval methods, I_xi for inertial methods)",
    );

    super::emit(&report, args.out.as_deref())
}

pub fn capability(args: CapabilityArgs, display: DisplayConfig) -> Result<(), CliError> {
    let spec = spec_file::load_spec(&args.spec)?;
    let model = &spec.model;
    let d = display.sig_digits;
    let data = batch::load_batch(&args.data)?;
    let stats = batch::component_stats(&data, &spec)?;

    // Components are scored against inertia budgets, so only the
    // inertia-producing methods apply here.
    let method = args.method.unwrap_or(match model.resultant.kind {
        ToleranceKind::Interval { .. } => MethodArg::Corrected,
        ToleranceKind::Inertia { .. } => MethodArg::InertialH2,
    });
    let (label, budgets): (String, Vec<f64>) = match method {
        MethodArg::Corrected => {
            let r_y = interval_width(&spec, "the corrected method")?;
            let (icc, _) = resolve_icc(args.icc, args.cpk, model.len(), Some(1.0))?;
            let alloc = corrected::icc_allocate(model, r_y, icc)?;
            (format!("corrected (icc = {icc:.2})"), alloc.inertias())
        }
        MethodArg::InertialH1
        | MethodArg::InertialH2
        | MethodArg::InertialH3
        | MethodArg::InertialH4 => {
            let hypothesis = match method {
                MethodArg::InertialH1 => InertialHypothesis::WorstCase,
                MethodArg::InertialH2 => InertialHypothesis::RandomMeans,
                MethodArg::InertialH3 => InertialHypothesis::SystematicShift {
                    k: args.k.ok_or_else(|| {
                        CliError::Usage("--k is required for --method inertial-h3".into())
                    })?,
                },
                MethodArg::InertialH4 => InertialHypothesis::PartialShift {
                    m: args.m.ok_or_else(|| {
                        CliError::Usage("--m is required for --method inertial-h4".into())
                    })?,
                    k: args.k.ok_or_else(|| {
                        CliError::Usage("--k is required for --method inertial-h4".into())
                    })?,
                },
                _ => unreachable!(),
            };
            let (i_y, _) = inertia_budget(&spec)?;
            let alloc = inertial::allocate(model, hypothesis, i_y)?;
            (hypothesis.label(), alloc.inertias())
        }
        _ => {
            return Err(CliError::Unsupported(
                "capability scoring needs an inertia-producing method \
                 (inertial-h1..h4 or corrected)"
                    .into(),
            ))
        }
    };

    let mut report = Report::new();
    report.line("== capability ==");
    report.record(&["schema", "capability/1"]);
    spec_header(&mut report, &spec);
    report.line(format!("allocation: {label}"));
    report.record(&["method", &label]);
    report.blank();
    report.line(format!(
        "{:<12} {:>6} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "component", "count", "delta", "sigma", "inertia", "I_max", "Cp", "Cpi"
    ));
    let count = data.values[0].len();
    for ((component, s), &i_max) in model.components.iter().zip(&stats).zip(&budgets) {
        let caps = stack::CapabilitySet::against_inertia(i_max, s)?;
        report.line(format!(
            "{:<12} {:>6} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
            component.name,
            count,
            sig(s.delta(), d),
            sig(s.sigma(), d),
            sig(s.inertia(), d),
            sig(i_max, d),
            sig_opt(caps.cp, d),
            sig_opt(caps.cpi, d),
        ));
        report.record(&[
            "component",
            &component.name,
            &count.to_string(),
            &full(s.delta()),
            &full(s.sigma()),
            &full(s.inertia()),
            &full(i_max),
            &full_opt(caps.cp),
            &full_opt(caps.cpi),
        ]);
    }

    let resultant = stack::resultant_stats(model, &stats)?;
    report.blank();
    report.line(format!(
        "resultant: delta {} sigma {} inertia {}",
        sig(resultant.delta(), d),
        sig(resultant.sigma(), d),
        sig(resultant.inertia(), d)
    ));
    report.record(&[
        "resultant",
        &full(resultant.delta()),
        &full(resultant.sigma()),
        &full(resultant.inertia()),
    ]);
    match model.resultant.kind {
        ToleranceKind::Interval { full_width } => {
            let caps = stack::CapabilitySet::against_interval(full_width, &resultant)?;
            report.line(format!(
                "resultant capability: Cp {} Cpk {}",
                sig_opt(caps.cp, d),
                sig_opt(caps.cpk, d)
            ));
            report.record(&["resultant_cp", &full_opt(caps.cp)]);
            report.record(&["resultant_cpk", &full_opt(caps.cpk)]);
        }
        ToleranceKind::Inertia { max_inertia } => {
            let caps = stack::CapabilitySet::against_inertia(max_inertia, &resultant)?;
            report.line(format!(
                "resultant capability: Cp {} Cpi {}",
                sig_opt(caps.cp, d),
                sig_opt(caps.cpi, d)
            ));
            report.record(&["resultant_cp", &full_opt(caps.cp)]);
            report.record(&["resultant_cpi", &full_opt(caps.cpi)]);
        }
    }

    super::emit(&report, args.out.as_deref())
}

pub fn abacus(args: AbacusArgs, _display: DisplayConfig) -> Result<(), CliError> {
    if args.n_min == 0 || args.n_min > args.n_max {
        return Err(CliError::Usage(format!(
            "need 1 <= n-min <= n-max, got {}..={}",
            args.n_min, args.n_max
        )));
    }
    let table = corrected::build_abacus(args.n_min..=args.n_max, &args.cpk)?;

    let mut csv_text = String::from("n,cpk_target,icc\n");
    for row in &table.rows {
        csv_text.push_str(&format!(
            "{},{},{}\n",
            row.n,
            full(row.cpk_target),
            full(row.icc)
        ));
    }
    std::fs::write(&args.out, csv_text)?;

    if let Some(dir) = &args.curves {
        std::fs::create_dir_all(dir)?;
        for &target in &args.cpk {
            let mut text = format!(
                "# coefficient vs chain length at cpk target {}\n# columns: n icc\n",
                full(target)
            );
            for row in table.rows.iter().filter(|r| r.cpk_target == target) {
                text.push_str(&format!("{} {}\n", row.n, full(row.icc)));
            }
            let file = dir.join(format!("icc_vs_n_cpk_{}.dat", full(target)));
            std::fs::write(file, text)?;
        }
    }

    let mut report = Report::new();
    report.line("== abacus ==");
    report.line(format!(
        "coefficient grid written: {} ({} rows, n = {}..={}, targets: {})",
        args.out.display(),
        table.rows.len(),
        args.n_min,
        args.n_max,
        args.cpk
            .iter()
            .map(|t| full(*t))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    if let Some(dir) = &args.curves {
        report.line(format!(
            "per-target curve files written under: {}",
            dir.display()
        ));
    }
    report.record(&["schema", "abacus/1"]);
    report.record(&["file", &args.out.display().to_string()]);
    report.record(&["rows", &table.rows.len().to_string()]);
    super::emit(&report, None)
}

pub fn verify(args: VerifyArgs, display: DisplayConfig) -> Result<(), CliError> {
    match args.mode {
        VerifyMode::Grid => verify_grid(args, display),
        VerifyMode::MonteCarlo => verify_monte_carlo(args, display),
        VerifyMode::Derivative => verify_derivative(args, display),
    }
}

struct Checks {
    report: Report,
    all_passed: bool,
}

impl Checks {
    fn new(report: Report) -> Self {
        Self {
            report,
            all_passed: true,
        }
    }

    fn check(&mut self, name: &str, detail: String, passed: bool, machine: &[&str]) {
        let verdict = if passed { "PASS" } else { "FAIL" };
        self.report.line(format!("[{verdict}] {name}: {detail}"));
        let mut row = vec!["check", name];
        row.extend_from_slice(machine);
        row.push(verdict);
        self.report.record(&row);
        self.all_passed &= passed;
    }

    fn finish(mut self, out: Option<&Path>) -> Result<(), CliError> {
        let verdict = if self.all_passed { "PASS" } else { "FAIL" };
        self.report.blank();
        self.report.line(format!("result: {verdict}"));
        self.report.record(&["result", verdict]);
        super::emit(&self.report, out)?;
        if self.all_passed {
            Ok(())
        } else {
            Err(CliError::VerificationFailed(
                "one or more verification checks failed".into(),
            ))
        }
    }
}

const GRID_MIN_TOLERANCE: f64 = 1e-2;

fn verify_grid(args: VerifyArgs, display: DisplayConfig) -> Result<(), CliError> {
    let d = display.sig_digits;
    let mut report = Report::new();
    report.line("== verify: exhaustive offset grid ==");
    report.record(&["schema", "verify/1"]);
    report.record(&["mode", "grid"]);

    // With a spec the search runs over the model's own incidence
    // coefficients and allocated budgets; otherwise over a uniform chain of
    // length --n.
    let (result, n, alphas, limits) = match &args.spec {
        Some(path) => {
            let spec = spec_file::load_spec(path)?;
            let result =
                verify::grid_min_cpk_general(&spec.model, args.r_y, args.icc, args.resolution)?;
            let alphas: Vec<f64> = spec.model.components.iter().map(|c| c.alpha).collect();
            let limits = corrected::icc_allocate(&spec.model, args.r_y, args.icc)?.inertias();
            report.line(format!(
                "spec: {} (n = {})",
                spec.model.name,
                spec.model.len()
            ));
            (result, spec.model.len(), alphas, limits)
        }
        None => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("grid mode needs --n or --spec".into()))?;
            let result = verify::grid_min_cpk(n, args.r_y, args.icc, args.resolution)?;
            let limit = corrected::component_inertia(args.r_y, args.icc, n)?;
            (result, n, vec![1.0; n], vec![limit; n])
        }
    };
    let analytic = match corrected::cpk_min(args.icc, n)? {
        CpkMin::Value(v) => v,
        CpkMin::UnboundedBelow => {
            return Err(CliError::Unsupported(format!(
                "no capability floor exists for n = {n} at icc = {}; nothing to verify",
                args.icc
            )))
        }
    };
    report.line(format!(
        "r_y = {}, icc = {}, resolution = {} ({} evaluations)",
        full(args.r_y),
        full(args.icc),
        result.grid_resolution,
        result.evaluations
    ));
    report.blank();

    let mut checks = Checks::new(report);
    checks.check(
        "min_cpk",
        format!(
            "grid minimum {} vs analytic floor {} (tolerance {GRID_MIN_TOLERANCE})",
            sig(result.min_cpk, d),
            sig(analytic, d)
        ),
        (result.min_cpk - analytic).abs() <= GRID_MIN_TOLERANCE,
        &[&full(result.min_cpk), &full(analytic)],
    );

    let d_star = corrected::worst_offset(args.r_y, args.icc)?;
    for (i, ((&found, &alpha), &limit)) in result
        .argmin_offsets
        .iter()
        .zip(&alphas)
        .zip(&limits)
        .enumerate()
    {
        let expected = d_star / alpha.abs();
        let cell = limit * (1.0 - 1e-6) / (result.grid_resolution - 1) as f64;
        checks.check(
            &format!("argmin[{i}]"),
            format!(
                "found offset {} vs expected {} (one grid cell = {})",
                sig(found, d),
                sig(expected, d),
                sig(cell, d)
            ),
            (found - expected).abs() <= cell + 1e-15,
            &[&full(found), &full(expected), &full(cell)],
        );
    }
    checks.finish(args.out.as_deref())
}

fn verify_monte_carlo(args: VerifyArgs, display: DisplayConfig) -> Result<(), CliError> {
    let d = display.sig_digits;
    let spec_path = args
        .spec
        .as_ref()
        .ok_or_else(|| CliError::Usage("monte-carlo mode needs --spec".into()))?;
    let spec = spec_file::load_spec(spec_path)?;
    let model = spec.model.clone();

    let distribution = match args.dist {
        DistArg::Normal => SampleDistribution::Normal,
        DistArg::Uniform => SampleDistribution::Uniform,
    };
    let plan = SimulationPlan::common(
        model.clone(),
        args.delta,
        args.sigma,
        distribution,
        args.samples,
        args.seed,
    );
    let empirical = verify::monte_carlo_assembly(&plan)?;
    let component = BatchStats::new(args.delta, args.sigma)?;
    let analytic = stack::resultant_stats(&model, &vec![component; model.len()])?;

    let mut report = Report::new();
    report.line("== verify: monte carlo assembly ==");
    report.record(&["schema", "verify/1"]);
    report.record(&["mode", "monte-carlo"]);
    report.line(format!("spec: {} (n = {})", model.name, model.len()));
    report.line(format!(
        "samples = {}, seed = {}, per-component delta = {}, sigma = {}, distribution = {}",
        args.samples,
        args.seed,
        full(args.delta),
        full(args.sigma),
        match distribution {
            SampleDistribution::Normal => "normal",
            SampleDistribution::Uniform => "uniform",
        }
    ));
    report.record(&["samples", &args.samples.to_string()]);
    report.record(&["seed", &args.seed.to_string()]);
    report.blank();

    // Agreement within four standard errors keeps the check deterministic in
    // practice (false-failure odds around 6e-5 per quantity).
    let mut checks = Checks::new(report);
    let quantities = [
        (
            "delta_y",
            empirical.stats.delta(),
            analytic.delta(),
            empirical.se_delta,
        ),
        (
            "sigma_y",
            empirical.stats.sigma(),
            analytic.sigma(),
            empirical.se_sigma,
        ),
        (
            "inertia_y",
            empirical.stats.inertia(),
            analytic.inertia(),
            empirical.se_inertia,
        ),
    ];
    for (name, observed, expected, se) in quantities {
        let distance = (observed - expected).abs();
        checks.check(
            name,
            format!(
                "empirical {} vs analytic {} (|diff| {} <= 4 se = {})",
                sig(observed, d),
                sig(expected, d),
                sig(distance, d),
                sig(4.0 * se, d)
            ),
            distance <= 4.0 * se,
            &[&full(observed), &full(expected), &full(se)],
        );
    }
    checks.finish(args.out.as_deref())
}

const DERIVATIVE_TOLERANCE: f64 = 1e-6;

fn verify_derivative(args: VerifyArgs, display: DisplayConfig) -> Result<(), CliError> {
    let d = display.sig_digits;
    let n = args.n.unwrap_or(3);
    if args.points == 0 {
        return Err(CliError::Usage(
            "derivative mode needs --points >= 1".into(),
        ));
    }
    let i_x = corrected::component_inertia(args.r_y, args.icc, n)?;
    let step = 1e-7 * i_x;

    let mut worst = 0.0_f64;
    let mut worst_delta = 0.0_f64;
    for k in 1..=args.points {
        let delta = i_x * k as f64 / (args.points + 1) as f64;
        let err = verify::derivative_check(args.r_y, args.icc, n, delta, step)?;
        if err > worst {
            worst = err;
            worst_delta = delta;
        }
    }

    let mut report = Report::new();
    report.line("== verify: derivative vs central differences ==");
    report.record(&["schema", "verify/1"]);
    report.record(&["mode", "derivative"]);
    report.line(format!(
        "r_y = {}, icc = {}, n = {n}, {} interior points, step = {}",
        full(args.r_y),
        full(args.icc),
        args.points,
        full(step)
    ));
    report.blank();
    let mut checks = Checks::new(report);
    checks.check(
        "max_relative_error",
        format!(
            "worst disagreement {} at offset {} (tolerance {DERIVATIVE_TOLERANCE})",
            sig(worst, d),
            sig(worst_delta, d)
        ),
        worst < DERIVATIVE_TOLERANCE,
        &[&full(worst), &full(worst_delta)],
    );
    checks.finish(args.out.as_deref())
}
