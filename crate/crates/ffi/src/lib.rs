//! C ABI for the inertol tolerance allocation library.
//!
//! The interface follows the usual C binding conventions: an opaque model
//! handle built incrementally, status codes instead of panics, and
//! caller-provided buffers for per-component results. The header is
//! generated into `include/inertol.h` at build time.

use std::ffi::{c_char, CStr};

use inertol::error::Error;
use inertol::stack::{AssemblyModel, ComponentSpec, ResultantSpec, ToleranceKind};
use inertol::{classical, corrected, inertial};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InertolStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument violates a precondition.
    InvalidInput = 2,
    /// No component influences the resultant.
    DegenerateModel = 3,
    /// The hypothesis is not defined for this model shape.
    UnsupportedHypothesis = 4,
    /// A value lies outside the expression's domain.
    OutOfDomain = 5,
    /// The request exceeds an exhaustive routine's size cap.
    UnsupportedSize = 6,
    /// The capability index is undefined (degenerate batch).
    UndefinedCapability = 7,
    /// The output buffer is smaller than the component count.
    BufferTooSmall = 8,
    /// The model has no resultant requirement of the needed kind.
    MissingResultant = 9,
    /// A string argument is not valid UTF-8.
    InvalidUtf8 = 10,
}

impl From<&Error> for InertolStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidInput(_) => InertolStatus::InvalidInput,
            Error::DegenerateModel(_) => InertolStatus::DegenerateModel,
            Error::UnsupportedHypothesis(_) => InertolStatus::UnsupportedHypothesis,
            Error::OutOfDomain(_) => InertolStatus::OutOfDomain,
            Error::UnsupportedSize(_) => InertolStatus::UnsupportedSize,
        }
    }
}

/// Opaque assembly model handle. Build with `inertol_model_add_component`
/// and one of the `inertol_model_set_*` calls, then pass to the allocation
/// functions. Treat as owned by one thread at a time.
pub struct InertolModel {
    components: Vec<ComponentSpec>,
    resultant: Option<ResultantSpec>,
}

impl InertolModel {
    fn to_model(&self) -> Result<AssemblyModel, InertolStatus> {
        let resultant = self.resultant.ok_or(InertolStatus::MissingResultant)?;
        AssemblyModel::new(
            "ffi-model",
            resultant.target,
            self.components.clone(),
            resultant,
        )
        .map_err(|e| InertolStatus::from(&e))
    }

    fn interval_width(&self) -> Result<f64, InertolStatus> {
        self.resultant
            .and_then(|r| r.full_width())
            .ok_or(InertolStatus::MissingResultant)
    }

    /// Inertia budget: direct for inertia requirements, `width / 6` for
    /// interval requirements.
    fn inertia_budget(&self) -> Result<f64, InertolStatus> {
        let resultant = self.resultant.ok_or(InertolStatus::MissingResultant)?;
        match resultant.kind {
            ToleranceKind::Inertia { max_inertia } => Ok(max_inertia),
            ToleranceKind::Interval { full_width } => {
                inertial::budget_from_interval(full_width).map_err(|e| InertolStatus::from(&e))
            }
        }
    }
}

/// Library version as a static nul-terminated string; do not free.
#[no_mangle]
pub extern "C" fn inertol_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static name of a status code; do not free.
#[no_mangle]
pub extern "C" fn inertol_status_name(status: InertolStatus) -> *const c_char {
    let name: &'static str = match status {
        InertolStatus::Ok => "ok\0",
        InertolStatus::NullPointer => "null-pointer\0",
        InertolStatus::InvalidInput => "invalid-input\0",
        InertolStatus::DegenerateModel => "degenerate-model\0",
        InertolStatus::UnsupportedHypothesis => "unsupported-hypothesis\0",
        InertolStatus::OutOfDomain => "out-of-domain\0",
        InertolStatus::UnsupportedSize => "unsupported-size\0",
        InertolStatus::UndefinedCapability => "undefined-capability\0",
        InertolStatus::BufferTooSmall => "buffer-too-small\0",
        InertolStatus::MissingResultant => "missing-resultant\0",
        InertolStatus::InvalidUtf8 => "invalid-utf8\0",
    };
    name.as_ptr() as *const c_char
}

/// Allocate an empty model. Free with `inertol_model_free`.
#[no_mangle]
pub extern "C" fn inertol_model_new() -> *mut InertolModel {
    Box::into_raw(Box::new(InertolModel {
        components: Vec::new(),
        resultant: None,
    }))
}

/// Free a model created by `inertol_model_new`. A null pointer is ignored.
///
/// # Safety
/// `model` must be null or a pointer returned by `inertol_model_new` that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn inertol_model_free(model: *mut InertolModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

unsafe fn model_ref<'a>(model: *const InertolModel) -> Result<&'a InertolModel, InertolStatus> {
    model.as_ref().ok_or(InertolStatus::NullPointer)
}

unsafe fn model_mut<'a>(model: *mut InertolModel) -> Result<&'a mut InertolModel, InertolStatus> {
    model.as_mut().ok_or(InertolStatus::NullPointer)
}

unsafe fn write_out(out: *mut f64, value: f64) -> InertolStatus {
    if out.is_null() {
        return InertolStatus::NullPointer;
    }
    *out = value;
    InertolStatus::Ok
}

/// Append a component with the given incidence coefficient and feasibility
/// weight (`beta > 0`; pass 1.0 for uniform chains). Component names must be
/// unique.
///
/// # Safety
/// `model` must be a live model pointer; `name` must be a nul-terminated
/// string valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn inertol_model_add_component(
    model: *mut InertolModel,
    name: *const c_char,
    alpha: f64,
    beta: f64,
) -> InertolStatus {
    let handle = match model_mut(model) {
        Ok(h) => h,
        Err(s) => return s,
    };
    if name.is_null() {
        return InertolStatus::NullPointer;
    }
    let name = match CStr::from_ptr(name).to_str() {
        Ok(n) => n,
        Err(_) => return InertolStatus::InvalidUtf8,
    };
    match ComponentSpec::new(name, alpha, beta) {
        Ok(spec) => {
            if handle.components.iter().any(|c| c.name == spec.name) {
                return InertolStatus::InvalidInput;
            }
            handle.components.push(spec);
            InertolStatus::Ok
        }
        Err(e) => InertolStatus::from(&e),
    }
}

/// Set a symmetric interval requirement on the resultant (`full_width > 0`).
///
/// # Safety
/// `model` must be a live model pointer.
#[no_mangle]
pub unsafe extern "C" fn inertol_model_set_interval(
    model: *mut InertolModel,
    target: f64,
    full_width: f64,
) -> InertolStatus {
    let handle = match model_mut(model) {
        Ok(h) => h,
        Err(s) => return s,
    };
    match ResultantSpec::interval(target, full_width) {
        Ok(spec) => {
            handle.resultant = Some(spec);
            InertolStatus::Ok
        }
        Err(e) => InertolStatus::from(&e),
    }
}

/// Set a maximum-inertia requirement on the resultant (`max_inertia > 0`).
///
/// # Safety
/// `model` must be a live model pointer.
#[no_mangle]
pub unsafe extern "C" fn inertol_model_set_inertia(
    model: *mut InertolModel,
    target: f64,
    max_inertia: f64,
) -> InertolStatus {
    let handle = match model_mut(model) {
        Ok(h) => h,
        Err(s) => return s,
    };
    match ResultantSpec::inertia(target, max_inertia) {
        Ok(spec) => {
            handle.resultant = Some(spec);
            InertolStatus::Ok
        }
        Err(e) => InertolStatus::from(&e),
    }
}

/// Number of components added so far; 0 for a null model.
///
/// # Safety
/// `model` must be null or a live model pointer.
#[no_mangle]
pub unsafe extern "C" fn inertol_model_component_count(model: *const InertolModel) -> usize {
    model_ref(model).map_or(0, |h| h.components.len())
}

/// Batch inertia `sqrt(sigma^2 + delta^2)`.
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn inertol_inertia(sigma: f64, delta: f64, out: *mut f64) -> InertolStatus {
    match inertol::stack::inertia_from_stats(sigma, delta) {
        Ok(v) => write_out(out, v),
        Err(e) => InertolStatus::from(&e),
    }
}

/// Interval capability `(full_width/2 - |delta|) / (3 sigma)`. Returns
/// `UndefinedCapability` for a zero-dispersion batch.
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn inertol_cpk(
    full_width: f64,
    delta: f64,
    sigma: f64,
    out: *mut f64,
) -> InertolStatus {
    match inertol::stack::cpk(full_width, delta, sigma) {
        Ok(Some(v)) => write_out(out, v),
        Ok(None) => InertolStatus::UndefinedCapability,
        Err(e) => InertolStatus::from(&e),
    }
}

/// Inertial capability `i_max / sqrt(sigma^2 + delta^2)`. Returns
/// `UndefinedCapability` for a zero-inertia batch.
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn inertol_cpi(
    i_max: f64,
    sigma: f64,
    delta: f64,
    out: *mut f64,
) -> InertolStatus {
    let stats = match inertol::stack::BatchStats::new(delta, sigma) {
        Ok(s) => s,
        Err(e) => return InertolStatus::from(&e),
    };
    match inertol::stack::cpi(i_max, &stats) {
        Ok(Some(v)) => write_out(out, v),
        Ok(None) => InertolStatus::UndefinedCapability,
        Err(e) => InertolStatus::from(&e),
    }
}

/// Correction coefficient guaranteeing `cpk_target` on a chain of `n`
/// components: `sqrt(cpk_target^2 + n/9)`.
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn inertol_icc_for_cpk(
    cpk_target: f64,
    n: usize,
    out: *mut f64,
) -> InertolStatus {
    match corrected::icc_for_cpk(cpk_target, n) {
        Ok(v) => write_out(out, v),
        Err(e) => InertolStatus::from(&e),
    }
}

/// Floor of the resultant capability index: `sqrt(icc^2 - n/9)` when it
/// exists. When the floor does not exist (`n > 9 icc^2`), `*unbounded` is
/// set to true and `*out` is left untouched.
///
/// # Safety
/// `out` and `unbounded` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn inertol_cpk_min(
    icc: f64,
    n: usize,
    out: *mut f64,
    unbounded: *mut bool,
) -> InertolStatus {
    if unbounded.is_null() || out.is_null() {
        return InertolStatus::NullPointer;
    }
    match corrected::cpk_min(icc, n) {
        Ok(corrected::CpkMin::Value(v)) => {
            *unbounded = false;
            write_out(out, v)
        }
        Ok(corrected::CpkMin::UnboundedBelow) => {
            *unbounded = true;
            InertolStatus::Ok
        }
        Err(e) => InertolStatus::from(&e),
    }
}

/// Common component offset minimizing the resultant index:
/// `r_y / (18 icc^2)`.
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn inertol_worst_offset(r_y: f64, icc: f64, out: *mut f64) -> InertolStatus {
    match corrected::worst_offset(r_y, icc) {
        Ok(v) => write_out(out, v),
        Err(e) => InertolStatus::from(&e),
    }
}

/// Resultant index when all `n` components sit at their allocated inertia
/// with common offset `delta`; infinite at the domain edge.
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn inertol_cpk_at_offset(
    r_y: f64,
    icc: f64,
    n: usize,
    delta: f64,
    out: *mut f64,
) -> InertolStatus {
    match corrected::cpk_at_offset(r_y, icc, n, delta) {
        Ok(v) => write_out(out, v),
        Err(e) => InertolStatus::from(&e),
    }
}

/// Derivative of the index profile on the non-negative branch.
///
/// # Safety
/// `out` must point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn inertol_cpk_derivative(
    r_y: f64,
    icc: f64,
    n: usize,
    delta: f64,
    out: *mut f64,
) -> InertolStatus {
    match corrected::cpk_derivative(r_y, icc, n, delta) {
        Ok(v) => write_out(out, v),
        Err(e) => InertolStatus::from(&e),
    }
}

/// Component capacity of a coefficient at a target index: real budget
/// `9 (icc^2 - cpk_target^2)` clamped at zero, and its floor.
///
/// # Safety
/// `out_budget` and `out_capacity` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn inertol_max_components(
    icc: f64,
    cpk_target: f64,
    out_budget: *mut f64,
    out_capacity: *mut u64,
) -> InertolStatus {
    if out_capacity.is_null() {
        return InertolStatus::NullPointer;
    }
    match corrected::max_components(icc, cpk_target) {
        Ok(c) => {
            *out_capacity = c.capacity;
            write_out(out_budget, c.budget)
        }
        Err(e) => InertolStatus::from(&e),
    }
}

unsafe fn write_budgets(budgets: &[f64], out: *mut f64, out_len: usize) -> InertolStatus {
    if out.is_null() {
        return InertolStatus::NullPointer;
    }
    if out_len < budgets.len() {
        return InertolStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(budgets.as_ptr(), out, budgets.len());
    InertolStatus::Ok
}

macro_rules! interval_allocation {
    ($handle:expr, $out:expr, $out_len:expr, $method:expr) => {{
        let handle = match model_ref($handle) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let model = match handle.to_model() {
            Ok(m) => m,
            Err(s) => return s,
        };
        let r_y = match handle.interval_width() {
            Ok(w) => w,
            Err(s) => return s,
        };
        match classical::allocate(&model, $method, r_y) {
            Ok(alloc) => write_budgets(&alloc.widths(), $out, $out_len),
            Err(e) => InertolStatus::from(&e),
        }
    }};
}

/// Worst-case interval allocation of the model's interval width; writes one
/// full width per component in insertion order.
///
/// # Safety
/// `model` must be a live model pointer; `out` must point to at least
/// `out_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn inertol_allocate_worst_case(
    model: *const InertolModel,
    out: *mut f64,
    out_len: usize,
) -> InertolStatus {
    interval_allocation!(model, out, out_len, classical::IntervalMethod::WorstCase)
}

/// Statistical (RSS) interval allocation; see `inertol_allocate_worst_case`.
///
/// # Safety
/// As `inertol_allocate_worst_case`.
#[no_mangle]
pub unsafe extern "C" fn inertol_allocate_statistical(
    model: *const InertolModel,
    out: *mut f64,
    out_len: usize,
) -> InertolStatus {
    interval_allocation!(model, out, out_len, classical::IntervalMethod::Statistical)
}

/// Inflated statistical interval allocation with factor `f >= 1`.
///
/// # Safety
/// As `inertol_allocate_worst_case`.
#[no_mangle]
pub unsafe extern "C" fn inertol_allocate_inflated(
    model: *const InertolModel,
    f: f64,
    out: *mut f64,
    out_len: usize,
) -> InertolStatus {
    interval_allocation!(
        model,
        out,
        out_len,
        classical::IntervalMethod::Inflated { f }
    )
}

macro_rules! inertia_allocation {
    ($handle:expr, $out:expr, $out_len:expr, $hypothesis:expr) => {{
        let handle = match model_ref($handle) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let model = match handle.to_model() {
            Ok(m) => m,
            Err(s) => return s,
        };
        let i_y = match handle.inertia_budget() {
            Ok(b) => b,
            Err(s) => return s,
        };
        match inertial::allocate(&model, $hypothesis, i_y) {
            Ok(alloc) => write_budgets(&alloc.inertias(), $out, $out_len),
            Err(e) => InertolStatus::from(&e),
        }
    }};
}

/// Worst-case inertia allocation. The budget is the model's inertia
/// requirement, or its interval width divided by 6.
///
/// # Safety
/// As `inertol_allocate_worst_case`.
#[no_mangle]
pub unsafe extern "C" fn inertol_allocate_inertia_worst_case(
    model: *const InertolModel,
    out: *mut f64,
    out_len: usize,
) -> InertolStatus {
    inertia_allocation!(model, out, out_len, inertial::InertialHypothesis::WorstCase)
}

/// Random-means inertia allocation; see
/// `inertol_allocate_inertia_worst_case` for the budget rule.
///
/// # Safety
/// As `inertol_allocate_worst_case`.
#[no_mangle]
pub unsafe extern "C" fn inertol_allocate_inertia_random_means(
    model: *const InertolModel,
    out: *mut f64,
    out_len: usize,
) -> InertolStatus {
    inertia_allocation!(
        model,
        out,
        out_len,
        inertial::InertialHypothesis::RandomMeans
    )
}

/// Systematic-shift inertia allocation (`delta = k sigma` on every
/// component); uniform chains only.
///
/// # Safety
/// As `inertol_allocate_worst_case`.
#[no_mangle]
pub unsafe extern "C" fn inertol_allocate_inertia_systematic(
    model: *const InertolModel,
    k: f64,
    out: *mut f64,
    out_len: usize,
) -> InertolStatus {
    inertia_allocation!(
        model,
        out,
        out_len,
        inertial::InertialHypothesis::SystematicShift { k }
    )
}

/// Partial-shift inertia allocation (`m` of the components shifted);
/// uniform chains only.
///
/// # Safety
/// As `inertol_allocate_worst_case`.
#[no_mangle]
pub unsafe extern "C" fn inertol_allocate_inertia_partial(
    model: *const InertolModel,
    m: usize,
    k: f64,
    out: *mut f64,
    out_len: usize,
) -> InertolStatus {
    inertia_allocation!(
        model,
        out,
        out_len,
        inertial::InertialHypothesis::PartialShift { m, k }
    )
}

/// Corrected inertial allocation from the model's interval width at the
/// given coefficient; writes one inertia per component.
///
/// # Safety
/// As `inertol_allocate_worst_case`.
#[no_mangle]
pub unsafe extern "C" fn inertol_allocate_corrected(
    model: *const InertolModel,
    icc: f64,
    out: *mut f64,
    out_len: usize,
) -> InertolStatus {
    let handle = match model_ref(model) {
        Ok(h) => h,
        Err(s) => return s,
    };
    let assembled = match handle.to_model() {
        Ok(m) => m,
        Err(s) => return s,
    };
    let r_y = match handle.interval_width() {
        Ok(w) => w,
        Err(s) => return s,
    };
    match corrected::icc_allocate(&assembled, r_y, icc) {
        Ok(alloc) => write_budgets(&alloc.inertias(), out, out_len),
        Err(e) => InertolStatus::from(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    struct Handle(*mut InertolModel);

    impl Drop for Handle {
        fn drop(&mut self) {
            unsafe { inertol_model_free(self.0) };
        }
    }

    fn gap_model() -> Handle {
        let model = inertol_model_new();
        let alphas = [1.0, -1.0, -1.0, -1.0, -1.0];
        for (i, alpha) in alphas.iter().enumerate() {
            let name = CString::new(format!("x{}", i + 1)).unwrap();
            let status = unsafe { inertol_model_add_component(model, name.as_ptr(), *alpha, 1.0) };
            assert_eq!(status, InertolStatus::Ok);
        }
        assert_eq!(
            unsafe { inertol_model_set_interval(model, 1.0, 1.0) },
            InertolStatus::Ok
        );
        Handle(model)
    }

    #[test]
    fn version_and_status_names_are_c_strings() {
        let version = unsafe { CStr::from_ptr(inertol_version()) };
        assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
        let name = unsafe { CStr::from_ptr(inertol_status_name(InertolStatus::OutOfDomain)) };
        assert_eq!(name.to_str().unwrap(), "out-of-domain");
    }

    #[test]
    fn scalar_functions_round_trip() {
        let mut out = 0.0;
        assert_eq!(
            unsafe { inertol_inertia(0.03, 0.04, &mut out) },
            InertolStatus::Ok
        );
        assert_eq!(out, 0.05);

        assert_eq!(
            unsafe { inertol_cpk(1.0, 0.0, 1.0 / 6.0, &mut out) },
            InertolStatus::Ok
        );
        assert!((out - 1.0).abs() < 1e-12);
        assert_eq!(
            unsafe { inertol_cpk(1.0, 0.0, 0.0, &mut out) },
            InertolStatus::UndefinedCapability
        );

        assert_eq!(
            unsafe { inertol_cpi(0.06, 0.03, 0.04, &mut out) },
            InertolStatus::Ok
        );
        assert!((out - 1.2).abs() < 1e-12);

        assert_eq!(
            unsafe { inertol_icc_for_cpk(1.0, 5, &mut out) },
            InertolStatus::Ok
        );
        assert!((out - 1.2472).abs() < 1e-4);

        assert_eq!(
            unsafe { inertol_worst_offset(1.0, 1.0, &mut out) },
            InertolStatus::Ok
        );
        assert!((out - 1.0 / 18.0).abs() < 1e-15);

        assert_eq!(
            unsafe { inertol_cpk_at_offset(1.0, 1.0, 3, 1.0 / 18.0, &mut out) },
            InertolStatus::Ok
        );
        assert!((out - (2.0_f64 / 3.0).sqrt()).abs() < 1e-12);

        assert_eq!(
            unsafe { inertol_cpk_derivative(1.0, 1.0, 3, 0.0, &mut out) },
            InertolStatus::Ok
        );
        assert!((out - (-6.0)).abs() < 1e-12);

        let mut budget = 0.0;
        let mut capacity = 0u64;
        assert_eq!(
            unsafe { inertol_max_components(1.5, 1.0, &mut budget, &mut capacity) },
            InertolStatus::Ok
        );
        assert!((budget - 11.25).abs() < 1e-12);
        assert_eq!(capacity, 11);
    }

    #[test]
    fn floor_reports_unbounded_chains() {
        let mut out = 0.0;
        let mut unbounded = false;
        assert_eq!(
            unsafe { inertol_cpk_min(1.5, 9, &mut out, &mut unbounded) },
            InertolStatus::Ok
        );
        assert!(!unbounded);
        assert!((out - 1.118).abs() < 5e-4);
        assert_eq!(
            unsafe { inertol_cpk_min(1.0, 12, &mut out, &mut unbounded) },
            InertolStatus::Ok
        );
        assert!(unbounded);
    }

    #[test]
    fn allocations_fill_caller_buffers() {
        let handle = gap_model();
        assert_eq!(unsafe { inertol_model_component_count(handle.0) }, 5);
        let mut out = [0.0f64; 5];

        assert_eq!(
            unsafe { inertol_allocate_worst_case(handle.0, out.as_mut_ptr(), out.len()) },
            InertolStatus::Ok
        );
        for v in out {
            assert!((v - 0.2).abs() < 1e-15);
        }

        assert_eq!(
            unsafe { inertol_allocate_statistical(handle.0, out.as_mut_ptr(), out.len()) },
            InertolStatus::Ok
        );
        assert!((out[0] - 1.0 / 5.0_f64.sqrt()).abs() < 1e-15);

        assert_eq!(
            unsafe { inertol_allocate_inflated(handle.0, 1.5, out.as_mut_ptr(), out.len()) },
            InertolStatus::Ok
        );
        assert!((out[0] - 1.0 / (1.5 * 5.0_f64.sqrt())).abs() < 1e-15);

        assert_eq!(
            unsafe { inertol_allocate_inertia_random_means(handle.0, out.as_mut_ptr(), out.len()) },
            InertolStatus::Ok
        );
        assert!((out[0] - 1.0 / 6.0 / 5.0_f64.sqrt()).abs() < 1e-15);

        let icc = (14.0_f64 / 9.0).sqrt();
        assert_eq!(
            unsafe { inertol_allocate_corrected(handle.0, icc, out.as_mut_ptr(), out.len()) },
            InertolStatus::Ok
        );
        assert!((out[0] - 1.0 / (6.0 * icc * 5.0_f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn shift_allocations_require_uniform_chains() {
        let handle = gap_model();
        let mut out = [0.0f64; 5];
        assert_eq!(
            unsafe {
                inertol_allocate_inertia_systematic(handle.0, 1.0, out.as_mut_ptr(), out.len())
            },
            InertolStatus::UnsupportedHypothesis
        );

        let uniform = inertol_model_new();
        for name in ["a", "b", "c"] {
            let name = CString::new(name).unwrap();
            unsafe { inertol_model_add_component(uniform, name.as_ptr(), 1.0, 1.0) };
        }
        unsafe { inertol_model_set_inertia(uniform, 0.0, 0.15) };
        let mut small = [0.0f64; 3];
        assert_eq!(
            unsafe {
                inertol_allocate_inertia_partial(uniform, 2, 1.0, small.as_mut_ptr(), small.len())
            },
            InertolStatus::Ok
        );
        assert!((small[0] - 0.15 * 0.25_f64.sqrt()).abs() < 1e-15);
        unsafe { inertol_model_free(uniform) };
    }

    #[test]
    fn status_paths_for_bad_arguments() {
        let mut out = [0.0f64; 2];
        assert_eq!(
            unsafe { inertol_allocate_worst_case(std::ptr::null(), out.as_mut_ptr(), 2) },
            InertolStatus::NullPointer
        );

        let handle = gap_model();
        assert_eq!(
            unsafe { inertol_allocate_worst_case(handle.0, out.as_mut_ptr(), 2) },
            InertolStatus::BufferTooSmall
        );
        assert_eq!(
            unsafe { inertol_allocate_worst_case(handle.0, std::ptr::null_mut(), 5) },
            InertolStatus::NullPointer
        );

        // Interval allocation on an inertia-only model.
        let inertia_only = inertol_model_new();
        let name = CString::new("a").unwrap();
        unsafe { inertol_model_add_component(inertia_only, name.as_ptr(), 1.0, 1.0) };
        unsafe { inertol_model_set_inertia(inertia_only, 0.0, 0.1) };
        let mut one = [0.0f64; 1];
        assert_eq!(
            unsafe { inertol_allocate_worst_case(inertia_only, one.as_mut_ptr(), 1) },
            InertolStatus::MissingResultant
        );
        // The inertia methods accept it directly.
        assert_eq!(
            unsafe { inertol_allocate_inertia_worst_case(inertia_only, one.as_mut_ptr(), 1) },
            InertolStatus::Ok
        );
        assert!((one[0] - 0.1).abs() < 1e-15);
        unsafe { inertol_model_free(inertia_only) };

        // No resultant at all.
        let empty = inertol_model_new();
        let name = CString::new("a").unwrap();
        unsafe { inertol_model_add_component(empty, name.as_ptr(), 1.0, 1.0) };
        assert_eq!(
            unsafe { inertol_allocate_worst_case(empty, one.as_mut_ptr(), 1) },
            InertolStatus::MissingResultant
        );
        unsafe { inertol_model_free(empty) };

        // Duplicate component names and bad weights.
        let dup = inertol_model_new();
        let name = CString::new("a").unwrap();
        assert_eq!(
            unsafe { inertol_model_add_component(dup, name.as_ptr(), 1.0, 1.0) },
            InertolStatus::Ok
        );
        assert_eq!(
            unsafe { inertol_model_add_component(dup, name.as_ptr(), 2.0, 1.0) },
            InertolStatus::InvalidInput
        );
        assert_eq!(
            unsafe { inertol_model_add_component(dup, name.as_ptr(), 1.0, -1.0) },
            InertolStatus::InvalidInput
        );
        unsafe { inertol_model_free(dup) };
    }
}
