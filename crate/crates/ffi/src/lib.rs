//! C ABI over `aco-core`.
//!
//! Objectives and trial results are opaque heap handles created by the
//! library and released with their `*_free` function. Every fallible call
//! returns an [`AcoStatus`]; on failure [`aco_last_error_message`] describes
//! the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use aco_core::objectives::Objective;
use aco_core::selection::{probabilities_from_weights, rank_weights};
use aco_core::{
    aco_run as core_aco_run, de_run as core_de_run, pso_run as core_pso_run, registry, rmse,
    AcoParams, DeParams, DistanceMetric, Error, ErrorVector, EvaporationRate, Formula, ObjectiveId,
    ObjectiveSpec, ProbabilityBasis, PsoParams, RandomSource, SelectionMethod, SelectionSpec,
    TrialResult,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Evaluation = 4,
    Io = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcoFunction {
    Ackley = 1,
    Sphere = 2,
    SumSquare = 3,
    DixonPrice = 4,
    Rosenbrock = 5,
    Rastrigin = 6,
    Griewank = 7,
    Zakharov = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcoFormula {
    Paper = 0,
    Standard = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcoSelectionMethod {
    Rws = 0,
    Sus = 1,
    Bhs = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcoBasis {
    Weight = 0,
    FitVal = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcoMetricKind {
    /// Uses `minkowski_order`.
    Minkowski = 0,
    SquaredEuclidean = 1,
    Chebychev = 2,
    BrayCurtis = 3,
    Canberra = 4,
}

/// ACO parameters. Fill with `aco_params_classical` or `aco_params_improved`
/// and adjust.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AcoRunParams {
    pub k: usize,
    pub m: usize,
    pub xi: f64,
    pub q: f64,
    pub selection: AcoSelectionMethod,
    pub basis: AcoBasis,
    pub metric: AcoMetricKind,
    pub minkowski_order: f64,
    pub max_iterations: usize,
    pub seed: u64,
    /// Leading iterations whose selections are recorded (0 = none).
    pub trace_iterations: usize,
    pub clamp_samples: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AcoPsoParams {
    pub swarm_size: usize,
    pub c1: f64,
    pub c2: f64,
    pub inertia_high: f64,
    pub inertia_low: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AcoDeParams {
    pub population: usize,
    pub weight_factor: f64,
    pub crossover_factor: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

/// One traced selection; `l`, `i` and `iteration` are 0-based, `selected_rank` 1-based.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AcoSelectionRecord {
    pub iteration: usize,
    pub l: usize,
    pub i: usize,
    pub selected_rank: usize,
}

/// Opaque benchmark objective.
pub struct AcoObjective(ObjectiveSpec);

/// Opaque result of one optimizer run.
pub struct AcoTrial(TrialResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(error: &Error) -> AcoStatus {
    match error.root() {
        Error::Config(_) | Error::Json(_) => AcoStatus::Config,
        Error::Argument(_) | Error::Degenerate(_) => AcoStatus::InvalidArgument,
        Error::Evaluation { .. } => AcoStatus::Evaluation,
        Error::Io(_) => AcoStatus::Io,
        Error::Run { .. } => AcoStatus::Config,
    }
}

fn fail(status: AcoStatus, message: impl Into<String>) -> AcoStatus {
    set_last_error(message.into());
    status
}

/// Runs `f`, turning errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), AcoStatus>) -> AcoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AcoStatus::Ok,
        Ok(Err(status)) => status,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(AcoStatus::Panic, format!("panic: {msg}"))
        }
    }
}

fn check<T>(r: aco_core::Result<T>) -> Result<T, AcoStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), AcoStatus> {
    if p.is_null() {
        Err(fail(AcoStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `p` must be null or valid for reads of `len` values.
unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], AcoStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    non_null(p, what)?;
    Ok(std::slice::from_raw_parts(p, len))
}

/// # Safety
/// `buf` must be null or valid for writes of `capacity` values.
unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, capacity: usize) -> Result<(), AcoStatus> {
    if capacity < src.len() {
        return Err(fail(
            AcoStatus::BufferTooSmall,
            format!("buffer holds {capacity}, need {}", src.len()),
        ));
    }
    if src.is_empty() {
        return Ok(());
    }
    non_null(buf, "buffer")?;
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

fn function_id(f: AcoFunction) -> ObjectiveId {
    match f {
        AcoFunction::Ackley => ObjectiveId::Ackley,
        AcoFunction::Sphere => ObjectiveId::Sphere,
        AcoFunction::SumSquare => ObjectiveId::SumSquare,
        AcoFunction::DixonPrice => ObjectiveId::DixonPrice,
        AcoFunction::Rosenbrock => ObjectiveId::Rosenbrock,
        AcoFunction::Rastrigin => ObjectiveId::Rastrigin,
        AcoFunction::Griewank => ObjectiveId::Griewank,
        AcoFunction::Zakharov => ObjectiveId::Zakharov,
    }
}

impl AcoRunParams {
    fn from_core(p: &AcoParams) -> Self {
        let (metric, order) = match p.metric {
            DistanceMetric::Minkowski(r) => (AcoMetricKind::Minkowski, r),
            DistanceMetric::SquaredEuclidean => (AcoMetricKind::SquaredEuclidean, 0.0),
            DistanceMetric::Chebychev => (AcoMetricKind::Chebychev, 0.0),
            DistanceMetric::BrayCurtis => (AcoMetricKind::BrayCurtis, 0.0),
            DistanceMetric::Canberra => (AcoMetricKind::Canberra, 0.0),
        };
        Self {
            k: p.k,
            m: p.m,
            xi: p.xi.value(),
            q: p.selection.q,
            selection: match p.selection.method {
                SelectionMethod::Rws => AcoSelectionMethod::Rws,
                SelectionMethod::Sus => AcoSelectionMethod::Sus,
                SelectionMethod::Bhs => AcoSelectionMethod::Bhs,
            },
            basis: match p.selection.basis {
                ProbabilityBasis::Weight => AcoBasis::Weight,
                ProbabilityBasis::FitVal => AcoBasis::FitVal,
            },
            metric,
            minkowski_order: order,
            max_iterations: p.max_iterations,
            seed: p.seed,
            trace_iterations: p.trace_iterations,
            clamp_samples: p.clamp_samples,
        }
    }

    fn to_core(self, n: usize) -> aco_core::Result<AcoParams> {
        let method = match self.selection {
            AcoSelectionMethod::Rws => SelectionMethod::Rws,
            AcoSelectionMethod::Sus => SelectionMethod::Sus,
            AcoSelectionMethod::Bhs => SelectionMethod::Bhs,
        };
        let basis = match self.basis {
            AcoBasis::Weight => ProbabilityBasis::Weight,
            AcoBasis::FitVal => ProbabilityBasis::FitVal,
        };
        let metric = match self.metric {
            AcoMetricKind::Minkowski => DistanceMetric::Minkowski(self.minkowski_order),
            AcoMetricKind::SquaredEuclidean => DistanceMetric::SquaredEuclidean,
            AcoMetricKind::Chebychev => DistanceMetric::Chebychev,
            AcoMetricKind::BrayCurtis => DistanceMetric::BrayCurtis,
            AcoMetricKind::Canberra => DistanceMetric::Canberra,
        };
        let params = AcoParams {
            k: self.k,
            m: self.m,
            n,
            xi: EvaporationRate::new(self.xi)?,
            selection: SelectionSpec::new(method, basis, self.q)?,
            metric,
            max_iterations: self.max_iterations,
            seed: self.seed,
            trace_iterations: self.trace_iterations,
            clamp_samples: self.clamp_samples,
        };
        params.validate()?;
        Ok(params)
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn aco_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a built-in benchmark of dimension `dim`.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn aco_objective_new(
    function: AcoFunction,
    dim: usize,
    formula: AcoFormula,
    out: *mut *mut AcoObjective,
) -> AcoStatus {
    guard(|| {
        non_null(out, "out")?;
        let formula = match formula {
            AcoFormula::Paper => Formula::Paper,
            AcoFormula::Standard => Formula::Standard,
        };
        let spec = check(registry(function_id(function), dim))?.with_formula(formula);
        *out = Box::into_raw(Box::new(AcoObjective(spec)));
        Ok(())
    })
}

/// # Safety
/// `objective` must be null or a pointer from `aco_objective_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aco_objective_free(objective: *mut AcoObjective) {
    if !objective.is_null() {
        drop(Box::from_raw(objective));
    }
}

/// # Safety
/// `objective` must be a live handle; `x` valid for `len` reads; `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn aco_objective_evaluate(
    objective: *const AcoObjective,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> AcoStatus {
    guard(|| {
        non_null(objective, "objective")?;
        non_null(out, "out")?;
        let x = slice(x, len, "x")?;
        *out = check((*objective).0.evaluate(x))?;
        Ok(())
    })
}

/// # Safety
/// `objective` must be a live handle; `min` and `max` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn aco_objective_bounds(
    objective: *const AcoObjective,
    min: *mut f64,
    max: *mut f64,
) -> AcoStatus {
    guard(|| {
        non_null(objective, "objective")?;
        non_null(min, "min")?;
        non_null(max, "max")?;
        let b = (*objective).0.bounds;
        *min = b.min;
        *max = b.max;
        Ok(())
    })
}

/// Dimension of a live objective handle, 0 for null.
///
/// # Safety
/// `objective` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aco_objective_dimension(objective: *const AcoObjective) -> usize {
    objective.as_ref().map_or(0, |o| o.0.dimension)
}

/// BHS(Weight), Manhattan, xi = 0.5, k = m = 10, 1000 iterations.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn aco_params_classical(out: *mut AcoRunParams) -> AcoStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = AcoRunParams::from_core(&AcoParams::classical(1));
        Ok(())
    })
}

/// RWS(FitVal), squared Euclidean, xi = 0.5, k = m = 10, 1000 iterations.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn aco_params_improved(out: *mut AcoRunParams) -> AcoStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = AcoRunParams::from_core(&AcoParams::improved(1));
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn aco_pso_params_default(out: *mut AcoPsoParams) -> AcoStatus {
    guard(|| {
        non_null(out, "out")?;
        let p = PsoParams::default();
        *out = AcoPsoParams {
            swarm_size: p.swarm_size,
            c1: p.c1,
            c2: p.c2,
            inertia_high: p.inertia_high,
            inertia_low: p.inertia_low,
            max_iterations: p.max_iterations,
            seed: p.seed,
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn aco_de_params_default(out: *mut AcoDeParams) -> AcoStatus {
    guard(|| {
        non_null(out, "out")?;
        let p = DeParams::default();
        *out = AcoDeParams {
            population: p.population,
            weight_factor: p.weight_factor,
            crossover_factor: p.crossover_factor,
            max_iterations: p.max_iterations,
            seed: p.seed,
        };
        Ok(())
    })
}

fn finish(result: aco_core::Result<TrialResult>, out: *mut *mut AcoTrial) -> Result<(), AcoStatus> {
    let trial = check(result)?;
    // SAFETY: callers checked `out` for null and the C contract makes it writable.
    unsafe { *out = Box::into_raw(Box::new(AcoTrial(trial))) };
    Ok(())
}

/// Runs ACO on `objective` with `params.seed`.
///
/// # Safety
/// `objective` must be a live handle, `params` valid for reads and `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn aco_run(
    objective: *const AcoObjective,
    params: *const AcoRunParams,
    out: *mut *mut AcoTrial,
) -> AcoStatus {
    guard(|| {
        non_null(objective, "objective")?;
        non_null(params, "params")?;
        non_null(out, "out")?;
        let obj = &(*objective).0;
        let p = check((*params).to_core(obj.dimension))?;
        finish(core_aco_run(&p, obj, &mut RandomSource::new(p.seed)), out)
    })
}

/// # Safety
/// Same contract as [`aco_run`].
#[no_mangle]
pub unsafe extern "C" fn aco_pso_run(
    objective: *const AcoObjective,
    params: *const AcoPsoParams,
    out: *mut *mut AcoTrial,
) -> AcoStatus {
    guard(|| {
        non_null(objective, "objective")?;
        non_null(params, "params")?;
        non_null(out, "out")?;
        let p = *params;
        let params = PsoParams {
            swarm_size: p.swarm_size,
            c1: p.c1,
            c2: p.c2,
            inertia_high: p.inertia_high,
            inertia_low: p.inertia_low,
            max_iterations: p.max_iterations,
            seed: p.seed,
        };
        let result = core_pso_run(&params, &(*objective).0, &mut RandomSource::new(p.seed));
        finish(result, out)
    })
}

/// # Safety
/// Same contract as [`aco_run`].
#[no_mangle]
pub unsafe extern "C" fn aco_de_run(
    objective: *const AcoObjective,
    params: *const AcoDeParams,
    out: *mut *mut AcoTrial,
) -> AcoStatus {
    guard(|| {
        non_null(objective, "objective")?;
        non_null(params, "params")?;
        non_null(out, "out")?;
        let p = *params;
        let params = DeParams {
            population: p.population,
            weight_factor: p.weight_factor,
            crossover_factor: p.crossover_factor,
            max_iterations: p.max_iterations,
            seed: p.seed,
        };
        let result = core_de_run(&params, &(*objective).0, &mut RandomSource::new(p.seed));
        finish(result, out)
    })
}

/// # Safety
/// `trial` must be null or a pointer from a run function not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aco_trial_free(trial: *mut AcoTrial) {
    if !trial.is_null() {
        drop(Box::from_raw(trial));
    }
}

/// Best fitness found; NaN for null.
///
/// # Safety
/// `trial` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aco_trial_final_best(trial: *const AcoTrial) -> f64 {
    trial.as_ref().map_or(f64::NAN, |t| t.0.final_best)
}

/// Best fitness of the initial population; NaN for null.
///
/// # Safety
/// `trial` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aco_trial_initial_best(trial: *const AcoTrial) -> f64 {
    trial.as_ref().map_or(f64::NAN, |t| t.0.initial_best)
}

/// Number of iterations, which is also the trajectory length.
///
/// # Safety
/// `trial` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aco_trial_iterations(trial: *const AcoTrial) -> usize {
    trial.as_ref().map_or(0, |t| t.0.iterations())
}

/// Length of the best solution vector.
///
/// # Safety
/// `trial` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aco_trial_dimension(trial: *const AcoTrial) -> usize {
    trial.as_ref().map_or(0, |t| t.0.final_solution.len())
}

/// Number of recorded selections (0 when tracing was off).
///
/// # Safety
/// `trial` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aco_trial_trace_len(trial: *const AcoTrial) -> usize {
    trial
        .as_ref()
        .and_then(|t| t.0.selection_trace.as_ref())
        .map_or(0, |tr| tr.len())
}

/// Copies the best solution into `buf` (capacity `capacity`).
///
/// # Safety
/// `trial` must be a live handle; `buf` valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn aco_trial_copy_solution(
    trial: *const AcoTrial,
    buf: *mut f64,
    capacity: usize,
) -> AcoStatus {
    guard(|| {
        non_null(trial, "trial")?;
        copy_out(&(*trial).0.final_solution, buf, capacity)
    })
}

/// Copies the best-so-far fitness per iteration into `buf`.
///
/// # Safety
/// `trial` must be a live handle; `buf` valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn aco_trial_copy_trajectory(
    trial: *const AcoTrial,
    buf: *mut f64,
    capacity: usize,
) -> AcoStatus {
    guard(|| {
        non_null(trial, "trial")?;
        copy_out(&(*trial).0.best_trajectory, buf, capacity)
    })
}

/// Copies the selection trace into `buf`.
///
/// # Safety
/// `trial` must be a live handle; `buf` valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn aco_trial_copy_trace(
    trial: *const AcoTrial,
    buf: *mut AcoSelectionRecord,
    capacity: usize,
) -> AcoStatus {
    guard(|| {
        non_null(trial, "trial")?;
        let records: Vec<AcoSelectionRecord> = (*trial)
            .0
            .selection_trace
            .iter()
            .flat_map(|t| t.records.iter())
            .map(|r| AcoSelectionRecord {
                iteration: r.iteration,
                l: r.l,
                i: r.i,
                selected_rank: r.selected_rank,
            })
            .collect();
        copy_out(&records, buf, capacity)
    })
}

/// Normalized rank-weight selection probabilities for an archive of `k`.
///
/// # Safety
/// `buf` must be valid for `k` writes.
#[no_mangle]
pub unsafe extern "C" fn aco_rank_weights(k: usize, q: f64, buf: *mut f64) -> AcoStatus {
    guard(|| {
        let w = check(rank_weights(k, q))?;
        let p = check(probabilities_from_weights(&w))?;
        copy_out(p.as_slice(), buf, k)
    })
}

/// Raw (unnormalized) rank weights for an archive of `k`.
///
/// # Safety
/// `buf` must be valid for `k` writes.
#[no_mangle]
pub unsafe extern "C" fn aco_raw_rank_weights(k: usize, q: f64, buf: *mut f64) -> AcoStatus {
    guard(|| {
        let w = check(rank_weights(k, q))?;
        copy_out(&w, buf, k)
    })
}

/// Root mean square of `len` errors.
///
/// # Safety
/// `errors` must be valid for `len` reads and `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn aco_rmse(errors: *const f64, len: usize, out: *mut f64) -> AcoStatus {
    guard(|| {
        non_null(out, "out")?;
        let e = slice(errors, len, "errors")?;
        let v = check(ErrorVector::new(e.to_vec()))?;
        *out = check(rmse(&v))?;
        Ok(())
    })
}
