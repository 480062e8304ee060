//! C ABI for the superweier library.
//!
//! Conventions:
//! - every function returns an [`SwStatus`]; results come back through out
//!   pointers, which are written only on `SW_STATUS_OK`;
//! - `SwParams` and `SwPrecision` are opaque handles created by the
//!   `*_new` constructors and released by the matching `*_free`;
//! - scalar values cross the boundary as IEEE doubles. Internally all
//!   arithmetic runs at the precision carried by the handle; the final
//!   rounding to double is the only loss. Log-polar results stay finite for
//!   any magnitude because only `ln |z|` is returned;
//! - `sw_last_error_message` returns a thread-local description of the most
//!   recent failure, valid until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rug::Float;

use superweier::error::Error;
use superweier::numerics::{self, LogPolarComplex, PrecisionConfig};
use superweier::regimes::{self, RegimeClass, Schedule};
use superweier::weierstrass::{self, Strictness, WeierstrassParams};
use superweier::{bounds, superosc};

/// Outcome of a call. Anything but `SW_STATUS_OK` leaves the out pointers
/// untouched; `sw_last_error_message` then describes the failure.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SwStatus {
    SwStatusOk = 0,
    SwStatusInvalidParams = 1,
    SwStatusDomainError = 2,
    SwStatusPreconditionViolated = 3,
    SwStatusCancellationToZero = 4,
    SwStatusOverflow = 5,
    SwStatusResourceLimit = 6,
    SwStatusBudgetExceeded = 7,
    SwStatusZeroValue = 8,
    SwStatusInvalidTolerance = 9,
    SwStatusNullPointer = 10,
    SwStatusPanic = 11,
}

/// Complex value as a cartesian pair of doubles.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SwComplex {
    pub re: f64,
    pub im: f64,
}

/// Nonzero complex value as `(ln |z|, arg z)`; immune to overflow.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SwLogPolar {
    pub log_modulus: f64,
    pub phase: f64,
}

/// Per-frequency error budget for `sup |F_n - e^{i alpha x}|` on `[-M, M]`.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SwErrorBudget {
    pub k: f64,
    pub j: f64,
    pub bound: f64,
}

/// Whole-series budget for `sup |W_N - W_{N,n}|` on `[-M, M]`.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SwGlobalBudget {
    pub s1: f64,
    pub s2: f64,
    pub k_max: f64,
    pub bound: f64,
    /// Least admissible oscillation order, `ceil(max(4M/pi, K_max))`.
    pub min_n: u64,
}

/// Law-of-cosines split of `|w - z|^2`.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SwCarnotParts {
    pub distance_sq: f64,
    pub radial: f64,
    pub angular: f64,
}

/// Outcome of the fixed-order divergence probe.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct SwDivergenceProbe {
    pub diverged: bool,
    /// First truncation index past the threshold; -1 when none.
    pub n_hit: i64,
    pub partial_log_modulus: f64,
}

/// Convergence regime of a growth schedule against the wall `beta = ab^3`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SwRegime {
    SwRegimeSubCritical = 0,
    SwRegimeCritical = 1,
    SwRegimeSuperCritical = 2,
}

/// Opaque validated Weierstrass parameter pair.
pub struct SwParams {
    inner: WeierstrassParams,
}

/// Opaque precision configuration (mantissa bits, escalation budget).
pub struct SwPrecision {
    inner: PrecisionConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember_error(msg: &str) {
    let owned = CString::new(msg).unwrap_or_else(|_| CString::new("invalid message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
}

fn status_of(err: &Error) -> SwStatus {
    match err {
        Error::ZeroValue => SwStatus::SwStatusZeroValue,
        Error::Overflow { .. } => SwStatus::SwStatusOverflow,
        Error::CancellationToZero { .. } => SwStatus::SwStatusCancellationToZero,
        Error::Domain(_) => SwStatus::SwStatusDomainError,
        Error::InvalidParams(_) => SwStatus::SwStatusInvalidParams,
        Error::InvalidTolerance => SwStatus::SwStatusInvalidTolerance,
        Error::PreconditionViolated(_) => SwStatus::SwStatusPreconditionViolated,
        Error::DuplicateNodes => SwStatus::SwStatusInvalidParams,
        Error::ResourceLimit { .. } => SwStatus::SwStatusResourceLimit,
        Error::BudgetExceeded { .. } => SwStatus::SwStatusBudgetExceeded,
    }
}

fn fail(err: Error) -> SwStatus {
    remember_error(&err.to_string());
    status_of(&err)
}

/// Runs a fallible body behind a panic guard.
fn guarded<F: FnOnce() -> SwStatus>(body: F) -> SwStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            remember_error("internal panic");
            SwStatus::SwStatusPanic
        }
    }
}

fn logpolar_out(v: &LogPolarComplex) -> SwLogPolar {
    SwLogPolar {
        log_modulus: v.log_modulus.to_f64(),
        phase: v.phase.to_f64(),
    }
}

/// Description of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn sw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string; never free it.
#[no_mangle]
pub extern "C" fn sw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Creates a precision configuration. `mantissa_bits >= 64`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_precision_new(
    mantissa_bits: u32,
    max_escalations: u32,
    out: *mut *mut SwPrecision,
) -> SwStatus {
    if out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    guarded(|| match PrecisionConfig::new(mantissa_bits, max_escalations) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(SwPrecision { inner }));
            SwStatus::SwStatusOk
        }
        Err(e) => fail(e),
    })
}

/// # Safety
/// `p` must come from [`sw_precision_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sw_precision_free(p: *mut SwPrecision) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Validates `(a, b)` and creates a parameter handle. With `strict` set the
/// classical hypotheses apply (`b` an odd integer, `ab > 1 + 3 pi / 2`),
/// otherwise `0 < a < 1` and `b > 1` suffice. The values are carried at
/// `prec`'s working precision.
///
/// # Safety
/// `prec` must be a live precision handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_params_new(
    a: f64,
    b: f64,
    strict: bool,
    prec: *const SwPrecision,
    out: *mut *mut SwParams,
) -> SwStatus {
    if prec.is_null() || out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let bits = (*prec).inner.mantissa_bits();
    guarded(|| {
        let strictness = if strict {
            Strictness::Strict
        } else {
            Strictness::Basic
        };
        match weierstrass::validate_params(
            Float::with_val(bits, a),
            Float::with_val(bits, b),
            strictness,
        ) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SwParams { inner }));
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `p` must come from [`sw_params_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sw_params_free(p: *mut SwParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `F_n(x; alpha)` in log-polar form via the closed polar formulas; cost is
/// independent of `n`. Requires `|x/n| < pi`.
///
/// # Safety
/// `prec` must be a live precision handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_eval_fn(
    n: u64,
    alpha: f64,
    x: f64,
    prec: *const SwPrecision,
    out: *mut SwLogPolar,
) -> SwStatus {
    if prec.is_null() || out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let pc = (*prec).inner;
    let bits = pc.mantissa_bits();
    guarded(|| {
        match superosc::eval_fn(
            n,
            &Float::with_val(bits, alpha),
            &Float::with_val(bits, x),
            &pc,
        ) {
            Ok(v) => {
                *out = logpolar_out(&v);
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// `F_n(x; alpha)` through the O(n) Fourier superposition (the independent
/// oracle route); capped at order 4096.
///
/// # Safety
/// `prec` must be a live precision handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_eval_fn_sum(
    n: u64,
    alpha: f64,
    x: f64,
    prec: *const SwPrecision,
    out: *mut SwComplex,
) -> SwStatus {
    if prec.is_null() || out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let pc = (*prec).inner;
    let bits = pc.mantissa_bits();
    guarded(|| {
        match superosc::eval_fn_sum(
            n,
            &Float::with_val(bits, alpha),
            &Float::with_val(bits, x),
            &pc,
        ) {
            Ok(v) => {
                *out = SwComplex {
                    re: v.re.to_f64(),
                    im: v.im.to_f64(),
                };
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Local wave number `alpha / (cos^2(x/n) + alpha^2 sin^2(x/n))`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_local_wave_number(
    n: u64,
    alpha: f64,
    x: f64,
    out: *mut f64,
) -> SwStatus {
    if out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    guarded(|| {
        match superosc::local_wave_number(n, &Float::with_val(128, alpha), &Float::with_val(128, x))
        {
            Ok(v) => {
                *out = v.to_f64();
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Superoscillation-region half-width `n * arctan(1/sqrt(alpha))`, `alpha > 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_superosc_boundary(n: u64, alpha: f64, out: *mut f64) -> SwStatus {
    if out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    guarded(
        || match superosc::superosc_boundary(n, &Float::with_val(128, alpha)) {
            Ok(v) => {
                *out = v.to_f64();
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        },
    )
}

/// Truncated series `W_N(x)`.
///
/// # Safety
/// `params` and `prec` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_eval_truncated(
    params: *const SwParams,
    n_trunc: u32,
    x: f64,
    prec: *const SwPrecision,
    out: *mut SwComplex,
) -> SwStatus {
    if params.is_null() || prec.is_null() || out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let pc = (*prec).inner;
    let p = &(*params).inner;
    guarded(|| {
        let v =
            weierstrass::eval_truncated(p, n_trunc, &Float::with_val(pc.mantissa_bits(), x), &pc);
        *out = SwComplex {
            re: v.re.to_f64(),
            im: v.im.to_f64(),
        };
        SwStatus::SwStatusOk
    })
}

/// `W(x)` to within `tol`, reporting the truncation index used.
///
/// # Safety
/// `params` and `prec` must be live handles; `out` and `out_n_used` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sw_eval_weierstrass(
    params: *const SwParams,
    x: f64,
    tol: f64,
    prec: *const SwPrecision,
    out: *mut SwComplex,
    out_n_used: *mut u32,
) -> SwStatus {
    if params.is_null() || prec.is_null() || out.is_null() || out_n_used.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let pc = (*prec).inner;
    let p = &(*params).inner;
    let bits = pc.mantissa_bits();
    guarded(|| {
        match weierstrass::eval_weierstrass(
            p,
            &Float::with_val(bits, x),
            &Float::with_val(bits, tol),
            &pc,
        ) {
            Ok((v, n_used)) => {
                *out = SwComplex {
                    re: v.re.to_f64(),
                    im: v.im.to_f64(),
                };
                *out_n_used = n_used;
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Superoscillating approximant `W_{N,n}(x)` in log-polar form.
///
/// # Safety
/// `params` and `prec` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_eval_super_weierstrass(
    params: *const SwParams,
    n_trunc: u32,
    n: u64,
    x: f64,
    prec: *const SwPrecision,
    out: *mut SwLogPolar,
) -> SwStatus {
    if params.is_null() || prec.is_null() || out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let pc = (*prec).inner;
    let p = &(*params).inner;
    guarded(|| {
        match weierstrass::eval_super_weierstrass(
            p,
            n_trunc,
            n,
            &Float::with_val(pc.mantissa_bits(), x),
            &pc,
        ) {
            Ok(v) => {
                *out = logpolar_out(&v);
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Gap-estimate sides `|(1+y)^gamma - 1|` and `gamma |y| e^{gamma |y|}`.
///
/// # Safety
/// `out_lhs` and `out_rhs` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_lemma_gap(
    gamma: f64,
    y: f64,
    out_lhs: *mut f64,
    out_rhs: *mut f64,
) -> SwStatus {
    if out_lhs.is_null() || out_rhs.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    guarded(
        || match bounds::lemma_gap(&Float::with_val(128, gamma), &Float::with_val(128, y)) {
            Ok((lhs, rhs)) => {
                *out_lhs = lhs.to_f64();
                *out_rhs = rhs.to_f64();
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        },
    )
}

/// Per-frequency budget for `sup_{|x|<=M} |F_n(x; alpha) - e^{i alpha x}|`;
/// requires `n >= 4M/pi`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_single_term_bound(
    n: u64,
    alpha: f64,
    half_width: f64,
    out: *mut SwErrorBudget,
) -> SwStatus {
    if out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    guarded(|| {
        match bounds::single_term_bound(
            n,
            &Float::with_val(128, alpha),
            &Float::with_val(128, half_width),
        ) {
            Ok(budget) => {
                *out = SwErrorBudget {
                    k: budget.k.to_f64(),
                    j: budget.j.to_f64(),
                    bound: budget.bound.to_f64(),
                };
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Whole-series budget for `sup_{|x|<=M} |W_N - W_{N,n}|`; requires
/// `n >= max(4M/pi, K_max)` and names the binding constraint otherwise.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_global_bound(
    params: *const SwParams,
    half_width: f64,
    n_trunc: u32,
    n: u64,
    out: *mut SwGlobalBudget,
) -> SwStatus {
    if params.is_null() || out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let p = &(*params).inner;
    guarded(
        || match bounds::global_bound(p, &Float::with_val(128, half_width), n_trunc, n) {
            Ok(budget) => {
                *out = SwGlobalBudget {
                    s1: budget.s1.to_f64(),
                    s2: budget.s2.to_f64(),
                    k_max: budget.k_max.to_f64(),
                    bound: budget.bound.to_f64(),
                    min_n: budget.min_n,
                };
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        },
    )
}

/// Law-of-cosines split of `|w - z|^2` into radial and angular parts.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_carnot_decompose(
    w: SwLogPolar,
    z: SwLogPolar,
    out: *mut SwCarnotParts,
) -> SwStatus {
    if out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    guarded(|| {
        let make = |v: SwLogPolar| {
            LogPolarComplex::new(
                Float::with_val(128, v.log_modulus),
                Float::with_val(128, v.phase),
            )
        };
        let (w, z) = match (make(w), make(z)) {
            (Ok(w), Ok(z)) => (w, z),
            (Err(e), _) | (_, Err(e)) => return fail(e),
        };
        match bounds::carnot_decompose(&w, &z) {
            Ok(parts) => {
                *out = SwCarnotParts {
                    distance_sq: parts.distance_sq.to_f64(),
                    radial: parts.radial.to_f64(),
                    angular: parts.angular.to_f64(),
                };
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Measured `sup |W_N - W_{N,n}|` over a uniform grid of `[-M, M]`.
///
/// # Safety
/// `params` and `prec` must be live handles; `out_sup` and `out_argmax`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_empirical_sup_error(
    params: *const SwParams,
    half_width: f64,
    n_trunc: u32,
    n: u64,
    grid_points: usize,
    prec: *const SwPrecision,
    out_sup: *mut f64,
    out_argmax: *mut f64,
) -> SwStatus {
    if params.is_null() || prec.is_null() || out_sup.is_null() || out_argmax.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let pc = (*prec).inner;
    let p = &(*params).inner;
    guarded(|| {
        match bounds::empirical_sup_error(
            p,
            &Float::with_val(128, half_width),
            n_trunc,
            n,
            grid_points,
            &pc,
        ) {
            Ok((sup, argmax)) => {
                *out_sup = sup.to_f64();
                *out_argmax = argmax.to_f64();
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Fixed-order divergence probe: accumulates partial sums at `x` until the
/// log-modulus exceeds `threshold_log` or `n_cap` is reached.
///
/// # Safety
/// `params` and `prec` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_divergence_probe(
    params: *const SwParams,
    n: u64,
    x: f64,
    threshold_log: f64,
    n_cap: u32,
    prec: *const SwPrecision,
    out: *mut SwDivergenceProbe,
) -> SwStatus {
    if params.is_null() || prec.is_null() || out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let pc = (*prec).inner;
    let p = &(*params).inner;
    guarded(|| {
        match regimes::divergence_probe(
            p,
            n,
            &Float::with_val(pc.mantissa_bits(), x),
            threshold_log,
            n_cap,
            &pc,
        ) {
            Ok(probe) => {
                *out = SwDivergenceProbe {
                    diverged: probe.diverged,
                    n_hit: probe.n_hit.map(i64::from).unwrap_or(-1),
                    partial_log_modulus: probe.partial_log_modulus.to_f64(),
                };
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Moduli ratios of consecutive series terms at fixed `n`; fills
/// `out[0..=m_max]` (the buffer must hold `m_max + 1` doubles).
///
/// # Safety
/// `params` must be a live handle; `out` must point to at least
/// `m_max + 1` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sw_ratio_sequence(
    params: *const SwParams,
    n: u64,
    x: f64,
    m_max: u32,
    out: *mut f64,
) -> SwStatus {
    if params.is_null() || out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let p = &(*params).inner;
    guarded(
        || match regimes::ratio_sequence(p, n, &Float::with_val(128, x), m_max) {
            Ok(rhos) => {
                for (i, r) in rhos.iter().enumerate() {
                    *out.add(i) = r.to_f64();
                }
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        },
    )
}

/// Symbolic regime of the schedule `n_N = round(c N^p beta^N)` relative to
/// the divergence wall `beta = a b^3`.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_classify(
    params: *const SwParams,
    c: f64,
    p: f64,
    beta: f64,
    out: *mut SwRegime,
) -> SwStatus {
    if params.is_null() || out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    let wp = &(*params).inner;
    guarded(|| {
        let schedule = match Schedule::new(
            Float::with_val(128, c),
            Float::with_val(128, p),
            Float::with_val(128, beta),
        ) {
            Ok(s) => s,
            Err(e) => return fail(e),
        };
        *out = match regimes::classify(wp, &schedule) {
            RegimeClass::SubCritical => SwRegime::SwRegimeSubCritical,
            RegimeClass::Critical => SwRegime::SwRegimeCritical,
            RegimeClass::SuperCritical => SwRegime::SwRegimeSuperCritical,
        };
        SwStatus::SwStatusOk
    })
}

/// Converts a log-polar value to cartesian doubles, failing with
/// `SW_STATUS_OVERFLOW` when `log_modulus` exceeds `max_log_modulus`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_logpolar_to_cartesian(
    v: SwLogPolar,
    max_log_modulus: f64,
    out: *mut SwComplex,
) -> SwStatus {
    if out.is_null() {
        return SwStatus::SwStatusNullPointer;
    }
    guarded(|| {
        let lp = match LogPolarComplex::new(
            Float::with_val(128, v.log_modulus),
            Float::with_val(128, v.phase),
        ) {
            Ok(lp) => lp,
            Err(e) => return fail(e),
        };
        match numerics::to_cartesian(&lp, &Float::with_val(128, max_log_modulus)) {
            Ok(z) => {
                *out = SwComplex {
                    re: z.re.to_f64(),
                    im: z.im.to_f64(),
                };
                SwStatus::SwStatusOk
            }
            Err(e) => fail(e),
        }
    })
}
