//! Limit-order analysis of the double limit `(N, n) → ∞`.
//!
//! For fixed oscillation order `n` the series over `m` diverges at every
//! `x ≠ 0` (the term-ratio limit is `a b^n > 1`), while for fixed truncation
//! `N` the approximant converges to `W_N` as `n → ∞` — the two limit orders
//! do not commute. Convergence of the joint limit is governed by the ratio
//! `R_N = (ab³)^N / n_N` along a growth schedule `n_N`: the *divergence
//! wall* sits at schedule base `β = ab³`. This module provides the
//! divergence probe, the schedule machinery, the symbolic regime
//! classifier, the joint-limit measurement harness, and the phase-diagram
//! table generator behind the CLI.

use std::fmt;

use rug::ops::Pow;
use rug::Float;

use crate::bounds;
use crate::error::{Error, Result};
use crate::numerics::{self, to_cartesian_unchecked, PrecisionConfig, GUARD_BITS};
use crate::superosc;
use crate::weierstrass::{FrequencyIndex, WeierstrassParams};

/// Default cap on schedule orders; desk machines resolve any admissible
/// experiment far below it because the polar evaluator is O(1) in `n`.
pub const DEFAULT_ORDER_BUDGET: u64 = 1_000_000_000;

/// Growth law `n_N = round(c · N^p · β^N)` for `N ≥ 1`, rounding half away
/// from zero and clamping to 1 so every index yields a valid order.
#[derive(Clone, Debug)]
pub struct Schedule {
    coefficient: Float,
    power: Float,
    base: Float,
}

impl Schedule {
    pub fn new(coefficient: Float, power: Float, base: Float) -> Result<Self> {
        if !(coefficient.clone() > 0u32) || !coefficient.is_finite() {
            return Err(Error::InvalidParams(format!(
                "schedule coefficient c must be positive, got {}",
                coefficient.to_f64()
            )));
        }
        if !(power.clone() >= 0u32) || !power.is_finite() {
            return Err(Error::InvalidParams(format!(
                "schedule power p must be nonnegative, got {}",
                power.to_f64()
            )));
        }
        if !(base.clone() > 1u32) || !base.is_finite() {
            return Err(Error::InvalidParams(format!(
                "schedule base beta must exceed 1, got {}",
                base.to_f64()
            )));
        }
        Ok(Self {
            coefficient,
            power,
            base,
        })
    }

    pub fn coefficient(&self) -> &Float {
        &self.coefficient
    }

    pub fn power(&self) -> &Float {
        &self.power
    }

    pub fn base(&self) -> &Float {
        &self.base
    }

    /// `n_N` as an integer-valued Float (it may exceed u64 range; callers
    /// compare against their budget before narrowing).
    pub fn order_at(&self, n_trunc: u32, bits: u32) -> Float {
        let n = Float::with_val(bits, n_trunc.max(1));
        let raw = Float::with_val(bits, &self.coefficient)
            * n.pow(&self.power)
            * Float::with_val(bits, &self.base).pow(n_trunc);
        let rounded = raw.round();
        if rounded < 1u32 {
            Float::with_val(bits, 1)
        } else {
            rounded
        }
    }
}

/// Where a schedule lands relative to the divergence wall `β = ab³`,
/// decided symbolically from `lim R_N`:
/// sub-critical `R_N → ∞`, critical `R_N → C > 0`, super-critical `R_N → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegimeClass {
    SubCritical,
    Critical,
    SuperCritical,
}

impl fmt::Display for RegimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegimeClass::SubCritical => "sub_critical",
            RegimeClass::Critical => "critical",
            RegimeClass::SuperCritical => "super_critical",
        };
        f.write_str(s)
    }
}

/// Outcome of accumulating the fixed-`n` partial sums.
#[derive(Clone, Debug)]
pub struct DivergenceProbe {
    pub diverged: bool,
    /// First truncation index whose partial sum exceeded the threshold.
    pub n_hit: Option<u32>,
    /// `ln |partial sum|` at the stopping index.
    pub partial_log_modulus: Float,
}

/// One row of a joint-limit run. Rows that fail the admissibility floor
/// `n_N ≥ max(4M/π, K_max)` carry the flag instead of measurements.
#[derive(Clone, Debug)]
pub struct TraceRow {
    pub n_trunc: u32,
    pub n_osc: u64,
    /// `R_N = (ab³)^N / n_N`.
    pub ratio: Float,
    pub sup_err_e1: Option<Float>,
    pub bound_e1: Option<Float>,
    /// Tail bound `a^(N+1)/(1-a)` on `|W - W_N|`.
    pub tail_e2: Float,
    pub total_bound: Option<Float>,
    pub admissible: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ConvergenceTrace {
    pub rows: Vec<TraceRow>,
}

/// One cell of the phase-diagram table.
#[derive(Clone, Debug)]
pub struct PhaseCell {
    pub beta: Float,
    pub n_trunc: u32,
    /// None when the schedule order exceeded the budget for this cell.
    pub n_osc: Option<u64>,
    pub ratio: Float,
    /// `log10` of measured-error-plus-tail when measurable, otherwise of
    /// the analytic bound formula plus tail.
    pub log10_error_or_bound: Option<Float>,
    pub regime: RegimeClass,
    pub measured: bool,
}

/// Moduli ratios `ρ_m(x)` of consecutive series terms at fixed `n`,
/// computed in the log domain:
///
/// `ρ_m = a·[(cos²(x/n) + b^(2m+2) π² sin²(x/n)) / (cos²(x/n) + b^(2m) π² sin²(x/n))]^(n/2)`.
///
/// Their limit in `m` is `a b^n`, which drives the fixed-`n` divergence.
pub fn ratio_sequence(
    params: &WeierstrassParams,
    n: u64,
    x: &Float,
    m_max: u32,
) -> Result<Vec<Float>> {
    if n == 0 {
        return Err(Error::InvalidParams("order n must be >= 1".into()));
    }
    let bits = params.bits().max(x.prec()) + GUARD_BITS;
    let u = Float::with_val(bits, x) / Float::with_val(bits, n);
    if !(u.clone().abs() < numerics::float_pi(bits)) {
        return Err(Error::Domain(format!(
            "|x/n| must be < pi, got {}",
            u.to_f64()
        )));
    }
    let (sin_u, cos_u) = u.sin_cos(Float::new(bits));
    let s2pi2 = sin_u.square() * numerics::float_pi(bits).square();
    let c2 = cos_u.square();
    let a = Float::with_val(bits, params.a());
    let b = Float::with_val(bits, params.b());
    let half_n = Float::with_val(bits, n) / 2u32;
    let mut out = Vec::with_capacity(m_max as usize + 1);
    for m in 0..=m_max {
        let low = (c2.clone() + b.clone().pow(2 * m) * &s2pi2).ln();
        let high = (c2.clone() + b.clone().pow(2 * m + 2) * &s2pi2).ln();
        out.push(a.clone() * ((high - low) * &half_n).exp());
    }
    Ok(out)
}

/// Accumulates the partial sums `𝒲_{N,n}(x)` for `N = 0..=n_cap` at fixed
/// `n` and reports the first index whose log-modulus exceeds
/// `threshold_log`, stopping there. Requires `|x| < nπ`.
///
/// At `x = 0` every term equals `a^m` and the partial sums converge to the
/// geometric limit, so the probe never triggers there.
pub fn divergence_probe(
    params: &WeierstrassParams,
    n: u64,
    x: &Float,
    threshold_log: f64,
    n_cap: u32,
    prec: &PrecisionConfig,
) -> Result<DivergenceProbe> {
    if n == 0 {
        return Err(Error::InvalidParams("order n must be >= 1".into()));
    }
    let wb = prec.working_bits();
    let bound = numerics::float_pi(wb) * Float::with_val(wb, n);
    if !(x.clone().abs() < bound) {
        return Err(Error::Domain(format!(
            "|x| must be < n*pi = {:.4}, got {}",
            bound.to_f64(),
            x.to_f64()
        )));
    }
    let a = Float::with_val(wb, params.a());
    let mut sum_re = Float::new(wb);
    let mut sum_im = Float::new(wb);
    let mut log_modulus = Float::with_val(wb, rug::float::Special::NegInfinity);
    for m in 0..=n_cap {
        let freq = FrequencyIndex::new(params, m, wb);
        let term = superosc::eval_fn(n, &freq.alpha_m, x, prec)?;
        let z = to_cartesian_unchecked(&term);
        let weight = a.clone().pow(m);
        sum_re += weight.clone() * z.re;
        sum_im += weight * z.im;
        log_modulus = Float::with_val(wb, sum_re.clone().hypot(&sum_im).ln());
        if log_modulus > threshold_log {
            return Ok(DivergenceProbe {
                diverged: true,
                n_hit: Some(m),
                partial_log_modulus: log_modulus,
            });
        }
    }
    Ok(DivergenceProbe {
        diverged: false,
        n_hit: None,
        partial_log_modulus: log_modulus,
    })
}

/// Symbolic regime classification from the schedule parameters: with
/// `n_N = c N^p β^N`, the ratio `R_N = (ab³/β)^N / (c N^p)`, so
/// `β < ab³` gives the sub-critical regime, `β = ab³` the critical one for
/// `p = 0` and super-critical for `p > 0`, and `β > ab³` super-critical.
/// Invariant under rescaling `c`.
pub fn classify(params: &WeierstrassParams, schedule: &Schedule) -> RegimeClass {
    let bits = params.bits().max(schedule.base().prec()) + GUARD_BITS;
    let wall = Float::with_val(bits, params.a()) * Float::with_val(bits, params.b()).pow(3);
    let beta = Float::with_val(bits, schedule.base());
    if beta < wall {
        RegimeClass::SubCritical
    } else if beta == wall {
        if schedule.power().is_zero() {
            RegimeClass::Critical
        } else {
            RegimeClass::SuperCritical
        }
    } else {
        RegimeClass::SuperCritical
    }
}

fn wall_ratio(params: &WeierstrassParams, n_trunc: u32, n_osc: &Float, bits: u32) -> Float {
    let wall: Float =
        Float::with_val(bits, params.a()) * Float::with_val(bits, params.b()).pow(3u32);
    wall.pow(n_trunc) / n_osc
}

/// Runs the joint limit along a schedule: for each `N = 1..=N_max` it
/// measures `sup |𝒲_{N,n_N} - W_N|` against the analytic budget where the
/// admissibility floor allows, and emits flagged rows elsewhere.
pub fn joint_convergence_run(
    params: &WeierstrassParams,
    schedule: &Schedule,
    n_max: u32,
    half_width: &Float,
    grid_points: usize,
    budget: u64,
    prec: &PrecisionConfig,
) -> Result<ConvergenceTrace> {
    let bits = params.bits().max(half_width.prec()) + GUARD_BITS;
    let mut rows = Vec::with_capacity(n_max as usize);
    for n_trunc in 1..=n_max {
        let order = schedule.order_at(n_trunc, bits);
        if order > budget {
            return Err(Error::BudgetExceeded {
                requested: order.to_f64(),
                cap: budget,
            });
        }
        let n_osc = order
            .to_integer()
            .and_then(|i| i.to_u64())
            .expect("order fits the budget");
        let ratio = wall_ratio(params, n_trunc, &order, bits);
        let tail_e2 = params.truncation_tail(n_trunc, bits);
        let floor = bounds::admissibility_threshold(params, half_width, n_trunc, bits);
        let admissible = order >= floor;
        if admissible {
            let budget_row = bounds::global_bound(params, half_width, n_trunc, n_osc)?;
            let (sup, _) =
                bounds::empirical_sup_error(params, half_width, n_trunc, n_osc, grid_points, prec)?;
            let total = budget_row.bound.clone() + &tail_e2;
            rows.push(TraceRow {
                n_trunc,
                n_osc,
                ratio,
                sup_err_e1: Some(sup),
                bound_e1: Some(budget_row.bound),
                tail_e2,
                total_bound: Some(total),
                admissible: true,
            });
        } else {
            rows.push(TraceRow {
                n_trunc,
                n_osc,
                ratio,
                sup_err_e1: None,
                bound_e1: None,
                tail_e2,
                total_bound: None,
                admissible: false,
            });
        }
    }
    Ok(ConvergenceTrace { rows })
}

/// Fixed-`N` refinement: measured sup errors for each order in `n_list`.
/// The sequence is expected to be non-increasing (the iterated limit
/// `n → ∞` recovers `W_N`); the caller compares the last value against the
/// bound formula at the largest order.
pub fn iterated_limit_check(
    params: &WeierstrassParams,
    n_trunc: u32,
    half_width: &Float,
    n_list: &[u64],
    grid_points: usize,
    prec: &PrecisionConfig,
) -> Result<Vec<Float>> {
    n_list
        .iter()
        .map(|&n| {
            bounds::empirical_sup_error(params, half_width, n_trunc, n, grid_points, prec)
                .map(|(sup, _)| sup)
        })
        .collect()
}

/// The phase-diagram table over a grid of schedule bases (each column runs
/// the pure-exponential schedule `n_N = round(β^N)`). Cells beyond the
/// budget are recorded, not fatal; measurable cells carry
/// `log10(sup error + tail)`, the rest `log10(bound formula + tail)`.
pub fn phase_diagram(
    params: &WeierstrassParams,
    beta_grid: &[Float],
    n_max: u32,
    half_width: &Float,
    grid_points: usize,
    budget: u64,
    prec: &PrecisionConfig,
) -> Result<Vec<PhaseCell>> {
    if beta_grid.is_empty() {
        return Err(Error::InvalidParams("beta grid must be non-empty".into()));
    }
    for w in beta_grid.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::InvalidParams(
                "beta grid must be strictly increasing".into(),
            ));
        }
    }
    let bits = params.bits().max(half_width.prec()) + GUARD_BITS;
    let mut cells = Vec::with_capacity(beta_grid.len() * n_max as usize);
    for beta in beta_grid {
        let schedule = Schedule::new(
            Float::with_val(bits, 1),
            Float::new(bits),
            Float::with_val(bits, beta),
        )?;
        let regime = classify(params, &schedule);
        for n_trunc in 1..=n_max {
            let order = schedule.order_at(n_trunc, bits);
            let ratio = wall_ratio(params, n_trunc, &order, bits);
            if order > budget {
                cells.push(PhaseCell {
                    beta: beta.clone(),
                    n_trunc,
                    n_osc: None,
                    ratio,
                    log10_error_or_bound: None,
                    regime,
                    measured: false,
                });
                continue;
            }
            let n_osc = order
                .to_integer()
                .and_then(|i| i.to_u64())
                .expect("order fits the budget");
            let tail = params.truncation_tail(n_trunc, bits);
            let floor = bounds::admissibility_threshold(params, half_width, n_trunc, bits);
            let (value, measured) = if order >= floor {
                let (sup, _) = bounds::empirical_sup_error(
                    params, half_width, n_trunc, n_osc, grid_points, prec,
                )?;
                (sup + tail, true)
            } else {
                let budget_cell =
                    bounds::global_budget_unchecked(params, half_width, n_trunc, n_osc)?;
                (budget_cell.bound + tail, false)
            };
            cells.push(PhaseCell {
                beta: beta.clone(),
                n_trunc,
                n_osc: Some(n_osc),
                ratio,
                log10_error_or_bound: Some(value.log10()),
                regime,
                measured,
            });
        }
    }
    Ok(cells)
}
