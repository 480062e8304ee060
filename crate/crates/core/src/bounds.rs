//! Explicit error machinery for the superoscillating approximation.
//!
//! The chain is: an elementary gap estimate `|(1+y)^γ - 1| ≤ γ|y|e^{γ|y|}`;
//! a per-frequency bound on `sup_{|x|≤M} |F_n(x; α) - e^{iαx}|` built from
//! the law-of-cosines split of `|w - z|²` into a radial and an angular
//! part; and the global bound
//! `sup_{|x|≤M} |W_N - 𝒲_{N,n}| ≤ (e/n)·S₁ + (√e/n²)·S₂`
//! with `S₁, S₂` in closed geometric form. Each analytic quantity is paired
//! with an independent measurement or summation route so the inequalities
//! can be checked rather than trusted.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{
    self, to_cartesian_unchecked, LogPolarComplex, PrecisionConfig, GUARD_BITS,
};
use crate::weierstrass::{self, FrequencyIndex, WeierstrassParams};

/// Per-frequency error budget: the constants
/// `K(α) = |α² - 1| M² / 2` and `J(α) = 2 |α(1 - α²)| M³`, and the bound
/// `(1/n)·sqrt(K² e^{2K/n} + (J²/n²) e^{K/n})` they produce.
#[derive(Clone, Debug)]
pub struct ErrorBudget {
    /// Radial (modulus-deviation) constant `K(α)`.
    pub k: Float,
    /// Angular (phase-drift) constant `J(α)`.
    pub j: Float,
    /// Guaranteed ceiling on `sup_{|x|≤M} |F_n(x;α) - e^{iαx}|`.
    pub bound: Float,
    pub n: u64,
    pub alpha: Float,
    pub half_width: Float,
}

/// Budget for the whole truncated series: geometric sums `S₁, S₂`, the
/// dominating constant `K_max = (α_N² - 1) M² / 2`, the resulting bound
/// `(e/n)·S₁ + (√e/n²)·S₂`, and the least admissible order `min_n`.
#[derive(Clone, Debug)]
pub struct GlobalBudget {
    pub s1: Float,
    pub s2: Float,
    pub k_max: Float,
    pub bound: Float,
    /// `ceil(max(4M/π, K_max))`, saturating at `u64::MAX`.
    pub min_n: u64,
}

/// The two summands of the law-of-cosines identity
/// `|w - z|² = (ρ_w - ρ_z)² + 2 ρ_w ρ_z (1 - cos(θ_w - θ_z))`.
#[derive(Clone, Debug)]
pub struct CarnotParts {
    pub distance_sq: Float,
    pub radial: Float,
    pub angular: Float,
}

/// Both sides of the gap estimate `|(1+y)^γ - 1| ≤ γ|y| e^{γ|y|}`, for
/// `γ ≥ 1` and `y > -1`. Returns `(lhs, rhs)`; the inequality itself is a
/// theorem, exposed this way so it can be falsified by tests rather than
/// asserted by the library.
///
/// The estimate is stated for all `γ > 0` but proved uniformly only for
/// `γ ≥ 1`, which is the only range used downstream (`γ = n/2`), so the
/// domain here is `γ ≥ 1`.
pub fn lemma_gap(gamma: &Float, y: &Float) -> Result<(Float, Float)> {
    if !(gamma.clone() >= 1u32) {
        return Err(Error::Domain(format!(
            "gap estimate requires gamma >= 1, got {}",
            gamma.to_f64()
        )));
    }
    if !(y.clone() > -1i32) {
        return Err(Error::Domain(format!(
            "gap estimate requires y > -1, got {}",
            y.to_f64()
        )));
    }
    let bits = gamma.prec().max(y.prec()) + GUARD_BITS;
    let g = Float::with_val(bits, gamma);
    let yy = Float::with_val(bits, y);
    let lhs = ((Float::with_val(bits, 1) + &yy).pow(&g) - 1u32).abs();
    let gy = (g * yy).abs();
    let rhs = gy.clone() * gy.exp();
    Ok((lhs, rhs))
}

fn radial_constant(alpha: &Float, half_width: &Float, bits: u32) -> Float {
    let a2 = Float::with_val(bits, alpha).square();
    let m2 = Float::with_val(bits, half_width).square();
    (a2 - 1u32).abs() * m2 / 2u32
}

fn angular_constant(alpha: &Float, half_width: &Float, bits: u32) -> Float {
    let a = Float::with_val(bits, alpha);
    let m3 = Float::with_val(bits, half_width).pow(3);
    let drift = (a.clone() * (Float::with_val(bits, 1) - a.square())).abs();
    drift * m3 * 2u32
}

/// The per-frequency budget, valid under the hypothesis `n ≥ 4M/π`.
pub fn single_term_bound(n: u64, alpha: &Float, half_width: &Float) -> Result<ErrorBudget> {
    if n == 0 {
        return Err(Error::InvalidParams("order n must be >= 1".into()));
    }
    if !(half_width.clone() > 0u32) {
        return Err(Error::InvalidParams(format!(
            "half-width M must be positive, got {}",
            half_width.to_f64()
        )));
    }
    let bits = alpha.prec().max(half_width.prec()) + GUARD_BITS;
    let nf = Float::with_val(bits, n);
    let gate = Float::with_val(bits, half_width) * 4u32 / numerics::float_pi(bits);
    if nf < gate {
        return Err(Error::PreconditionViolated(format!(
            "n >= 4M/pi = {:.6} (got n = {n})",
            gate.to_f64()
        )));
    }
    let k = radial_constant(alpha, half_width, bits);
    let j = angular_constant(alpha, half_width, bits);
    let k_over_n = k.clone() / &nf;
    let radial_sq = k.clone().square() * (k_over_n.clone() * 2u32).exp();
    let angular_sq = j.clone().square() / nf.clone().square() * k_over_n.exp();
    let bound = (radial_sq + angular_sq).sqrt() / nf;
    Ok(ErrorBudget {
        k,
        j,
        bound,
        n,
        alpha: alpha.clone(),
        half_width: half_width.clone(),
    })
}

/// Splits `|w - z|²` into its radial and angular summands, with the common
/// modulus scale factored out and restored, so the decomposition stays
/// finite even when both operands sit at extreme magnitudes.
///
/// Fails with [`Error::Overflow`] when the scale gap between the operands
/// exceeds the compute precision, i.e. the smaller one would vanish from the
/// rescaled frame entirely.
pub fn carnot_decompose(w: &LogPolarComplex, z: &LogPolarComplex) -> Result<CarnotParts> {
    let bits = w
        .log_modulus
        .prec()
        .max(w.phase.prec())
        .max(z.log_modulus.prec())
        .max(z.phase.prec())
        + GUARD_BITS;
    let gap = Float::with_val(bits, &w.log_modulus) - &z.log_modulus;
    let vanish = Float::with_val(bits, bits) * Float::with_val(bits, rug::float::Constant::Log2);
    if gap.clone().abs() > vanish {
        return Err(Error::Overflow {
            log_modulus: gap.to_f64(),
            max_log_modulus: vanish.to_f64(),
        });
    }
    let scale_log = if w.log_modulus >= z.log_modulus {
        Float::with_val(bits, &w.log_modulus)
    } else {
        Float::with_val(bits, &z.log_modulus)
    };
    let neg_gap = -gap.clone().abs();
    // Rescaled radii: the larger is exactly 1, the smaller e^{-|gap|}.
    let radial = neg_gap.clone().exp_m1().square();
    let half_dtheta = (Float::with_val(bits, &w.phase) - &z.phase) / 2u32;
    let angular = Float::with_val(bits, 4) * neg_gap.exp() * half_dtheta.sin().square();
    let scale = (scale_log * 2u32).exp();
    let radial = radial * &scale;
    let angular = angular * scale;
    let distance_sq = radial.clone() + &angular;
    Ok(CarnotParts {
        distance_sq,
        radial,
        angular,
    })
}

/// `Σ_{m=0}^{N} r^m`, exact `(N+1)`-term count when the ratio degenerates
/// to 1.
fn geometric_series_sum(r: Float, n_trunc: u32, bits: u32) -> Float {
    if r == 1u32 {
        return Float::with_val(bits, n_trunc + 1);
    }
    (r.clone().pow(n_trunc + 1) - 1u32) / (r - 1u32)
}

/// The closed geometric forms of the weighted constant sums:
///
/// `S₁ = (M²/2)·[π²·Σ(ab²)^m - Σ a^m]`,
/// `S₂ = 2M³·[π³·Σ(ab³)^m - π·Σ(ab)^m]`,
///
/// all sums over `m = 0..=N`. Ratios that degenerate to exactly 1 fall back
/// to the `(N+1)`-term count form, so no parameter combination is rejected.
pub fn global_sums(
    params: &WeierstrassParams,
    half_width: &Float,
    n_trunc: u32,
) -> Result<(Float, Float)> {
    if !(half_width.clone() > 0u32) {
        return Err(Error::InvalidParams(format!(
            "half-width M must be positive, got {}",
            half_width.to_f64()
        )));
    }
    let bits = params.bits().max(half_width.prec()) + GUARD_BITS;
    let a = Float::with_val(bits, params.a());
    let b = Float::with_val(bits, params.b());
    let pi = numerics::float_pi(bits);
    let m2 = Float::with_val(bits, half_width).square();
    let m3 = Float::with_val(bits, half_width).pow(3);

    let sum_a = geometric_series_sum(a.clone(), n_trunc, bits);
    let sum_ab = geometric_series_sum(a.clone() * &b, n_trunc, bits);
    let sum_ab2 = geometric_series_sum(a.clone() * b.clone().square(), n_trunc, bits);
    let sum_ab3 = geometric_series_sum(a * b.pow(3), n_trunc, bits);

    let s1 = m2 / 2u32 * (pi.clone().square() * sum_ab2 - sum_a);
    let s2 = Float::with_val(bits, 2) * m3 * (pi.clone().pow(3) * sum_ab3 - pi * sum_ab);
    Ok((s1, s2))
}

/// Direct route for the same sums: term-by-term accumulation of
/// `Σ a^m K_m` and `Σ a^m J_m`. Kept as the independent check on the closed
/// forms of [`global_sums`].
pub fn global_sums_direct(
    params: &WeierstrassParams,
    half_width: &Float,
    n_trunc: u32,
) -> (Float, Float) {
    let bits = params.bits().max(half_width.prec()) + GUARD_BITS;
    let a = Float::with_val(bits, params.a());
    let mut s1 = Float::new(bits);
    let mut s2 = Float::new(bits);
    for m in 0..=n_trunc {
        let freq = FrequencyIndex::new(params, m, bits);
        let weight = a.clone().pow(m);
        s1 += weight.clone() * radial_constant(&freq.alpha_m, half_width, bits);
        s2 += weight * angular_constant(&freq.alpha_m, half_width, bits);
    }
    (s1, s2)
}

/// `max(4M/π, K_max(N))`: the admissibility floor on the oscillation order.
pub(crate) fn admissibility_threshold(
    params: &WeierstrassParams,
    half_width: &Float,
    n_trunc: u32,
    bits: u32,
) -> Float {
    let gate = Float::with_val(bits, half_width) * 4u32 / numerics::float_pi(bits);
    let freq = FrequencyIndex::new(params, n_trunc, bits);
    let k_max = radial_constant(&freq.alpha_m, half_width, bits);
    gate.max(&k_max)
}

/// The bound formula evaluated without the admissibility check. The value
/// is a guaranteed ceiling only when `n ≥ max(4M/π, K_max)`; callers that
/// report it outside that range (divergence-side cells of the phase diagram,
/// iterated-limit tables) label it accordingly.
pub fn global_budget_unchecked(
    params: &WeierstrassParams,
    half_width: &Float,
    n_trunc: u32,
    n: u64,
) -> Result<GlobalBudget> {
    let bits = params.bits().max(half_width.prec()) + GUARD_BITS;
    let (s1, s2) = global_sums(params, half_width, n_trunc)?;
    let freq = FrequencyIndex::new(params, n_trunc, bits);
    let k_max = radial_constant(&freq.alpha_m, half_width, bits);
    let threshold = admissibility_threshold(params, half_width, n_trunc, bits);
    let min_n = threshold
        .ceil()
        .to_integer()
        .and_then(|i| i.to_u64())
        .unwrap_or(u64::MAX)
        .max(1);
    let nf = Float::with_val(bits, n);
    let e = Float::with_val(bits, 1).exp();
    let bound = e.clone() / &nf * &s1 + e.sqrt() / nf.square() * &s2;
    Ok(GlobalBudget {
        s1,
        s2,
        k_max,
        bound,
        min_n,
    })
}

/// Budget for `sup_{|x|≤M} |W_N - 𝒲_{N,n}|`, guarded by the theorem
/// hypothesis `n ≥ max(4M/π, K_max)`. `K_max` grows like `b^{2N} M² π² / 2`,
/// so for large `N` the admissible orders are enormous; the error names the
/// binding constraint and the budget reports `min_n` so schedules can be
/// planned around it.
pub fn global_bound(
    params: &WeierstrassParams,
    half_width: &Float,
    n_trunc: u32,
    n: u64,
) -> Result<GlobalBudget> {
    if n == 0 {
        return Err(Error::InvalidParams("order n must be >= 1".into()));
    }
    let bits = params.bits().max(half_width.prec()) + GUARD_BITS;
    let budget = global_budget_unchecked(params, half_width, n_trunc, n)?;
    let gate = Float::with_val(bits, half_width) * 4u32 / numerics::float_pi(bits);
    let nf = Float::with_val(bits, n);
    if nf < budget.k_max || nf < gate {
        let constraint = if budget.k_max >= gate {
            format!(
                "n >= K_max = {:.6} (minimum admissible n is {})",
                budget.k_max.to_f64(),
                budget.min_n
            )
        } else {
            format!("n >= 4M/pi = {:.6}", gate.to_f64())
        };
        return Err(Error::PreconditionViolated(constraint));
    }
    Ok(budget)
}

/// Measured `sup |W_N(x) - 𝒲_{N,n}(x)|` over a uniform endpoint-inclusive
/// grid of `[-M, M]`, with the point of attainment.
///
/// Grid points evaluate in parallel; the max reduction is order-independent
/// (ties resolve to the smallest grid index), so results do not depend on
/// the thread count. With `g` points the grid resolves features of the
/// error function down to scale `2M/(g-1)`; the error's derivative is
/// bounded by `Σ a^m (1 + α_m) sup|F_n|`, which callers can use to pick `g`.
pub fn empirical_sup_error(
    params: &WeierstrassParams,
    half_width: &Float,
    n_trunc: u32,
    n: u64,
    grid_points: usize,
    prec: &PrecisionConfig,
) -> Result<(Float, Float)> {
    if grid_points < 2 {
        return Err(Error::InvalidParams(
            "grid needs at least two points".into(),
        ));
    }
    let bits = params.bits().max(half_width.prec()) + GUARD_BITS;
    let nf = Float::with_val(bits, n);
    let gate = Float::with_val(bits, half_width) * 4u32 / numerics::float_pi(bits);
    if nf < gate {
        return Err(Error::PreconditionViolated(format!(
            "n >= 4M/pi = {:.6} (got n = {n})",
            gate.to_f64()
        )));
    }
    let wb = prec.working_bits();
    let grid_x = |i: usize| {
        Float::with_val(wb, half_width) * Float::with_val(wb, 2 * i as i64 - (grid_points as i64 - 1))
            / Float::with_val(wb, grid_points as i64 - 1)
    };
    let errs: Vec<Float> = (0..grid_points)
        .into_par_iter()
        .map(|i| -> Result<Float> {
            let x = grid_x(i);
            let approx = weierstrass::eval_super_weierstrass(params, n_trunc, n, &x, prec)?;
            let target = weierstrass::eval_truncated(params, n_trunc, &x, prec);
            Ok(to_cartesian_unchecked(&approx).distance(&target))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0usize;
    for (i, e) in errs.iter().enumerate() {
        if *e > errs[best] {
            best = i;
        }
    }
    Ok((errs[best].clone(), grid_x(best)))
}
