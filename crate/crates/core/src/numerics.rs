//! High-dynamic-range complex arithmetic.
//!
//! Superoscillatory sums pair two hostile behaviours: outside their target
//! window the summands grow like `exp(n log alpha)` (far beyond any
//! fixed-exponent float format), while inside the window they cancel almost
//! perfectly. This module provides the two value types used everywhere else
//! — a cartesian pair of multiprecision reals and a log-polar form
//! `(ln |z|, arg z)` that never overflows — plus a scaled summation that
//! detects catastrophic cancellation and escalates precision instead of
//! returning garbage.
//!
//! Phases are stored *unreduced* (not folded modulo 2π): the phase-error
//! analysis downstream compares `n·arctan(α tan(x/n))` against `αx` as real
//! numbers, so multiples of 2π must survive.

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};

/// Guard bits carried on top of the nominal precision during conversions and
/// summation. A stored log-modulus or phase with a large integer part (think
/// `ln |z| ≈ 1e6`) keeps only `p - log2(|value|)` fractional bits at nominal
/// precision `p`; the guard restores full relative fidelity of `exp`/`cos`
/// of such values.
pub(crate) const GUARD_BITS: u32 = 64;

/// Hard ceiling on escalated precision, to keep a misconfigured
/// `PrecisionConfig` from requesting absurd allocations.
const MAX_BITS: u32 = 1 << 20;

/// Working precision and cancellation-escalation policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionConfig {
    mantissa_bits: u32,
    max_escalations: u32,
}

impl PrecisionConfig {
    pub const MIN_MANTISSA_BITS: u32 = 64;

    pub fn new(mantissa_bits: u32, max_escalations: u32) -> Result<Self> {
        if mantissa_bits < Self::MIN_MANTISSA_BITS {
            return Err(Error::InvalidParams(format!(
                "mantissa_bits must be at least {}, got {mantissa_bits}",
                Self::MIN_MANTISSA_BITS
            )));
        }
        Ok(Self {
            mantissa_bits,
            max_escalations,
        })
    }

    pub fn mantissa_bits(&self) -> u32 {
        self.mantissa_bits
    }

    pub fn max_escalations(&self) -> u32 {
        self.max_escalations
    }

    /// Nominal precision at escalation `level`: mantissa bits doubled per level.
    pub(crate) fn level_bits(&self, level: u32) -> u32 {
        self.mantissa_bits
            .checked_shl(level)
            .unwrap_or(MAX_BITS)
            .min(MAX_BITS)
    }

    /// Precision of returned values: nominal bits plus the guard.
    pub(crate) fn working_bits(&self) -> u32 {
        self.mantissa_bits + GUARD_BITS
    }
}

impl Default for PrecisionConfig {
    /// 128 mantissa bits, 3 escalations. The phase `n·arctan(α tan(x/n))`
    /// amplifies argument rounding by up to `n`; 128 bits leaves roughly 30
    /// safe decimal digits at the largest orders used in desk experiments.
    fn default() -> Self {
        Self {
            mantissa_bits: 128,
            max_escalations: 3,
        }
    }
}

/// A complex value as a pair of finite multiprecision reals.
#[derive(Clone, Debug, PartialEq)]
pub struct CartesianComplex {
    pub re: Float,
    pub im: Float,
}

impl CartesianComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_f64(bits: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(bits, re),
            im: Float::with_val(bits, im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Euclidean modulus `|z|`.
    pub fn norm(&self) -> Float {
        let bits = self.re.prec().max(self.im.prec());
        Float::with_val(bits, self.re.clone().hypot(&self.im))
    }

    /// `|self - other|`.
    pub fn distance(&self, other: &Self) -> Float {
        let bits = self
            .re
            .prec()
            .max(self.im.prec())
            .max(other.re.prec().max(other.im.prec()));
        let dr = Float::with_val(bits, &self.re) - &other.re;
        let di = Float::with_val(bits, &self.im) - &other.im;
        dr.hypot(&di)
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// A nonzero complex value stored as `(ln |z|, arg z)`.
///
/// Both fields are finite reals; the complex zero is *not* representable and
/// operations that would produce it signal [`Error::CancellationToZero`] or
/// [`Error::ZeroValue`] instead. The phase is not reduced modulo 2π.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPolarComplex {
    pub log_modulus: Float,
    pub phase: Float,
}

impl LogPolarComplex {
    pub fn new(log_modulus: Float, phase: Float) -> Result<Self> {
        if !log_modulus.is_finite() || !phase.is_finite() {
            return Err(Error::InvalidParams(
                "log_modulus and phase must be finite".into(),
            ));
        }
        Ok(Self { log_modulus, phase })
    }

    pub fn conj(&self) -> Self {
        Self {
            log_modulus: self.log_modulus.clone(),
            phase: -self.phase.clone(),
        }
    }

    /// Decimal log of the modulus, `log10 |z|`.
    pub fn log10_modulus(&self) -> Float {
        let bits = self.log_modulus.prec();
        let ln10 = Float::with_val(bits, 10).ln();
        Float::with_val(bits, &self.log_modulus) / ln10
    }
}

/// π at the requested precision.
pub fn float_pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

pub(crate) fn rounded(mut v: Float, bits: u32) -> Float {
    v.set_prec(bits);
    v
}

/// `z` as log-polar: `log_modulus = ln|z|`, `phase = Arg z` in `(-π, π]`.
///
/// The returned fields carry [`GUARD_BITS`] extra precision so that a
/// subsequent [`to_cartesian`] round-trips to within 2 ulp of the input.
pub fn logpolar_from_cartesian(z: &CartesianComplex) -> Result<LogPolarComplex> {
    if z.is_zero() {
        return Err(Error::ZeroValue);
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("components must be finite".into()));
    }
    let bits = z.re.prec().max(z.im.prec()) + GUARD_BITS;
    let re = Float::with_val(bits, &z.re);
    let im = Float::with_val(bits, &z.im);
    let log_modulus = re.clone().hypot(&im).ln();
    let phase = im.atan2(&re);
    Ok(LogPolarComplex { log_modulus, phase })
}

/// Back to cartesian, provided the value fits under the caller's cap.
///
/// Fails with [`Error::Overflow`] when `log_modulus > max_log_modulus`,
/// signalling a value only representable in log-polar form. Pass an infinite
/// cap to convert unconditionally within the multiprecision exponent range.
pub fn to_cartesian(z: &LogPolarComplex, max_log_modulus: &Float) -> Result<CartesianComplex> {
    if z.log_modulus > *max_log_modulus {
        return Err(Error::Overflow {
            log_modulus: z.log_modulus.to_f64(),
            max_log_modulus: max_log_modulus.to_f64(),
        });
    }
    Ok(to_cartesian_unchecked(z))
}

/// Conversion without a cap; the multiprecision exponent range (billions of
/// binary orders of magnitude) is the only limit.
pub(crate) fn to_cartesian_unchecked(z: &LogPolarComplex) -> CartesianComplex {
    let out_bits = z.log_modulus.prec().max(z.phase.prec());
    let bits = out_bits + GUARD_BITS;
    let modulus = Float::with_val(bits, &z.log_modulus).exp();
    let (sin, cos) = Float::with_val(bits, &z.phase).sin_cos(Float::new(bits));
    CartesianComplex {
        re: rounded(modulus.clone() * cos, out_bits),
        im: rounded(modulus * sin, out_bits),
    }
}

enum Pass {
    Resolved(LogPolarComplex),
    Cancelled,
}

/// One summation pass at a fixed nominal precision. Terms are rescaled by
/// the largest `ln(weight) + log_modulus`, accumulated in cartesian form in
/// list order, and accepted only if the rescaled result keeps at least half
/// the nominal bits above the cancellation floor.
fn scaled_sum_pass<F>(len: usize, term_at: &mut F, nominal_bits: u32) -> Result<Pass>
where
    F: FnMut(usize, u32) -> Result<(Float, LogPolarComplex)>,
{
    let wb = nominal_bits.saturating_add(GUARD_BITS).min(MAX_BITS);
    let mut scaled_logs = Vec::with_capacity(len);
    let mut phases = Vec::with_capacity(len);
    let mut log_max: Option<Float> = None;
    for k in 0..len {
        let (weight, term) = term_at(k, nominal_bits)?;
        if !(weight.is_finite() && weight.is_sign_positive() && !weight.is_zero()) {
            return Err(Error::InvalidParams(format!(
                "weight #{k} must be strictly positive and finite"
            )));
        }
        let l = Float::with_val(wb, weight.ln()) + &term.log_modulus;
        if log_max.as_ref().is_none_or(|m| l > *m) {
            log_max = Some(l.clone());
        }
        scaled_logs.push(l);
        phases.push(term.phase);
    }
    let log_max = log_max.expect("non-empty term list");

    let mut sum_re = Float::new(wb);
    let mut sum_im = Float::new(wb);
    for (l, phase) in scaled_logs.iter().zip(&phases) {
        let scale = Float::with_val(wb, l - &log_max).exp();
        let (sin, cos) = Float::with_val(wb, phase).sin_cos(Float::new(wb));
        sum_re += scale.clone() * cos;
        sum_im += scale * sin;
    }

    // Rescaled modulus vs. the cancellation floor 2^(-nominal_bits/2).
    let log_r = sum_re.clone().hypot(&sum_im).ln();
    let threshold =
        -Float::with_val(wb, Constant::Log2) * Float::with_val(wb, nominal_bits / 2);
    if !(log_r >= threshold) {
        return Ok(Pass::Cancelled);
    }
    Ok(Pass::Resolved(LogPolarComplex {
        log_modulus: log_max + log_r,
        phase: sum_im.atan2(&sum_re),
    }))
}

/// `Σ weight_k · term_k` over log-polar terms with positive weights.
///
/// Summation order is the list order, fixed, so results are bitwise
/// reproducible regardless of thread count. Near-total cancellation is
/// detected by comparing the rescaled result modulus against
/// `2^(-bits/2)`; the sum is retried with doubled mantissa bits up to
/// `max_escalations` times before [`Error::CancellationToZero`] is raised.
pub fn scaled_sum(
    terms: &[(Float, LogPolarComplex)],
    prec: &PrecisionConfig,
) -> Result<LogPolarComplex> {
    scaled_sum_with(
        terms.len(),
        |k, _bits| Ok((terms[k].0.clone(), terms[k].1.clone())),
        prec,
    )
}

/// Escalating scaled sum with term re-derivation.
///
/// `term_at(k, bits)` must return the `k`-th `(weight, term)` pair computed
/// at nominal precision `bits`. Unlike [`scaled_sum`], which can only rerun
/// the accumulation over fixed inputs, callers that can recompute their
/// terms (series evaluators, Fourier sums) regain full accuracy after
/// escalation because the term rounding error shrinks along with the
/// summation error.
pub fn scaled_sum_with<F>(len: usize, mut term_at: F, prec: &PrecisionConfig) -> Result<LogPolarComplex>
where
    F: FnMut(usize, u32) -> Result<(Float, LogPolarComplex)>,
{
    if len == 0 {
        return Err(Error::InvalidParams("term list must be non-empty".into()));
    }
    for level in 0..=prec.max_escalations() {
        let bits = prec.level_bits(level);
        if let Pass::Resolved(v) = scaled_sum_pass(len, &mut term_at, bits)? {
            return Ok(LogPolarComplex {
                log_modulus: rounded(v.log_modulus, prec.working_bits()),
                phase: rounded(v.phase, prec.working_bits()),
            });
        }
    }
    Err(Error::CancellationToZero {
        threshold_exponent: prec.level_bits(prec.max_escalations()) / 2,
        escalations: prec.max_escalations(),
    })
}
