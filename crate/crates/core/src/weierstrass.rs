//! The complex Weierstrass function `W(x) = Σ a^m e^{i b^m π x}`, its
//! truncation `W_N`, and the superoscillating approximant `𝒲_{N,n}`
//! obtained by replacing each exponential with `F_n(x; b^m π)`.
//!
//! `W` and `W_N` are bounded by `1/(1-a)` and live comfortably in cartesian
//! form; `𝒲_{N,n}` grows exponentially outside the superoscillation window
//! and is therefore returned in log-polar form.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{self, CartesianComplex, LogPolarComplex, PrecisionConfig, GUARD_BITS};
use crate::superosc;

/// Which parameter hypotheses to enforce.
///
/// `Strict` is the classical nowhere-differentiability setting (`b` an odd
/// integer, `ab > 1 + 3π/2`); `Basic` is the weaker hypothesis set of the
/// joint-convergence analysis (`0 < a < 1`, `b > 1`, `b` not necessarily an
/// integer).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    Basic,
}

/// Validated `(a, b)` pair.
#[derive(Clone, Debug)]
pub struct WeierstrassParams {
    a: Float,
    b: Float,
    strictness: Strictness,
}

/// Validates `(a, b)` under the chosen hypothesis set; the error names the
/// violated condition.
pub fn validate_params(a: Float, b: Float, strictness: Strictness) -> Result<WeierstrassParams> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParams("a and b must be finite".into()));
    }
    if !(a.clone() > 0u32 && a.clone() < 1u32) {
        return Err(Error::InvalidParams(format!(
            "a must satisfy 0 < a < 1, got {}",
            a.to_f64()
        )));
    }
    if !(b.clone() > 1u32) {
        return Err(Error::InvalidParams(format!(
            "b must satisfy b > 1, got {}",
            b.to_f64()
        )));
    }
    if strictness == Strictness::Strict {
        let odd = b
            .to_integer()
            .map(|i| i.is_odd())
            .unwrap_or(false);
        if !odd {
            return Err(Error::InvalidParams(format!(
                "strict mode requires b to be an odd integer, got {}",
                b.to_f64()
            )));
        }
        let bits = a.prec().max(b.prec()) + GUARD_BITS;
        let threshold = Float::with_val(bits, 1) + numerics::float_pi(bits) * 3u32 / 2u32;
        let ab = Float::with_val(bits, &a * &b);
        if !(ab > threshold) {
            return Err(Error::InvalidParams(format!(
                "strict mode requires a*b > 1 + 3*pi/2 ~= {:.6}, got a*b = {}",
                threshold.to_f64(),
                ab.to_f64()
            )));
        }
    }
    Ok(WeierstrassParams { a, b, strictness })
}

impl WeierstrassParams {
    pub fn a(&self) -> &Float {
        &self.a
    }

    pub fn b(&self) -> &Float {
        &self.b
    }

    pub fn strictness(&self) -> Strictness {
        self.strictness
    }

    pub(crate) fn bits(&self) -> u32 {
        self.a.prec().max(self.b.prec())
    }

    /// Closed-form bound `(1 - a^(N+1)) / (1 - a)` on `|W_N|`.
    pub fn partial_sum_bound(&self, n_trunc: u32, bits: u32) -> Float {
        let a = Float::with_val(bits, &self.a);
        (Float::with_val(bits, 1) - a.clone().pow(n_trunc + 1)) / (Float::with_val(bits, 1) - a)
    }

    /// Tail bound `a^(N+1) / (1 - a)` on `|W - W_N|`.
    pub fn truncation_tail(&self, n_trunc: u32, bits: u32) -> Float {
        let a = Float::with_val(bits, &self.a);
        a.clone().pow(n_trunc + 1) / (Float::with_val(bits, 1) - a)
    }
}

/// Index `m` of the series together with its frequency `α_m = b^m π`.
#[derive(Clone, Debug)]
pub struct FrequencyIndex {
    pub m: u32,
    pub alpha_m: Float,
}

impl FrequencyIndex {
    pub fn new(params: &WeierstrassParams, m: u32, bits: u32) -> Self {
        let alpha_m = numerics::float_pi(bits) * Float::with_val(bits, params.b()).pow(m);
        Self { m, alpha_m }
    }
}

/// Truncated series `W_N(x) = Σ_{m=0}^{N} a^m e^{i b^m π x}`, summed in
/// index order.
pub fn eval_truncated(
    params: &WeierstrassParams,
    n_trunc: u32,
    x: &Float,
    prec: &PrecisionConfig,
) -> CartesianComplex {
    let wb = prec.working_bits();
    let a = Float::with_val(wb, params.a());
    let xx = Float::with_val(wb, x);
    let mut sum_re = Float::new(wb);
    let mut sum_im = Float::new(wb);
    for m in 0..=n_trunc {
        let freq = FrequencyIndex::new(params, m, wb);
        let weight = a.clone().pow(m);
        let theta = freq.alpha_m * &xx;
        let (sin, cos) = theta.sin_cos(Float::new(wb));
        sum_re += weight.clone() * cos;
        sum_im += weight * sin;
    }
    CartesianComplex::new(sum_re, sum_im)
}

/// The full series to within `tol`: returns `W_N(x)` with the least `N`
/// whose tail bound `a^(N+1)/(1-a)` is at most `tol`, together with that `N`.
pub fn eval_weierstrass(
    params: &WeierstrassParams,
    x: &Float,
    tol: &Float,
    prec: &PrecisionConfig,
) -> Result<(CartesianComplex, u32)> {
    if !(tol.clone() > 0u32) || !tol.is_finite() {
        return Err(Error::InvalidTolerance);
    }
    let wb = prec.working_bits();
    let a = Float::with_val(wb, params.a());
    let one_minus_a = Float::with_val(wb, 1) - &a;
    // Closed-form candidate N + 1 = ceil(ln(tol (1-a)) / ln a), then nudge
    // to the exact least index by direct tail checks.
    let target = Float::with_val(wb, tol) * &one_minus_a;
    let ratio = target.ln() / a.clone().ln();
    let mut n_trunc = if ratio <= 1u32 {
        0u32
    } else {
        (ratio.to_f64().ceil() as u32).saturating_sub(1)
    };
    let tail = |n: u32| params.truncation_tail(n, wb);
    while !(tail(n_trunc) <= *tol) {
        n_trunc += 1;
    }
    while n_trunc > 0 && tail(n_trunc - 1) <= *tol {
        n_trunc -= 1;
    }
    Ok((eval_truncated(params, n_trunc, x, prec), n_trunc))
}

/// Superoscillating approximant
/// `𝒲_{N,n}(x) = Σ_{m=0}^{N} a^m F_n(x; b^m π)`,
/// summed in index order through the cancellation-aware scaled sum; each
/// retry after an escalation re-derives every term at the doubled precision.
pub fn eval_super_weierstrass(
    params: &WeierstrassParams,
    n_trunc: u32,
    n: u64,
    x: &Float,
    prec: &PrecisionConfig,
) -> Result<LogPolarComplex> {
    numerics::scaled_sum_with(
        n_trunc as usize + 1,
        |m, bits| {
            let wb = bits + GUARD_BITS;
            let weight = Float::with_val(wb, params.a()).pow(m as u32);
            let freq = FrequencyIndex::new(params, m as u32, wb);
            let level_prec = PrecisionConfig::new(bits, 0)?;
            let term = superosc::eval_fn(n, &freq.alpha_m, x, &level_prec)?;
            Ok((weight, term))
        },
        prec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{float_pi, to_cartesian_unchecked};

    fn prec() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn params(a: f64, b: f64) -> WeierstrassParams {
        validate_params(
            Float::with_val(192, a),
            Float::with_val(192, b),
            Strictness::Basic,
        )
        .unwrap()
    }

    fn tol(neg_exp: i32) -> Float {
        Float::with_val(64, neg_exp).exp2()
    }

    #[test]
    fn validation_examples() {
        // ab = 6.3 > 1 + 3pi/2, b odd.
        assert!(validate_params(
            Float::with_val(128, 0.9f64),
            Float::with_val(128, 7),
            Strictness::Strict
        )
        .is_ok());
        // ab = 1.5 fails the strict growth condition.
        assert!(matches!(
            validate_params(
                Float::with_val(128, 0.5f64),
                Float::with_val(128, 3),
                Strictness::Strict
            ),
            Err(Error::InvalidParams(_))
        ));
        // Basic mode only needs 0 < a < 1 and b > 1.
        assert!(validate_params(
            Float::with_val(128, 0.5f64),
            Float::with_val(128, 3),
            Strictness::Basic
        )
        .is_ok());
        // Even or non-integer b fails strict mode.
        for b in [8.0f64, 7.5] {
            assert!(matches!(
                validate_params(
                    Float::with_val(128, 0.9f64),
                    Float::with_val(128, b),
                    Strictness::Strict
                ),
                Err(Error::InvalidParams(_))
            ));
        }
        for (a, b) in [(0.0f64, 3.0f64), (1.0, 3.0), (0.5, 1.0), (0.5, 0.5)] {
            assert!(validate_params(
                Float::with_val(128, a),
                Float::with_val(128, b),
                Strictness::Basic
            )
            .is_err());
        }
    }

    #[test]
    fn truncated_at_origin_is_geometric() {
        let p = params(0.9, 7.0);
        let w = eval_truncated(&p, 2, &Float::new(192), &prec());
        let a = Float::with_val(256, p.a());
        let expected = Float::with_val(256, 1) + a.clone() + a.clone() * &a;
        assert!((w.re - expected).abs() < tol(-150));
        assert!(w.im.clone().abs() < tol(-150));
    }

    #[test]
    fn truncated_single_term_is_unit_wave() {
        // N = 0, x = 1: e^{i pi} = -1.
        let p = params(0.9, 7.0);
        let w = eval_truncated(&p, 0, &Float::with_val(192, 1), &prec());
        assert!((w.re + 1u32).abs() < tol(-150));
        assert!(w.im.clone().abs() < tol(-150));
    }

    #[test]
    fn truncated_matches_term_by_term_oracle() {
        let p = params(0.5, 3.0);
        let x = Float::with_val(192, 0.25f64);
        let w = eval_truncated(&p, 3, &x, &prec());
        // Independent 4-term summation at 256 bits.
        let mut ore = Float::new(256);
        let mut oim = Float::new(256);
        for m in 0..=3u32 {
            let alpha = float_pi(256) * Float::with_val(256, 3u32).pow(m);
            let theta = alpha * Float::with_val(256, 0.25f64);
            let (s, c) = theta.sin_cos(Float::new(256));
            let w_m = Float::with_val(256, 0.5f64).pow(m);
            ore += w_m.clone() * c;
            oim += w_m * s;
        }
        assert!((w.re - ore).abs() < tol(-140));
        assert!((w.im - oim).abs() < tol(-140));
    }

    #[test]
    fn truncated_stays_under_partial_sum_bound() {
        let p = params(0.7, 2.5);
        let cap = p.partial_sum_bound(6, 256);
        for x in [-3.0f64, -0.33, 0.0, 0.5, 1.7] {
            let w = eval_truncated(&p, 6, &Float::with_val(192, x), &prec());
            assert!(w.norm() <= cap.clone() + tol(-100));
        }
    }

    #[test]
    fn weierstrass_geometric_values() {
        let p = params(0.9, 7.0);
        let tol_in = Float::with_val(192, 1e-6f64);
        let (w, n_used) = eval_weierstrass(&p, &Float::new(192), &tol_in, &prec()).unwrap();
        // Least N with 0.9^(N+1)/0.1 <= 1e-6, found by direct scan.
        let mut expect_n = 0u32;
        while p.truncation_tail(expect_n, 256) > tol_in {
            expect_n += 1;
        }
        assert_eq!(n_used, expect_n);
        assert_eq!(n_used, 152);
        assert!((w.re - 10u32).abs() < 1.0001e-6f64);

        let p2 = params(0.5, 3.0);
        let (w2, _) = eval_weierstrass(
            &p2,
            &Float::new(192),
            &Float::with_val(192, 1e-9f64),
            &prec(),
        )
        .unwrap();
        assert!((w2.re - 2u32).abs() < 1.0001e-9f64);
    }

    #[test]
    fn weierstrass_real_part_matches_cosine_series() {
        let p = params(0.5, 3.0);
        let x = Float::with_val(192, 0.4f64);
        let tol_in = Float::with_val(192, 1e-9f64);
        let (w, n_used) = eval_weierstrass(&p, &x, &tol_in, &prec()).unwrap();
        let mut oracle = Float::new(256);
        for m in 0..=n_used {
            let alpha = float_pi(256) * Float::with_val(256, 3u32).pow(m);
            oracle += Float::with_val(256, 0.5f64).pow(m) * (alpha * &x).cos();
        }
        assert!((w.re - oracle).abs() < tol(-100));
    }

    #[test]
    fn weierstrass_consistent_under_tolerance_refinement() {
        let p = params(0.6, 2.0);
        let x = Float::with_val(192, 0.3f64);
        for t in [1e-4f64, 1e-7] {
            let coarse = eval_weierstrass(&p, &x, &Float::with_val(192, t), &prec())
                .unwrap()
                .0;
            let fine = eval_weierstrass(&p, &x, &Float::with_val(192, t / 10.0), &prec())
                .unwrap()
                .0;
            assert!(coarse.distance(&fine) <= Float::with_val(128, 1.1 * t));
        }
    }

    #[test]
    fn weierstrass_rejects_bad_tolerance() {
        let p = params(0.5, 3.0);
        for t in [0.0f64, -1.0] {
            assert!(matches!(
                eval_weierstrass(&p, &Float::new(128), &Float::with_val(128, t), &prec()),
                Err(Error::InvalidTolerance)
            ));
        }
    }

    #[test]
    fn super_weierstrass_at_origin_is_exact_geometric() {
        let p = params(0.5, 3.0);
        for (n_trunc, n) in [(5u32, 40u64), (2, 10_000), (0, 7)] {
            let w = eval_super_weierstrass(&p, n_trunc, n, &Float::new(192), &prec()).unwrap();
            let z = to_cartesian_unchecked(&w);
            let expected = p.partial_sum_bound(n_trunc, 256);
            let rel = (z.re.clone() - &expected).abs() / expected;
            assert!(rel < tol(-120));
            assert!(z.im.clone().abs() < tol(-120));
        }
    }

    #[test]
    fn super_weierstrass_blows_up_outside_window() {
        let p = validate_params(
            Float::with_val(192, 0.9f64),
            Float::with_val(192, 7),
            Strictness::Strict,
        )
        .unwrap();
        let w =
            eval_super_weierstrass(&p, 3, 50, &Float::with_val(192, 10), &prec()).unwrap();
        assert!(w.log_modulus > 100u32);
    }

    #[test]
    fn super_weierstrass_conjugate_symmetry() {
        let p = params(0.5, 3.0);
        let x = Float::with_val(192, 0.21f64);
        let v = eval_super_weierstrass(&p, 2, 500, &x, &prec()).unwrap();
        let w = eval_super_weierstrass(&p, 2, 500, &(-x), &prec()).unwrap();
        assert!((v.log_modulus.clone() - w.log_modulus).abs() < tol(-110));
        assert!((v.phase.clone() + w.phase).abs() < tol(-110));
    }
}
