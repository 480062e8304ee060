//! Superoscillation primitives.
//!
//! The central object is the band-limited sequence
//! `F_n(x; α) = (cos(x/n) + iα sin(x/n))^n`, which approximates `e^{iαx}`
//! near the origin even for `|α| ≫ 1` although its Fourier frequencies all
//! lie in `[-1, 1]`. Two evaluation routes are provided: a closed polar form
//! with cost independent of `n` (the production path, usable up to
//! `n ~ 10^8`), and the O(n) Fourier superposition, capped and kept as an
//! independent oracle. The module also exposes the local wave number, the
//! superoscillation-region boundary, and the Lagrange-type sequences `T_n`
//! built from interpolation nodes in `[-1, 1]`.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{
    self, rounded, CartesianComplex, LogPolarComplex, PrecisionConfig, GUARD_BITS,
};

/// Default cap on the order of the O(n)-storage Fourier form.
pub const DEFAULT_EXPANSION_CAP: u64 = 4096;

/// One wave of the superposition: coefficient `C_j(n; α)` (real, stored as
/// complex) at frequency `λ_{j,n} = 1 - 2j/n ∈ [-1, 1]`.
#[derive(Clone, Debug)]
pub struct FourierTerm {
    pub coefficient: CartesianComplex,
    pub frequency: Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Equispaced,
    Chebyshev,
    Custom,
}

/// Pairwise-distinct interpolation nodes in `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct NodeSet {
    nodes: Vec<Float>,
    kind: NodeKind,
}

impl NodeSet {
    /// `h_j = 1 - 2j/n` for `j = 0..=n`, mirroring the frequencies of the
    /// Fourier form. Requires `n >= 1` so there are at least two nodes.
    pub fn equispaced(n: u32, bits: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams(
                "equispaced node set needs n >= 1".into(),
            ));
        }
        let nodes = (0..=n)
            .map(|j| {
                Float::with_val(bits, i64::from(n) - 2 * i64::from(j)) / Float::with_val(bits, n)
            })
            .collect();
        Ok(Self {
            nodes,
            kind: NodeKind::Equispaced,
        })
    }

    /// Chebyshev nodes `cos((2j+1)π / (2n+2))` for `j = 0..=n`.
    pub fn chebyshev(n: u32, bits: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams(
                "chebyshev node set needs n >= 1".into(),
            ));
        }
        let pi = numerics::float_pi(bits);
        let nodes = (0..=n)
            .map(|j| {
                let t = Float::with_val(bits, 2 * u64::from(j) + 1) * pi.clone()
                    / Float::with_val(bits, 2 * u64::from(n) + 2);
                t.cos()
            })
            .collect();
        Ok(Self {
            nodes,
            kind: NodeKind::Chebyshev,
        })
    }

    /// A caller-supplied node list, validated for count, range, and
    /// distinctness.
    pub fn custom(nodes: Vec<Float>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidParams(
                "node set needs at least two nodes".into(),
            ));
        }
        for h in &nodes {
            if !h.is_finite() || h.clone().abs() > 1u32 {
                return Err(Error::InvalidParams(format!(
                    "node {h} lies outside [-1, 1]"
                )));
            }
        }
        for i in 0..nodes.len() {
            for j in (i + 1)..nodes.len() {
                if nodes[i] == nodes[j] {
                    return Err(Error::DuplicateNodes);
                }
            }
        }
        Ok(Self {
            nodes,
            kind: NodeKind::Custom,
        })
    }

    pub fn nodes(&self) -> &[Float] {
        &self.nodes
    }

    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `F_n(x; α)` through the closed polar form, cost independent of `n`:
///
/// `log_modulus = (n/2)·ln(1 + (α² - 1) sin²(x/n))`,
/// `phase = n·atan2(α sin(x/n), cos(x/n))`.
///
/// The argument must satisfy `|x/n| < π`; the phase branch is continuous on
/// that interval (the error-bound theorems later impose the much tighter
/// `n ≥ 4M/π`, which keeps `|x/n| ≤ π/4`). The phase is returned unreduced.
pub fn eval_fn(n: u64, alpha: &Float, x: &Float, prec: &PrecisionConfig) -> Result<LogPolarComplex> {
    if n == 0 {
        return Err(Error::InvalidParams("order n must be >= 1".into()));
    }
    let wb = prec.working_bits();
    let nf = Float::with_val(wb, n);
    let u = Float::with_val(wb, x) / &nf;
    if !(u.clone().abs() < numerics::float_pi(wb)) {
        return Err(Error::Domain(format!(
            "|x/n| must be < pi, got x/n = {}",
            u.to_f64()
        )));
    }
    let (sin_u, cos_u) = u.sin_cos(Float::new(wb));
    let a = Float::with_val(wb, alpha);
    let curvature = (a.clone().square() - 1u32) * sin_u.clone().square();
    if curvature <= -1i32 {
        // Only reachable when the modulus cos² + α² sin² vanishes (α = 0
        // with x/n at an odd multiple of π/2).
        return Err(Error::Domain(
            "F_n has zero modulus at this point (alpha = 0, cos(x/n) = 0)".into(),
        ));
    }
    let log_modulus = curvature.ln_1p() * nf.clone() / 2u32;
    let phase = Float::with_val(wb, &a * &sin_u).atan2(&cos_u) * nf;
    Ok(LogPolarComplex { log_modulus, phase })
}

fn check_expansion_order(n: u64, cap: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("order n must be >= 1".into()));
    }
    if n > cap {
        return Err(Error::ResourceLimit { requested: n, cap });
    }
    Ok(())
}

/// The binomial coefficient row `C_j = binom(n, j)·((α+1)/2)^(n-j)·((1-α)/2)^j`
/// built by the exact term-ratio recurrence.
fn coefficient_row(n: u64, alpha: &Float, bits: u32) -> Vec<Float> {
    let count = (n + 1) as usize;
    let hi = (Float::with_val(bits, alpha) + 1u32) / 2u32;
    let lo = (1u32 - Float::with_val(bits, alpha)) / 2u32;
    let mut row = vec![Float::new(bits); count];
    if hi.is_zero() {
        // α = -1 exactly: only the j = n wave survives.
        row[count - 1] = lo.pow(u32::try_from(n).expect("capped order"));
        return row;
    }
    let ratio = lo / &hi;
    row[0] = hi.pow(u32::try_from(n).expect("capped order"));
    for j in 0..n {
        let step = Float::with_val(bits, &row[j as usize] * &ratio) * Float::with_val(bits, n - j)
            / Float::with_val(bits, j + 1);
        row[(j + 1) as usize] = step;
    }
    row
}

/// The `n + 1` waves of the Fourier form, in order `j = 0..=n`.
///
/// Coefficients are computed at the precision of `alpha` (plus internal
/// guard bits); the row sums to 1 and every frequency lies in `[-1, 1]`.
pub fn fourier_expansion(n: u64, alpha: &Float) -> Result<Vec<FourierTerm>> {
    fourier_expansion_capped(n, alpha, DEFAULT_EXPANSION_CAP)
}

/// As [`fourier_expansion`] with an explicit cap on `n`.
pub fn fourier_expansion_capped(n: u64, alpha: &Float, cap: u64) -> Result<Vec<FourierTerm>> {
    check_expansion_order(n, cap)?;
    let bits = alpha.prec() + GUARD_BITS;
    let row = coefficient_row(n, alpha, bits);
    Ok(row
        .into_iter()
        .enumerate()
        .map(|(j, c)| FourierTerm {
            coefficient: CartesianComplex::new(c, Float::new(bits)),
            frequency: Float::with_val(bits, n as i64 - 2 * j as i64) / Float::with_val(bits, n),
        })
        .collect())
}

/// `F_n(x; α)` evaluated as the superposition `Σ_j C_j e^{i λ_{j,n} x}` —
/// the independent O(n) oracle for [`eval_fn`].
///
/// The waves are generated by the exact-ratio recurrence
/// `e^{i λ_{j+1} x} = e^{i λ_j x}·e^{-2ix/n}`. Because coefficients of a
/// superoscillatory row exceed the result by hundreds of binary orders, the
/// whole superposition is re-derived at doubled precision until the result
/// clears the cancellation floor, as in [`numerics::scaled_sum`]; with the
/// default config that resolves rows cancelling by up to ~512 bits.
pub fn eval_fn_sum(
    n: u64,
    alpha: &Float,
    x: &Float,
    prec: &PrecisionConfig,
) -> Result<CartesianComplex> {
    check_expansion_order(n, DEFAULT_EXPANSION_CAP)?;
    for level in 0..=prec.max_escalations() {
        let bits = prec.level_bits(level);
        let wb = bits + GUARD_BITS;
        let row = coefficient_row(n, alpha, wb);
        let xx = Float::with_val(wb, x);
        let (mut w_im, mut w_re) = xx.clone().sin_cos(Float::new(wb));
        let theta_step = Float::with_val(wb, -2) * &xx / Float::with_val(wb, n);
        let (step_im, step_re) = theta_step.sin_cos(Float::new(wb));
        let mut sum_re = Float::new(wb);
        let mut sum_im = Float::new(wb);
        let mut max_log_coeff = Float::with_val(wb, rug::float::Special::NegInfinity);
        for c in &row {
            sum_re += Float::with_val(wb, c * &w_re);
            sum_im += Float::with_val(wb, c * &w_im);
            let log_c = c.clone().abs().ln();
            if log_c > max_log_coeff {
                max_log_coeff = log_c;
            }
            let next_re = Float::with_val(wb, &w_re * &step_re) - Float::with_val(wb, &w_im * &step_im);
            let next_im = Float::with_val(wb, &w_re * &step_im) + Float::with_val(wb, &w_im * &step_re);
            w_re = next_re;
            w_im = next_im;
        }
        let log_r = sum_re.clone().hypot(&sum_im).ln() - &max_log_coeff;
        let floor = -Float::with_val(wb, rug::float::Constant::Log2)
            * Float::with_val(wb, bits / 2);
        if log_r >= floor {
            return Ok(CartesianComplex::new(
                rounded(sum_re, prec.working_bits()),
                rounded(sum_im, prec.working_bits()),
            ));
        }
    }
    Err(Error::CancellationToZero {
        threshold_exponent: prec.level_bits(prec.max_escalations()) / 2,
        escalations: prec.max_escalations(),
    })
}

/// Local wave number `k_loc(x) = α / (cos²(x/n) + α² sin²(x/n))`, the phase
/// gradient of `F_n`. Superoscillation means `|k_loc| > 1` despite the band
/// limit 1.
pub fn local_wave_number(n: u64, alpha: &Float, x: &Float) -> Result<Float> {
    if n == 0 {
        return Err(Error::InvalidParams("order n must be >= 1".into()));
    }
    let bits = alpha.prec().max(x.prec()) + GUARD_BITS;
    let u = Float::with_val(bits, x) / Float::with_val(bits, n);
    let (sin_u, cos_u) = u.sin_cos(Float::new(bits));
    let a = Float::with_val(bits, alpha);
    let denom = cos_u.square() + a.clone().square() * sin_u.square();
    if denom.is_zero() {
        return Err(Error::Domain(
            "phase gradient undefined: alpha = 0 with cos(x/n) = 0".into(),
        ));
    }
    Ok(a / denom)
}

/// Half-width `x* = n·arctan(1/√α)` of the superoscillation region for
/// `α > 1`: `k_loc > 1` exactly on `|x| < x*`.
pub fn superosc_boundary(n: u64, alpha: &Float) -> Result<Float> {
    if n == 0 {
        return Err(Error::InvalidParams("order n must be >= 1".into()));
    }
    if !(alpha.clone() > 1u32) {
        return Err(Error::Domain(format!(
            "superoscillation region requires alpha > 1, got {}",
            alpha.to_f64()
        )));
    }
    let bits = alpha.prec() + GUARD_BITS;
    let inner = (Float::with_val(bits, 1) / Float::with_val(bits, alpha).sqrt()).atan();
    Ok(inner * Float::with_val(bits, n))
}

/// Lagrange-type superoscillating sequence over the given nodes:
///
/// `T_n(x; α) = Σ_j [Π_{k≠j} (h_k - α)/(h_k - h_j)] e^{i h_j x}`.
///
/// Coefficients are assembled as sums of logs with a sign tally (raw
/// products overflow beyond a few dozen nodes) and summed with the
/// cancellation safeguards of [`numerics::scaled_sum_with`]. When `α`
/// coincides with a node the Kronecker-delta property short-circuits to
/// `e^{i h_k x}` exactly.
pub fn eval_lagrange_tn(
    nodes: &NodeSet,
    alpha: &Float,
    x: &Float,
    prec: &PrecisionConfig,
) -> Result<CartesianComplex> {
    let wb = prec.working_bits();
    if let Some(h) = nodes.nodes().iter().find(|h| *h == alpha) {
        let theta = Float::with_val(wb, h) * Float::with_val(wb, x);
        let (sin, cos) = theta.sin_cos(Float::new(wb));
        return Ok(CartesianComplex::new(cos, sin));
    }
    let hs = nodes.nodes();
    let sum = numerics::scaled_sum_with(
        hs.len(),
        |j, bits| {
            let wb = bits + GUARD_BITS;
            let mut log_c = Float::new(wb);
            let mut negative = false;
            for (k, h) in hs.iter().enumerate() {
                if k == j {
                    continue;
                }
                let num = Float::with_val(wb, h) - Float::with_val(wb, alpha);
                let den = Float::with_val(wb, h) - &hs[j];
                negative ^= num.is_sign_negative() != den.is_sign_negative();
                log_c += num.abs().ln() - den.abs().ln();
            }
            let mut phase = Float::with_val(wb, &hs[j]) * Float::with_val(wb, x);
            if negative {
                phase += numerics::float_pi(wb);
            }
            Ok((
                Float::with_val(wb, 1),
                LogPolarComplex {
                    log_modulus: log_c,
                    phase,
                },
            ))
        },
        prec,
    )?;
    Ok(numerics::to_cartesian_unchecked(&sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{float_pi, to_cartesian_unchecked};

    fn prec() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn fl(bits: u32, s: &str) -> Float {
        Float::with_val(bits, Float::parse(s).unwrap())
    }

    fn tol(neg_exp: i32) -> Float {
        Float::with_val(64, neg_exp).exp2()
    }

    #[test]
    fn fn_at_origin_is_one() {
        let v = eval_fn(
            17,
            &Float::with_val(192, 9.3f64),
            &Float::new(192),
            &prec(),
        )
        .unwrap();
        assert!(v.log_modulus.is_zero());
        assert!(v.phase.is_zero());
    }

    #[test]
    fn fn_at_quarter_turn() {
        // F_1(pi/2; 2) = 2i.
        let x = float_pi(192) / 2u32;
        let v = eval_fn(1, &Float::with_val(192, 2), &x, &prec()).unwrap();
        let ln2 = Float::with_val(256, 2).ln();
        assert!((v.log_modulus.clone() - ln2).abs() < tol(-120));
        assert!((v.phase.clone() - float_pi(256) / 2u32).abs() < tol(-120));
    }

    #[test]
    fn fn_large_alpha_error_near_target() {
        // |F_100(1; pi) - e^{i pi}|, frozen from an independent evaluation;
        // consistent with the explicit bound 0.04670787...
        let v = eval_fn(100, &float_pi(192), &Float::with_val(192, 1), &prec()).unwrap();
        let z = to_cartesian_unchecked(&v);
        let target = CartesianComplex::new(-Float::with_val(192, 1), Float::new(192));
        let err = z.distance(&target);
        let expected = fl(192, "0.04533394064366174227655041206453057794952784597716");
        assert!((err - expected).abs() < tol(-100));
    }

    #[test]
    fn fn_rejects_arguments_beyond_pi() {
        let e = eval_fn(2, &Float::with_val(128, 3), &Float::with_val(128, 7), &prec());
        assert!(matches!(e, Err(Error::Domain(_))));
    }

    #[test]
    fn fn_modulus_at_least_one_when_alpha_superunitary() {
        for a in [1.0f64, 2.0, 9.87, -3.5] {
            let v = eval_fn(
                9,
                &Float::with_val(192, a),
                &Float::with_val(192, 1.25f64),
                &prec(),
            )
            .unwrap();
            assert!(v.log_modulus >= 0, "alpha = {a}");
        }
    }

    #[test]
    fn fn_conjugate_symmetry_is_exact() {
        for (n, a, x) in [(7u64, 3.25f64, 0.8f64), (100, -2.0, 2.9), (64, 9.8, 0.01)] {
            let alpha = Float::with_val(192, a);
            let xp = Float::with_val(192, x);
            let v = eval_fn(n, &alpha, &xp, &prec()).unwrap();
            let w = eval_fn(n, &alpha, &(-xp), &prec()).unwrap();
            assert_eq!(v.log_modulus, w.log_modulus);
            assert_eq!(v.phase, -w.phase);
        }
    }

    #[test]
    fn expansion_two_waves_for_order_one() {
        let alpha = Float::with_val(192, 4.5f64);
        let terms = fourier_expansion(1, &alpha).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].frequency, 1u32);
        assert_eq!(terms[1].frequency, -1i32);
        assert!((terms[0].coefficient.re.clone() - 2.75f64).abs() < tol(-120));
        assert!((terms[1].coefficient.re.clone() + 1.75f64).abs() < tol(-120));
    }

    #[test]
    fn expansion_row_sums_to_one() {
        // The row cancels by ~n log2(|alpha|) bits, so alpha carries enough
        // precision to leave at least 110 bits after cancellation.
        for (n, a) in [(4u64, 2.0f64), (23, 9.6), (64, -7.3)] {
            let alpha = Float::with_val(512, a);
            let terms = fourier_expansion(n, &alpha).unwrap();
            let mut sum = Float::new(640);
            for t in &terms {
                sum += &t.coefficient.re;
                assert!(t.frequency.clone().abs() <= 1u32);
            }
            assert!((sum - 1u32).abs() < tol(-110), "n={n} alpha={a}");
        }
    }

    #[test]
    fn expansion_matches_closed_form_order_eight() {
        let alpha = float_pi(192);
        let x = Float::with_val(192, 0.3f64);
        let by_sum = eval_fn_sum(8, &alpha, &x, &prec()).unwrap();
        let closed = to_cartesian_unchecked(&eval_fn(8, &alpha, &x, &prec()).unwrap());
        let rel = by_sum.distance(&closed) / closed.norm();
        assert!(rel < fl(64, "1e-25"));
    }

    #[test]
    fn sum_alpha_one_is_plain_exponential() {
        let x = Float::with_val(192, 0.7f64);
        let v = eval_fn_sum(3, &Float::with_val(192, 1), &x, &prec()).unwrap();
        let (sin, cos) = x.sin_cos(Float::new(192));
        assert!((v.re - cos).abs() < tol(-120));
        assert!((v.im - sin).abs() < tol(-120));
    }

    #[test]
    fn sum_order_one_alpha_five_at_pi() {
        let v = eval_fn_sum(1, &Float::with_val(192, 5), &float_pi(192), &prec()).unwrap();
        assert!((v.re + 1u32).abs() < tol(-100));
        assert!(v.im.clone().abs() < tol(-100));
    }

    #[test]
    fn sum_cross_checks_closed_form() {
        let alpha = float_pi(192) * 3u32;
        let x = Float::with_val(192, 0.2f64);
        let by_sum = eval_fn_sum(12, &alpha, &x, &prec()).unwrap();
        let closed = to_cartesian_unchecked(&eval_fn(12, &alpha, &x, &prec()).unwrap());
        let rel = by_sum.distance(&closed) / closed.norm();
        assert!(rel < fl(64, "1e-25"));
    }

    #[test]
    fn expansion_respects_cap() {
        let alpha = Float::with_val(128, 2);
        assert!(matches!(
            fourier_expansion_capped(10, &alpha, 5),
            Err(Error::ResourceLimit { requested: 10, cap: 5 })
        ));
        assert!(matches!(
            eval_fn_sum(8000, &alpha, &Float::new(128), &prec()),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn wave_number_at_origin_is_alpha() {
        let alpha = Float::with_val(192, 4);
        let k = local_wave_number(10, &alpha, &Float::new(192)).unwrap();
        assert_eq!(k, 4u32);
    }

    #[test]
    fn wave_number_is_one_on_the_boundary() {
        // x = 10 arctan(1/2) with alpha = 4.
        let x = Float::with_val(192, 0.5f64).atan() * 10u32;
        let k = local_wave_number(10, &Float::with_val(192, 4), &x).unwrap();
        assert!((k - 1u32).abs() < tol(-120));
    }

    #[test]
    fn wave_number_interior_point() {
        // Frozen from a finite-difference measurement of the phase gradient
        // of F_10(x; 4) at x = 1 (agrees with direct evaluation).
        let k = local_wave_number(10, &Float::with_val(192, 4), &Float::with_val(192, 1)).unwrap();
        let expected = fl(192, "3.47977179800646595507931839631751706661176231963752853");
        assert!((k - expected).abs() < tol(-120));
    }

    #[test]
    fn wave_number_zero_alpha() {
        let k = local_wave_number(3, &Float::new(128), &Float::with_val(128, 1)).unwrap();
        assert!(k.is_zero());
    }

    #[test]
    fn boundary_matches_oracle_and_scales_linearly() {
        let alpha = Float::with_val(192, 4);
        let b10 = superosc_boundary(10, &alpha).unwrap();
        let expected = fl(192, "4.63647609000806116214256231461214402028537054286120264");
        assert!((b10.clone() - expected).abs() < tol(-120));
        let b20 = superosc_boundary(20, &alpha).unwrap();
        assert_eq!(b20, b10 * 2u32);
    }

    #[test]
    fn boundary_needs_alpha_above_one() {
        assert!(matches!(
            superosc_boundary(10, &Float::with_val(128, 1)),
            Err(Error::Domain(_))
        ));
        // Limiting value arctan(1) = pi/4 just above 1.
        let b = superosc_boundary(1, &Float::with_val(192, 1.0 + 1e-12)).unwrap();
        assert!((b - float_pi(192) / 4u32).abs() < 1e-6f64);
    }

    #[test]
    fn boundary_separates_wave_number_regimes() {
        for a in [2.0f64, 4.0, 9.869604401089358] {
            let alpha = Float::with_val(192, a);
            let xs = superosc_boundary(10, &alpha).unwrap();
            let inside = Float::with_val(192, &xs) * Float::with_val(192, 0.999f64);
            let outside = Float::with_val(192, &xs) * Float::with_val(192, 1.001f64);
            assert!(local_wave_number(10, &alpha, &inside).unwrap() > 1u32);
            assert!(local_wave_number(10, &alpha, &outside).unwrap() < 1u32);
        }
    }

    #[test]
    fn lagrange_two_nodes_is_order_one_sequence() {
        // Nodes {-1, 1}: T_1(x; α) = cos x + iα sin x = F_1(x; α).
        let nodes = NodeSet::custom(vec![
            Float::with_val(192, -1),
            Float::with_val(192, 1),
        ])
        .unwrap();
        for (a, x) in [(3.7f64, 0.4f64), (-2.2, 1.1), (9.0, -0.3)] {
            let alpha = Float::with_val(192, a);
            let xx = Float::with_val(192, x);
            let t = eval_lagrange_tn(&nodes, &alpha, &xx, &prec()).unwrap();
            let f = to_cartesian_unchecked(&eval_fn(1, &alpha, &xx, &prec()).unwrap());
            assert!(t.distance(&f) < tol(-100), "a={a} x={x}");
        }
    }

    #[test]
    fn lagrange_kronecker_property() {
        let nodes = NodeSet::equispaced(8, 192).unwrap();
        let h3 = nodes.nodes()[3].clone();
        let x = Float::with_val(192, 2.1f64);
        let t = eval_lagrange_tn(&nodes, &h3, &x, &prec()).unwrap();
        let theta = Float::with_val(256, &h3) * &x;
        let (sin, cos) = theta.sin_cos(Float::new(256));
        assert!((t.re - cos).abs() < tol(-150));
        assert!((t.im - sin).abs() < tol(-150));
    }

    #[test]
    fn lagrange_equispaced_approximates_fast_wave() {
        // Tolerance set from an independent 512-bit evaluation, which puts
        // the true deviation near 5.7e-24.
        let nodes = NodeSet::equispaced(16, 256).unwrap();
        let x = Float::with_val(256, 0.1f64);
        let t = eval_lagrange_tn(&nodes, &float_pi(256), &x, &prec()).unwrap();
        let theta = float_pi(256) * &x;
        let (sin, cos) = theta.sin_cos(Float::new(256));
        let err = t.distance(&CartesianComplex::new(cos, sin));
        assert!(err < fl(64, "1e-20"));
    }

    #[test]
    fn node_sets_validate() {
        assert!(matches!(
            NodeSet::custom(vec![Float::with_val(64, 0.5f64), Float::with_val(64, 0.5f64)]),
            Err(Error::DuplicateNodes)
        ));
        assert!(matches!(
            NodeSet::custom(vec![Float::with_val(64, 2), Float::with_val(64, 0)]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            NodeSet::custom(vec![Float::with_val(64, 1)]),
            Err(Error::InvalidParams(_))
        ));
        let cheb = NodeSet::chebyshev(16, 192).unwrap();
        assert_eq!(cheb.len(), 17);
        for h in cheb.nodes() {
            assert!(h.clone().abs() < 1u32);
        }
    }
}
