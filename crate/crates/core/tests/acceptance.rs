//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured figures (run with `--nocapture` to see
//! them). Every tolerance is pinned in code; there are no tunables.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Float;

use superweier::bounds;
use superweier::numerics::{
    self, to_cartesian, CartesianComplex, LogPolarComplex, PrecisionConfig,
};
use superweier::regimes::{self, Schedule};
use superweier::superosc;
use superweier::weierstrass::{self, Strictness, WeierstrassParams};

fn prec() -> PrecisionConfig {
    PrecisionConfig::default()
}

fn fl(bits: u32, s: &str) -> Float {
    Float::with_val(bits, Float::parse(s).unwrap())
}

fn params_basic(a: f64, b: f64) -> WeierstrassParams {
    weierstrass::validate_params(
        Float::with_val(192, a),
        Float::with_val(192, b),
        Strictness::Basic,
    )
    .unwrap()
}

/// Dense-grid sup of |F_n(x; alpha) - e^{i alpha x}| over [-M, M].
fn sup_fn_error(n: u64, alpha: &Float, half_width: &Float, points: usize) -> Float {
    let pc = prec();
    (0..points)
        .into_par_iter()
        .map(|i| {
            let x = Float::with_val(256, half_width)
                * Float::with_val(256, 2 * i as i64 - (points as i64 - 1))
                / Float::with_val(256, points as i64 - 1);
            let v = superosc::eval_fn(n, alpha, &x, &pc).unwrap();
            let theta = Float::with_val(256, alpha) * &x;
            let (sin, cos) = theta.sin_cos(Float::new(256));
            let z = to_cartesian(&v, &Float::with_val(64, 1e9f64)).unwrap();
            z.distance(&CartesianComplex::new(cos, sin))
        })
        .reduce(
            || Float::with_val(64, -1),
            |a, b| if b > a { b } else { a },
        )
}

#[test]
fn criterion_01_gap_estimate_randomized() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut violations = 0usize;
    for _ in 0..100_000 {
        let gamma = Float::with_val(128, rng.gen_range(1.0f64..=50.0));
        // y uniform on (-1, 10]: 1 - gen::<f64>() lies in (0, 1].
        let y = Float::with_val(128, -1.0 + 11.0 * (1.0 - rng.gen::<f64>()));
        let (lhs, rhs) = bounds::lemma_gap(&gamma, &y).unwrap();
        if lhs > rhs {
            violations += 1;
        }
    }
    let elapsed = started.elapsed();
    assert_eq!(violations, 0);
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("criterion 01: PASS — 100000 samples, 0 violations, {elapsed:?}");
}

#[test]
fn criterion_02_single_term_bound_validity() {
    let started = Instant::now();
    let mut cells = 0usize;
    for n in [16u64, 64, 256, 1024] {
        for mult in [1u32, 3, 9] {
            for mh in [0.5f64, 1.0] {
                let alpha = numerics::float_pi(192) * mult;
                let half_width = Float::with_val(192, mh);
                let budget = match bounds::single_term_bound(n, &alpha, &half_width) {
                    Ok(b) => b,
                    Err(_) => continue, // fails the 4M/pi gate
                };
                if Float::with_val(256, n) < budget.k {
                    continue; // fails the n >= K gate
                }
                let sup = sup_fn_error(n, &alpha, &half_width, 4001);
                assert!(
                    sup <= budget.bound,
                    "cell n={n} alpha={mult}pi M={mh}: sup={sup} > bound={}",
                    budget.bound
                );
                cells += 1;
            }
        }
    }
    assert_eq!(cells, 18);

    // Pinned spot values at (n, alpha, M) = (100, pi, 1).
    let alpha = numerics::float_pi(192);
    let one = Float::with_val(192, 1);
    let budget = bounds::single_term_bound(100, &alpha, &one).unwrap();
    let dev = (budget.bound.clone() - fl(192, "0.046701")).abs();
    assert!(dev <= 1e-5f64, "bound = {}", budget.bound);
    let sup = sup_fn_error(100, &alpha, &one, 4001);
    assert!((0.040f64..=0.0467).contains(&sup.to_f64()), "sup = {sup}");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 02: PASS — {cells} admissible cells all under bound; \
         bound(100, pi, 1) = {:.6}, measured sup = {:.6}; {elapsed:?}",
        budget.bound.to_f64(),
        sup.to_f64()
    );
}

#[test]
fn criterion_03_first_order_rate() {
    let started = Instant::now();
    let mut pairs = 0usize;
    let mut tightest = f64::INFINITY;
    for n in [256u64, 1024] {
        for mult in [1u32, 3, 9] {
            for mh in [0.5f64, 1.0] {
                let alpha = numerics::float_pi(256) * mult;
                let half_width = Float::with_val(256, mh);
                let budget = match bounds::single_term_bound(n, &alpha, &half_width) {
                    Ok(b) => b,
                    Err(_) => continue,
                };
                if Float::with_val(256, n) < budget.k {
                    continue;
                }
                // Keep only cells whose second-order term contributes less
                // than 1% of the bound.
                let nf = Float::with_val(256, n);
                let first_sq: Float = budget.k.clone().square()
                    * (budget.k.clone() * 2u32 / &nf).exp();
                let second_sq: Float = budget.j.clone().square() / nf.clone().square()
                    * (budget.k.clone() / &nf).exp();
                let share = 1f64
                    - (first_sq.clone() / (first_sq + second_sq))
                        .sqrt()
                        .to_f64();
                if share >= 0.01 {
                    continue;
                }
                let err_n = sup_fn_error(n, &alpha, &half_width, 4001);
                let err_2n = sup_fn_error(2 * n, &alpha, &half_width, 4001);
                let ratio = (err_2n / err_n).to_f64();
                assert!(
                    (0.45..=0.55).contains(&ratio),
                    "cell n={n} alpha={mult}pi M={mh}: ratio = {ratio}"
                );
                if (ratio - 0.5).abs() > (tightest - 0.5).abs() || !tightest.is_finite() {
                    tightest = ratio;
                }
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 8, "only {pairs} qualifying cells");
    let elapsed = started.elapsed();
    println!(
        "criterion 03: PASS — {pairs} halving pairs in [0.45, 0.55], extreme ratio {tightest:.5}; {elapsed:?}"
    );
}

#[test]
fn criterion_04_form_equivalence() {
    let started = Instant::now();
    let pc = prec();
    let tol = fl(64, "1e-25");
    let cases: Vec<(u64, u32, usize)> = (1..=64u64)
        .flat_map(|n| {
            [1u32, 3, 7]
                .into_iter()
                .flat_map(move |m| (0..101usize).map(move |i| (n, m, i)))
        })
        .collect();
    let worst = cases
        .par_iter()
        .map(|&(n, mult, i)| {
            let alpha = numerics::float_pi(192) * mult;
            let x = Float::with_val(192, 2 * i as i64 - 100) / Float::with_val(192, 100);
            let by_sum = superosc::eval_fn_sum(n, &alpha, &x, &pc).unwrap();
            let closed = to_cartesian(
                &superosc::eval_fn(n, &alpha, &x, &pc).unwrap(),
                &Float::with_val(64, 1e9f64),
            )
            .unwrap();
            by_sum.distance(&closed) / by_sum.norm()
        })
        .reduce(
            || Float::new(64),
            |a, b| if b > a { b } else { a },
        );
    assert!(worst <= tol, "worst relative deviation {worst}");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 04: PASS — worst relative deviation {:.3e} over 19392 evaluations; {elapsed:?}",
        worst.to_f64()
    );
}

#[test]
fn criterion_05_global_bound_validity() {
    let started = Instant::now();
    let p = params_basic(0.5, 3.0);
    let m = Float::with_val(192, 1);
    let pc = prec();
    let mut lines = Vec::new();
    for n_trunc in [0u32, 1, 2] {
        let probe = bounds::global_budget_unchecked(&p, &m, n_trunc, 1).unwrap();
        let n = 4 * probe.min_n;
        let budget = bounds::global_bound(&p, &m, n_trunc, n).unwrap();
        let (sup, _) = bounds::empirical_sup_error(&p, &m, n_trunc, n, 2001, &pc).unwrap();
        assert!(
            sup <= budget.bound,
            "N={n_trunc}: sup={sup} > bound={}",
            budget.bound
        );
        lines.push(format!(
            "N={n_trunc} n={n}: sup {:.4e} <= bound {:.4e}",
            sup.to_f64(),
            budget.bound.to_f64()
        ));

        let (s1, s2) = bounds::global_sums(&p, &m, n_trunc).unwrap();
        let (d1, d2) = bounds::global_sums_direct(&p, &m, n_trunc);
        let tol = fl(64, "1e-25");
        assert!((s1.clone() - &d1).abs() / d1 <= tol);
        assert!((s2.clone() - &d2).abs() / d2 <= tol);
    }
    let elapsed = started.elapsed();
    println!(
        "criterion 05: PASS — {}; closed sums match direct to 1e-25; {elapsed:?}",
        lines.join("; ")
    );
}

#[test]
fn criterion_06_fixed_order_divergence() {
    let started = Instant::now();
    let p = params_basic(0.5, 3.0);
    let pc = prec();

    let probe =
        regimes::divergence_probe(&p, 2, &Float::with_val(192, 0.5f64), 50.0, 60, &pc).unwrap();
    assert!(probe.diverged);
    let hit = probe.n_hit.unwrap();
    assert!(hit <= 60);
    assert!(probe.partial_log_modulus > 50u32);

    let stay = regimes::divergence_probe(&p, 2, &Float::new(192), 50.0, 60, &pc).unwrap();
    assert!(!stay.diverged);
    let value = stay.partial_log_modulus.clone().exp();
    assert!((value - 2u32).abs() < 1e-12f64);

    let rhos = regimes::ratio_sequence(&p, 2, &Float::with_val(192, 0.5f64), 20).unwrap();
    let last = rhos.last().unwrap().clone();
    let rel = ((last.clone() - 4.5f64) / 4.5f64).abs();
    assert!(rel < 0.01f64, "rho_20 = {last}");

    let elapsed = started.elapsed();
    println!(
        "criterion 06: PASS — diverged at N={hit}, converges to 2 at x=0, rho_20 = {:.6}; {elapsed:?}",
        last.to_f64()
    );
}

#[test]
fn criterion_07_joint_convergence_supercritical() {
    let started = Instant::now();
    let p = params_basic(0.5, 3.0);
    let s = Schedule::new(
        Float::with_val(192, 1),
        Float::with_val(192, 1),
        Float::with_val(192, 13.5f64),
    )
    .unwrap();
    let m = Float::with_val(192, 1);
    let trace = regimes::joint_convergence_run(
        &p,
        &s,
        4,
        &m,
        2001,
        regimes::DEFAULT_ORDER_BUDGET,
        &prec(),
    )
    .unwrap();
    let mut admissible = 0usize;
    for row in &trace.rows {
        if row.admissible {
            admissible += 1;
            assert!(row.sup_err_e1.clone().unwrap() <= row.bound_e1.clone().unwrap());
        }
        // R_N = 1/N up to the rounding of n_N: |R_N - 1/N| <= 0.5/(N n_N).
        let target = 1.0 / row.n_trunc as f64;
        let slack = 0.5 / (row.n_trunc as f64 * row.n_osc as f64) * 1.000001;
        let dev = (row.ratio.to_f64() - target).abs();
        assert!(dev <= slack, "N={}: R_N off by {dev}", row.n_trunc);
    }
    assert!(admissible >= 2);
    let totals: Vec<Float> = trace
        .rows
        .iter()
        .filter_map(|r| r.total_bound.clone())
        .collect();
    assert!(totals.windows(2).all(|w| w[1] < w[0]));
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:?}");
    println!(
        "criterion 07: PASS — {admissible} admissible rows, E1 under bound, total bound decreasing; {elapsed:?}"
    );
}

#[test]
fn criterion_08_limit_orders_do_not_commute() {
    let started = Instant::now();
    let p = params_basic(0.5, 3.0);
    let pc = prec();
    let x = Float::with_val(192, 0.5f64);

    // Fixed n = 4, growing N: blows up at x = 0.5 ...
    let probe = regimes::divergence_probe(&p, 4, &x, 50.0, 60, &pc).unwrap();
    assert!(probe.diverged);

    // ... while fixed N = 4, growing n, settles under the bound formula on
    // [-0.5, 0.5].
    let m = Float::with_val(192, 0.5f64);
    let n_list = [64u64, 256, 1024, 4096];
    let sups = regimes::iterated_limit_check(&p, 4, &m, &n_list, 1001, &pc).unwrap();
    for w in sups.windows(2) {
        assert!(w[1] <= w[0], "sequence not nonincreasing: {w:?}");
    }
    let budget = bounds::global_budget_unchecked(&p, &m, 4, 4096).unwrap();
    let last = sups.last().unwrap();
    assert!(
        last <= &budget.bound,
        "final {last} > bound {}",
        budget.bound
    );
    let elapsed = started.elapsed();
    println!(
        "criterion 08: PASS — probe diverged at N={}, refinement {:.3e} -> {:.3e} <= bound {:.3e}; {elapsed:?}",
        probe.n_hit.unwrap(),
        sups[0].to_f64(),
        last.to_f64(),
        budget.bound.to_f64()
    );
}

#[test]
fn criterion_09_carnot_identity() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1999);
    let tol = Float::with_val(64, -116).exp2();
    let mut worst = Float::new(64);
    for _ in 0..10_000 {
        let w = LogPolarComplex::new(
            Float::with_val(192, rng.gen_range(-20.0f64..=20.0)),
            Float::with_val(192, rng.gen_range(-40.0f64..=40.0)),
        )
        .unwrap();
        let z = LogPolarComplex::new(
            Float::with_val(192, rng.gen_range(-20.0f64..=20.0)),
            Float::with_val(192, rng.gen_range(-40.0f64..=40.0)),
        )
        .unwrap();
        let parts = bounds::carnot_decompose(&w, &z).unwrap();
        let cap = Float::with_val(64, 1e30f64);
        let direct = to_cartesian(&w, &cap)
            .unwrap()
            .distance(&to_cartesian(&z, &cap).unwrap())
            .square();
        let rel = (parts.distance_sq.clone() - &direct).abs() / direct;
        if rel > worst {
            worst = rel;
        }
    }
    assert!(worst <= tol, "worst relative gap {worst}");
    let elapsed = started.elapsed();
    println!(
        "criterion 09: PASS — 10000 pairs, worst relative gap {:.3e} <= 2^-116; {elapsed:?}",
        worst.to_f64()
    );
}

#[test]
fn criterion_10_sweep_output_is_thread_independent() {
    let started = Instant::now();
    let bin = env!("CARGO_BIN_EXE_superweier");
    let dir = std::env::temp_dir().join(format!("superweier-acc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |threads: &str, name: &str| {
        let out = dir.join(name);
        let status = std::process::Command::new(bin)
            .args([
                "sweep",
                "--joint",
                "--a",
                "0.5",
                "--b",
                "3",
                "--c",
                "1",
                "--p",
                "1",
                "--beta",
                "13.5",
                "--N-max",
                "4",
                "--M",
                "1",
                "--grid-points",
                "501",
                "--out",
                out.to_str().unwrap(),
            ])
            .env("RAYON_NUM_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(&out).unwrap()
    };
    let single = run("1", "single.csv");
    let multi = run("8", "multi.csv");
    assert_eq!(single, multi, "CSV bytes differ across thread counts");
    assert!(!single.is_empty());
    let elapsed = started.elapsed();
    println!(
        "criterion 10: PASS — {} bytes identical across 1-thread and 8-thread runs; {elapsed:?}",
        single.len()
    );
}
