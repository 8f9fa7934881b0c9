//! Acceptance suite: every criterion pinned here at its stated tolerance,
//! one PASS line printed per criterion (run with `--nocapture` to see them
//! on success).
//!
//! Runtime budgets are asserted in optimized builds only; debug builds print
//! the elapsed time without enforcing the budget.

use lcdt::corpus::{corpus_default, CorpusEntry};
use lcdt::harness::{
    bandlimited_report, clarkson_report, default_matrices, default_orders, donoho_stark_report,
    factorization_report, gaussian_norm_anchor, heisenberg_report, heisenberg_smoothing_report,
    inversion_report, matolcsi_report, miyachi_extremal_check, moment_interpolation_report,
    nash_report, plancherel_report, riemann_lebesgue_report, run_suite, spectrum_l2_direct,
    young_report, ClarksonVariant, DonohoStarkVariant, ExponentPair, MatolcsiVariant, NashVariant,
    SuiteConfig, TransformCase, Verdict,
};
use lcdt::measure::{lp_norm, IntervalSet, QuadratureSpec};
use lcdt::special::{dunkl_kernel, normalized_bessel_j, DunklOrder};
use lcdt::transform::{lcdt_forward, lcdt_via_dunkl, CanonicalMatrix};
use lcdt::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn assert_budget(name: &str, elapsed: std::time::Duration, budget_s: f64) {
    if cfg!(debug_assertions) {
        eprintln!("{name}: {elapsed:?} (budget {budget_s}s not enforced in debug builds)");
    } else {
        assert!(
            elapsed.as_secs_f64() < budget_s,
            "{name} exceeded its runtime budget: {elapsed:?} > {budget_s}s"
        );
    }
}

fn sweep_matrices() -> Vec<CanonicalMatrix> {
    default_matrices()
}

fn sweep_orders() -> Vec<DunklOrder> {
    default_orders()
}

fn sweep_corpus() -> Vec<CorpusEntry> {
    corpus_default(7)
        .into_iter()
        .filter(|e| e.transform_sweep)
        .collect()
}

#[test]
fn criterion_01_kernel_reduction() {
    let t0 = Instant::now();
    let k = DunklOrder::new(-0.5).unwrap();
    let mut worst = 0.0f64;
    for i in 0..200 {
        for j in 0..200 {
            let lambda = -10.0 + 20.0 * i as f64 / 199.0;
            let x = -10.0 + 20.0 * j as f64 / 199.0;
            let got = dunkl_kernel(k, lambda, x);
            let expect = Complex64::new(0.0, -lambda * x).exp();
            worst = worst.max((got - expect).norm());
        }
    }
    assert!(
        worst <= 1e-12,
        "kernel reduction at k=-1/2: worst |Δ| = {worst:e}"
    );
    let mut worst_j = 0.0f64;
    for i in 0..=1000 {
        let x = -50.0 + 100.0 * i as f64 / 1000.0;
        let half = normalized_bessel_j(0.5, x).unwrap();
        let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
        worst_j = worst_j.max((half - sinc).abs());
        let mhalf = normalized_bessel_j(-0.5, x).unwrap();
        worst_j = worst_j.max((mhalf - x.cos()).abs());
    }
    assert!(
        worst_j <= 1e-12,
        "half-order closed forms: worst |Δ| = {worst_j:e}"
    );
    assert_budget("criterion 1", t0.elapsed(), 5.0);
    println!(
        "criterion 1 PASS kernel reduction: kernel dev {worst:.2e}, half-order dev {worst_j:.2e} (≤ 1e-12), {:?}",
        t0.elapsed()
    );
}

#[test]
fn criterion_02_kernel_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let k = DunklOrder::new(rng.gen_range(-0.5..5.0)).unwrap();
        let lambda = rng.gen_range(-20.0..20.0);
        let x = rng.gen_range(-20.0..20.0);
        worst = worst.max(dunkl_kernel(k, lambda, x).norm());
    }
    assert!(
        worst <= 1.0 + 1e-12,
        "kernel modulus bound: worst |E| = {worst:.15}"
    );
    println!("criterion 2 PASS kernel bound: max |E_k| = {worst:.15} ≤ 1 + 1e-12 on 10^4 samples");
}

#[test]
fn criteria_03_04_06_transform_sweep() {
    use rayon::prelude::*;
    let corpus = sweep_corpus();
    assert_eq!(
        corpus.len(),
        20,
        "the transform sweep corpus has 20 signals"
    );
    let matrices = sweep_matrices();
    let orders = sweep_orders();
    let quad = QuadratureSpec::default();
    let mut cases = Vec::new();
    for entry in &corpus {
        for m in &matrices {
            for &k in &orders {
                cases.push((entry, m, k));
            }
        }
    }
    assert_eq!(cases.len(), 400);

    // criterion 3: Plancherel, timed on its own (spectrum norms evaluated
    // directly on quadrature nodes, no interpolant in the loop)
    let t0 = Instant::now();
    let plancherel: Vec<f64> = cases
        .par_iter()
        .map(|(entry, m, k)| {
            let f2 = lp_norm(&entry.signal, 2.0, *k, &quad).unwrap();
            let s2 = spectrum_l2_direct(&entry.signal, m, *k, &quad).unwrap();
            (s2 - f2).abs() / f2
        })
        .collect();
    let worst3 = plancherel.iter().cloned().fold(0.0f64, f64::max);
    assert!(
        worst3 <= 1e-6,
        "Plancherel: worst relative deviation {worst3:e}"
    );
    // closed-form anchor: ‖e^{-x²}‖₂ = 0.5 at k = 0
    let anchor = lp_norm(
        &lcdt::corpus::make_gaussian(1.0, 0.0).unwrap(),
        2.0,
        DunklOrder::new(0.0).unwrap(),
        &quad,
    )
    .unwrap();
    assert!(
        (anchor - 0.5).abs() < 1e-10,
        "anchor ‖e^{{-x²}}‖₂ = {anchor}"
    );
    assert_budget("criterion 3", t0.elapsed(), 120.0);
    println!(
        "criterion 3 PASS plancherel: worst rel dev {worst3:.2e} ≤ 1e-6 over 400 cases, anchor 0.5 ok, {:?}",
        t0.elapsed()
    );

    // criteria 4 and 6 share the sampled-spectrum context per case
    let results: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|(entry, m, k)| {
            let mut ctx = TransformCase::build(&entry.signal, m, *k, &quad).unwrap();
            let inv = inversion_report(&mut ctx).unwrap();
            let mut worst_ratio = riemann_lebesgue_report(&mut ctx).unwrap().ratio;
            for p in [1.25, 1.5, 2.0] {
                let young = young_report(&mut ctx, ExponentPair::new(p).unwrap()).unwrap();
                worst_ratio = worst_ratio.max(young.ratio);
            }
            (inv.lhs, worst_ratio)
        })
        .collect();
    let worst4 = results.iter().map(|r| r.0).fold(0.0f64, f64::max);
    assert!(
        worst4 <= 1e-6,
        "inversion: worst relative L² error {worst4:e}"
    );
    println!("criterion 4 PASS inversion: worst round-trip rel L² error {worst4:.2e} ≤ 1e-6");
    let worst6 = results.iter().map(|r| r.1).fold(0.0f64, f64::max);
    assert!(
        worst6 <= 1.0 + 1e-9,
        "Riemann-Lebesgue/Young: worst ratio {worst6}"
    );
    println!(
        "criterion 6 PASS riemann-lebesgue + young: worst ratio {worst6:.12} ≤ 1 + 1e-9, p ∈ {{1.25, 1.5, 2}}"
    );
}

#[test]
fn criterion_05_factorization() {
    let corpus = sweep_corpus();
    let matrices = sweep_matrices();
    let orders = sweep_orders();
    let quad = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let entry = &corpus[rng.gen_range(0..corpus.len())];
        let matrix = matrices[rng.gen_range(0..matrices.len())];
        let k = orders[rng.gen_range(0..orders.len())];
        let quad = QuadratureSpec {
            radius: entry.signal.decay_radius.max(30.0),
            ..quad
        };
        let window = lcdt::transform::spectral_window(&entry.signal, &matrix);
        let grid = lcdt::transform::linspace(-window, window, 101);
        let direct = lcdt_forward(&entry.signal, &matrix, k, &grid, &quad).unwrap();
        let via = lcdt_via_dunkl(&entry.signal, &matrix, k, &grid, &quad).unwrap();
        worst = worst.max(direct.max_abs_diff(&via));
    }
    assert!(
        worst <= 1e-9,
        "factorization: worst sup-difference {worst:e}"
    );
    println!(
        "criterion 5 PASS factorization: worst sup-diff {worst:.2e} ≤ 1e-9 on 10 random cases"
    );
}

#[test]
fn criterion_07_inequality_suite() {
    let t0 = Instant::now();
    let corpus = corpus_default(7);
    let config = SuiteConfig::default();
    let report = run_suite(&corpus, &sweep_matrices(), &sweep_orders(), &config);
    let violated: Vec<_> = report
        .cases
        .iter()
        .filter(|c| c.verdict == Verdict::Violated)
        .collect();
    assert!(
        violated.is_empty(),
        "explicit-constant suite produced {} violated verdicts: {:#?}",
        violated.len(),
        violated.iter().take(5).collect::<Vec<_>>()
    );
    // the families the criterion names must all be present and nonempty
    for id in [
        "nash_l1_lp",
        "nash_l2_lp",
        "nash_two_exponent",
        "clarkson_l1_lp",
        "clarkson_l2_lp",
        "clarkson_p1_p2",
        "donoho_stark_l1_lp",
        "donoho_stark_p1_p2",
        "bandlimited",
        "heisenberg_smoothing_lemma",
        "moment_interpolation",
    ] {
        let row = report
            .summary
            .get(id)
            .unwrap_or_else(|| panic!("theorem {id} missing"));
        assert!(row.cases > 0 && row.violated == 0, "{id}: {row:?}");
    }
    assert_budget("criterion 7", t0.elapsed(), 600.0);
    println!(
        "criterion 7 PASS inequality suite: {} cases, 0 violated, {} recorded case errors, {:?}",
        report.cases.len(),
        report.errors.len(),
        t0.elapsed()
    );
}

#[test]
fn criterion_08_gaussian_norm_anchor() {
    let quad = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for &t in &[0.5, 1.0, 4.0] {
        for &p in &[1.0, 1.25, 1.5, 2.0, 3.0] {
            for k in sweep_orders() {
                let (measured, predicted) = gaussian_norm_anchor(t, p, k, &quad).unwrap();
                worst = worst.max((measured - predicted).abs() / predicted);
            }
        }
    }
    assert!(
        worst <= 1e-10,
        "Gaussian norm anchor: worst rel dev {worst:e}"
    );
    println!(
        "criterion 8 PASS gaussian norm anchor: ‖e^{{-tλ²}}‖_p matches (2pt)^{{-(k+1)/p}} to {worst:.2e} ≤ 1e-10"
    );
}

#[test]
fn criterion_09_miyachi_extremal() {
    let quad = QuadratureSpec::default();
    let mut worst_dev = 0.0f64;
    let mut worst_fit = 0.0f64;
    for &s in &[0.5, 1.0] {
        for &b in &[1.0, -1.0, 2.0] {
            for &kk in &[-0.5, 0.0, 1.5] {
                let matrix = lcdt::harness::matrix_with_b(b).unwrap();
                let k = DunklOrder::new(kk).unwrap();
                let r = miyachi_extremal_check(s, &matrix, k, &quad).unwrap();
                assert_eq!(r.verdict, Verdict::Holds, "s={s} b={b} k={kk}: {r:?}");
                worst_dev = worst_dev.max(r.params["max_rel_dev"]);
                worst_fit = worst_fit.max(r.params["fit_dev"]);
            }
        }
    }
    assert!(worst_dev <= 1e-8);
    assert!(worst_fit <= 1e-6);
    println!(
        "criterion 9 PASS miyachi extremal: pointwise dev {worst_dev:.2e} ≤ 1e-8, |4sb²t-1| {worst_fit:.2e} ≤ 1e-6"
    );
}

#[test]
fn criterion_10_cowling_price() {
    let quad = QuadratureSpec::default();
    let shear = CanonicalMatrix::new(1.0, 1.0, 0.0, 1.0).unwrap();
    let mut worst = 0.0f64;
    for &m in &[0u32, 1, 2, 3] {
        for &delta in &[0.5, 1.0, 2.0] {
            for &kk in &[-0.5, 0.5] {
                let k = DunklOrder::new(kk).unwrap();
                let r = lcdt::harness::cowling_price_extremal_check(m, delta, &shear, k, &quad)
                    .unwrap();
                assert_eq!(
                    r.params["fitted_degree"] as u32, m,
                    "degree mismatch at m={m} δ={delta} k={kk}"
                );
                assert!(
                    r.params["residual"] <= 1e-8,
                    "m={m} δ={delta} k={kk}: {r:?}"
                );
                worst = worst.max(r.params["residual"]);
            }
        }
    }
    println!(
        "criterion 10 PASS cowling-price: degree preserved for m ∈ 0..=3, worst residual {worst:.2e} ≤ 1e-8"
    );
}

#[test]
fn criterion_11_homogeneity() {
    // every theorem report's ratio is invariant under f ↦ c·f (the η-support
    // level-set diagnostic is excluded: it is labeled empirical_only and its
    // sets are deliberately not scale-invariant)
    let quad = QuadratureSpec::default();
    let k = DunklOrder::new(0.5).unwrap();
    let matrix = CanonicalMatrix::new(1.0, 1.0, 0.0, 1.0).unwrap();
    let f = lcdt::corpus::make_gaussian(1.0, 0.3).unwrap();
    let e_set = IntervalSet::symmetric(4.0).unwrap();
    let f_set = IntervalSet::symmetric(8.0).unwrap();
    let p15 = ExponentPair::new(1.5).unwrap();
    let p2 = ExponentPair::new(2.0).unwrap();

    let ratios = |signal: &lcdt::measure::Signal| -> Vec<(String, f64)> {
        let mut ctx = TransformCase::build(signal, &matrix, k, &quad).unwrap();
        let mut out = Vec::new();
        out.push((
            "plancherel".into(),
            plancherel_report(&mut ctx).unwrap().ratio,
        ));
        out.push((
            "inversion".into(),
            inversion_report(&mut ctx).unwrap().ratio,
        ));
        out.push((
            "factorization".into(),
            factorization_report(&ctx).unwrap().ratio,
        ));
        out.push((
            "riemann_lebesgue".into(),
            riemann_lebesgue_report(&mut ctx).unwrap().ratio,
        ));
        out.push(("young".into(), young_report(&mut ctx, p15).unwrap().ratio));
        out.push((
            "heisenberg".into(),
            heisenberg_report(&mut ctx, 0.4, 1.0, p15).unwrap().ratio,
        ));
        out.push((
            "smoothing".into(),
            heisenberg_smoothing_report(&mut ctx, 0.4, 1.0, p15)
                .unwrap()
                .ratio,
        ));
        out.push((
            "moment".into(),
            moment_interpolation_report(&mut ctx, 1.0, 3.0, p2)
                .unwrap()
                .ratio,
        ));
        out.push((
            "nash_l1_lp".into(),
            nash_report(&mut ctx, NashVariant::L1Lp, 1.0, p2, None)
                .unwrap()
                .ratio,
        ));
        out.push((
            "nash_l2_lp".into(),
            nash_report(&mut ctx, NashVariant::L2Lp, 1.0, p15, None)
                .unwrap()
                .ratio,
        ));
        out.push((
            "nash_two_exp".into(),
            nash_report(&mut ctx, NashVariant::TwoExponent, 1.0, p15, Some(p2))
                .unwrap()
                .ratio,
        ));
        out.push((
            "ds_l1_lp".into(),
            donoho_stark_report(&mut ctx, DonohoStarkVariant::L1Lp, &e_set, &f_set, p2, None)
                .unwrap()
                .ratio,
        ));
        out.push((
            "ds_p1_p2".into(),
            donoho_stark_report(
                &mut ctx,
                DonohoStarkVariant::P1P2,
                &e_set,
                &f_set,
                p15,
                Some(p2),
            )
            .unwrap()
            .ratio,
        ));
        out.push((
            "bandlimited".into(),
            bandlimited_report(&mut ctx, &e_set, &f_set, p15, p2)
                .unwrap()
                .ratio,
        ));
        out.push((
            "matolcsi_exact".into(),
            matolcsi_report(&mut ctx, MatolcsiVariant::P1P2, 0.0, p15, Some(p2))
                .unwrap()
                .ratio,
        ));
        for (variant, name) in [
            (ClarksonVariant::L1Lp, "clarkson_l1_lp"),
            (ClarksonVariant::L2Lp, "clarkson_l2_lp"),
            (ClarksonVariant::P1P2, "clarkson_p1_p2"),
        ] {
            let pq2 = matches!(variant, ClarksonVariant::P1P2).then_some(p2);
            let pq = if matches!(variant, ClarksonVariant::L1Lp) {
                p2
            } else {
                p15
            };
            out.push((
                name.into(),
                clarkson_report(signal, k, &quad, variant, 1.0, pq, pq2)
                    .unwrap()
                    .ratio,
            ));
        }
        out
    };

    let base = ratios(&f);
    for c in [
        Complex64::new(2.0, 0.0),
        Complex64::new(-3.0, 0.0),
        Complex64::from_polar(1.0, std::f64::consts::PI / 5.0),
    ] {
        let scaled = ratios(&f.scaled(c));
        for ((name, r0), (_, r1)) in base.iter().zip(&scaled) {
            let rel = if *r0 == 0.0 {
                r1.abs()
            } else {
                (r1 / r0 - 1.0).abs()
            };
            assert!(
                rel <= 1e-9,
                "{name}: ratio moved by {rel:e} under f ↦ {c}·f ({r0} → {r1})"
            );
        }
    }
    println!(
        "criterion 11 PASS homogeneity: {} report ratios invariant under c ∈ {{2, -3, e^{{iπ/5}}}} to 1e-9",
        base.len()
    );
}
