//! Desk-scale reproduction suite: every check runs in seconds on a laptop
//! with a fixed seed, prints its measured values, and reports pass/fail.
//!
//! The same runners back the `acceptance` integration test target and the
//! command-line `reproduce` subcommand.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex_cone::{projective_distance, ComplexCone};
use crate::domination::{certify_dominated, complex_pf_certificate, exp_ratio};
use crate::operators::{
    collocation_matrix, comparison_matrix, discretize_integral, geometric_decay_fit,
    jentzsch_certificate, power_eigentriple, rpf_certificate, top_two_ratio,
    IntegralOperatorSpec, TransferOperatorSpec, TrigWeight,
};
use crate::real_cone::{birkhoff_certificate, RealCone};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub lines: Vec<String>,
}

impl CriterionOutcome {
    fn new(name: &'static str) -> Self {
        CriterionOutcome {
            name,
            passed: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.lines
            .push(format!("[{}] {line}", if ok { "ok" } else { "FAIL" }));
    }

    fn info(&mut self, line: String) {
        self.lines.push(format!("[--] {line}"));
    }

    /// One-line summary in the `reproduce` table format.
    pub fn summary(&self) -> String {
        format!(
            "{:<22} {}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Names of all criteria in execution order.
pub const CRITERION_NAMES: [&str; 11] = [
    "hilbert-dual-form",
    "isometric-embedding",
    "birkhoff-contraction",
    "gauge-contraction",
    "complex-pf-soundness",
    "domination-sharpness",
    "complex-jentzsch",
    "rpf-desk",
    "constructive-iteration",
    "exp-ratio",
    "appendix-aperture",
];

/// Runs the criteria whose name contains `filter` (all when `None`).
type Runner = fn() -> CriterionOutcome;

pub fn run(filter: Option<&str>) -> Vec<CriterionOutcome> {
    let runners: [(&str, Runner); 11] = [
        ("hilbert-dual-form", hilbert_dual_form),
        ("isometric-embedding", isometric_embedding),
        ("birkhoff-contraction", birkhoff_contraction),
        ("gauge-contraction", gauge_contraction),
        ("complex-pf-soundness", complex_pf_soundness),
        ("domination-sharpness", domination_sharpness),
        ("complex-jentzsch", complex_jentzsch),
        ("rpf-desk", rpf_desk),
        ("constructive-iteration", constructive_iteration),
        ("exp-ratio", exp_ratio_grid),
        ("appendix-aperture", appendix_aperture),
    ];
    runners
        .iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.contains(f)))
        .map(|(_, f)| f())
        .collect()
}

fn positive_vector<R: Rng>(rng: &mut R, n: usize) -> Array1<f64> {
    Array1::from_shape_fn(n, |_| (rng.gen_range(-1.5f64..1.5)).exp())
}

fn positive_matrix<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Array2<f64> {
    Array2::from_shape_fn((n, n), |_| rng.gen_range(lo..hi))
}

fn random_phase<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(
        rng.gen_range(0.2f64..3.0),
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

/// Criterion 1: the two Hilbert-metric forms agree on random orthant pairs.
pub fn hilbert_dual_form() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("hilbert-dual-form");
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let cone = RealCone::standard(10);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let x = positive_vector(&mut rng, 10);
        let y = positive_vector(&mut rng, 10);
        let d = cone.hilbert_metric(x.view(), y.view()).unwrap();
        let (a, b) = d.segment.unwrap();
        let via_segment = crate::hyperbolic::cross_ratio_distance(a, b).unwrap();
        worst = worst.max((via_segment - d.value).abs());
    }
    out.check(
        worst <= 1e-9,
        format!("1000 pairs in R^10: max |beta-form - cross-ratio form| = {worst:.3e} <= 1e-9"),
    );
    out
}

/// Criterion 2: the gauge restricted to real rays is the Hilbert metric and
/// the bracket encloses it; bracket quality reported non-blockingly.
pub fn isometric_embedding() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("isometric-embedding");
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let cone = ComplexCone::standard(8);
    let mut worst_dev = 0.0f64;
    let mut containment_ok = true;
    let mut quality_hits = 0usize;
    let mut finite_cases = 0usize;
    for _ in 0..500 {
        let x0 = positive_vector(&mut rng, 8);
        let y0 = positive_vector(&mut rng, 8);
        let a = random_phase(&mut rng);
        let b = random_phase(&mut rng);
        let x: Array1<Complex64> = x0.map(|&v| a * v);
        let y: Array1<Complex64> = y0.map(|&v| b * v);
        let g = cone.gauge(x.view(), y.view()).unwrap();
        let exact = g.exact.expect("real pair must take the exact branch");
        let reference = cone
            .base()
            .hilbert_metric(x0.view(), y0.view())
            .unwrap()
            .value;
        worst_dev = worst_dev.max((exact - reference).abs());
        containment_ok &= g.bracket.lower <= exact && exact <= g.bracket.upper;
        if g.bracket.lower > 0.0 && g.bracket.upper.is_finite() {
            finite_cases += 1;
            if g.bracket.upper / g.bracket.lower <= 4.0 {
                quality_hits += 1;
            }
        }
    }
    out.check(
        worst_dev <= 1e-8,
        format!("500 real pairs in C^8: max |gauge.exact - hilbert| = {worst_dev:.3e} <= 1e-8"),
    );
    out.check(containment_ok, "bracket.lower <= exact <= bracket.upper on every pair".into());
    let pct = 100.0 * quality_hits as f64 / finite_cases.max(1) as f64;
    out.info(format!(
        "quality target (non-blocking): upper/lower <= 4 on {pct:.1}% of {finite_cases} finite-bracket cases"
    ));
    out
}

fn seeded_positive_matrices(seed: u64, count: usize) -> Vec<(Array2<f64>, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2usize..=12);
            let lo = rng.gen_range(0.2f64..1.0);
            let hi = lo * rng.gen_range(1.2f64..4.0);
            (positive_matrix(&mut rng, n, lo, hi), lo, hi)
        })
        .collect()
}

/// Criterion 3: the observed top-two ratio never exceeds the Birkhoff bound
/// `tanh(diam/4)` nor the entry-range bound.
pub fn birkhoff_contraction() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("birkhoff-contraction");
    let mut worst_margin = f64::NEG_INFINITY;
    let mut worst_entry_margin = f64::NEG_INFINITY;
    for (a, _, _) in seeded_positive_matrices(1003, 200) {
        let cert = birkhoff_certificate(&a).unwrap();
        let ac = a.map(|&v| Complex64::new(v, 0.0));
        let rep = top_two_ratio(&ac, 1e-12).unwrap();
        worst_margin = worst_margin.max(rep.ratio - cert.ratio_bound);
        let lo = a.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = a.iter().cloned().fold(0.0f64, f64::max);
        worst_entry_margin = worst_entry_margin.max(rep.ratio - (hi - lo) / (hi + lo));
    }
    out.check(
        worst_margin <= 1e-8,
        format!("200 positive matrices (n <= 12): max ratio - tanh(diam/4) = {worst_margin:.3e} <= 1e-8"),
    );
    out.check(
        worst_entry_margin <= 1e-8,
        format!("entry-range bound: max ratio - (b-a)/(b+a) = {worst_entry_margin:.3e} <= 1e-8"),
    );
    out
}

/// Criterion 4: the Hilbert metric contracts under those matrices at rate
/// `tanh(diam/4)` on sampled cone pairs.
pub fn gauge_contraction() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("gauge-contraction");
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let mut worst = f64::NEG_INFINITY;
    let mut pairs = 0usize;
    for (a, _, _) in seeded_positive_matrices(1003, 200) {
        let n = a.nrows();
        let cone = RealCone::standard(n);
        let eta = birkhoff_certificate(&a).unwrap().ratio_bound;
        for _ in 0..5 {
            let x = positive_vector(&mut rng, n);
            let y = positive_vector(&mut rng, n);
            let dxy = cone.hilbert_metric(x.view(), y.view()).unwrap().value;
            let ax = a.dot(&x);
            let ay = a.dot(&y);
            let dimg = cone.hilbert_metric(ax.view(), ay.view()).unwrap().value;
            worst = worst.max(dimg - eta * dxy);
            pairs += 1;
        }
    }
    out.check(
        worst <= 1e-8,
        format!("{pairs} sampled pairs: max d(Ax,Ay) - tanh(diam/4) d(x,y) = {worst:.3e} <= 1e-8"),
    );
    out
}

fn perturbed_positive_matrix<R: Rng>(rng: &mut R) -> Array2<Complex64> {
    let n = rng.gen_range(2usize..=12);
    let eps = rng.gen_range(0.0f64..0.06);
    Array2::from_shape_fn((n, n), |_| {
        let r = rng.gen_range(1.0f64..2.0);
        Complex64::from_polar(r, eps * rng.gen_range(-1.0f64..1.0))
    })
}

/// Criterion 5: every certificate-passing perturbed positive matrix shows a
/// strict spectral gap in the top-two oracle; zero counterexamples allowed.
pub fn complex_pf_soundness() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("complex-pf-soundness");
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let mut certified = 0usize;
    let mut attempts = 0usize;
    let mut worst_ratio = 0.0f64;
    let mut counterexamples = 0usize;
    while certified < 200 && attempts < 2000 {
        attempts += 1;
        let a = perturbed_positive_matrix(&mut rng);
        let cert = complex_pf_certificate(&a).unwrap();
        if !cert.certified {
            continue;
        }
        certified += 1;
        let rep = top_two_ratio(&a, 1e-12).unwrap();
        worst_ratio = worst_ratio.max(rep.ratio);
        if rep.ratio >= 1.0 - 1e-6 {
            counterexamples += 1;
        }
    }
    out.check(
        certified == 200,
        format!("collected {certified}/200 certified instances in {attempts} draws"),
    );
    out.check(
        counterexamples == 0,
        format!("oracle ratio < 1 - 1e-6 on all certified instances (max ratio = {worst_ratio:.6})"),
    );
    out
}

/// Criterion 6: bisection on the imaginary scale locates the certificate
/// flip of `ones + i kappa S` exactly at `gamma(kappa) = alpha(kappa)`.
pub fn domination_sharpness() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("domination-sharpness");
    let n = 4;
    let sign = Array2::from_shape_fn((n, n), |(i, j)| if (i + j) % 2 == 0 { 1.0 } else { -1.0 });
    let ones = Array2::from_elem((n, n), 1.0);
    let matrix = |kappa: f64| {
        Array2::from_shape_fn((n, n), |(i, j)| Complex64::new(1.0, kappa * sign[(i, j)]))
    };
    let is_certified =
        |kappa: f64| certify_dominated(&matrix(kappa), &ones).unwrap().certified;

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    assert!(is_certified(lo) && !is_certified(hi));
    while hi - lo > 1e-13 {
        let mid = (lo + hi) / 2.0;
        if is_certified(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let flip = (lo + hi) / 2.0;
    // gamma(kappa) = 2 kappa meets alpha(kappa) = 1 - kappa^2 at sqrt(2) - 1
    let analytic = 2.0f64.sqrt() - 1.0;
    out.check(
        (flip - analytic).abs() <= 1e-10,
        format!("certificate flip at kappa = {flip:.12} vs analytic sqrt(2)-1 = {analytic:.12}"),
    );

    let mut below_ok = true;
    let mut worst = 0.0f64;
    for frac in [0.2, 0.5, 0.8, 0.95, 0.999] {
        let kappa = frac * analytic;
        let a = matrix(kappa);
        let cert = certify_dominated(&a, &ones).unwrap();
        let rep = top_two_ratio(&a, 1e-12).unwrap();
        worst = worst.max(rep.ratio);
        below_ok &= cert.certified && rep.ratio < 1.0 - 1e-6;
    }
    out.check(
        below_ok,
        format!("all sub-flip instances certified with oracle ratio < 1 (max = {worst:.6})"),
    );
    out
}

fn random_jentzsch_spec<R: Rng>(rng: &mut R, n: usize) -> IntegralOperatorSpec {
    let nodes: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let r1 = rng.gen_range(-0.05f64..0.05);
    let r2 = rng.gen_range(-0.05f64..0.05);
    let s1 = rng.gen_range(-0.05f64..0.05);
    let s2 = rng.gen_range(-0.05f64..0.05);
    let tau = 2.0 * std::f64::consts::PI;
    let g = Array2::from_shape_fn((n, n), |(i, j)| {
        Complex64::new(
            r1 * (tau * nodes[i]).cos() + r2 * (tau * nodes[j]).sin(),
            s1 * (tau * nodes[j]).cos() + s2 * (tau * nodes[i]).sin(),
        )
    });
    let h = Array1::from_shape_fn(n, |_| rng.gen_range(0.5f64..2.0));
    let m = Array1::from_shape_fn(n, |_| rng.gen_range(0.5f64..2.0));
    IntegralOperatorSpec::new(h, m, g).unwrap()
}

/// Criterion 7: certified random kernel specs have oracle gaps, and the
/// matrix-level domination verdict on the discretization agrees.
pub fn complex_jentzsch() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("complex-jentzsch");
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let mut all_certified = true;
    let mut oracle_ok = true;
    let mut agree_ok = true;
    let mut worst_ratio = 0.0f64;
    for _ in 0..50 {
        let spec = random_jentzsch_spec(&mut rng, 64);
        let cert = jentzsch_certificate(&spec).unwrap();
        all_certified &= cert.certified;
        let k = discretize_integral(&spec);
        let rep = top_two_ratio(&k, 1e-11).unwrap();
        worst_ratio = worst_ratio.max(rep.ratio);
        oracle_ok &= rep.ratio < 1.0 - 1e-6;
        let p = comparison_matrix(&spec);
        let mat = certify_dominated(&k, &p).unwrap();
        agree_ok &= mat.certified == cert.certified;
    }
    out.check(all_certified, "50 sampled specs on N = 64 grids all certified".into());
    out.check(
        oracle_ok,
        format!("discretized-operator oracle ratio < 1 (max = {worst_ratio:.6})"),
    );
    out.check(
        agree_ok,
        "matrix-level domination verdict agrees with the kernel certificate".into(),
    );
    out
}

/// Criterion 8: the desk transfer-operator experiment on the doubling map
/// with `g = 0.02 cos(2 pi x) + 0.01 i sin(2 pi x)`.
pub fn rpf_desk() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("rpf-desk");
    let weight = TrigWeight {
        c0: 0.0,
        c1: 0.02,
        c2: 0.0,
        d0: 0.0,
        d1: 0.0,
        d2: 0.01,
    };
    let spec = TransferOperatorSpec::new(2, weight).unwrap();
    let cert = rpf_certificate(&spec).unwrap();
    out.check(
        cert.gap.certified,
        format!(
            "simplified condition value = {:.10} < 1 (theta + 2 s0 = {:.6e})",
            cert.gap.condition_lhs,
            weight.osc_im() + 2.0 * cert.s0
        ),
    );
    out.check(
        cert.sharp_certified,
        format!("sharp condition value = {:.10} < 1", cert.sharp_lhs),
    );

    let k64 = collocation_matrix(&spec, 64).unwrap();
    let k128 = collocation_matrix(&spec, 128).unwrap();
    let rep64 = top_two_ratio(&k64, 1e-12).unwrap();
    let rep128 = top_two_ratio(&k128, 1e-12).unwrap();
    let drift = (rep64.lambda1 - rep128.lambda1).norm();
    out.check(
        drift <= 1e-6,
        format!("collocation refinement: |lambda1(64) - lambda1(128)| = {drift:.3e} <= 1e-6"),
    );
    out.check(
        rep64.ratio < 1.0,
        format!("collocation oracle ratio = {:.6} < 1", rep64.ratio),
    );

    let trivial = TransferOperatorSpec::new(2, TrigWeight::ZERO).unwrap();
    let k0 = collocation_matrix(&trivial, 64).unwrap();
    let rep0 = top_two_ratio(&k0, 1e-13).unwrap();
    out.check(
        (rep0.lambda1 - Complex64::new(2.0, 0.0)).norm() <= 1e-10,
        format!("weightless shift: lambda1 = {} (exact 2)", rep0.lambda1),
    );
    out.check(
        rep0.residual < 1e-10,
        format!("weightless shift: eigen residual = {:.3e} < 1e-10", rep0.residual),
    );
    out
}

/// Criterion 9: the eigen-triple iteration decays at least as fast as the
/// certificate's contraction factor.
pub fn constructive_iteration() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("constructive-iteration");
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let mut checked = 0usize;
    let mut all_ok = true;
    let mut worst_excess = f64::NEG_INFINITY;
    while checked < 30 {
        let a = perturbed_positive_matrix(&mut rng);
        let cert = complex_pf_certificate(&a).unwrap();
        if !cert.certified {
            continue;
        }
        let eta = cert.eta.unwrap();
        let pair = power_eigentriple(&a, None, 1e-13).unwrap();
        if let Some(rate) = geometric_decay_fit(&pair.residual_history) {
            let excess = rate.ln() - eta.ln();
            worst_excess = worst_excess.max(excess);
            all_ok &= excess <= 0.05;
        }
        checked += 1;
    }
    out.check(
        all_ok,
        format!(
            "30 certified instances: max log-slope excess over log(eta) = {worst_excess:.3e} <= 0.05"
        ),
    );
    out
}

/// Criterion 10: the exponential-ratio bounds hold on the whole grid.
pub fn exp_ratio_grid() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("exp-ratio");
    let mut worst_slack = f64::INFINITY;
    for ti in 0..51 {
        let t = 0.01 + (5.0 - 0.01) * ti as f64 / 50.0;
        for si in 0..101 {
            let s = -5.0 + 10.0 * si as f64 / 100.0;
            let r = exp_ratio(Complex64::new(t, s), Complex64::new(0.0, 0.0)).unwrap();
            worst_slack = worst_slack
                .min(r.arg_bound - r.w.arg().abs())
                .min(r.w.norm_sqr() - r.mod_sq_bounds.0)
                .min(r.mod_sq_bounds.1 - r.w.norm_sqr());
        }
    }
    out.check(
        worst_slack >= -1e-12,
        format!("51 x 101 grid: minimum bound slack = {worst_slack:.3e} >= -1e-12"),
    );
    out
}

/// Criterion 11: the projective distance is controlled by twice the sampled
/// sectional aperture times the gauge.
pub fn appendix_aperture() -> CriterionOutcome {
    let mut out = CriterionOutcome::new("appendix-aperture");
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let cone = ComplexCone::standard(8);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..500 {
        let x0 = positive_vector(&mut rng, 8);
        let y0 = positive_vector(&mut rng, 8);
        let a = random_phase(&mut rng);
        let b = random_phase(&mut rng);
        let x: Array1<Complex64> = x0.map(|&v| a * v);
        let y: Array1<Complex64> = y0.map(|&v| b * v);
        let exact = cone.gauge(x.view(), y.view()).unwrap().exact.unwrap();
        let k = cone
            .base()
            .sectional_aperture(x0.view(), y0.view(), 32, &mut rng)
            .unwrap();
        let pd = projective_distance(x.view(), y.view()).unwrap();
        worst = worst.max(pd - 2.0 * k * exact);
    }
    out.check(
        worst <= 1e-8,
        format!("500 real pairs: max proj_dist - 2 K gauge.exact = {worst:.3e} <= 1e-8"),
    );
    out
}
