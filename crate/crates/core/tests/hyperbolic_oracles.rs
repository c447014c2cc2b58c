//! Oracle checks for the hyperbolic kernel: Moebius invariance, cross-ratio
//! consistency, bracket collapse, and the exact lens uniformization oracle.

mod common;

use cone_gauge_core::hyperbolic::{
    cross_ratio_distance, disc_distance, domain_distance_bounds, generalized_disc_distance,
    ConstraintRegion, GeneralizedDisc,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn mobius_invariance_of_disc_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..300 {
        let z1 = Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..std::f64::consts::TAU));
        let z2 = Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..std::f64::consts::TAU));
        let a = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..std::f64::consts::TAU));
        let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let phi = |z: Complex64| phase * (z - a) / (cx(1.0, 0.0) - a.conj() * z);
        let d0 = disc_distance(z1, z2).unwrap();
        let d1 = disc_distance(phi(z1), phi(z2)).unwrap();
        assert!(
            (d0 - d1).abs() <= 1e-10,
            "automorphism changed the distance: {d0} vs {d1}"
        );
    }
}

#[test]
fn cross_ratio_matches_disc_with_real_diameter() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..100 {
        let a = -rng.gen_range(1.0f64..100.0);
        let b = rng.gen_range(1.0f64..100.0);
        if a >= -1.0 || b <= 1.0 {
            continue;
        }
        let disc = GeneralizedDisc::disc(cx((a + b) / 2.0, 0.0), (b - a) / 2.0).unwrap();
        let via_disc = generalized_disc_distance(&disc, cx(-1.0, 0.0), cx(1.0, 0.0)).unwrap();
        let via_formula = cross_ratio_distance(a, b).unwrap();
        assert!(
            (via_disc - via_formula).abs() <= 1e-9,
            "disc trace [{a}, {b}]: {via_disc} vs {via_formula}"
        );
    }
}

#[test]
fn singleton_bracket_collapse_random_discs() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..200 {
        let center = cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let radius = rng.gen_range(2.5f64..6.0);
        let g = GeneralizedDisc::disc(center, radius).unwrap();
        let z1 = cx(-1.0, 0.0);
        let z2 = cx(1.0, 0.0);
        let region: ConstraintRegion = (&g).into();
        let bracket = domain_distance_bounds(&[region], z1, z2).unwrap();
        let exact = generalized_disc_distance(&g, z1, z2).unwrap();
        assert!((bracket.lower - exact).abs() <= 1e-9);
        assert!((bracket.upper - exact).abs() <= 1e-9);
    }
}

#[test]
fn lens_bracket_contains_exact_uniformized_distance() {
    // disc(0, 2) intersected with disc(0.1, 2) at the pair (-1, 1)
    let c1 = cx(0.0, 0.0);
    let c2 = cx(0.1, 0.0);
    let (r1, r2) = (2.0, 2.0);
    let oracle = common::lens_distance(c1, r1, c2, r2, cx(-1.0, 0.0), cx(1.0, 0.0));
    let regions: Vec<ConstraintRegion> = [
        GeneralizedDisc::disc(c1, r1).unwrap(),
        GeneralizedDisc::disc(c2, r2).unwrap(),
    ]
    .iter()
    .map(ConstraintRegion::from)
    .collect();
    let bracket = domain_distance_bounds(&regions, cx(-1.0, 0.0), cx(1.0, 0.0)).unwrap();
    assert!(
        bracket.lower <= oracle + 1e-9 && oracle <= bracket.upper + 1e-9,
        "bracket {bracket:?} misses the lens distance {oracle}"
    );
    // the lens is tighter than either disc
    let single = generalized_disc_distance(
        &GeneralizedDisc::disc(c1, r1).unwrap(),
        cx(-1.0, 0.0),
        cx(1.0, 0.0),
    )
    .unwrap();
    assert!(bracket.lower >= single - 1e-12);
}

#[test]
fn lens_bracket_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let mut tried = 0;
    while tried < 40 {
        let c1 = cx(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
        let c2 = cx(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
        let r1 = rng.gen_range(2.0f64..4.0);
        let r2 = rng.gen_range(2.0f64..4.0);
        let d = (c1 - c2).norm();
        if d <= (r1 - r2).abs() + 0.05 || d >= r1 + r2 - 0.05 {
            continue; // need a genuine transversal lens
        }
        tried += 1;
        let z1 = cx(-1.0, 0.0);
        let z2 = cx(1.0, 0.0);
        let oracle = common::lens_distance(c1, r1, c2, r2, z1, z2);
        let regions: Vec<ConstraintRegion> = [
            GeneralizedDisc::disc(c1, r1).unwrap(),
            GeneralizedDisc::disc(c2, r2).unwrap(),
        ]
        .iter()
        .map(ConstraintRegion::from)
        .collect();
        let bracket = domain_distance_bounds(&regions, z1, z2).unwrap();
        assert!(
            bracket.lower <= oracle + 1e-9 && oracle <= bracket.upper + 1e-9,
            "bracket {bracket:?} misses lens distance {oracle} (c1={c1}, r1={r1}, c2={c2}, r2={r2})"
        );
    }
}

#[test]
fn lens_oracle_sanity_degenerate_to_disc() {
    // nearly identical discs: the lens distance approaches the disc value
    let oracle = common::lens_distance(
        cx(0.0, 0.0),
        2.0,
        cx(1e-9, 0.0),
        2.0,
        cx(-1.0, 0.0),
        cx(1.0, 0.0),
    );
    assert!((oracle - 9.0f64.ln()).abs() < 1e-5, "oracle = {oracle}");
}

#[test]
fn bracket_upper_shrinks_toward_geodesic_value_for_smooth_lens() {
    // thin lens: upper and lower stay within a modest multiplicative factor
    let c1 = cx(0.0, 1.2);
    let c2 = cx(0.0, -1.2);
    let (r1, r2) = (2.4, 2.4);
    let z1 = cx(-0.8, 0.0);
    let z2 = cx(0.8, 0.0);
    let oracle = common::lens_distance(c1, r1, c2, r2, z1, z2);
    let regions: Vec<ConstraintRegion> = [
        GeneralizedDisc::disc(c1, r1).unwrap(),
        GeneralizedDisc::disc(c2, r2).unwrap(),
    ]
    .iter()
    .map(ConstraintRegion::from)
    .collect();
    let bracket = domain_distance_bounds(&regions, z1, z2).unwrap();
    assert!(bracket.lower <= oracle + 1e-9 && oracle <= bracket.upper + 1e-9);
    assert!(
        bracket.upper <= 4.0 * bracket.lower,
        "loose bracket on a smooth lens: {bracket:?} vs oracle {oracle}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Projective reparametrization invariance of the bracket: scaling the
    /// region list by a common positive factor never changes anything, and
    /// the Moebius pullback of the whole configuration preserves distances.
    #[test]
    fn bracket_invariant_under_uniform_region_scaling(
        scale in 0.1f64..10.0,
        cx2 in -0.4f64..0.4,
        r2 in 2.2f64..3.5,
    ) {
        let g1: ConstraintRegion = (&GeneralizedDisc::disc(cx(0.0, 0.0), 2.0).unwrap()).into();
        let g2: ConstraintRegion = (&GeneralizedDisc::disc(cx(cx2, 0.0), r2).unwrap()).into();
        let scaled: Vec<ConstraintRegion> = [g1, g2]
            .iter()
            .map(|r| ConstraintRegion::new(r.quad * scale, r.lin * scale, r.constant * scale))
            .collect();
        let b0 = domain_distance_bounds(&[g1, g2], cx(-1.0, 0.0), cx(1.0, 0.0)).unwrap();
        let b1 = domain_distance_bounds(&scaled, cx(-1.0, 0.0), cx(1.0, 0.0)).unwrap();
        prop_assert!((b0.lower - b1.lower).abs() <= 1e-9);
        prop_assert!((b0.upper - b1.upper).abs() <= 1e-9);
    }
}
