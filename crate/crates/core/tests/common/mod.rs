//! Independent test oracles: exact lens uniformization, characteristic
//! polynomial roots, and inertia bisection for symmetric spectra. These never
//! call the implementation paths they are used to check.

#![allow(dead_code)]

use ndarray::Array2;
use num_complex::Complex64;

/// Intersection points of two circles (must intersect transversally).
pub fn circle_intersections(
    c1: Complex64,
    r1: f64,
    c2: Complex64,
    r2: f64,
) -> (Complex64, Complex64) {
    let d = (c2 - c1).norm();
    assert!(d > (r1 - r2).abs() && d < r1 + r2, "circles must intersect");
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - a * a).sqrt();
    let dir = (c2 - c1) / d;
    let base = c1 + dir * a;
    let off = Complex64::new(0.0, 1.0) * dir * h;
    (base + off, base - off)
}

/// Hyperbolic distance in the upper half-plane for the curvature -1 metric
/// |dw| / Im w (the same normalization as 2|dz|/(1-|z|^2) on the disc).
fn half_plane_distance(w1: Complex64, w2: Complex64) -> f64 {
    let num = (w1 - w2).norm_sqr();
    (1.0 + num / (2.0 * w1.im * w2.im)).acosh()
}

/// Exact hyperbolic distance inside the lens formed by two intersecting
/// discs, via uniformization: Moebius to a sector through the intersection
/// points, then a power map to the upper half-plane.
pub fn lens_distance(
    c1: Complex64,
    r1: f64,
    c2: Complex64,
    r2: f64,
    z1: Complex64,
    z2: Complex64,
) -> f64 {
    let (p, q) = circle_intersections(c1, r1, c2, r2);
    let mu = |z: Complex64| (z - p) / (z - q);
    let w1 = mu(z1);
    let w2 = mu(z2);
    // Each circle maps to a straight line through the origin; the four ray
    // angles bound the image sector. Pick the sector containing the images.
    let mut rays = Vec::new();
    for (c, r) in [(c1, r1), (c2, r2)] {
        // a boundary point away from p and q
        let mut best = None;
        for k in 0..16 {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
            let b = c + Complex64::from_polar(r, ang);
            let dist = (b - p).norm().min((b - q).norm());
            if best.is_none_or(|(d, _)| dist > d) {
                best = Some((dist, b));
            }
        }
        let theta = mu(best.unwrap().1).arg();
        rays.push(theta.rem_euclid(std::f64::consts::PI));
        rays.push(theta.rem_euclid(std::f64::consts::PI) + std::f64::consts::PI);
    }
    rays.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let arg1 = w1.arg().rem_euclid(2.0 * std::f64::consts::PI);
    let arg2 = w2.arg().rem_euclid(2.0 * std::f64::consts::PI);
    // locate the sector [lo, hi] containing arg1
    let mut sector = None;
    for i in 0..4 {
        let lo = rays[i];
        let hi = if i + 1 < 4 {
            rays[i + 1]
        } else {
            rays[0] + 2.0 * std::f64::consts::PI
        };
        let in_sector = |a: f64| {
            let a = if a < lo { a + 2.0 * std::f64::consts::PI } else { a };
            lo <= a && a <= hi
        };
        if in_sector(arg1) && in_sector(arg2) {
            sector = Some((lo, hi));
            break;
        }
    }
    let (lo, hi) = sector.expect("images must share a sector");
    let phi = hi - lo;
    let power = std::f64::consts::PI / phi;
    let to_half = |w: Complex64| {
        let rotated = w * Complex64::from_polar(1.0, -lo);
        Complex64::from_polar(rotated.norm().powf(power), rotated.arg().rem_euclid(2.0 * std::f64::consts::PI) * power)
    };
    half_plane_distance(to_half(w1), to_half(w2))
}

/// Characteristic polynomial coefficients by Faddeev-LeVerrier:
/// p(x) = x^n + c[0] x^(n-1) + ... + c[n-1].
pub fn char_poly(a: &Array2<Complex64>) -> Vec<Complex64> {
    let n = a.nrows();
    let mut m = a.clone();
    let mut coeffs = Vec::with_capacity(n);
    for k in 1..=n {
        let c = -m.diag().sum() / k as f64;
        coeffs.push(c);
        if k < n {
            for i in 0..n {
                m[(i, i)] += c;
            }
            m = a.dot(&m);
        }
    }
    coeffs
}

/// Roots of a monic quadratic x^2 + bx + c.
pub fn quadratic_roots(b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * c).sqrt();
    // stable pairing: avoid cancellation on the larger root
    let q = if (b + disc).norm() >= (b - disc).norm() {
        -(b + disc) / 2.0
    } else {
        -(b - disc) / 2.0
    };
    if q.norm() > 0.0 {
        [q, c / q]
    } else {
        [q, -b - q]
    }
}

/// Roots of a monic cubic x^3 + a2 x^2 + a1 x + a0 by Cardano.
pub fn cubic_roots(a2: Complex64, a1: Complex64, a0: Complex64) -> [Complex64; 3] {
    // depressed: t^3 + p t + q with x = t - a2/3
    let shift = a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = a0 - a1 * a2 / 3.0 + 2.0 * a2 * a2 * a2 / 27.0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut u3 = -q / 2.0 + disc;
    if u3.norm() < 1e-300 {
        u3 = -q / 2.0 - disc;
    }
    let u = u3.powf(1.0 / 3.0);
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut roots = [Complex64::new(0.0, 0.0); 3];
    for (k, root) in roots.iter_mut().enumerate() {
        let uk = u * omega.powu(k as u32);
        let t = if uk.norm() > 1e-300 {
            uk - p / (3.0 * uk)
        } else {
            Complex64::new(0.0, 0.0)
        };
        *root = t - shift;
    }
    roots
}

/// Top-two moduli of a 2x2 or 3x3 complex matrix via characteristic
/// polynomial roots, sorted descending.
pub fn small_matrix_top_two(a: &Array2<Complex64>) -> (f64, f64) {
    let c = char_poly(a);
    let mut mods: Vec<f64> = match a.nrows() {
        2 => quadratic_roots(c[0], c[1]).iter().map(|z| z.norm()).collect(),
        3 => cubic_roots(c[0], c[1], c[2]).iter().map(|z| z.norm()).collect(),
        n => panic!("closed-form roots only for n <= 3, got {n}"),
    };
    mods.sort_by(|x, y| y.partial_cmp(x).unwrap());
    (mods[0], mods[1])
}

/// Number of eigenvalues of the real symmetric matrix `a` strictly below
/// `t`, by the inertia (negative pivot count) of the LDL^T factorization of
/// a - tI.
fn eigen_count_below(a: &Array2<f64>, t: f64) -> usize {
    let n = a.nrows();
    let mut m = a.clone();
    for i in 0..n {
        m[(i, i)] -= t;
    }
    let mut negatives = 0;
    // unpivoted symmetric elimination; a vanishing pivot is nudged, which is
    // harmless for bisection since t moves by finite steps
    for k in 0..n {
        let mut piv = m[(k, k)];
        if piv == 0.0 {
            piv = 1e-300;
        }
        if piv < 0.0 {
            negatives += 1;
        }
        for i in (k + 1)..n {
            let f = m[(i, k)] / piv;
            for j in k..n {
                let mkj = m[(k, j)];
                m[(i, j)] -= f * mkj;
            }
        }
    }
    negatives
}

/// All eigenvalues of a real symmetric matrix by inertia bisection,
/// ascending, to absolute tolerance `tol`.
pub fn symmetric_eigenvalues_bisect(a: &Array2<f64>, tol: f64) -> Vec<f64> {
    let n = a.nrows();
    let radius: f64 = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    (0..n)
        .map(|k| {
            // k-th smallest eigenvalue
            let (mut lo, mut hi) = (-radius, radius);
            while hi - lo > tol {
                let mid = (lo + hi) / 2.0;
                if eigen_count_below(a, mid) <= k {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            (lo + hi) / 2.0
        })
        .collect()
}

pub fn symmetric_top_two(a: &Array2<f64>, tol: f64) -> (f64, f64) {
    let mut mods: Vec<f64> = symmetric_eigenvalues_bisect(a, tol)
        .into_iter()
        .map(f64::abs)
        .collect();
    mods.sort_by(|x, y| y.partial_cmp(x).unwrap());
    (mods[0], mods[1])
}
