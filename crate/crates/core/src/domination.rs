//! Domination constants of a complex matrix against a positive comparison
//! matrix, and spectral-gap certificates from the dominated cone-contraction
//! condition `gamma * cosh(delta_P / 2) < alpha`.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperbolic::{domain_distance_bounds, eta_punctured, ConstraintRegion, GeneralizedDisc};
use crate::real_cone::image_diameter;

/// Best constants of the domination inequalities over the canonical basis
/// and its dual, with the index tuples attaining each extremum.
#[derive(Debug, Clone, PartialEq)]
pub struct DominationConstants {
    /// Lower real-part constant: `min Re(M_ik conj(M_jl)) / (P_ik P_jl)`.
    pub alpha: f64,
    /// Upper constant in the per-entry sufficient form:
    /// `max |M_ik||M_il| / (P_ik P_il)`.
    pub beta: f64,
    /// Imaginary-part bound: `max |Im(M_ik conj(M_jl))| / (P_ik P_jl)`.
    pub gamma: f64,
    /// `(i, j, k, l)` attaining alpha.
    pub alpha_witness: [usize; 4],
    /// `(i, k, l)` attaining beta.
    pub beta_witness: [usize; 3],
    /// `(i, j, k, l)` attaining gamma.
    pub gamma_witness: [usize; 4],
}

/// Sufficient-condition spectral gap report. `certified == false` carries no
/// claim that a gap is absent.
#[derive(Debug, Clone)]
pub struct GapCertificate {
    pub certified: bool,
    pub condition_lhs: f64,
    pub condition_rhs: f64,
    /// Projective diameter (or an upper bound on it) of the comparison image.
    pub delta_p: f64,
    /// Upper bound of the complex image diameter, from the explicit
    /// neighborhood of the segment `[-1, 1]`; infinite when uncertified.
    pub delta_c_upper: f64,
    /// Contraction factor `eta(delta_c_upper) < 1`, present when certified.
    pub eta: Option<f64>,
    /// Inner-regularity exponent of the witness construction.
    pub n0: usize,
    pub notes: String,
}

/// Kahan-compensated `a*b - c*d`.
fn diff_of_products(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let cd = c * d;
    let err = f64::mul_add(-c, d, cd);
    f64::mul_add(a, b, -cd) + err
}

/// Kahan-compensated `a*b + c*d`.
fn sum_of_products(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let cd = c * d;
    let err = f64::mul_add(c, d, -cd);
    f64::mul_add(a, b, cd) + err
}

/// `Re(z1 * conj(z2))` with compensated products.
fn re_product(z1: Complex64, z2: Complex64) -> f64 {
    sum_of_products(z1.re, z2.re, z1.im, z2.im)
}

/// `Im(z1 * conj(z2))` with compensated products.
fn im_product(z1: Complex64, z2: Complex64) -> f64 {
    diff_of_products(z1.im, z2.re, z1.re, z2.im)
}

fn check_comparison(m: &Array2<Complex64>, p: &Array2<f64>) -> Result<()> {
    if m.dim() != p.dim() {
        return Err(Error::Precondition(format!(
            "shape mismatch: M is {:?}, P is {:?}",
            m.dim(),
            p.dim()
        )));
    }
    if let Some(((i, j), &v)) = p.indexed_iter().find(|(_, &v)| v.is_nan() || v <= 0.0) {
        return Err(Error::Domain(format!(
            "comparison entry ({i}, {j}) = {v} is not strictly positive"
        )));
    }
    Ok(())
}

/// Extracts the best domination constants of `m` against the strictly
/// positive comparison `p` by exhaustive scans over entry pairs.
pub fn extract_constants(m: &Array2<Complex64>, p: &Array2<f64>) -> Result<DominationConstants> {
    check_comparison(m, p)?;
    let (rows, cols) = m.dim();
    let flat: Vec<(usize, usize, Complex64, f64)> = m
        .indexed_iter()
        .map(|((i, k), &z)| (i, k, z, p[(i, k)]))
        .collect();
    let n = flat.len();

    // alpha and gamma range over all pairs of entries; both quantities are
    // invariant under swapping the pair, so the scan covers a <= b.
    let (alpha, alpha_witness, gamma, gamma_witness) = (0..n)
        .into_par_iter()
        .map(|a| {
            let (ia, ka, za, pa) = flat[a];
            let mut alpha = f64::INFINITY;
            let mut aw = [0usize; 4];
            let mut gamma = f64::NEG_INFINITY;
            let mut gw = [0usize; 4];
            for &(jb, lb, zb, pb) in &flat[a..] {
                let denom = pa * pb;
                let re = re_product(za, zb) / denom;
                if re < alpha {
                    alpha = re;
                    aw = [ia, jb, ka, lb];
                }
                let im = (im_product(za, zb) / denom).abs();
                if im > gamma {
                    gamma = im;
                    gw = [ia, jb, ka, lb];
                }
            }
            (alpha, aw, gamma, gw)
        })
        .reduce(
            || (f64::INFINITY, [usize::MAX; 4], f64::NEG_INFINITY, [usize::MAX; 4]),
            |x, y| {
                let (a, aw) = if (y.0, y.1) < (x.0, x.1) { (y.0, y.1) } else { (x.0, x.1) };
                let (g, gw) = if (-y.2, y.3) < (-x.2, x.3) { (y.2, y.3) } else { (x.2, x.3) };
                (a, aw, g, gw)
            },
        );

    // beta: per-entry sufficient form, row by row over column pairs.
    let (beta, beta_witness) = (0..rows)
        .into_par_iter()
        .map(|i| {
            let mut best = f64::NEG_INFINITY;
            let mut bw = [0usize; 3];
            for k in 0..cols {
                let rk = m[(i, k)].norm() / p[(i, k)];
                for l in k..cols {
                    let v = rk * m[(i, l)].norm() / p[(i, l)];
                    if v > best {
                        best = v;
                        bw = [i, k, l];
                    }
                }
            }
            (best, bw)
        })
        .reduce(
            || (f64::NEG_INFINITY, [usize::MAX; 3]),
            |x, y| if (-y.0, y.1) < (-x.0, x.1) { y } else { x },
        );

    Ok(DominationConstants {
        alpha,
        beta,
        gamma: gamma.max(0.0),
        alpha_witness,
        beta_witness,
        gamma_witness,
    })
}

/// Upper bound of the hyperbolic distance `d_U(-1, 1)` for the neighborhood
/// `U = {t + z : |t| <= 1, |z| <= (1 - eta_p |t|) r0}` of the segment.
///
/// The closed form integrates twice the reciprocal inscribed-disc radius
/// along the segment; a chain of single-disc bounds through
/// `domain_distance_bounds` refines it when the chain is fine enough.
fn segment_neighborhood_diameter(r0: f64, eta_p: f64) -> f64 {
    let closed = if eta_p > 0.0 {
        (4.0 / r0) * (-(1.0 - eta_p).ln()) / eta_p
    } else {
        4.0 / r0
    };
    let chain = disc_cover_chain(r0, eta_p, 512);
    match chain {
        Some(c) => c.min(closed),
        None => closed,
    }
}

fn disc_cover_chain(r0: f64, eta_p: f64, steps: usize) -> Option<f64> {
    let mut total = 0.0;
    let h = 2.0 / steps as f64;
    for i in 0..steps {
        let t = -1.0 + i as f64 * h;
        let rho = (1.0 - eta_p * t.abs()) * r0;
        if rho <= h {
            return None;
        }
        let disc: ConstraintRegion = (&GeneralizedDisc::Disc {
            center: Complex64::new(t, 0.0),
            radius: rho,
        })
            .into();
        let step = domain_distance_bounds(
            &[disc],
            Complex64::new(t, 0.0),
            Complex64::new(t + h, 0.0),
        )
        .ok()?;
        total += step.upper;
    }
    Some(total)
}

fn dominated_certificate_from_constants(
    constants: &DominationConstants,
    delta_p: f64,
    n0: usize,
    notes: String,
) -> GapCertificate {
    let (alpha, beta, gamma) = (constants.alpha, constants.beta, constants.gamma);
    let cosh_half = (delta_p / 2.0).cosh();
    let lhs = gamma * cosh_half;
    let certified = alpha > 0.0 && lhs < alpha;
    let (delta_c_upper, eta) = if certified {
        let r0 = (1.0 + (alpha / cosh_half - gamma) / (2.0 * (beta + gamma))).sqrt() - 1.0;
        let eta_p = (delta_p / 4.0).tanh();
        let d = segment_neighborhood_diameter(r0, eta_p);
        let eta = eta_punctured(d).expect("neighborhood diameter is positive and finite");
        (d, Some(eta))
    } else {
        (f64::INFINITY, None)
    };
    GapCertificate {
        certified,
        condition_lhs: lhs,
        condition_rhs: alpha,
        delta_p,
        delta_c_upper,
        eta,
        n0,
        notes,
    }
}

/// Certifies a spectral gap for `m` dominated by the strictly positive
/// comparison `p`: certified iff `gamma * cosh(delta_P/2) < alpha`.
pub fn certify_dominated(m: &Array2<Complex64>, p: &Array2<f64>) -> Result<GapCertificate> {
    check_comparison(m, p)?;
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::Precondition(format!(
            "operator must be square, got {rows} x {cols}"
        )));
    }
    let constants = extract_constants(m, p)?;
    let delta_p = image_diameter(p)?;

    // Inner-regularity witness x0 = P 1 with the constant of the aux bound
    // |<l_i, M u>| <= C <l_i, x0> ||u||.
    let ones = Array1::from_elem(cols, 1.0);
    let x0 = p.dot(&ones);
    let aux_c = (0..rows)
        .map(|i| {
            let row_norm = (0..cols)
                .map(|k| m[(i, k)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            row_norm / x0[i]
        })
        .fold(0.0f64, f64::max);
    let notes = format!(
        "alpha at (i,j,k,l) = {:?}, beta at (i,k,l) = {:?}, gamma at (i,j,k,l) = {:?}; \
         delta_c_upper is an upper bound from the explicit segment neighborhood; \
         inner-regularity witness x0 = P*ones with constant C = {aux_c:.6e}",
        constants.alpha_witness, constants.beta_witness, constants.gamma_witness
    );
    Ok(dominated_certificate_from_constants(&constants, delta_p, 1, notes))
}

/// Builds a dominated certificate from already-derived constants (used by the
/// integral-operator and transfer-operator certificates).
pub(crate) fn certificate_from_constants(
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta_p: f64,
    n0: usize,
    notes: String,
) -> GapCertificate {
    let constants = DominationConstants {
        alpha,
        beta,
        gamma,
        alpha_witness: [0; 4],
        beta_witness: [0; 3],
        gamma_witness: [0; 4],
    };
    dominated_certificate_from_constants(&constants, delta_p, n0, notes)
}

/// Complex Perron-Frobenius certificate: domination of `a` against the
/// all-ones comparison, so the condition reduces to
/// `max |Im(A_ij conj(A_mn))| < min Re(A_ij conj(A_mn))`.
pub fn complex_pf_certificate(a: &Array2<Complex64>) -> Result<GapCertificate> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::Precondition(format!(
            "matrix must be square, got {rows} x {cols}"
        )));
    }
    let ones = Array2::from_elem((rows, cols), 1.0);
    certify_dominated(a, &ones)
}

/// Certified data of the exponential difference quotient
/// `w = e^{-i Im z1} (e^{z1} - e^{z2}) / (e^{Re z1} - e^{Re z2})`.
#[derive(Debug, Clone, Copy)]
pub struct ExpRatio {
    pub w: Complex64,
    /// `|Arg w| <= |Im(z1 - z2)| / Re(z1 - z2)`.
    pub arg_bound: f64,
    /// `1 <= |w|^2 <= 1 + (Im(z1-z2)/Re(z1-z2))^2`.
    pub mod_sq_bounds: (f64, f64),
}

pub fn exp_ratio(z1: Complex64, z2: Complex64) -> Result<ExpRatio> {
    let t = z1.re - z2.re;
    let s = z1.im - z2.im;
    if t.is_nan() || t <= 0.0 {
        return Err(Error::Domain(format!(
            "need Re z1 > Re z2, got difference {t}"
        )));
    }
    // w = (1 - e^{-t - i s})/(1 - e^{-t}); the real part groups as
    // -expm1(-t) + e^{-t} * 2 sin^2(s/2) to avoid cancellation.
    let em = (-t).exp();
    let denom = -(-t).exp_m1();
    let re = denom + em * 2.0 * (s / 2.0).sin().powi(2);
    let im = em * s.sin();
    let w = Complex64::new(re / denom, im / denom);
    let ratio = s / t;
    Ok(ExpRatio {
        w,
        arg_bound: ratio.abs(),
        mod_sq_bounds: (1.0, 1.0 + ratio * ratio),
    })
}
