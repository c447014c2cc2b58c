//! Canonical complexification of a polyhedral real cone: membership,
//! polarization, slice domains, and the projective gauge (exact on pairs of
//! real rays, bracketed on genuinely complex pairs).

use ndarray::{Array1, ArrayView1};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyperbolic::{domain_distance_bounds, ConstraintRegion, DistanceBracket};
use crate::real_cone::RealCone;

const MEMBERSHIP_TOL: f64 = 1e-12;
const ANGULAR_TOL: f64 = 1e-12;
/// Relative imaginary-part threshold below which a polarized point counts as
/// a complex multiple of a real cone vector.
const REAL_PAIR_TOL: f64 = 1e-10;

/// The canonical complexification of a real polyhedral cone. A complex
/// vector `u` belongs to it iff `Re <l_j, u> conj(<l_k, u>) >= 0` for every
/// pair of dual generators.
#[derive(Debug, Clone)]
pub struct ComplexCone {
    base: RealCone,
}

/// Decomposition `u = e^{i theta} (x + i y)` with `x - y` and `x + y` in the
/// base real cone.
#[derive(Debug, Clone)]
pub struct PolarizedPoint {
    pub theta: f64,
    pub x: Array1<f64>,
    pub y: Array1<f64>,
}

/// Slice domain of a pair: the positivity constraints on the slice variable,
/// or the colinear flag.
#[derive(Debug, Clone)]
pub enum SliceDomain {
    Colinear,
    Regions(Vec<ConstraintRegion>),
}

/// Gauge evaluation: a rigorous bracket, the exact value when the pair
/// reduces to real rays, and the slice constraints it was computed from.
#[derive(Debug, Clone)]
pub struct GaugeResult {
    pub bracket: DistanceBracket,
    pub exact: Option<f64>,
    pub slice: Vec<ConstraintRegion>,
}

impl ComplexCone {
    pub fn new(base: RealCone) -> Self {
        ComplexCone { base }
    }

    pub fn standard(dim: usize) -> Self {
        ComplexCone {
            base: RealCone::standard(dim),
        }
    }

    pub fn base(&self) -> &RealCone {
        &self.base
    }

    fn pairings(&self, u: ArrayView1<'_, Complex64>) -> Vec<Complex64> {
        self.base
            .dual_generators()
            .rows()
            .into_iter()
            .map(|l| {
                l.iter()
                    .zip(u.iter())
                    .map(|(&a, &z)| a * z)
                    .sum::<Complex64>()
            })
            .collect()
    }

    fn dual_norms(&self) -> Vec<f64> {
        self.base
            .dual_generators()
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect()
    }

    /// Membership test with relative tolerance; the zero vector is a member.
    pub fn contains(&self, u: ArrayView1<'_, Complex64>) -> bool {
        let w = self.pairings(u);
        let norms = self.dual_norms();
        let un = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for j in 0..w.len() {
            for k in j..w.len() {
                let tol = MEMBERSHIP_TOL * norms[j] * norms[k] * un * un;
                if (w[j] * w[k].conj()).re < -tol {
                    return false;
                }
            }
        }
        true
    }

    /// Finds `theta` with `Re(e^{-i theta} u) +- Im(e^{-i theta} u)` in the
    /// base cone and returns the polarized decomposition; the rotation angle
    /// is the midpoint of the feasible arc.
    pub fn polarize(&self, u: ArrayView1<'_, Complex64>) -> Result<PolarizedPoint> {
        let un = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if un == 0.0 {
            return Err(Error::Domain("cannot polarize the zero vector".into()));
        }
        if !self.contains(u) {
            return Err(Error::Domain("vector is outside the complex cone".into()));
        }
        let w = self.pairings(u);
        let norms = self.dual_norms();

        // For the rotation v = e^{i psi} u with components x = Re v, y = Im v,
        // membership of x + y and x - y in the base cone gives, per dual
        // generator with p = Re<l,u>, q = Im<l,u>:
        //   (p + q) cos psi + (p - q) sin psi >= 0
        //   (p - q) cos psi - (p + q) sin psi >= 0
        // Each is a closed half-circle of feasible psi. Half-circles are traces
        // of half-planes through the origin, so their intersection is a single
        // arc; intersect them in the universal cover around the running
        // midpoint.
        let mut arc: Option<(f64, f64)> = None;
        let mut intersect = |center: f64| -> Result<()> {
            match arc {
                None => {
                    arc = Some((
                        center - std::f64::consts::FRAC_PI_2,
                        center + std::f64::consts::FRAC_PI_2,
                    ));
                    Ok(())
                }
                Some((lo, hi)) => {
                    let mid = (lo + hi) / 2.0;
                    let two_pi = 2.0 * std::f64::consts::PI;
                    let mut c = center;
                    while c < mid - std::f64::consts::PI {
                        c += two_pi;
                    }
                    while c > mid + std::f64::consts::PI {
                        c -= two_pi;
                    }
                    let mut best: Option<(f64, f64)> = None;
                    for cand in [c, c - two_pi, c + two_pi] {
                        let nlo = lo.max(cand - std::f64::consts::FRAC_PI_2);
                        let nhi = hi.min(cand + std::f64::consts::FRAC_PI_2);
                        if nhi >= nlo - ANGULAR_TOL {
                            let keep = match best {
                                None => true,
                                Some((blo, bhi)) => nhi - nlo > bhi - blo,
                            };
                            if keep {
                                best = Some((nlo, nhi.max(nlo)));
                            }
                        }
                    }
                    arc = Some(best.ok_or_else(|| {
                        Error::Internal(
                            "membership/polarization inconsistency: empty feasible arc".into(),
                        )
                    })?);
                    Ok(())
                }
            }
        };

        for (j, &wj) in w.iter().enumerate() {
            let (p, q) = (wj.re, wj.im);
            let scale = norms[j] * un;
            if p.hypot(q) <= MEMBERSHIP_TOL * scale {
                continue;
            }
            // A cos psi + B sin psi >= 0 is the half-circle centered at atan2(B, A)
            intersect((p - q).atan2(p + q))?;
            intersect((-(p + q)).atan2(p - q))?;
        }

        let psi = match arc {
            None => 0.0, // all pairings vanish within tolerance
            Some((lo, hi)) => (lo + hi) / 2.0,
        };
        let phase = Complex64::from_polar(1.0, psi);
        let x = u.map(|&z| (phase * z).re);
        let y = u.map(|&z| (phase * z).im);
        let xp = &x + &y;
        let xm = &x - &y;
        if !self.base.contains(xp.view()) || !self.base.contains(xm.view()) {
            return Err(Error::Internal(
                "membership/polarization inconsistency: rotated parts left the cone".into(),
            ));
        }
        Ok(PolarizedPoint { theta: -psi, x, y })
    }

    /// Rotates the polarization of `x + i y` by the symmetrizing angle so
    /// that `|<l, y'>| <= tanh(delta/4) <l, x'>` for every dual generator.
    pub fn rotate_polarization(
        &self,
        x: ArrayView1<'_, f64>,
        y: ArrayView1<'_, f64>,
        delta: f64,
    ) -> Result<(Array1<f64>, Array1<f64>)> {
        let xp = &x.to_owned() + &y.to_owned();
        let xm = &x.to_owned() - &y.to_owned();
        if !self.base.contains(xp.view()) || !self.base.contains(xm.view()) {
            return Err(Error::Domain("x - y and x + y must lie in the base cone".into()));
        }
        if !delta.is_finite() {
            return Err(Error::Domain(
                "projective distance of the polarization pair must be finite".into(),
            ));
        }
        let d = self.base.hilbert_metric(xm.view(), xp.view())?.value;
        if d > delta * (1.0 + 1e-9) + 1e-9 {
            return Err(Error::Precondition(format!(
                "delta = {delta} is below the pair distance {d}"
            )));
        }
        // Theta(x, y) = {theta : cos(theta) x - sin(theta) y in cone}: each
        // generator contributes the half-circle centered at atan2(-q, p),
        // so Theta = [phi_max - pi/2, phi_min + pi/2]. Rotating by alpha
        // shifts Theta left by alpha; the symmetric configuration needs
        // alpha = (theta_1 + theta_2)/2 = (phi_min + phi_max)/2.
        let mut phi_min = f64::INFINITY;
        let mut phi_max = f64::NEG_INFINITY;
        for l in self.base.dual_generators().rows() {
            let p = l.dot(&x);
            let q = l.dot(&y);
            if p.hypot(q) == 0.0 {
                continue;
            }
            let phi = (-q).atan2(p);
            phi_min = phi_min.min(phi);
            phi_max = phi_max.max(phi);
        }
        let alpha = if phi_min.is_finite() {
            (phi_max + phi_min) / 2.0
        } else {
            0.0
        };
        let (s, c) = alpha.sin_cos();
        let xr = x.map(|&v| v * c) - y.map(|&v| v * s);
        let yr = x.map(|&v| v * s) + y.map(|&v| v * c);
        Ok((xr, yr))
    }

    /// Positive rescaling factor `t` such that `t x1` and `x2` satisfy
    /// `|<l, t x1 - x2>| <= tanh(d/4) <l, t x1 + x2>` for all generators.
    pub fn real_rescale(
        &self,
        x1: ArrayView1<'_, f64>,
        x2: ArrayView1<'_, f64>,
    ) -> Result<f64> {
        let b12 = self.base.birkhoff_beta(x1, x2)?;
        let b21 = self.base.birkhoff_beta(x2, x1)?;
        if !b12.is_finite() || !b21.is_finite() {
            return Err(Error::Domain(
                "rescaling requires finite projective distance".into(),
            ));
        }
        Ok((b12 / b21).sqrt())
    }

    /// One positivity constraint on the slice variable per dual-generator
    /// pair `j <= k`, from `p_j(lambda) = <l_j, (1+lambda)x + (1-lambda)y>`.
    pub fn slice_domain(
        &self,
        x: ArrayView1<'_, Complex64>,
        y: ArrayView1<'_, Complex64>,
    ) -> SliceDomain {
        if colinear(x, y) {
            return SliceDomain::Colinear;
        }
        let sum: Array1<Complex64> = (&x.to_owned() + &y.to_owned()).to_owned();
        let dif: Array1<Complex64> = (&x.to_owned() - &y.to_owned()).to_owned();
        let a = self.pairings(sum.view());
        let b = self.pairings(dif.view());
        let m = a.len();
        let mut regions = Vec::with_capacity(m * (m + 1) / 2);
        for j in 0..m {
            for k in j..m {
                regions.push(ConstraintRegion::new(
                    (b[j] * b[k].conj()).re,
                    b[j] * a[k].conj() + a[j].conj() * b[k],
                    (a[j] * a[k].conj()).re,
                ));
            }
        }
        SliceDomain::Regions(regions)
    }

    /// Projective gauge between two members, exact on pairs of complex
    /// multiples of real rays and bracketed otherwise.
    pub fn gauge(
        &self,
        x: ArrayView1<'_, Complex64>,
        y: ArrayView1<'_, Complex64>,
    ) -> Result<GaugeResult> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::Domain("gauge arguments must belong to the cone".into()));
        }
        let regions = match self.slice_domain(x, y) {
            SliceDomain::Colinear => {
                return Ok(GaugeResult {
                    bracket: DistanceBracket::exact(0.0),
                    exact: Some(0.0),
                    slice: Vec::new(),
                })
            }
            SliceDomain::Regions(r) => r,
        };

        let px = self.polarize(x)?;
        let py = self.polarize(y)?;
        let is_real = |p: &PolarizedPoint| {
            let nx = p.x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let ny = p.y.iter().map(|v| v * v).sum::<f64>().sqrt();
            ny <= REAL_PAIR_TOL * nx
        };
        let exact = if is_real(&px) && is_real(&py) {
            Some(self.base.hilbert_metric(px.x.view(), py.x.view())?.value)
        } else {
            None
        };

        let minus = Complex64::new(-1.0, 0.0);
        let plus = Complex64::new(1.0, 0.0);
        let bracket = match domain_distance_bounds(&regions, minus, plus) {
            Ok(b) => b,
            // -1 or 1 on the slice boundary: the gauge is infinite.
            Err(Error::Domain(_)) => DistanceBracket::exact(f64::INFINITY),
            Err(e) => return Err(e),
        };
        // Guard the bracket invariant against float noise in the exact branch.
        let bracket = match exact {
            Some(d) => DistanceBracket::new(bracket.lower.min(d), bracket.upper.max(d)),
            None => bracket,
        };
        Ok(GaugeResult {
            bracket,
            exact,
            slice: regions,
        })
    }
}

fn colinear(x: ArrayView1<'_, Complex64>, y: ArrayView1<'_, Complex64>) -> bool {
    let nx = x.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let ny = y.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if nx == 0.0 || ny == 0.0 {
        return true;
    }
    let inner: Complex64 = x.iter().zip(y.iter()).map(|(&a, &b)| a * b.conj()).sum();
    nx * ny - inner.norm_sqr() <= 1e-24 * nx * ny
}

/// Projective distance between complex lines: `sqrt(2 - 2 |<x, y>|)` for
/// unit representatives in the Euclidean inner product.
pub fn projective_distance(
    x: ArrayView1<'_, Complex64>,
    y: ArrayView1<'_, Complex64>,
) -> Result<f64> {
    let nx = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let ny = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 {
        return Err(Error::Domain("projective distance needs nonzero vectors".into()));
    }
    let inner: Complex64 = x.iter().zip(y.iter()).map(|(&a, &b)| a * b.conj()).sum();
    let cosang = (inner.norm() / (nx * ny)).min(1.0);
    Ok((2.0 - 2.0 * cosang).max(0.0).sqrt())
}
