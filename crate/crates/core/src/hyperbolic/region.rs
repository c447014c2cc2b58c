use num_complex::Complex64;

use super::disc::{GeneralizedDisc, Mobius};

/// One planar positivity constraint in the slice variable:
/// `{lambda : quad*|lambda|^2 + Re(lin*lambda) + constant >= 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintRegion {
    pub quad: f64,
    pub lin: Complex64,
    pub constant: f64,
}

/// Canonical reduction of a [`ConstraintRegion`].
#[derive(Debug, Clone, PartialEq)]
pub enum CanonicalRegion {
    WholePlane,
    Empty,
    Region(GeneralizedDisc),
}

/// Relative magnitude below which a coefficient counts as zero.
const CANON_TOL: f64 = 1e-12;

impl ConstraintRegion {
    pub fn new(quad: f64, lin: Complex64, constant: f64) -> Self {
        ConstraintRegion { quad, lin, constant }
    }

    /// Value of the defining quadratic at `z`.
    pub fn eval(&self, z: Complex64) -> f64 {
        self.quad * z.norm_sqr() + (self.lin * z).re + self.constant
    }

    /// Deterministic reduction to a generalized disc, half-plane, the whole
    /// plane, or the empty set. Coefficients below `1e-12` of the coefficient
    /// scale are treated as zero.
    pub fn canonicalize(&self) -> CanonicalRegion {
        let scale = self
            .quad
            .abs()
            .max(self.lin.norm())
            .max(self.constant.abs());
        if scale == 0.0 {
            // 0 >= 0 everywhere
            return CanonicalRegion::WholePlane;
        }
        let tol = CANON_TOL * scale;
        let q = if self.quad.abs() <= tol { 0.0 } else { self.quad };
        let lin = if self.lin.norm() <= tol {
            Complex64::new(0.0, 0.0)
        } else {
            self.lin
        };

        if q == 0.0 && lin.norm() == 0.0 {
            return if self.constant >= -tol {
                CanonicalRegion::WholePlane
            } else {
                CanonicalRegion::Empty
            };
        }
        if q == 0.0 {
            // Re(lin*z) + c >= 0  <=>  Re(conj(lin) * conj(z)) >= -c
            let norm = lin.norm();
            return CanonicalRegion::Region(GeneralizedDisc::HalfPlane {
                normal: lin.conj() / norm,
                offset: -self.constant / norm,
            });
        }
        // q*|z - m|^2 + (c - q*|m|^2) with m = -conj(lin)/(2q)
        let m = -lin.conj() / (2.0 * q);
        let r_sq = m.norm_sqr() - self.constant / q;
        if q > 0.0 {
            // |z - m|^2 >= r_sq
            if r_sq <= tol / q.abs() {
                CanonicalRegion::WholePlane
            } else {
                CanonicalRegion::Region(GeneralizedDisc::DiscComplement {
                    center: m,
                    radius: r_sq.sqrt(),
                })
            }
        } else {
            // |z - m|^2 <= r_sq
            if r_sq <= tol / q.abs() {
                // at most a single point; no interior
                CanonicalRegion::Empty
            } else {
                CanonicalRegion::Region(GeneralizedDisc::Disc {
                    center: m,
                    radius: r_sq.sqrt(),
                })
            }
        }
    }

    /// Pull the region back through the Moebius map `m`: the result holds at
    /// `w` exactly when `self` holds at `m(w)`.
    ///
    /// With the Hermitian form Q = [[quad, conj(lin)/2], [lin/2, constant]]
    /// acting on columns (lambda, 1), substitution is the congruence
    /// Q' = M^H Q M, which preserves the sign because the squared denominator
    /// is positive.
    pub fn pullback(&self, m: &Mobius) -> ConstraintRegion {
        let q00 = Complex64::new(self.quad, 0.0);
        let q01 = self.lin.conj() / 2.0;
        let q10 = self.lin / 2.0;
        let q11 = Complex64::new(self.constant, 0.0);
        let (a, b, c, d) = (m.a, m.b, m.c, m.d);
        // Q M
        let t00 = q00 * a + q01 * c;
        let t01 = q00 * b + q01 * d;
        let t10 = q10 * a + q11 * c;
        let t11 = q10 * b + q11 * d;
        // M^H (Q M)
        let r00 = a.conj() * t00 + c.conj() * t10;
        let r10 = b.conj() * t00 + d.conj() * t10;
        let r11 = b.conj() * t01 + d.conj() * t11;
        ConstraintRegion {
            quad: r00.re,
            lin: 2.0 * r10,
            constant: r11.re,
        }
    }
}

impl From<&GeneralizedDisc> for ConstraintRegion {
    fn from(g: &GeneralizedDisc) -> Self {
        match *g {
            GeneralizedDisc::Disc { center, radius } => ConstraintRegion {
                quad: -1.0,
                lin: 2.0 * center.conj(),
                constant: radius * radius - center.norm_sqr(),
            },
            GeneralizedDisc::DiscComplement { center, radius } => ConstraintRegion {
                quad: 1.0,
                lin: -2.0 * center.conj(),
                constant: center.norm_sqr() - radius * radius,
            },
            GeneralizedDisc::HalfPlane { normal, offset } => ConstraintRegion {
                quad: 0.0,
                lin: normal.conj(),
                constant: -offset,
            },
        }
    }
}
