use num_complex::Complex64;

use crate::error::{Error, Result};

/// A round disc on the Riemann sphere: an ordinary disc, the complement of a
/// disc (containing infinity), or a half-plane.
///
/// All regions are closed. The half-plane is `{z : Re(normal * conj(z)) >= offset}`
/// with `|normal| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneralizedDisc {
    Disc { center: Complex64, radius: f64 },
    DiscComplement { center: Complex64, radius: f64 },
    HalfPlane { normal: Complex64, offset: f64 },
}

/// A 2x2 complex matrix acting as a Moebius transformation z -> (a z + b)/(c z + d).
#[derive(Debug, Clone, Copy)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
        d: Complex64::new(1.0, 0.0),
    };

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn compose(&self, inner: &Mobius) -> Mobius {
        Mobius {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
        }
    }

    /// Disc automorphism sending `p` to the origin: z -> (z - p)/(1 - conj(p) z).
    pub fn disc_automorphism(p: Complex64) -> Mobius {
        Mobius {
            a: Complex64::new(1.0, 0.0),
            b: -p,
            c: -p.conj(),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// Rotation by the unit complex number `phase`.
    pub fn rotation(phase: Complex64) -> Mobius {
        Mobius {
            a: phase,
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }
}

impl GeneralizedDisc {
    pub fn disc(center: Complex64, radius: f64) -> Result<Self> {
        if radius.is_nan() || radius <= 0.0 || !radius.is_finite() {
            return Err(Error::Domain(format!("disc radius must be positive, got {radius}")));
        }
        Ok(GeneralizedDisc::Disc { center, radius })
    }

    pub fn disc_complement(center: Complex64, radius: f64) -> Result<Self> {
        if radius.is_nan() || radius <= 0.0 || !radius.is_finite() {
            return Err(Error::Domain(format!("disc radius must be positive, got {radius}")));
        }
        Ok(GeneralizedDisc::DiscComplement { center, radius })
    }

    pub fn half_plane(normal: Complex64, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Domain("half-plane normal must be nonzero".into()));
        }
        Ok(GeneralizedDisc::HalfPlane {
            normal: normal / n,
            offset: offset / n,
        })
    }

    /// Signed Euclidean distance from `z` to the boundary: positive inside the
    /// region, negative outside.
    pub fn clearance(&self, z: Complex64) -> f64 {
        match *self {
            GeneralizedDisc::Disc { center, radius } => radius - (z - center).norm(),
            GeneralizedDisc::DiscComplement { center, radius } => (z - center).norm() - radius,
            GeneralizedDisc::HalfPlane { normal, offset } => (normal * z.conj()).re - offset,
        }
    }

    /// A Moebius map sending the region bijectively onto the closed unit disc.
    pub fn to_unit_disc(&self) -> Mobius {
        match *self {
            // w = (z - c)/r
            GeneralizedDisc::Disc { center, radius } => Mobius {
                a: Complex64::new(1.0, 0.0),
                b: -center,
                c: Complex64::new(0.0, 0.0),
                d: Complex64::new(radius, 0.0),
            },
            // w = r/(z - c); the exterior (with infinity) maps onto the disc
            GeneralizedDisc::DiscComplement { center, radius } => Mobius {
                a: Complex64::new(0.0, 0.0),
                b: Complex64::new(radius, 0.0),
                c: Complex64::new(1.0, 0.0),
                d: -center,
            },
            // zeta = conj(n) z - offset maps onto {Re >= 0}; then Cayley (zeta-1)/(zeta+1)
            GeneralizedDisc::HalfPlane { normal, offset } => {
                let n = normal.conj();
                let o = Complex64::new(offset, 0.0);
                Mobius {
                    a: n,
                    b: -o - 1.0,
                    c: n,
                    d: -o + 1.0,
                }
            }
        }
    }
}

/// Distance between two points of the open unit disc in the metric
/// `ds = 2|dz|/(1 - |z|^2)`, so that `d(0, z) = log((1+|z|)/(1-|z|))`.
pub fn disc_distance(z1: Complex64, z2: Complex64) -> Result<f64> {
    if z1.norm() >= 1.0 || z2.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "points must lie strictly inside the unit disc: |z1| = {}, |z2| = {}",
            z1.norm(),
            z2.norm()
        )));
    }
    Ok(disc_distance_unchecked(z1, z2))
}

pub(crate) fn disc_distance_unchecked(z1: Complex64, z2: Complex64) -> f64 {
    let num = (z1 - z2).norm();
    let den = (Complex64::new(1.0, 0.0) - z1.conj() * z2).norm();
    let r = num / den;
    // log((1+r)/(1-r)) = 2 artanh r
    2.0 * r.atanh()
}

/// Hyperbolic distance between two interior points of a generalized disc,
/// computed through an explicit normalization to the unit disc.
pub fn generalized_disc_distance(g: &GeneralizedDisc, z1: Complex64, z2: Complex64) -> Result<f64> {
    let scale = 1.0 + z1.norm().max(z2.norm());
    let tol = 1e-14 * scale;
    if g.clearance(z1) <= tol || g.clearance(z2) <= tol {
        return Err(Error::Domain(
            "points must lie in the interior of the generalized disc".into(),
        ));
    }
    let m = g.to_unit_disc();
    let w1 = m.apply(z1);
    let w2 = m.apply(z2);
    // Clamp minute excursions outside the disc caused by roundoff.
    let clamp = |w: Complex64| {
        let n = w.norm();
        if n >= 1.0 {
            w * ((1.0 - 1e-15) / n)
        } else {
            w
        }
    };
    Ok(disc_distance_unchecked(clamp(w1), clamp(w2)))
}

/// Log cross-ratio distance `log[(a-1)/(a+1) * (b+1)/(b-1)]` of the pair
/// `{-1, 1}` inside the generalized real segment `[a, b]` of the extended line.
///
/// `a` is the endpoint reached leftwards from -1, `b` the endpoint reached
/// rightwards from +1; a segment may wrap through infinity, in which case
/// `b < a` (or `a > 1`). Endpoints touching -1 or 1 give infinite distance.
pub fn cross_ratio_distance(a: f64, b: f64) -> Result<f64> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::Domain("cross-ratio endpoints must not be NaN".into()));
    }
    if (a > -1.0 && a < 1.0) || (b > -1.0 && b < 1.0) {
        return Err(Error::Domain(format!(
            "segment [{a}, {b}] does not contain [-1, 1]"
        )));
    }
    if a == -1.0 || b == 1.0 {
        return Ok(f64::INFINITY);
    }
    let fa = if a.is_infinite() { 1.0 } else { (a - 1.0) / (a + 1.0) };
    let fb = if b.is_infinite() { 1.0 } else { (b + 1.0) / (b - 1.0) };
    let product = fa * fb;
    if product < 1.0 - 1e-9 {
        return Err(Error::Domain(format!(
            "segment [{a}, {b}] does not strictly contain [-1, 1] (cross-ratio {product})"
        )));
    }
    Ok(product.ln().max(0.0))
}

/// Contraction factor of a punctured-neighborhood inclusion whose image has
/// projective diameter `delta`: `eta = sinh(delta) * log(coth(delta/2)) < 1`.
///
/// Beyond `delta` around 19 the true value is within one double-precision ulp
/// of 1; the result saturates at the largest double below one so the strict
/// inequality survives as a float comparison.
pub fn eta_punctured(delta: f64) -> Result<f64> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::Domain(format!(
            "contraction diameter must be positive, got {delta}"
        )));
    }
    if delta == f64::INFINITY {
        return Err(Error::Domain("contraction diameter must be finite".into()));
    }
    // 1 - eta(18) is already below one ulp of 1, and the float product is no
    // longer monotone there; saturate.
    if delta >= 18.0 {
        return Ok(ETA_SATURATION);
    }
    // log(coth(d/2)) = log(1 + 2/(e^d - 1)), stable for large d.
    let eta = delta.sinh() * (2.0 / delta.exp_m1()).ln_1p();
    Ok(eta.min(ETA_SATURATION))
}

/// Largest double strictly below one.
pub const ETA_SATURATION: f64 = 1.0 - f64::EPSILON / 2.0;

/// Ball-variant contraction factor for images inside a hyperbolic ball of radius `r`.
pub fn eta_ball(r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Domain(format!("ball radius must be positive, got {r}")));
    }
    Ok((r / 2.0).tanh())
}

/// Real Birkhoff-cone contraction factor `tanh(delta/4)` for image diameter `delta`.
pub fn eta_real_cone(delta: f64) -> Result<f64> {
    if delta < 0.0 {
        return Err(Error::Domain(format!(
            "image diameter must be nonnegative, got {delta}"
        )));
    }
    Ok((delta / 4.0).tanh())
}
