//! Polyhedral real Birkhoff cones: membership, the Hilbert projective metric
//! in its Birkhoff and cross-ratio forms, apertures, image diameters of
//! positive matrices, and the real dominated-contraction bound.

use ndarray::{Array1, Array2, ArrayView1};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Relative boundary tolerance for cone membership.
const MEMBERSHIP_TOL: f64 = 1e-12;

/// Norm used by aperture computations; the functional norm is the dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

impl Norm {
    pub fn of(&self, v: ArrayView1<'_, f64>) -> f64 {
        match self {
            Norm::L1 => v.iter().map(|x| x.abs()).sum(),
            Norm::L2 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Norm::LInf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }

    pub fn dual(&self) -> Norm {
        match self {
            Norm::L1 => Norm::LInf,
            Norm::L2 => Norm::L2,
            Norm::LInf => Norm::L1,
        }
    }
}

/// A proper closed convex polyhedral cone given by dual generators:
/// `x` belongs to the cone iff `<l_k, x> >= 0` for every dual generator.
#[derive(Debug, Clone)]
pub struct RealCone {
    dim: usize,
    dual_generators: Array2<f64>,
    dual_norms: Vec<f64>,
    primal_generators: Option<Array2<f64>>,
}

/// Hilbert projective distance together with its two defining forms.
#[derive(Debug, Clone)]
pub struct HilbertDistance {
    /// `log(beta_xy * beta_yx)`, possibly infinite.
    pub value: f64,
    pub beta_xy: f64,
    pub beta_yx: f64,
    /// Endpoints `(a, b)` of the boundary segment of the line through the
    /// pair, in the orientation accepted by [`cross_ratio_distance`].
    pub segment: Option<(f64, f64)>,
}

impl RealCone {
    /// Builds a cone from dual generators (rows of `dual_generators`).
    /// The cone must be proper: the generators must span the dual space.
    pub fn new(
        dual_generators: Array2<f64>,
        primal_generators: Option<Array2<f64>>,
    ) -> Result<Self> {
        let (m, dim) = dual_generators.dim();
        if dim == 0 || m == 0 {
            return Err(Error::Domain("cone needs at least one dual generator".into()));
        }
        let dual_norms: Vec<f64> = dual_generators
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect();
        if dual_norms.iter().any(|&n| n == 0.0 || !n.is_finite()) {
            return Err(Error::Domain("dual generators must be nonzero and finite".into()));
        }
        if rank(&dual_generators) < dim {
            return Err(Error::Domain(
                "cone is not proper: dual generators do not span the dual space".into(),
            ));
        }
        let cone = RealCone {
            dim,
            dual_generators,
            dual_norms,
            primal_generators: None,
        };
        let cone = match primal_generators {
            None => cone,
            Some(p) => {
                if p.ncols() != dim {
                    return Err(Error::Domain("primal generator dimension mismatch".into()));
                }
                for row in p.rows() {
                    if !cone.contains(row) {
                        return Err(Error::Domain(
                            "a primal generator is outside the cone".into(),
                        ));
                    }
                }
                RealCone {
                    primal_generators: Some(p),
                    ..cone
                }
            }
        };
        Ok(cone)
    }

    /// The standard orthant cone with coordinate projections as generators.
    pub fn standard(dim: usize) -> Self {
        let eye = Array2::eye(dim);
        RealCone {
            dim,
            dual_generators: eye.clone(),
            dual_norms: vec![1.0; dim],
            primal_generators: Some(eye),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dual_generators(&self) -> &Array2<f64> {
        &self.dual_generators
    }

    pub fn primal_generators(&self) -> Option<&Array2<f64>> {
        self.primal_generators.as_ref()
    }

    fn vector_scale(&self, x: ArrayView1<'_, f64>) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Membership with relative boundary tolerance.
    pub fn contains(&self, x: ArrayView1<'_, f64>) -> bool {
        let nx = self.vector_scale(x);
        self.dual_generators
            .rows()
            .into_iter()
            .zip(&self.dual_norms)
            .all(|(l, &ln)| l.dot(&x) >= -MEMBERSHIP_TOL * ln * nx)
    }

    /// Dual pairings `<l_k, x>` for all generators, with values within the
    /// boundary tolerance snapped to exact zero so that the two metric forms
    /// classify boundaries identically.
    fn snapped_pairings(&self, x: ArrayView1<'_, f64>) -> Result<Vec<f64>> {
        let nx = self.vector_scale(x);
        if nx == 0.0 {
            return Err(Error::Domain("cone points must be nonzero".into()));
        }
        let mut out = Vec::with_capacity(self.dual_norms.len());
        for (l, &ln) in self.dual_generators.rows().into_iter().zip(&self.dual_norms) {
            let v = l.dot(&x);
            let tol = MEMBERSHIP_TOL * ln * nx;
            if v < -tol {
                return Err(Error::Domain(
                    "point is outside the cone (negative dual pairing)".into(),
                ));
            }
            out.push(if v.abs() <= tol { 0.0 } else { v });
        }
        Ok(out)
    }

    /// Birkhoff coefficient `beta(x, y) = inf{ t > 0 : t x - y in cone }`.
    pub fn birkhoff_beta(&self, x: ArrayView1<'_, f64>, y: ArrayView1<'_, f64>) -> Result<f64> {
        let px = self.snapped_pairings(x)?;
        let py = self.snapped_pairings(y)?;
        Ok(beta_from_pairings(&px, &py))
    }

    /// Hilbert projective distance, computed in both the Birkhoff form and
    /// the boundary cross-ratio form; the two routes must agree.
    pub fn hilbert_metric(
        &self,
        x: ArrayView1<'_, f64>,
        y: ArrayView1<'_, f64>,
    ) -> Result<HilbertDistance> {
        let px = self.snapped_pairings(x)?;
        let py = self.snapped_pairings(y)?;
        let beta_xy = beta_from_pairings(&px, &py);
        let beta_yx = beta_from_pairings(&py, &px);
        let value = if beta_xy.is_infinite() || beta_yx.is_infinite() {
            f64::INFINITY
        } else {
            (beta_xy * beta_yx).ln().max(0.0)
        };
        let segment = boundary_segment(&px, &py);
        if let Some((a, b)) = segment {
            let via_segment = crate::hyperbolic::cross_ratio_distance(a, b)?;
            let agree = if value.is_finite() {
                (via_segment - value).abs() <= 1e-9 * (1.0 + value)
            } else {
                via_segment.is_infinite()
            };
            if !agree {
                return Err(Error::Internal(format!(
                    "metric forms disagree: beta form {value}, cross-ratio form {via_segment}"
                )));
            }
        }
        Ok(HilbertDistance {
            value,
            beta_xy,
            beta_yx,
            segment,
        })
    }

    /// Sample a cone point as a random positive combination of the primal
    /// generators; requires primal generators.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Array1<f64>> {
        let gens = self.primal_generators.as_ref().ok_or_else(|| {
            Error::Precondition("sampling requires primal generators".into())
        })?;
        let mut v = Array1::zeros(self.dim);
        for row in gens.rows() {
            let w: f64 = rng.gen_range(0.0..1.0f64);
            // exponent spread keeps samples away from a single simplex face
            let w = w * w;
            v.scaled_add(w + 1e-3, &row);
        }
        Ok(v)
    }

    /// Lower estimate of the aperture `K(cone; m) = sup ||m|| ||u|| / |<m,u>|`
    /// by maximizing over primal generators and random cone samples.
    pub fn aperture_estimate<R: Rng + ?Sized>(
        &self,
        m: ArrayView1<'_, f64>,
        samples: usize,
        norm: Norm,
        rng: &mut R,
    ) -> Result<f64> {
        if m.iter().all(|&v| v == 0.0) {
            return Err(Error::Domain("aperture functional must be nonzero".into()));
        }
        let m_norm = norm.dual().of(m);
        let mut best: f64 = 1.0;
        let mut probe = |u: ArrayView1<'_, f64>| {
            let un = norm.of(u);
            if un == 0.0 {
                return;
            }
            let p = m.dot(&u).abs();
            if p <= 1e-300 * m_norm * un {
                best = f64::INFINITY;
            } else {
                best = best.max(m_norm * un / p);
            }
        };
        if let Some(gens) = &self.primal_generators {
            for row in gens.rows() {
                probe(row);
            }
        }
        for _ in 0..samples {
            let u = self.sample(rng)?;
            probe(u.view());
        }
        Ok(best)
    }

    /// Exact aperture of the two-dimensional sectional cone spanned by `x`
    /// and `y` with respect to the Euclidean norm, via the extreme rays of
    /// the planar wedge and the bisecting functional, refined by samples.
    pub fn sectional_aperture<R: Rng + ?Sized>(
        &self,
        x: ArrayView1<'_, f64>,
        y: ArrayView1<'_, f64>,
        samples: usize,
        rng: &mut R,
    ) -> Result<f64> {
        // Orthonormal basis of span{x, y}.
        let nx = self.vector_scale(x);
        if nx == 0.0 {
            return Err(Error::Domain("sectional basis vector is zero".into()));
        }
        let e1 = x.map(|v| v / nx);
        let proj = y.dot(&e1.view());
        let mut e2 = y.to_owned();
        e2.scaled_add(-proj, &e1);
        let n2 = self.vector_scale(e2.view());
        if n2 <= 1e-14 * self.vector_scale(y) {
            return Ok(1.0); // colinear pair: the section is a ray
        }
        e2.mapv_inplace(|v| v / n2);

        // Wedge {phi : cos(phi) p_k + sin(phi) q_k >= 0 for all k} in the
        // orthonormal coordinates.
        let mut lo = -std::f64::consts::PI;
        let mut hi = std::f64::consts::PI;
        // Anchor at the direction of x (phi = 0 is feasible).
        for (l, &ln) in self.dual_generators.rows().into_iter().zip(&self.dual_norms) {
            let p = l.dot(&e1.view());
            let q = l.dot(&e2.view());
            let r = p.hypot(q);
            if r <= 1e-14 * ln {
                continue;
            }
            let phi0 = q.atan2(p);
            // p cos(phi) + q sin(phi) >= 0 on the arc [phi0 - pi/2, phi0 + pi/2];
            // members of the cone keep every phi0 in [-pi/2, pi/2], so the
            // arcs can be intersected as plain intervals.
            lo = lo.max(phi0 - std::f64::consts::FRAC_PI_2);
            hi = hi.min(phi0 + std::f64::consts::FRAC_PI_2);
        }
        if lo > hi {
            return Err(Error::Internal("empty sectional wedge for cone members".into()));
        }
        let half = (hi - lo) / 2.0;
        let mut best = 1.0 / half.cos().max(1e-300);
        // Sampled refinement (cannot exceed the wedge value; kept for the
        // sampled-estimate contract).
        for _ in 0..samples {
            let phi = rng.gen_range(lo..=hi);
            let dev = (phi - (lo + hi) / 2.0).abs();
            best = best.max(1.0 / dev.cos().max(1e-300));
        }
        Ok(best)
    }
}

fn beta_from_pairings(px: &[f64], py: &[f64]) -> f64 {
    let mut beta = 0.0f64;
    for (&ax, &ay) in px.iter().zip(py) {
        if ax == 0.0 {
            if ay > 0.0 {
                return f64::INFINITY;
            }
        } else {
            beta = beta.max(ay / ax);
        }
    }
    beta
}

/// Endpoints of `{t : (1+t)x + (1-t)y in C or -C}` from the snapped dual
/// pairings, oriented for [`cross_ratio_distance`]: `a` is reached leftwards
/// from -1, `b` rightwards from +1, wrapping through infinity when the
/// negative-cone piece attaches there.
fn boundary_segment(px: &[f64], py: &[f64]) -> Option<(f64, f64)> {
    // f_k(t) = c_k + t d_k with c_k = <l,x+y> >= 0, d_k = <l,x-y>.
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    // interval of the -C piece
    let mut nlo = f64::NEG_INFINITY;
    let mut nhi = f64::INFINITY;
    let mut neg_nonempty = true;
    for (&ax, &ay) in px.iter().zip(py) {
        let c = ax + ay;
        let d = ax - ay;
        if d > 0.0 {
            lo = lo.max(-c / d);
            nhi = nhi.min(-c / d);
        } else if d < 0.0 {
            hi = hi.min(c / -d);
            nlo = nlo.max(c / -d);
        } else if c > 0.0 {
            neg_nonempty = false;
        }
        // c = d = 0 is vacuous for both pieces
    }
    if neg_nonempty && nlo > nhi {
        neg_nonempty = false;
    }
    // Going left from -1: stop at lo if finite, otherwise wrap through
    // infinity into the -C piece and stop at its right-moving end.
    let a = if lo.is_finite() {
        lo
    } else if neg_nonempty && nlo.is_finite() {
        nlo
    } else {
        f64::NEG_INFINITY
    };
    let b = if hi.is_finite() {
        hi
    } else if neg_nonempty && nhi.is_finite() {
        nhi
    } else {
        f64::INFINITY
    };
    Some((a, b))
}

/// Projective diameter of the image of the standard cone under a strictly
/// positive matrix: the classical column cross-ratio maximum
/// `max_{i,j,k,l} log(A_ik A_jl / (A_il A_jk))`.
pub fn image_diameter(a: &Array2<f64>) -> Result<f64> {
    let (rows, cols) = a.dim();
    if rows == 0 || cols == 0 {
        return Err(Error::Domain("matrix must be nonempty".into()));
    }
    if let Some(((i, j), &v)) = a.indexed_iter().find(|(_, &v)| v.is_nan() || v <= 0.0) {
        return Err(Error::Domain(format!(
            "matrix entry ({i}, {j}) = {v} is not strictly positive"
        )));
    }
    // max over column pairs (k, l) of max_i (A_ik/A_il) * max_j (A_jl/A_jk)
    let diam = (0..cols)
        .into_par_iter()
        .map(|k| {
            let mut best = 0.0f64;
            for l in (k + 1)..cols {
                let mut up = f64::NEG_INFINITY;
                let mut down = f64::NEG_INFINITY;
                for i in 0..rows {
                    let r = a[(i, k)] / a[(i, l)];
                    up = up.max(r);
                    down = down.max(1.0 / r);
                }
                best = best.max((up * down).ln());
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    Ok(diam.max(0.0))
}

/// Birkhoff contraction certificate for a strictly positive matrix.
#[derive(Debug, Clone)]
pub struct BirkhoffCertificate {
    pub diameter: f64,
    /// `tanh(diameter / 4)`, the guaranteed contraction and spectral ratio bound.
    pub ratio_bound: f64,
    /// `(max - min)/(max + min)` over the entries; the cruder entry-range bound.
    pub entry_ratio_bound: f64,
}

pub fn birkhoff_certificate(a: &Array2<f64>) -> Result<BirkhoffCertificate> {
    let diameter = image_diameter(a)?;
    let lo = a.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = a.iter().cloned().fold(0.0f64, f64::max);
    Ok(BirkhoffCertificate {
        diameter,
        ratio_bound: (diameter / 4.0).tanh(),
        entry_ratio_bound: (hi - lo) / (hi + lo),
    })
}

/// Diameter bound `2 log(beta/alpha) + image_diameter(P)` for a matrix `A`
/// dominated entrywise by `alpha P <= A <= beta P`.
pub fn real_dominated_diameter(
    a: &Array2<f64>,
    p: &Array2<f64>,
    alpha: f64,
    beta: f64,
) -> Result<f64> {
    if !(0.0 < alpha && alpha <= beta && beta.is_finite()) {
        return Err(Error::Precondition(format!(
            "need 0 < alpha <= beta < inf, got alpha = {alpha}, beta = {beta}"
        )));
    }
    if a.dim() != p.dim() {
        return Err(Error::Precondition("A and P must have equal shape".into()));
    }
    for ((i, j), &pij) in p.indexed_iter() {
        let aij = a[(i, j)];
        if aij < alpha * pij {
            return Err(Error::Precondition(format!(
                "domination violated at entry ({i}, {j}): A = {aij} < alpha*P = {}",
                alpha * pij
            )));
        }
        if aij > beta * pij {
            return Err(Error::Precondition(format!(
                "domination violated at entry ({i}, {j}): A = {aij} > beta*P = {}",
                beta * pij
            )));
        }
    }
    Ok(2.0 * (beta / alpha).ln() + image_diameter(p)?)
}

fn rank(m: &Array2<f64>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = a.dim();
    let mut rank = 0;
    let mut row = 0;
    let scale = a.iter().fold(0.0f64, |s, v| s.max(v.abs())).max(1e-300);
    for col in 0..cols {
        // partial pivot
        let mut piv = row;
        for r in row..rows {
            if a[(r, col)].abs() > a[(piv, col)].abs() {
                piv = r;
            }
        }
        if a[(piv, col)].abs() <= 1e-12 * scale {
            continue;
        }
        if piv != row {
            for c in 0..cols {
                a.swap((piv, c), (row, c));
            }
        }
        for r in (row + 1)..rows {
            let f = a[(r, col)] / a[(row, col)];
            for c in col..cols {
                a[(r, c)] -= f * a[(row, c)];
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}
