use ndarray::Array2;
use num_complex::Complex64;

use crate::domination::{certificate_from_constants, GapCertificate};
use crate::error::{Error, Result};

/// Weight `c0 + c1 cos(2 pi x) + c2 sin(2 pi x) + i (d0 + d1 cos(2 pi x) + d2 sin(2 pi x))`
/// on the unit circle, with closed-form Lipschitz and oscillation constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigWeight {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
}

impl TrigWeight {
    pub const ZERO: TrigWeight = TrigWeight {
        c0: 0.0,
        c1: 0.0,
        c2: 0.0,
        d0: 0.0,
        d1: 0.0,
        d2: 0.0,
    };

    pub fn eval(&self, x: f64) -> Complex64 {
        let t = 2.0 * std::f64::consts::PI * x;
        let (s, c) = t.sin_cos();
        Complex64::new(
            self.c0 + self.c1 * c + self.c2 * s,
            self.d0 + self.d1 * c + self.d2 * s,
        )
    }

    /// Lipschitz constant of the real part in the circle metric.
    pub fn lip_re(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.c1.hypot(self.c2)
    }

    /// Lipschitz constant of the imaginary part in the circle metric.
    pub fn lip_im(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.d1.hypot(self.d2)
    }

    /// Oscillation of the imaginary part.
    pub fn osc_im(&self) -> f64 {
        2.0 * self.d1.hypot(self.d2)
    }

    pub fn scaled(&self, kappa: f64) -> TrigWeight {
        TrigWeight {
            c0: kappa * self.c0,
            c1: kappa * self.c1,
            c2: kappa * self.c2,
            d0: kappa * self.d0,
            d1: kappa * self.d1,
            d2: kappa * self.d2,
        }
    }
}

/// Transfer operator `M_g phi(y) = sum_{f(x) = y} e^{g(x)} phi(x)` of the
/// linear full shift `x -> degree * x mod 1` on the circle with metric
/// `d(x, y) = min(|x - y|, 1 - |x - y|)`.
#[derive(Debug, Clone)]
pub struct TransferOperatorSpec {
    pub degree: usize,
    pub weight: TrigWeight,
}

impl TransferOperatorSpec {
    pub fn new(degree: usize, weight: TrigWeight) -> Result<Self> {
        if degree < 2 {
            return Err(Error::Domain(format!("degree must be at least 2, got {degree}")));
        }
        Ok(TransferOperatorSpec { degree, weight })
    }

    /// Branch contraction rate of the linear full shift.
    pub fn rho(&self) -> f64 {
        1.0 / self.degree as f64
    }

    /// Diameter of the circle in its intrinsic metric.
    pub fn diameter(&self) -> f64 {
        0.5
    }
}

/// Circle distance `min(|x-y|, 1-|x-y|)`.
pub fn circle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Result of one transfer application on grid samples.
#[derive(Debug, Clone)]
pub struct TransferApplied {
    pub values: Vec<Complex64>,
    /// True when some preimage fell off the grid and trigonometric
    /// interpolation was used.
    pub interpolated: bool,
    /// Set when interpolation ran on samples whose spectral tail is not
    /// negligible, so interpolation error may be significant.
    pub smoothness_warning: bool,
}

/// Cardinal trigonometric interpolation basis value at offset `x` (grid of
/// `n` points, `x` in units of the full circle).
fn dirichlet(n: usize, x: f64) -> f64 {
    let xm = x - x.round();
    if xm.abs() < 1e-15 {
        return 1.0;
    }
    let pix = std::f64::consts::PI * xm;
    let nf = n as f64;
    if n % 2 == 1 {
        (nf * pix).sin() / (nf * pix.sin())
    } else {
        // even grids split the edge mode symmetrically
        (nf * pix).sin() * pix.cos() / (nf * pix.sin())
    }
}

/// Applies the transfer operator to samples on the uniform `N`-grid
/// `y_k = k/N`. Branch preimages are located by exact integer arithmetic on
/// the index lattice; off-lattice preimages use trigonometric interpolation.
pub fn transfer_apply(
    spec: &TransferOperatorSpec,
    phi: &[Complex64],
) -> Result<TransferApplied> {
    let n = phi.len();
    if n < 2 {
        return Err(Error::Domain("need at least two grid samples".into()));
    }
    let d = spec.degree;
    let mut interpolated = false;
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..d {
            let num = k + j * n; // preimage x = num / (d n)
            let x = num as f64 / (d * n) as f64;
            let weight = spec.weight.eval(x).exp();
            let phi_x = if num.is_multiple_of(d) {
                phi[(num / d) % n]
            } else {
                interpolated = true;
                interpolate(phi, x)
            };
            acc += weight * phi_x;
        }
        values.push(acc);
    }
    let smoothness_warning = interpolated && !tail_negligible(phi);
    Ok(TransferApplied {
        values,
        interpolated,
        smoothness_warning,
    })
}

fn interpolate(phi: &[Complex64], x: f64) -> Complex64 {
    let n = phi.len();
    phi.iter()
        .enumerate()
        .map(|(i, &v)| v * dirichlet(n, x - i as f64 / n as f64))
        .sum()
}

/// Spectral-tail heuristic: the top quarter of the frequency band must carry
/// a negligible share of the energy for interpolation to be trustworthy.
fn tail_negligible(phi: &[Complex64]) -> bool {
    let n = phi.len();
    let mut total = 0.0;
    let mut tail = 0.0;
    for f in 0..n {
        let coeff: Complex64 = phi
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                v * Complex64::from_polar(
                    1.0,
                    -2.0 * std::f64::consts::PI * (f * i) as f64 / n as f64,
                )
            })
            .sum();
        let e = coeff.norm_sqr();
        total += e;
        let freq = if f <= n / 2 { f } else { n - f };
        if freq > 3 * n / 8 {
            tail += e;
        }
    }
    total == 0.0 || tail <= 1e-8 * total
}

/// Collocation matrix of the transfer operator on the uniform `n`-grid in
/// the cardinal trigonometric basis.
pub fn collocation_matrix(spec: &TransferOperatorSpec, n: usize) -> Result<Array2<Complex64>> {
    if n < 2 {
        return Err(Error::Domain("collocation grid needs at least two points".into()));
    }
    let d = spec.degree;
    let mut k = Array2::from_elem((n, n), Complex64::new(0.0, 0.0));
    for row in 0..n {
        for j in 0..d {
            let num = row + j * n;
            let x = num as f64 / (d * n) as f64;
            let weight = spec.weight.eval(x).exp();
            if num.is_multiple_of(d) {
                k[(row, (num / d) % n)] += weight;
            } else {
                for col in 0..n {
                    k[(row, col)] += weight * dirichlet(n, x - col as f64 / n as f64);
                }
            }
        }
    }
    Ok(k)
}

/// Membership in the sampled regularity cone
/// `{phi >= 0 : phi(y) >= e^{-sigma d(y, y')} phi(y')}` on the uniform grid.
pub fn lipschitz_cone_membership(phi: &[f64], sigma: f64) -> bool {
    let n = phi.len();
    if phi.iter().any(|&v| v < 0.0) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let bound = (-sigma * circle_distance(i as f64 / n as f64, j as f64 / n as f64)).exp()
                * phi[j];
            if phi[i] < bound - 1e-12 * phi[j].abs() {
                return false;
            }
        }
    }
    true
}

/// Certificate data of the transfer-operator spectral gap condition.
#[derive(Debug, Clone)]
pub struct RpfCertificate {
    /// Gap report whose condition is the simplified product `< 1`; the
    /// contraction data (`delta_c_upper`, `eta`) is derived from the sharp
    /// condition whenever that one holds.
    pub gap: GapCertificate,
    /// Cone steepness parameter used by the construction.
    pub sigma: f64,
    /// Phase-slack constant `s0 = rho b / (sigma - rho (sigma + a))`.
    pub s0: f64,
    /// Upper bound on half the comparison image diameter.
    pub delta_p_half: f64,
    /// Sharp condition value `(1 + s0^2) tan(theta + 2 s0) cosh(delta_P / 2)`.
    pub sharp_lhs: f64,
    pub sharp_certified: bool,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Evaluates both the simplified and the sharp spectral-gap conditions for
/// the transfer operator of an expanding linear circle map.
pub fn rpf_certificate(spec: &TransferOperatorSpec) -> Result<RpfCertificate> {
    let rho = spec.rho();
    let dia = spec.diameter();
    let a = spec.weight.lip_re();
    let b = spec.weight.lip_im();
    let theta = spec.weight.osc_im();

    let sigma = 2.0 * a * rho / (1.0 - rho) + 1.0 / (rho * dia);
    let margin = sigma - rho * (sigma + a);
    if margin <= 0.0 {
        return Err(Error::DegenerateContraction(format!(
            "rho (sigma + a) = {} >= sigma = {sigma}",
            rho * (sigma + a)
        )));
    }
    let s0 = rho * b / margin;
    let delta_p_half = ((sigma + rho * (sigma + a)) / margin).ln() + dia * rho * (sigma + a);

    let angle = theta + 2.0 * s0;
    let simplified_lhs =
        angle * (1.0 + rho * (1.0 + rho) / (1.0 - rho) * dia * a).exp() * 4.0 / (1.0 - rho);
    let certified = simplified_lhs < 1.0;

    let sharp_lhs = if angle < std::f64::consts::FRAC_PI_2 {
        (1.0 + s0 * s0) * angle.tan() * delta_p_half.cosh()
    } else {
        f64::INFINITY
    };
    let sharp_certified = sharp_lhs < 1.0;

    let alpha = angle.cos();
    let beta = 1.0 + s0 * s0;
    let gamma = (1.0 + s0 * s0) * angle.sin();
    let notes = format!(
        "sigma = {sigma:.6e}, s0 = {s0:.6e}, delta_P/2 <= {delta_p_half:.6e}; \
         simplified condition value {simplified_lhs:.6e}, sharp condition value {sharp_lhs:.6e}; \
         the regularity cone is inner regular (n0 = 0)"
    );
    let mut gap = certificate_from_constants(alpha, beta, gamma, 2.0 * delta_p_half, 0, notes);
    gap.certified = certified;
    gap.condition_lhs = simplified_lhs;
    gap.condition_rhs = 1.0;
    Ok(RpfCertificate {
        gap,
        sigma,
        s0,
        delta_p_half,
        sharp_lhs,
        sharp_certified,
        alpha,
        beta,
        gamma,
    })
}
