use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::domination::{certificate_from_constants, GapCertificate};
use crate::error::{Error, Result};

/// A kernel operator `phi -> h(x) int e^{g(x,y)} phi(y) m(y) dy` sampled on a
/// composite-midpoint grid of `[0, 1]`. The certificate applies to the
/// discretized operator itself, so quadrature accuracy never affects its
/// validity.
#[derive(Debug, Clone)]
pub struct IntegralOperatorSpec {
    nodes: Array1<f64>,
    weights: Array1<f64>,
    h: Array1<f64>,
    m: Array1<f64>,
    g: Array2<Complex64>,
}

impl IntegralOperatorSpec {
    pub fn new(h: Array1<f64>, m: Array1<f64>, g: Array2<Complex64>) -> Result<Self> {
        let n = h.len();
        if n == 0 {
            return Err(Error::Domain("spec needs at least one node".into()));
        }
        if m.len() != n || g.dim() != (n, n) {
            return Err(Error::Domain(format!(
                "shape mismatch: h has {n} nodes, m has {}, g is {:?}",
                m.len(),
                g.dim()
            )));
        }
        let nonpositive = |v: &f64| v.is_nan() || *v <= 0.0;
        if h.iter().any(nonpositive) || m.iter().any(nonpositive) {
            return Err(Error::Domain("h and m samples must be strictly positive".into()));
        }
        let nodes = Array1::from_shape_fn(n, |i| (i as f64 + 0.5) / n as f64);
        let weights = Array1::from_elem(n, 1.0 / n as f64);
        let pairing: f64 = h
            .iter()
            .zip(m.iter())
            .zip(weights.iter())
            .map(|((&a, &b), &w)| a * b * w)
            .sum();
        if pairing.is_nan() || pairing <= 0.0 {
            return Err(Error::Domain("pairing sum of h, m, weights must be positive".into()));
        }
        Ok(IntegralOperatorSpec {
            nodes,
            weights,
            h,
            m,
            g,
        })
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn nodes(&self) -> &Array1<f64> {
        &self.nodes
    }

    pub fn weights(&self) -> &Array1<f64> {
        &self.weights
    }

    /// Oscillation of the sampled imaginary part of the kernel exponent.
    pub fn theta(&self) -> f64 {
        oscillation(self.g.iter().map(|z| z.im))
    }

    /// Oscillation of the sampled real part of the kernel exponent.
    pub fn lambda_osc(&self) -> f64 {
        oscillation(self.g.iter().map(|z| z.re))
    }

    pub fn re_min(&self) -> f64 {
        self.g.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }

    pub fn re_max(&self) -> f64 {
        self.g.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

fn oscillation<I: Iterator<Item = f64>>(values: I) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi >= lo {
        hi - lo
    } else {
        0.0
    }
}

/// Discretized kernel matrix `K_ij = h(x_i) e^{g(x_i, x_j)} m(x_j) w_j`.
pub fn discretize_integral(spec: &IntegralOperatorSpec) -> Array2<Complex64> {
    let n = spec.len();
    Array2::from_shape_fn((n, n), |(i, j)| {
        spec.g[(i, j)].exp() * (spec.h[i] * spec.m[j] * spec.weights[j])
    })
}

/// Rank-one comparison matrix `P_ij = h(x_i) m(x_j) w_j` of the same spec.
pub fn comparison_matrix(spec: &IntegralOperatorSpec) -> Array2<f64> {
    let n = spec.len();
    Array2::from_shape_fn((n, n), |(i, j)| spec.h[i] * spec.m[j] * spec.weights[j])
}

/// Complex Jentzsch certificate: a spectral gap holds when
/// `theta < pi/4` and `tan(theta) < exp(-2 Lambda)` for the sampled
/// oscillations `theta` of the imaginary and `Lambda` of the real part.
pub fn jentzsch_certificate(spec: &IntegralOperatorSpec) -> Result<GapCertificate> {
    let theta = spec.theta();
    let lambda = spec.lambda_osc();
    let rhs = (-2.0 * lambda).exp();
    let lhs = if theta < std::f64::consts::FRAC_PI_2 {
        theta.tan()
    } else {
        f64::INFINITY
    };
    let certified = theta < std::f64::consts::FRAC_PI_4 && lhs < rhs;

    // Domination constants of the comparison against P phi = h * int phi m:
    // the kernel ratio e^{g} has pairwise products with real part at least
    // alpha and imaginary part at most gamma.
    let alpha = (2.0 * spec.re_min()).exp() * theta.cos();
    let beta = (2.0 * spec.re_max()).exp();
    let gamma = (2.0 * spec.re_max()).exp() * theta.sin();
    let notes = format!(
        "oscillations theta = {theta:.6e}, Lambda = {lambda:.6e}; \
         domination constants alpha = {alpha:.6e}, beta = {beta:.6e}, gamma = {gamma:.6e} \
         against the rank-one comparison (delta_P = 0)"
    );
    let mut cert = certificate_from_constants(alpha, beta, gamma, 0.0, 1, notes);
    cert.certified = certified;
    cert.condition_lhs = lhs;
    cert.condition_rhs = rhs;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::top_two_ratio;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn uniform_spec(n: usize, g: Array2<Complex64>) -> IntegralOperatorSpec {
        IntegralOperatorSpec::new(
            Array1::from_elem(n, 1.0),
            Array1::from_elem(n, 1.0),
            g,
        )
        .unwrap()
    }

    #[test]
    fn zero_weight_is_rank_one_and_certified() {
        let n = 16;
        let spec = uniform_spec(n, Array2::from_elem((n, n), cx(0.0, 0.0)));
        let cert = jentzsch_certificate(&spec).unwrap();
        assert!(cert.certified);
        assert_eq!(cert.condition_lhs, 0.0);
        let k = discretize_integral(&spec);
        let rep = top_two_ratio(&k, 1e-12).unwrap();
        assert!(rep.ratio < 1e-10, "rank-one kernel should have ratio 0");
        assert!((rep.lambda1.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn constant_complex_shift_certified() {
        let n = 8;
        let spec = uniform_spec(n, Array2::from_elem((n, n), cx(0.3, 0.7)));
        let cert = jentzsch_certificate(&spec).unwrap();
        // oscillations vanish for constant g
        assert_eq!(cert.condition_lhs, 0.0);
        assert!(cert.certified);
    }

    #[test]
    fn analytic_weight_example() {
        // g(x, y) = 0.1 cos(2 pi x) + 0.05 i sin(2 pi y)
        let n = 64;
        let nodes: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let g = Array2::from_shape_fn((n, n), |(i, j)| {
            cx(
                0.1 * (2.0 * std::f64::consts::PI * nodes[i]).cos(),
                0.05 * (2.0 * std::f64::consts::PI * nodes[j]).sin(),
            )
        });
        let spec = uniform_spec(n, g);
        let theta = spec.theta();
        let lam = spec.lambda_osc();
        assert!((theta - 0.1).abs() < 1e-3);
        assert!((lam - 0.2).abs() < 1e-3);
        let cert = jentzsch_certificate(&spec).unwrap();
        assert!(cert.certified);
        assert!(cert.condition_lhs < cert.condition_rhs);
        // oracle: the discretized operator indeed has a gap
        let k = discretize_integral(&spec);
        let rep = top_two_ratio(&k, 1e-11).unwrap();
        assert!(rep.ratio < 1.0 - 1e-6, "ratio = {}", rep.ratio);
    }

    #[test]
    fn two_node_matrix_by_hand() {
        let g = Array2::from_shape_fn((2, 2), |(i, j)| cx(0.1 * i as f64, 0.2 * j as f64));
        let h = Array1::from_vec(vec![1.0, 2.0]);
        let m = Array1::from_vec(vec![3.0, 1.0]);
        let spec = IntegralOperatorSpec::new(h, m, g.clone()).unwrap();
        let k = discretize_integral(&spec);
        // w_j = 1/2
        for i in 0..2 {
            for j in 0..2 {
                let expect = g[(i, j)].exp()
                    * (spec.h[i] * spec.m[j] * 0.5);
                assert!((k[(i, j)] - expect).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        let g = Array2::from_elem((2, 2), cx(0.0, 0.0));
        assert!(IntegralOperatorSpec::new(
            Array1::from_vec(vec![1.0, -1.0]),
            Array1::from_vec(vec![1.0, 1.0]),
            g.clone()
        )
        .is_err());
        assert!(IntegralOperatorSpec::new(
            Array1::from_vec(vec![1.0, 1.0]),
            Array1::from_vec(vec![1.0]),
            g
        )
        .is_err());
    }
}
