use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITER: usize = 10_000;

/// A linear action on complex coordinate vectors together with its adjoint.
pub trait LinearOp {
    fn dim(&self) -> usize;
    fn apply(&self, v: &Array1<Complex64>) -> Array1<Complex64>;
    fn apply_adjoint(&self, v: &Array1<Complex64>) -> Array1<Complex64>;
}

impl LinearOp for Array2<Complex64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, v: &Array1<Complex64>) -> Array1<Complex64> {
        self.dot(v)
    }

    fn apply_adjoint(&self, v: &Array1<Complex64>) -> Array1<Complex64> {
        self.t().map(|z| z.conj()).dot(v)
    }
}

/// Dominant eigenvalue, right eigenvector, and left functional of a
/// cone-preserving action, from the normalized fixed-functional iteration.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub lambda1: Complex64,
    /// Unit-norm right eigenvector.
    pub h: Array1<Complex64>,
    /// Left functional normalized so that `<cstar, h> = 1`.
    pub cstar: Array1<Complex64>,
    pub iterations: usize,
    /// `||T h - lambda1 h||`.
    pub residual: f64,
    /// Successive `||e_{n+1} - e_n||` values of the iteration.
    pub residual_history: Vec<f64>,
    /// Fitted geometric decay rate of the residuals, absent when the
    /// iteration converged before a fit was meaningful.
    pub decay_fit: Option<f64>,
}

/// Least-squares geometric rate of a residual sequence over its decay
/// window (the entries above the numerical floor).
pub fn geometric_decay_fit(history: &[f64]) -> Option<f64> {
    let r0 = *history.first()?;
    let usable: Vec<f64> = history
        .iter()
        .skip(1)
        .take_while(|&&r| r > 1e-13 * r0.max(1.0))
        .cloned()
        .collect();
    if usable.len() < 3 {
        return None;
    }
    let n = usable.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (i, &r) in usable.iter().enumerate() {
        let x = i as f64;
        let y = r.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Some(slope.exp())
}

/// Top-two spectral data: the eigen pair plus the deflated second-modulus
/// estimate and the observed ratio.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub lambda1: Complex64,
    pub h: Array1<Complex64>,
    pub cstar: Array1<Complex64>,
    pub lambda2_abs: f64,
    /// `lambda2_abs / |lambda1|`.
    pub ratio: f64,
    pub iterations: usize,
    pub residual: f64,
    pub residual_history: Vec<f64>,
}

fn norm(v: &Array1<Complex64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(a: &Array1<Complex64>, b: &Array1<Complex64>) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Mean functional `<m, u>` with `m = (1, ..., 1)/n`; any strictly positive
/// functional works for these cones and a fixed one keeps runs deterministic.
fn mean(v: &Array1<Complex64>) -> Complex64 {
    v.sum() / v.len() as f64
}

fn power_direction<F>(
    apply: F,
    dim: usize,
    start: Option<&Array1<Complex64>>,
    tol: f64,
) -> Result<(Complex64, Array1<Complex64>, usize, Vec<f64>)>
where
    F: Fn(&Array1<Complex64>) -> Array1<Complex64>,
{
    let mut e = match start {
        Some(v) => {
            let n = norm(v);
            if n == 0.0 {
                return Err(Error::Domain("start vector must be nonzero".into()));
            }
            v.map(|z| z / n)
        }
        None => Array1::from_elem(dim, Complex64::new(1.0 / (dim as f64).sqrt(), 0.0)),
    };
    let mut history = Vec::new();
    for it in 1..=MAX_ITER {
        let me = mean(&e);
        if me.norm() < 1e-14 {
            return Err(Error::FunctionalDegeneracy(format!(
                "fixed functional vanished on the iterate at step {it}"
            )));
        }
        let v = apply(&e);
        let mv = mean(&v);
        if mv.norm() == 0.0 && norm(&v) < 1e-280 {
            // the action annihilated the iterate; treat as converged to zero
            return Ok((Complex64::new(0.0, 0.0), e, it, history));
        }
        let lambda = mv / me;
        if lambda.norm() < 1e-280 {
            return Err(Error::FunctionalDegeneracy(
                "eigenvalue estimate collapsed to zero".into(),
            ));
        }
        let mut next = v.map(|z| z / lambda);
        let n = norm(&next);
        if n == 0.0 {
            return Err(Error::FunctionalDegeneracy("iterate collapsed to zero".into()));
        }
        next.mapv_inplace(|z| z / n);
        let res = norm(&(&next - &e));
        history.push(res);
        e = next;
        if res < tol {
            return Ok((lambda, e, it, history));
        }
    }
    let trailing = history[history.len().saturating_sub(5)..].to_vec();
    Err(Error::NoConvergence {
        iterations: MAX_ITER,
        trailing,
    })
}

/// Constructive eigen-triple iteration `e_{n+1} = T e_n / (lambda_n ||...||)`
/// with `lambda_n = <m, T e_n> / <m, e_n>` for the fixed mean functional;
/// the left functional comes from the same iteration on the adjoint.
///
/// The caller guarantees that the action preserves a cone containing the
/// start vector; violations surface as non-convergence.
pub fn power_eigentriple<T: LinearOp + ?Sized>(
    op: &T,
    start: Option<&Array1<Complex64>>,
    tol: f64,
) -> Result<EigenPair> {
    let dim = op.dim();
    if dim == 0 {
        return Err(Error::Domain("operator dimension must be positive".into()));
    }
    let (lambda1, h, iters_r, history) =
        power_direction(|v| op.apply(v), dim, start, tol)?;
    let (_, c, iters_l, _) = power_direction(|v| op.apply_adjoint(v), dim, None, tol)?;
    let s = inner(&c, &h);
    if s.norm() < 1e-14 {
        return Err(Error::FunctionalDegeneracy(
            "left and right eigenvectors are numerically orthogonal".into(),
        ));
    }
    let cstar = c.map(|z| z / s.conj());
    let residual = norm(&(&op.apply(&h) - &h.map(|z| z * lambda1)));
    let decay_fit = geometric_decay_fit(&history);
    Ok(EigenPair {
        lambda1,
        h,
        cstar,
        iterations: iters_r + iters_l,
        residual,
        residual_history: history,
        decay_fit,
    })
}

/// Estimates `|lambda_2|` by block power iteration on the deflated action
/// `u -> T(u - h <cstar, u>)`, and reports the top-two ratio.
///
/// A two-column block keeps the estimate convergent when the second modulus
/// is attained by a conjugate pair; every iterate is re-projected against
/// the dominant eigenspace so deflation leakage cannot regrow.
pub fn top_two_ratio<T: LinearOp + ?Sized>(op: &T, tol: f64) -> Result<SpectralReport> {
    let pair = power_eigentriple(op, None, tol)?;
    let dim = op.dim();
    let lam1_abs = pair.lambda1.norm();
    if lam1_abs == 0.0 {
        return Err(Error::FunctionalDegeneracy(
            "dominant eigenvalue is zero; the ratio is undefined".into(),
        ));
    }

    let lambda2_abs = if dim == 1 {
        0.0
    } else {
        deflated_top_modulus(op, &pair, tol)?
    };

    Ok(SpectralReport {
        ratio: lambda2_abs / lam1_abs,
        lambda1: pair.lambda1,
        h: pair.h,
        cstar: pair.cstar,
        lambda2_abs,
        iterations: pair.iterations,
        residual: pair.residual,
        residual_history: pair.residual_history,
    })
}

fn deflate(v: &Array1<Complex64>, pair: &EigenPair) -> Array1<Complex64> {
    let coeff = inner(&pair.cstar, v);
    v - &pair.h.map(|z| z * coeff)
}

fn deflated_top_modulus<T: LinearOp + ?Sized>(
    op: &T,
    pair: &EigenPair,
    tol: f64,
) -> Result<f64> {
    let dim = op.dim();
    let lam1_abs = pair.lambda1.norm();
    let floor = 1e-13 * lam1_abs;
    let block = 2.min(dim - 1);

    // deterministic start block, deflated and orthonormalized
    let mut q: Vec<Array1<Complex64>> = (0..block)
        .map(|j| {
            let mut v = Array1::from_elem(dim, Complex64::new(0.0, 0.0));
            v[j % dim] = Complex64::new(1.0, 0.0);
            if dim > 2 {
                v[(j + 2) % dim] = Complex64::new(0.5, 0.25);
            }
            deflate(&v, pair)
        })
        .collect();
    orthonormalize(&mut q);
    if q.is_empty() {
        return Ok(0.0);
    }

    let mut estimate = f64::INFINITY;
    let mut stable = 0usize;
    // Trailing window for near-tied subdominant clusters, where the block
    // estimate oscillates inside the cluster without ever settling.
    const WINDOW: usize = 400;
    let mut window: std::collections::VecDeque<f64> = std::collections::VecDeque::new();
    for it in 1..=MAX_ITER {
        let mut pairs: Vec<(Array1<Complex64>, Array1<Complex64>)> = q
            .iter()
            .map(|col| (col.clone(), deflate(&op.apply(col), pair)))
            .collect();
        // A unit column squashed to the operator's roundoff floor has fallen
        // off the live spectrum (rank collapse or an exhausted nilpotent
        // chain); renormalizing it would only amplify noise, so it leaves
        // the block. If every column dies, what is left of the spectrum is
        // below resolution.
        let death = 1e-12 * lam1_abs;
        let dead_max = pairs
            .iter()
            .map(|(_, z)| norm(z))
            .filter(|&n| n <= death)
            .fold(0.0, f64::max);
        pairs.retain(|(_, z)| norm(z) > death);
        if pairs.is_empty() {
            return Ok(dead_max);
        }
        // projected block B = Q^H Z, eigenvalues in closed form
        let new_est = match pairs.as_slice() {
            [(q0, z0)] => inner(q0, z0).norm(),
            [(q0, z0), (q1, z1), ..] => {
                let b00 = inner(q0, z0);
                let b01 = inner(q0, z1);
                let b10 = inner(q1, z0);
                let b11 = inner(q1, z1);
                let tr = b00 + b11;
                let det = b00 * b11 - b01 * b10;
                let disc = (tr * tr / 4.0 - det).sqrt();
                (tr / 2.0 + disc).norm().max((tr / 2.0 - disc).norm())
            }
            [] => unreachable!(),
        };
        let mut next: Vec<Array1<Complex64>> = pairs.into_iter().map(|(_, z)| z).collect();
        orthonormalize(&mut next);
        if next.is_empty() || new_est <= floor {
            return Ok(new_est.max(0.0));
        }
        q = next;
        let drift = (new_est - estimate).abs();
        // The estimate wobbles at an absolute level set by the deflation
        // residual of the left functional, so the drift criterion carries an
        // absolute floor proportional to |lambda1|; wobble above the floor is
        // resolved by the trailing-window acceptance below.
        if drift <= (tol.max(1e-13) * new_est).max(100.0 * tol.max(1e-13) * lam1_abs) {
            stable += 1;
            if stable >= 3 {
                return Ok(new_est);
            }
        } else {
            stable = 0;
        }
        estimate = new_est;
        if it > 600 {
            window.push_back(new_est);
            if window.len() > WINDOW {
                window.pop_front();
            }
            if window.len() == WINDOW {
                let wmax = window.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let wmin = window.iter().cloned().fold(f64::INFINITY, f64::min);
                if wmax - wmin <= 1e-2 * wmax {
                    // bounded oscillation inside a cluster of nearly equal
                    // moduli; the midpoint resolves it to cluster width
                    return Ok((wmax + wmin) / 2.0);
                }
            }
        }
        if it == MAX_ITER {
            return Err(Error::NoConvergence {
                iterations: MAX_ITER,
                trailing: vec![drift],
            });
        }
    }
    unreachable!()
}

fn orthonormalize(cols: &mut Vec<Array1<Complex64>>) {
    let mut kept: Vec<Array1<Complex64>> = Vec::with_capacity(cols.len());
    for col in cols.drain(..) {
        let mut v = col;
        for u in &kept {
            let c = inner(u, &v);
            v = &v - &u.map(|z| z * c);
        }
        let n = norm(&v);
        if n > 1e-250 {
            v.mapv_inplace(|z| z / n);
            kept.push(v);
        }
    }
    *cols = kept;
}
