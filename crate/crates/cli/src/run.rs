//! Job dispatch: validates the payload, runs the certificate and the
//! optional eigenvalue oracle, and assembles the report.

use std::time::Instant;

use cone_gauge_core::complex_cone::ComplexCone;
use cone_gauge_core::domination::{certify_dominated, complex_pf_certificate};
use cone_gauge_core::operators::{
    collocation_matrix, discretize_integral, jentzsch_certificate, rpf_certificate,
    top_two_ratio, IntegralOperatorSpec, TransferOperatorSpec, TrigWeight,
};
use cone_gauge_core::real_cone::RealCone;
use cone_gauge_core::Error as CoreError;
use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::job::{complex_matrix, complex_vector, real_matrix, JobPayload, JobSpec};
use crate::report::{CertificateOut, DistanceOut, Report, SpectralOut};

/// Execution failure with the exit code the process should use:
/// 2 for validation problems, 3 for numerical failures.
#[derive(Debug)]
pub struct RunError {
    pub exit_code: i32,
    pub message: String,
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for RunError {}

fn validation<E: std::fmt::Display>(e: E) -> RunError {
    RunError {
        exit_code: 2,
        message: format!("validation error: {e}"),
    }
}

fn from_core(e: CoreError) -> RunError {
    let exit_code = match e {
        CoreError::Domain(_) | CoreError::Precondition(_) => 2,
        _ => 3,
    };
    RunError {
        exit_code,
        message: e.to_string(),
    }
}

fn oracle_report(matrix: &Array2<Complex64>) -> Result<SpectralOut, RunError> {
    let rep = top_two_ratio(matrix, 1e-12).map_err(from_core)?;
    Ok((&rep).into())
}

/// Executes one job and returns the report. Fully deterministic given the
/// job content and seed.
pub fn execute(job: &JobSpec) -> Result<Report, RunError> {
    let start = Instant::now();
    let mut certificate: Option<CertificateOut> = None;
    let mut spectral: Option<SpectralOut> = None;
    let mut distances: Option<Vec<DistanceOut>> = None;

    match &job.payload {
        JobPayload::MatrixPf { matrix } => {
            let a = complex_matrix(matrix).map_err(validation)?;
            let cert = complex_pf_certificate(&a).map_err(from_core)?;
            certificate = Some((&cert).into());
            if job.oracle {
                spectral = Some(oracle_report(&a)?);
            }
        }
        JobPayload::Dominated { matrix, comparison } => {
            let m = complex_matrix(matrix).map_err(validation)?;
            let p = real_matrix(comparison).map_err(validation)?;
            let cert = certify_dominated(&m, &p).map_err(from_core)?;
            certificate = Some((&cert).into());
            if job.oracle {
                spectral = Some(oracle_report(&m)?);
            }
        }
        JobPayload::Jentzsch { h, m, g } => {
            let gm = complex_matrix(g).map_err(validation)?;
            let spec = IntegralOperatorSpec::new(
                Array1::from_vec(h.clone()),
                Array1::from_vec(m.clone()),
                gm,
            )
            .map_err(from_core)?;
            let cert = jentzsch_certificate(&spec).map_err(from_core)?;
            certificate = Some((&cert).into());
            if job.oracle {
                spectral = Some(oracle_report(&discretize_integral(&spec))?);
            }
        }
        JobPayload::Rpf { degree, weight, grid } => {
            let w = TrigWeight {
                c0: weight.c0,
                c1: weight.c1,
                c2: weight.c2,
                d0: weight.d0,
                d1: weight.d1,
                d2: weight.d2,
            };
            let spec = TransferOperatorSpec::new(*degree, w).map_err(from_core)?;
            let cert = rpf_certificate(&spec).map_err(from_core)?;
            certificate = Some((&cert).into());
            if job.oracle {
                let k = collocation_matrix(&spec, *grid).map_err(from_core)?;
                spectral = Some(oracle_report(&k)?);
            }
        }
        JobPayload::Gauge { cone, x, y } => {
            let base = cone_from_spec(cone)?;
            let cc = ComplexCone::new(base);
            let xv = complex_vector(x);
            let yv = complex_vector(y);
            let g = cc.gauge(xv.view(), yv.view()).map_err(from_core)?;
            distances = Some(vec![(&g).into()]);
        }
        JobPayload::Hilbert { cone, x, y } => {
            let base = cone_from_spec(cone)?;
            let xv = Array1::from_vec(x.clone());
            let yv = Array1::from_vec(y.clone());
            let d = base
                .hilbert_metric(xv.view(), yv.view())
                .map_err(from_core)?;
            distances = Some(vec![(&d).into()]);
        }
    }

    // report invariant: a certified operator with an oracle run must show a
    // strict spectral gap
    if let (Some(c), Some(s)) = (&certificate, &spectral) {
        if c.certified && (s.ratio.is_nan() || s.ratio >= 1.0) {
            return Err(RunError {
                exit_code: 3,
                message: format!(
                    "soundness alarm: certified operator with oracle ratio {} >= 1",
                    s.ratio
                ),
            });
        }
    }

    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        job: job.clone(),
        certificate,
        spectral,
        distances,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn cone_from_spec(spec: &crate::job::ConeSpec) -> Result<RealCone, RunError> {
    if spec.dual_generators.iter().any(|r| r.len() != spec.dim) {
        return Err(validation("dual generator length must equal dim"));
    }
    let m = spec.dual_generators.len();
    let dual = Array2::from_shape_fn((m, spec.dim), |(i, j)| spec.dual_generators[i][j]);
    let primal = match &spec.primal_generators {
        None => None,
        Some(rows) => {
            if rows.iter().any(|r| r.len() != spec.dim) {
                return Err(validation("primal generator length must equal dim"));
            }
            Some(Array2::from_shape_fn((rows.len(), spec.dim), |(i, j)| {
                rows[i][j]
            }))
        }
    };
    RealCone::new(dual, primal).map_err(from_core)
}
