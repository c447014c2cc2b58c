//! Machine-readable reports: the job echo, the certificate, the spectral
//! oracle output, and any distances, in a stable field order.

use cone_gauge_core::complex_cone::GaugeResult;
use cone_gauge_core::domination::GapCertificate;
use cone_gauge_core::operators::{RpfCertificate, SpectralReport};
use cone_gauge_core::real_cone::HilbertDistance;
use serde::{Deserialize, Serialize};

use crate::job::{Cpx, ExtReal, JobSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateOut {
    pub certified: bool,
    pub condition_lhs: ExtReal,
    pub condition_rhs: ExtReal,
    pub delta_p: ExtReal,
    pub delta_c_upper: ExtReal,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    pub n0: usize,
    pub notes: String,
    /// Transfer-operator certificates also carry the sharp condition data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sharp: Option<SharpOut>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SharpOut {
    pub sharp_lhs: ExtReal,
    pub sharp_certified: bool,
    pub sigma: f64,
    pub s0: f64,
    pub delta_p_half: f64,
}

impl From<&GapCertificate> for CertificateOut {
    fn from(c: &GapCertificate) -> Self {
        CertificateOut {
            certified: c.certified,
            condition_lhs: ExtReal(c.condition_lhs),
            condition_rhs: ExtReal(c.condition_rhs),
            delta_p: ExtReal(c.delta_p),
            delta_c_upper: ExtReal(c.delta_c_upper),
            eta: c.eta,
            n0: c.n0,
            notes: c.notes.clone(),
            sharp: None,
        }
    }
}

impl From<&RpfCertificate> for CertificateOut {
    fn from(c: &RpfCertificate) -> Self {
        let mut out: CertificateOut = (&c.gap).into();
        out.sharp = Some(SharpOut {
            sharp_lhs: ExtReal(c.sharp_lhs),
            sharp_certified: c.sharp_certified,
            sigma: c.sigma,
            s0: c.s0,
            delta_p_half: c.delta_p_half,
        });
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralOut {
    pub lambda1: Cpx,
    pub lambda2_abs: f64,
    pub ratio: f64,
    pub iterations: usize,
    pub residual: f64,
}

impl From<&SpectralReport> for SpectralOut {
    fn from(r: &SpectralReport) -> Self {
        SpectralOut {
            lambda1: r.lambda1.into(),
            lambda2_abs: r.lambda2_abs,
            ratio: r.ratio,
            iterations: r.iterations,
            residual: r.residual,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ExtReal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<ExtReal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<ExtReal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExtReal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_xy: Option<ExtReal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_yx: Option<ExtReal>,
}

impl From<&GaugeResult> for DistanceOut {
    fn from(g: &GaugeResult) -> Self {
        DistanceOut {
            value: None,
            lower: Some(ExtReal(g.bracket.lower)),
            upper: Some(ExtReal(g.bracket.upper)),
            exact: g.exact.map(ExtReal),
            beta_xy: None,
            beta_yx: None,
        }
    }
}

impl From<&HilbertDistance> for DistanceOut {
    fn from(d: &HilbertDistance) -> Self {
        DistanceOut {
            value: Some(ExtReal(d.value)),
            lower: None,
            upper: None,
            exact: None,
            beta_xy: Some(ExtReal(d.beta_xy)),
            beta_yx: Some(ExtReal(d.beta_yx)),
        }
    }
}

/// The full machine-readable report. Round-trips losslessly through the
/// JSON file format; timing is the only field excluded from determinism.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub job: JobSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<DistanceOut>>,
    pub timing_ms: f64,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}
