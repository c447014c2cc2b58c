//! Job-file schema: JSON-compatible text, complex scalars as `[re, im]`
//! pairs, matrices as row-major nested arrays, infinities as the string
//! `"inf"`.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex scalar on the wire: `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cpx(pub f64, pub f64);

impl From<Cpx> for Complex64 {
    fn from(c: Cpx) -> Self {
        Complex64::new(c.0, c.1)
    }
}

impl From<Complex64> for Cpx {
    fn from(z: Complex64) -> Self {
        Cpx(z.re, z.im)
    }
}

/// Nonnegative extended real on the wire: a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtReal(pub f64);

impl Serialize for ExtReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str("inf")
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtReal(v)),
            Raw::Str(s) if s == "inf" => Ok(ExtReal(f64::INFINITY)),
            Raw::Str(s) => Err(D::Error::custom(format!(
                "expected a number or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// Cone description: dual generators as rows, optional primal generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeSpec {
    pub dim: usize,
    pub dual_generators: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primal_generators: Option<Vec<Vec<f64>>>,
}

/// Transfer-operator weight coefficients:
/// `c0 + c1 cos + c2 sin + i (d0 + d1 cos + d2 sin)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WeightSpec {
    #[serde(default)]
    pub c0: f64,
    #[serde(default)]
    pub c1: f64,
    #[serde(default)]
    pub c2: f64,
    #[serde(default)]
    pub d0: f64,
    #[serde(default)]
    pub d1: f64,
    #[serde(default)]
    pub d2: f64,
}

/// Kind-specific payload.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum JobPayload {
    MatrixPf {
        matrix: Vec<Vec<Cpx>>,
    },
    Dominated {
        matrix: Vec<Vec<Cpx>>,
        comparison: Vec<Vec<f64>>,
    },
    Jentzsch {
        h: Vec<f64>,
        m: Vec<f64>,
        g: Vec<Vec<Cpx>>,
    },
    Rpf {
        degree: usize,
        weight: WeightSpec,
        #[serde(default = "default_grid")]
        grid: usize,
    },
    Gauge {
        cone: ConeSpec,
        x: Vec<Cpx>,
        y: Vec<Cpx>,
    },
    Hilbert {
        cone: ConeSpec,
        x: Vec<f64>,
        y: Vec<f64>,
    },
}

fn default_grid() -> usize {
    64
}

/// One executable job: kind-specific payload, oracle flag, sampling seed.
/// The seed fully determines any sampling a job performs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobSpec {
    #[serde(flatten)]
    pub payload: JobPayload,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default)]
    pub seed: u64,
}

pub fn complex_matrix(rows: &[Vec<Cpx>]) -> Result<Array2<Complex64>, String> {
    let n = rows.len();
    if n == 0 {
        return Err("matrix must be nonempty".into());
    }
    let m = rows[0].len();
    if rows.iter().any(|r| r.len() != m) {
        return Err("matrix rows must have equal length".into());
    }
    Ok(Array2::from_shape_fn((n, m), |(i, j)| rows[i][j].into()))
}

pub fn real_matrix(rows: &[Vec<f64>]) -> Result<Array2<f64>, String> {
    let n = rows.len();
    if n == 0 {
        return Err("matrix must be nonempty".into());
    }
    let m = rows[0].len();
    if rows.iter().any(|r| r.len() != m) {
        return Err("matrix rows must have equal length".into());
    }
    Ok(Array2::from_shape_fn((n, m), |(i, j)| rows[i][j]))
}

pub fn complex_vector(vals: &[Cpx]) -> Array1<Complex64> {
    Array1::from_iter(vals.iter().map(|&c| c.into()))
}
