//! Run configuration: one JSON document per run.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use qudit_extremal::models::Spin;
use qudit_extremal::{bec_hamiltonian, qubit_hamiltonian, BecParams, HermitianMatrix, PurityConstants};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Qubit { h0: f64, h1: f64, h2: f64, h3: f64 },
    Bec {
        a: f64,
        b: f64,
        c: f64,
        #[serde(default = "default_spin")]
        j: f64,
    },
    /// Path to a JSON file holding the matrix rows.
    MatrixFile(PathBuf),
    /// Rows of `[re, im]` entries.
    Matrix(Vec<Vec<[f64; 2]>>),
}

fn default_spin() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    /// One of `a`, `b`, `c` (BEC), `h0`..`h3` (qubit), `c2`, `c3`, ...
    pub variable: String,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub constants: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    /// `F(h, delta)` in closed form.
    #[default]
    F,
    /// `F_sigma_x` on the upper qubit extremal with `h_1 = 1/sqrt 2`.
    SigmaX,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Surface {
    #[serde(default)]
    pub kind: SurfaceKind,
    pub h_min: f64,
    pub h_max: f64,
    pub h_points: usize,
    pub delta_min: f64,
    pub delta_max: f64,
    pub delta_points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: Option<Model>,
    /// `c_2 .. c_d`; omitted means pure states.
    #[serde(default)]
    pub constants: Option<Vec<f64>>,
    /// Several constant sets swept together; overrides `constants`.
    #[serde(default)]
    pub series: Option<Vec<Series>>,
    #[serde(default)]
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub surface: Option<Surface>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub starts: Option<usize>,
    /// Newton iterations per start.
    #[serde(default)]
    pub max_iterations: Option<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

impl RunConfig {
    /// Reads a config from a path, or from stdin when the path is `-`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = if path == Path::new("-") {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))?
        };
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn model(&self) -> Result<&Model, CliError> {
        self.model.as_ref().ok_or_else(|| CliError::Input("config has no model".into()))
    }

    pub fn hamiltonian(&self) -> Result<HermitianMatrix, CliError> {
        self.model()?.hamiltonian()
    }

    /// Named constant sets; a single unnamed set becomes series `main`.
    pub fn series_list(&self, dim: usize) -> Vec<Series> {
        if let Some(series) = &self.series {
            return series.clone();
        }
        vec![Series {
            name: "main".into(),
            constants: self
                .constants
                .clone()
                .unwrap_or_else(|| PurityConstants::pure(dim).values().to_vec()),
        }]
    }
}

impl Model {
    pub fn hamiltonian(&self) -> Result<HermitianMatrix, CliError> {
        match self {
            Model::Qubit { h0, h1, h2, h3 } => {
                check_finite(&[*h0, *h1, *h2, *h3])?;
                Ok(qubit_hamiltonian(*h0, *h1, *h2, *h3))
            }
            Model::Bec { a, b, c, j } => {
                check_finite(&[*a, *b, *c])?;
                let spin = Spin::new(*j).map_err(CliError::from_core)?;
                Ok(bec_hamiltonian(&BecParams::with_spin(*a, *b, *c, spin)))
            }
            Model::MatrixFile(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))?;
                let rows: Vec<Vec<[f64; 2]>> =
                    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("matrix file: {e}")))?;
                parse_matrix(&rows)
            }
            Model::Matrix(rows) => parse_matrix(rows),
        }
    }

    /// The same model with one parameter replaced; `None` when the name does
    /// not belong to this model.
    pub fn with_parameter(&self, name: &str, value: f64) -> Option<Model> {
        let mut m = self.clone();
        match &mut m {
            Model::Qubit { h0, h1, h2, h3 } => match name {
                "h0" => *h0 = value,
                "h1" => *h1 = value,
                "h2" => *h2 = value,
                "h3" => *h3 = value,
                _ => return None,
            },
            Model::Bec { a, b, c, .. } => match name {
                "a" => *a = value,
                "b" => *b = value,
                "c" => *c = value,
                _ => return None,
            },
            _ => return None,
        }
        Some(m)
    }
}

fn check_finite(values: &[f64]) -> Result<(), CliError> {
    if values.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(CliError::Input("model parameters must be finite".into()))
    }
}

fn parse_matrix(rows: &[Vec<[f64; 2]>]) -> Result<HermitianMatrix, CliError> {
    let rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
        .collect();
    HermitianMatrix::from_rows(&rows).map_err(CliError::from_core)
}

/// Grid `start, start + step, ..` up to `stop` inclusive (to 1e-9 of a step).
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 {
        return Err(CliError::Input("sweep needs finite bounds and step > 0".into()));
    }
    if stop < start {
        return Err(CliError::Input("sweep range is empty (stop < start)".into()));
    }
    let intervals = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=intervals)
        .map(|i| {
            let x = start + step * i as f64;
            if (x - stop).abs() <= 1e-9 * step {
                stop
            } else {
                x
            }
        })
        .collect())
}
