//! JSON problem files.
//!
//! ```json
//! {"vertices": 2, "arrows": [[1,2],[1,2],[1,2]], "d": [2,3], "theta": "canonical"}
//! ```
//!
//! Vertices are 1-based. `theta` is either an explicit integer vector or the
//! token `"canonical"`.

use std::path::Path;

use serde::Deserialize;

use qt_core::{canonical_stability, DimensionVector, Quiver, StabilityParameter};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
    d: Vec<u32>,
    theta: RawTheta,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawTheta {
    Explicit(Vec<i64>),
    Token(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub quiver: Quiver,
    pub d: DimensionVector,
    pub theta: StabilityParameter,
    /// Whether `theta` came from the `"canonical"` token.
    pub canonical: bool,
}

pub fn parse_problem(path: &Path) -> Result<ProblemSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_problem_str(&text)
}

pub fn parse_problem_str(text: &str) -> Result<ProblemSpec, CliError> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))?;
    if raw.vertices == 0 {
        return Err(CliError::Schema("\"vertices\" must be positive".into()));
    }
    for (index, &[s, t]) in raw.arrows.iter().enumerate() {
        for vertex in [s, t] {
            if vertex == 0 || vertex > raw.vertices {
                return Err(CliError::VertexOutOfRange {
                    arrow: index,
                    vertex,
                    vertices: raw.vertices,
                });
            }
        }
    }
    let arrows: Vec<(usize, usize)> = raw.arrows.iter().map(|&[s, t]| (s, t)).collect();
    let quiver = Quiver::new(raw.vertices, &arrows)?;
    if raw.d.len() != raw.vertices {
        return Err(CliError::LengthMismatch {
            field: "d",
            expected: raw.vertices,
            found: raw.d.len(),
        });
    }
    let d = DimensionVector::new(raw.d);
    if d.is_zero() {
        return Err(CliError::Schema("\"d\" must be nonzero".into()));
    }
    let (theta, canonical) = match raw.theta {
        RawTheta::Token(token) if token == "canonical" => (canonical_stability(&quiver, &d)?, true),
        RawTheta::Token(token) => return Err(CliError::UnknownThetaToken(token)),
        RawTheta::Explicit(entries) => {
            if entries.len() != raw.vertices {
                return Err(CliError::LengthMismatch {
                    field: "theta",
                    expected: raw.vertices,
                    found: entries.len(),
                });
            }
            (StabilityParameter::new(entries), false)
        }
    };
    let value = theta.apply(&d);
    if value != 0 {
        return Err(CliError::NotOrthogonal {
            theta: theta.to_string(),
            d: d.to_string(),
            value,
        });
    }
    Ok(ProblemSpec {
        quiver,
        d,
        theta,
        canonical,
    })
}
