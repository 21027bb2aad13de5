//! Documents, reports and the request dispatcher shared by the command line
//! and the HTTP service. Both print the same canonical JSON.

mod api;
mod corpus;
mod document;
mod render;

use std::hash::{DefaultHasher, Hash, Hasher};

use serde::Serialize;

use crate::error::Error;
use crate::invariants::{complex_invariants, ComplexInvariants};
use crate::lattice::ValidationReport;
use crate::regularity::{check_regularity, convexify_star_moves, maximal_convex_refinement, Refinement, Regularity, StarMoveTrace};
use crate::restrictions::{check_all, RestrictionReport};
use crate::topology::{analyze, TopologyReport};

pub use api::{handle, Response};
pub use corpus::{example, examples, ids as example_ids, CorpusEntry};
pub use document::{PatchworkDocument, SCHEMA};
pub use render::{complex_view, obj, svg, ComplexView, ObjSidecar, PieceView};

/// A structured error: `{code, message, pointer}`, plus a reproducer id for
/// internal anomalies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: String,
    pub message: String,
    pub pointer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<String>,
}

impl ApiError {
    pub fn bad_request(code: &str, message: impl Into<String>, pointer: Option<String>) -> Self {
        ApiError { status: 400, code: code.into(), message: message.into(), pointer, reproducer: None }
    }

    pub fn anomaly(message: impl Into<String>, reproducer: String) -> Self {
        ApiError { status: 500, code: "anomaly".into(), message: message.into(), pointer: None, reproducer: Some(reproducer) }
    }

    /// Sets the pointer unless one is already known.
    pub fn at(mut self, pointer: &str) -> Self {
        if self.pointer.is_none() && self.status == 400 {
            self.pointer = Some(pointer.into());
        }
        self
    }

    pub fn is_anomaly(&self) -> bool {
        self.status >= 500
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::InvalidArgument(_) | Error::Json(_) => ApiError::bad_request("invalid_argument", message, None),
            Error::InvalidSubdivision(_) => ApiError::bad_request("invalid_subdivision", message, Some("/cells".into())),
            Error::CapExceeded { .. } => ApiError::bad_request("cap_exceeded", message, None),
            Error::Anomaly(_) => ApiError::anomaly(message, String::new()),
            Error::Io(_) => ApiError { status: 500, code: "io".into(), message, pointer: None, reproducer: None },
        }
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code, self.message)?;
        if let Some(p) = &self.pointer {
            write!(f, " (at {p})")?;
        }
        Ok(())
    }
}

impl std::error::Error for ApiError {}

/// Stable id of a document, for reproducer artifacts.
pub fn reproducer_id(doc: &PatchworkDocument) -> String {
    let mut h = DefaultHasher::new();
    doc.to_json().hash(&mut h);
    format!("{:016x}", h.finish())
}

/// Canonical JSON text: sorted keys, two-space indentation, and short
/// arrays without objects kept on one line.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    let mut s = String::new();
    write_value(&v, 0, &mut s);
    s.push('\n');
    s
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Array(items) => {
            let flat = serde_json::to_string(v).expect("json");
            if flat.len() <= 80 && !flat.contains('{') {
                out.push_str(&flat.replace(',', ", "));
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("json"));
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("json")),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub topology: TopologyReport,
    pub restrictions: RestrictionReport,
}

impl Analysis {
    /// A topology consistency check or a restriction failed.
    pub fn is_anomalous(&self) -> bool {
        !self.topology.anomalies.is_empty() || self.restrictions.critical
    }

    pub fn anomaly_summary(&self) -> String {
        let mut parts: Vec<String> = self.topology.anomalies.clone();
        parts.extend(self.restrictions.failures().map(|e| format!("{} failed: {}", e.name, e.detail)));
        parts.join("; ")
    }
}

pub fn analyze_document(doc: &PatchworkDocument) -> Result<Analysis, ApiError> {
    let (_, p) = doc.complex()?;
    let topology = analyze(&p)?;
    let restrictions = check_all(&topology)?;
    Ok(Analysis { topology, restrictions })
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildOutput {
    pub complex: ComplexView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obj: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sidecar: Option<ObjSidecar>,
}

pub fn build_document(doc: &PatchworkDocument) -> Result<BuildOutput, ApiError> {
    let (_, p) = doc.complex()?;
    let (obj, sidecar) = obj(&p).unzip();
    Ok(BuildOutput { complex: complex_view(&p), svg: svg(&p), obj, sidecar })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularityOp {
    Check,
    Convexify,
    Refine,
}

impl std::str::FromStr for RegularityOp {
    type Err = ApiError;

    fn from_str(s: &str) -> Result<Self, ApiError> {
        match s {
            "check" => Ok(RegularityOp::Check),
            "convexify" => Ok(RegularityOp::Convexify),
            "refine" => Ok(RegularityOp::Refine),
            _ => Err(ApiError::bad_request("unknown_operation", format!("unknown regularity operation {s:?}"), None)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum RegularityOutput {
    Check(Regularity),
    Convexify(StarMoveTrace),
    Refine(Refinement),
}

pub fn regularity_document(doc: &PatchworkDocument, op: RegularityOp) -> Result<RegularityOutput, ApiError> {
    Ok(match op {
        RegularityOp::Check => RegularityOutput::Check(check_regularity(&doc.subdivision()?)?),
        RegularityOp::Convexify => RegularityOutput::Convexify(convexify_star_moves(&doc.triangulation()?)?),
        RegularityOp::Refine => RegularityOutput::Refine(maximal_convex_refinement(&doc.subdivision()?)),
    })
}

pub fn validate_document(doc: &PatchworkDocument) -> Result<ValidationReport, ApiError> {
    doc.validate()
}

pub fn invariants(n: u32, d: u32) -> Result<std::sync::Arc<ComplexInvariants>, ApiError> {
    complex_invariants(n, d).map_err(ApiError::from)
}
