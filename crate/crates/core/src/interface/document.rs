//! The `patchwork/v1` document: a triangulation (or subdivision) of a lattice
//! polytope with a sign at every vertex.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ApiError;
use crate::lattice::{standard_simplex, validate_subdivision, LatticePoint, LatticePolytope, LatticeSubdivision, Triangulation, ValidationReport};
use crate::patchwork::{PatchworkComplex, SignDistribution};

pub const SCHEMA: &str = "patchwork/v1";

fn schema() -> String {
    SCHEMA.into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PatchworkDocument {
    #[serde(default = "schema")]
    pub schema: String,
    pub dim: usize,
    /// Degree of the standard simplex; ignored for the polytope when `target` is given.
    #[serde(default)]
    pub degree: i64,
    /// Vertices of a polytope other than `T_degree^dim`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<Vec<i64>>>,
    pub cells: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "SignDistribution::is_empty")]
    pub signs: SignDistribution,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl PatchworkDocument {
    pub fn parse(text: &str) -> Result<Self, ApiError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: PatchworkDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let mut pointer = json_pointer(e.path());
            let message = e.inner().to_string();
            if let Some(field) = message.strip_prefix("missing field `").and_then(|m| m.split('`').next()) {
                pointer = format!("{pointer}/{field}");
            }
            ApiError::bad_request("malformed_document", message, Some(pointer))
        })?;
        if doc.schema != SCHEMA {
            return Err(ApiError::bad_request(
                "unsupported_schema",
                format!("expected schema {SCHEMA:?}, got {:?}", doc.schema),
                Some("/schema".into()),
            ));
        }
        Ok(doc)
    }

    pub fn from_parts(t: &Triangulation, signs: SignDistribution) -> Self {
        PatchworkDocument {
            schema: schema(),
            dim: t.dim(),
            degree: t.standard_degree().unwrap_or(0),
            target: t.standard_degree().is_none().then(|| t.target().vertices().iter().map(|v| v.0.clone()).collect()),
            cells: t.cells().iter().map(|c| c.vertices().iter().map(|v| v.0.clone()).collect()).collect(),
            signs,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        super::to_json(self)
    }

    fn point(&self, coords: &[i64], pointer: String) -> Result<LatticePoint, ApiError> {
        if coords.len() != self.dim {
            return Err(ApiError::bad_request(
                "dimension_mismatch",
                format!("point {coords:?} has {} coordinates, expected {}", coords.len(), self.dim),
                Some(pointer),
            ));
        }
        Ok(LatticePoint::new(coords.to_vec()))
    }

    pub fn target_polytope(&self) -> Result<LatticePolytope, ApiError> {
        match &self.target {
            Some(vs) => {
                let pts = vs.iter().enumerate().map(|(i, v)| self.point(v, format!("/target/{i}"))).collect::<Result<Vec<_>, _>>()?;
                LatticePolytope::new(pts).map_err(|e| ApiError::from(e).at("/target"))
            }
            None => standard_simplex(self.dim as i64, self.degree).map_err(|e| ApiError::from(e).at("/degree")),
        }
    }

    fn cell_polytopes(&self) -> Result<Vec<LatticePolytope>, ApiError> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let pts = c.iter().enumerate().map(|(j, v)| self.point(v, format!("/cells/{i}/{j}"))).collect::<Result<Vec<_>, _>>()?;
                LatticePolytope::new(pts).map_err(|e| ApiError::from(e).at(&format!("/cells/{i}")))
            })
            .collect()
    }

    /// The validation report of the cells against the target.
    pub fn validate(&self) -> Result<ValidationReport, ApiError> {
        let target = self.target_polytope()?;
        let cells = self.cell_polytopes()?;
        validate_subdivision(&cells, &target).map_err(|e| ApiError::from(e).at("/cells"))
    }

    pub fn subdivision(&self) -> Result<LatticeSubdivision, ApiError> {
        LatticeSubdivision::new(self.target_polytope()?, self.cell_polytopes()?).map_err(|e| ApiError::from(e).at("/cells"))
    }

    pub fn triangulation(&self) -> Result<Triangulation, ApiError> {
        let s = self.subdivision()?;
        if let Some(i) = s.cells().iter().position(|c| !c.is_simplex()) {
            return Err(ApiError::bad_request("not_a_triangulation", format!("cell {i} is not a simplex"), Some(format!("/cells/{i}"))));
        }
        Triangulation::new(s).map_err(|e| ApiError::from(e).at("/cells"))
    }

    /// Signs restricted to the vertices of `t`; every vertex needs one.
    pub fn signs_for(&self, t: &Triangulation) -> Result<SignDistribution, ApiError> {
        if let Some(v) = t.vertex_set().iter().find(|v| self.signs.get(v).is_none()) {
            return Err(ApiError::bad_request("missing_sign", format!("no sign at vertex {}", v.key()), Some("/signs".into())));
        }
        if let Some((p, _)) = self.signs.iter().find(|(p, _)| !t.vertex_set().contains(*p)) {
            return Err(ApiError::bad_request(
                "extra_sign",
                format!("{} is not a vertex of the triangulation", p.key()),
                Some(format!("/signs/{}", p.key())),
            ));
        }
        Ok(self.signs.clone())
    }

    pub fn complex(&self) -> Result<(Triangulation, PatchworkComplex), ApiError> {
        let t = self.triangulation()?;
        let signs = self.signs_for(&t)?;
        let p = PatchworkComplex::build(&t, &signs).map_err(|e| ApiError::from(e).at("/dim"))?;
        Ok((t, p))
    }
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } | Segment::Enum { variant: key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::convex_triangulation;

    #[test]
    fn round_trip() {
        let t = convex_triangulation(2, 3).unwrap();
        let doc = PatchworkDocument::from_parts(&t, SignDistribution::constant(&t, 1)).with_metadata("title", "cubic");
        let back = PatchworkDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.triangulation().unwrap(), t);
        assert!(back.complex().is_ok());
    }

    #[test]
    fn pointers() {
        let e = PatchworkDocument::parse(r#"{"dim": 2, "degree": 1, "cells": [[[0, 0], [1, "x"]]]}"#).unwrap_err();
        assert_eq!(e.pointer.as_deref(), Some("/cells/0/1/1"));
        let e = PatchworkDocument::parse(r#"{"dim": 2, "degree": 1, "cells": [], "signs": {"0,0": 3}}"#).unwrap_err();
        assert_eq!(e.pointer.as_deref(), Some("/signs"));
        let e = PatchworkDocument::parse(r#"{"dim": 2, "cells": [], "color": 1}"#).unwrap_err();
        assert_eq!(e.status, 400);
        let e = PatchworkDocument::parse(r#"{"dim": 2}"#).unwrap_err();
        assert_eq!(e.pointer.as_deref(), Some("/cells"));
        let doc = PatchworkDocument::parse(r#"{"dim": 2, "degree": 1, "cells": [[[0, 0], [1, 0], [0, 1]]], "signs": {"0,0": 1}}"#).unwrap();
        assert_eq!(doc.complex().unwrap_err().code, "missing_sign");
        let doc = PatchworkDocument::parse(r#"{"dim": 2, "degree": 1, "cells": [[[0, 0], [1, 0, 0], [0, 1]]]}"#).unwrap();
        assert_eq!(doc.triangulation().unwrap_err().pointer.as_deref(), Some("/cells/0/1"));
    }
}
