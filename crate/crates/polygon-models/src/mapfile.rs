//! JSON descriptions of candidate level maps on polygon fibers.
//!
//! A map file names the field and, depending on the check being run, a
//! single point `phi1` (ample-point check) or a generator pair `e1`, `e2`
//! (full-level check):
//!
//! ```json
//! {
//!   "field": { "p": 7, "k": 1 },
//!   "phi1": { "u": [2], "c": 1 },
//!   "e1":   { "u": [1], "c": 1 },
//!   "e2":   { "u": [2], "c": 0 }
//! }
//! ```
//!
//! Units are coefficient vectors in the field's power basis, low to high,
//! matching the curve fixture format.

use crate::{PolygonError, PolygonPicard, PolygonPoint};
use curve_arith::fixture::FieldSpec;
use curve_arith::field::FiniteField;
use serde::Deserialize;
use std::path::Path;

/// The image of one generator: a unit and a side index.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenImage {
    pub u: Vec<u64>,
    pub c: u64,
}

/// The on-disk shape of a polygon map file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonMapFile {
    pub field: FieldSpec,
    #[serde(default)]
    pub phi1: Option<GenImage>,
    #[serde(default)]
    pub e1: Option<GenImage>,
    #[serde(default)]
    pub e2: Option<GenImage>,
}

impl PolygonMapFile {
    pub fn build_field(&self) -> Result<FiniteField, PolygonError> {
        Ok(self.field.build()?)
    }

    fn realize(&self, model: &PolygonPicard, img: &GenImage) -> Result<PolygonPoint, PolygonError> {
        let u = model
            .field()
            .from_coeffs(&img.u)
            .map_err(curve_arith::CurveError::from)?;
        model.smooth_point(u, img.c)
    }

    /// The single point for the ample-point check.
    pub fn phi1_point(&self, model: &PolygonPicard) -> Result<PolygonPoint, PolygonError> {
        let img = self
            .phi1
            .as_ref()
            .ok_or(PolygonError::MapFile("missing entry: phi1".into()))?;
        self.realize(model, img)
    }

    /// The generator pair for the full-level check.
    pub fn generator_pair(
        &self,
        model: &PolygonPicard,
    ) -> Result<(PolygonPoint, PolygonPoint), PolygonError> {
        let e1 = self
            .e1
            .as_ref()
            .ok_or(PolygonError::MapFile("missing entry: e1".into()))?;
        let e2 = self
            .e2
            .as_ref()
            .ok_or(PolygonError::MapFile("missing entry: e2".into()))?;
        Ok((self.realize(model, e1)?, self.realize(model, e2)?))
    }
}

/// Parses map-file JSON text.
pub fn parse_map_file(text: &str) -> Result<PolygonMapFile, PolygonError> {
    serde_json::from_str(text).map_err(|err| PolygonError::MapFile(format!("JSON error: {err}")))
}

/// Reads and parses a map file from disk.
pub fn load_map_file(path: &Path) -> Result<PolygonMapFile, PolygonError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| PolygonError::MapFile(format!("cannot read {}: {err}", path.display())))?;
    parse_map_file(&text)
}
