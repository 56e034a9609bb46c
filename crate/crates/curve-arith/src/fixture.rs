//! Curve fixtures on disk: a TOML description of a finite field, a curve,
//! and named rational points with optional declared orders.
//!
//! ```toml
//! [field]
//! p = 7            # characteristic
//! k = 1            # extension degree (default 1)
//! # modulus = [2, 0, 0, 0, 2, 1]   # monic modulus, low → high, for k > 1
//!
//! [curve]
//! a = [0]          # coefficients in the power basis, low → high
//! b = [2]
//!
//! [points.Q]
//! x = [1]
//! y = [3]
//! order = 3        # optional; validated at load time
//! ```
//!
//! Loading validates everything it can: the modulus (monic, irreducible),
//! the curve (nonsingular, characteristic ≥ 5), each point (on the curve,
//! declared order exact).

use crate::CurveError;
use crate::curve::{Curve, CurvePoint};
use crate::field::FiniteField;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

fn default_degree() -> u32 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "default_degree")]
    pub k: u32,
    #[serde(default)]
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    /// Constructs the field this spec describes, preferring a pinned
    /// modulus when one is given.
    pub fn build(&self) -> Result<FiniteField, CurveError> {
        match (&self.modulus, self.k) {
            (Some(modulus), _) => {
                let f = FiniteField::with_modulus(self.p, modulus.clone())?;
                if f.degree() != self.k {
                    return Err(CurveError::Fixture(format!(
                        "modulus has degree {}, field asks for degree {}",
                        f.degree(),
                        self.k
                    )));
                }
                Ok(f)
            }
            (None, 1) => Ok(FiniteField::prime(self.p)?),
            (None, k) => Ok(FiniteField::extension(self.p, k)?),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    #[serde(default)]
    pub order: Option<u64>,
}

/// The raw on-disk shape.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFixture {
    pub field: FieldSpec,
    pub curve: CurveSpec,
    #[serde(default)]
    pub points: BTreeMap<String, PointSpec>,
}

/// A fixture after construction and validation.
#[derive(Debug, Clone)]
pub struct LoadedFixture {
    pub curve: Curve,
    pub points: BTreeMap<String, CurvePoint>,
}

impl CurveFixture {
    pub fn build(&self) -> Result<LoadedFixture, CurveError> {
        let field = self.field.build()?;
        let a = field.from_coeffs(&self.curve.a)?;
        let b = field.from_coeffs(&self.curve.b)?;
        let curve = Curve::new(field.clone(), a, b)?;
        let mut points = BTreeMap::new();
        for (name, spec) in &self.points {
            let x = field.from_coeffs(&spec.x)?;
            let y = field.from_coeffs(&spec.y)?;
            let point = CurvePoint::affine(x, y);
            if !curve.on_curve(&point) {
                return Err(CurveError::Fixture(format!(
                    "point {name:?} is not on the curve"
                )));
            }
            if let Some(declared) = spec.order {
                let actual = curve.point_order(&point);
                if actual != declared {
                    return Err(CurveError::Fixture(format!(
                        "point {name:?} declares order {declared} but has order {actual}"
                    )));
                }
            }
            points.insert(name.clone(), point);
        }
        Ok(LoadedFixture { curve, points })
    }
}

/// Parses fixture TOML text and builds the validated curve and points.
pub fn parse_fixture(text: &str) -> Result<LoadedFixture, CurveError> {
    let raw: CurveFixture = toml::from_str(text)
        .map_err(|err| CurveError::Fixture(format!("TOML parse error: {err}")))?;
    raw.build()
}

/// Reads and builds a fixture from a file path.
pub fn load_fixture(path: &Path) -> Result<LoadedFixture, CurveError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CurveError::Fixture(format!("cannot read {}: {err}", path.display())))?;
    parse_fixture(&text)
}
