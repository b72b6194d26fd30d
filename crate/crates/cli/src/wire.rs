//! JSON wire forms. Every object rejects unknown fields.

use annulus::{Curve, LElt, SheafClass, Surface};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WireCurve {
    Bridging { i: i64, j: i64 },
    Inner { a: i64, b: i64 },
    Outer { a: i64, b: i64 },
}

/// Line bundles carry the normal-form triple [l1, l2, l] of l1*x1 + l2*x2 + l*c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WireSheaf {
    Line { x: [i64; 3] },
    Tinf { i: i64, len: i64 },
    Tzero { i: i64, len: i64 },
    Zero {},
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireSurface {
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub surface: WireSurface,
}

impl From<Curve> for WireCurve {
    fn from(c: Curve) -> Self {
        match c {
            Curve::Bridging { i, j } => WireCurve::Bridging { i, j },
            Curve::Inner { a, b } => WireCurve::Inner { a, b },
            Curve::Outer { a, b } => WireCurve::Outer { a, b },
            Curve::Loop { .. } => unreachable!("loops never reach the wire"),
        }
    }
}

impl From<WireCurve> for Curve {
    fn from(w: WireCurve) -> Self {
        match w {
            WireCurve::Bridging { i, j } => Curve::Bridging { i, j },
            WireCurve::Inner { a, b } => Curve::Inner { a, b },
            WireCurve::Outer { a, b } => Curve::Outer { a, b },
        }
    }
}

impl WireSheaf {
    pub fn from_sheaf(x: SheafClass) -> Result<Self, CliError> {
        Ok(match x {
            SheafClass::LineBundle(e) => WireSheaf::Line { x: [e.l1, e.l2, e.l] },
            SheafClass::TorsionInf { i, len } => WireSheaf::Tinf { i, len },
            SheafClass::TorsionZero { i, len } => WireSheaf::Tzero { i, len },
            SheafClass::Zero => WireSheaf::Zero {},
            SheafClass::TorsionOrdinary { .. } => {
                return Err(CliError::Input("homogeneous torsion has no wire form".into()))
            }
        })
    }

    pub fn to_sheaf(self, s: &Surface) -> Result<SheafClass, CliError> {
        let x = match self {
            WireSheaf::Line { x: [l1, l2, l] } => s.line(s.check_elt(LElt { l1, l2, l })?),
            WireSheaf::Tinf { i, len } => s.tinf(i, len),
            WireSheaf::Tzero { i, len } => s.tzero(i, len),
            WireSheaf::Zero {} => SheafClass::Zero,
        };
        Ok(s.check_sheaf(x)?)
    }
}

/// Parses one JSON document, reporting syntax errors by byte offset.
pub fn parse<T: DeserializeOwned>(what: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        let offset = if e.is_eof() { text.len() } else { byte_offset(text, e.line(), e.column()) };
        CliError::Input(format!("{what}: {e} (byte offset {offset})"))
    })
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (before + column.saturating_sub(1)).min(text.len())
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("wire values always serialize")
}
