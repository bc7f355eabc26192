//! Input document schema and conversion to the library types.
//!
//! One JSON document describes either a stacking (material plus ply
//! orientations) or a direct polar triple. Angles in files are degrees;
//! stress units are whatever the document declares and are carried through
//! unchanged.

use serde::{Deserialize, Serialize};

use polarlam::lamination::{derived_angles, DerivedAngles, LaminatePolar, Stacking};
use polarlam::polar::{EngineeringConstants, PolarElastic4};

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    /// Informational stress unit label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<MaterialSpec>,
    /// Ply orientations bottom to top, degrees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stacking_deg: Option<Vec<f64>>,
    /// Total thickness; defaults to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thickness: Option<f64>,
    /// Direct polar triple, used when no stacking is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abd: Option<AbdSpec>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polar: Option<PolarMaterial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engineering: Option<EngineeringMaterial>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PolarMaterial {
    #[serde(rename = "T0")]
    pub t0: f64,
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "Phi0_deg", default)]
    pub phi0_deg: f64,
    #[serde(rename = "Phi1_deg", default)]
    pub phi1_deg: f64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EngineeringMaterial {
    #[serde(rename = "E1")]
    pub e1: f64,
    #[serde(rename = "E2")]
    pub e2: f64,
    #[serde(rename = "G12")]
    pub g12: f64,
    pub nu12: f64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AbdSpec {
    #[serde(rename = "A")]
    pub a: PolarTensorSpec,
    #[serde(rename = "B")]
    pub b: CouplingSpec,
    #[serde(rename = "D")]
    pub d: PolarTensorSpec,
    /// Places `Phi1^B` relative to `Phi1^A`; requires `B.Phi1_deg` absent.
    #[serde(
        rename = "deltaA_deg",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub delta_a_deg: Option<f64>,
    /// Places `Phi1^D` relative to `Phi1^B`; requires `D.Phi1_deg` absent.
    #[serde(
        rename = "deltaD_deg",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub delta_d_deg: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PolarTensorSpec {
    #[serde(rename = "T0")]
    pub t0: f64,
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "Phi0_deg", default, skip_serializing_if = "Option::is_none")]
    pub phi0_deg: Option<f64>,
    #[serde(rename = "Phi1_deg", default, skip_serializing_if = "Option::is_none")]
    pub phi1_deg: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingSpec {
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "Phi0_deg", default, skip_serializing_if = "Option::is_none")]
    pub phi0_deg: Option<f64>,
    #[serde(rename = "Phi1_deg", default, skip_serializing_if = "Option::is_none")]
    pub phi1_deg: Option<f64>,
}

/// Parsed input with the derived library objects.
pub struct BuiltInput {
    pub document: InputDocument,
    pub material: Option<PolarElastic4>,
    pub stacking: Option<Stacking>,
    pub laminate: LaminatePolar,
    pub angles: DerivedAngles,
    pub from_abd: bool,
}

/// Reads the document from a path or standard input.
pub fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        use std::io::Read;
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

pub fn parse_document(text: &str) -> Result<InputDocument, String> {
    serde_json::from_str(text).map_err(|e| format!("input document: {e}"))
}

/// Validates the document and builds the laminate triple.
pub fn build(document: InputDocument, h_override: Option<f64>) -> Result<BuiltInput, String> {
    let material = match &document.material {
        None => None,
        Some(spec) => Some(build_material(spec)?),
    };

    let thickness = h_override.or(document.thickness).unwrap_or(1.0);
    if !thickness.is_finite() || thickness <= 0.0 {
        return Err(format!("thickness must be positive, got {thickness}"));
    }

    match (&document.stacking_deg, &document.abd) {
        (Some(_), Some(_)) => Err("fields stacking_deg and abd are mutually exclusive".to_string()),
        (None, None) => Err("one of stacking_deg or abd is required".to_string()),
        (Some(angles_deg), None) => {
            let ply = material.ok_or_else(|| "stacking_deg requires a material".to_string())?;
            let angles = angles_deg.iter().map(|a| a.to_radians()).collect();
            let stacking =
                Stacking::new(ply, angles, thickness).map_err(|e| format!("stacking: {e}"))?;
            let laminate = LaminatePolar::from_stacking(&stacking);
            let angles = derived_angles(&laminate);
            Ok(BuiltInput {
                document,
                material: Some(ply),
                stacking: Some(stacking),
                laminate,
                angles,
                from_abd: false,
            })
        }
        (None, Some(abd)) => {
            let laminate = build_abd(abd, thickness)?;
            let angles = derived_angles(&laminate);
            Ok(BuiltInput {
                document,
                material,
                stacking: None,
                laminate,
                angles,
                from_abd: true,
            })
        }
    }
}

fn build_material(spec: &MaterialSpec) -> Result<PolarElastic4, String> {
    match (&spec.polar, &spec.engineering) {
        (Some(_), Some(_)) => {
            Err("material.polar and material.engineering are mutually exclusive".to_string())
        }
        (None, None) => Err("material requires polar or engineering constants".to_string()),
        (Some(p), None) => PolarElastic4::new(
            p.t0,
            p.t1,
            p.r0,
            p.r1,
            p.phi0_deg.to_radians(),
            p.phi1_deg.to_radians(),
        )
        .map_err(|e| format!("material.polar: {e}")),
        (None, Some(e)) => {
            let ec = EngineeringConstants {
                e1: e.e1,
                e2: e.e2,
                g12: e.g12,
                nu12: e.nu12,
            };
            ec.to_polar()
                .map_err(|err| format!("material.engineering: {err}"))
        }
    }
}

fn build_abd(abd: &AbdSpec, thickness: f64) -> Result<LaminatePolar, String> {
    let phi1a = abd.a.phi1_deg.unwrap_or(0.0).to_radians();
    let phi0a = abd.a.phi0_deg.unwrap_or(0.0).to_radians();
    let a = PolarElastic4::new(abd.a.t0, abd.a.t1, abd.a.r0, abd.a.r1, phi0a, phi1a)
        .map_err(|e| format!("abd.A: {e}"))?;

    let phi1b = match (abd.b.phi1_deg, abd.delta_a_deg) {
        (Some(_), Some(_)) => {
            return Err("deltaA_deg conflicts with B.Phi1_deg; give one of them".to_string())
        }
        (Some(deg), None) => deg.to_radians(),
        (None, Some(delta)) => phi1a + delta.to_radians(),
        (None, None) => 0.0,
    };
    let phi0b = abd.b.phi0_deg.unwrap_or(0.0).to_radians();
    let b = PolarElastic4::new(0.0, 0.0, abd.b.r0, abd.b.r1, phi0b, phi1b)
        .map_err(|e| format!("abd.B: {e}"))?;

    let phi1d = match (abd.d.phi1_deg, abd.delta_d_deg) {
        (Some(_), Some(_)) => {
            return Err("deltaD_deg conflicts with D.Phi1_deg; give one of them".to_string())
        }
        (Some(deg), None) => deg.to_radians(),
        (None, Some(delta)) => phi1b - delta.to_radians(),
        (None, None) => 0.0,
    };
    let phi0d = abd.d.phi0_deg.unwrap_or(0.0).to_radians();
    let d = PolarElastic4::new(abd.d.t0, abd.d.t1, abd.d.r0, abd.d.r1, phi0d, phi1d)
        .map_err(|e| format!("abd.D: {e}"))?;

    LaminatePolar::new(a, b, d, thickness).map_err(|e| format!("abd: {e}"))
}
