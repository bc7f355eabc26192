//! Output documents. Field names are part of the tool's stable interface;
//! identical input and flags produce byte-identical output.

use serde::Serialize;

use polarlam::bounds::{BoundsReport, ConditionMargin, MarginKind, MinimizerSummary};
use polarlam::lamination::{DerivedAngles, LaminatePolar};
use polarlam::polar::{Cartesian4, PolarElastic4, DEFAULT_CLASSIFY_TOL};

use crate::input::InputDocument;

/// Floating-point formatting for CSV goldens: 17 significant digits,
/// locale-free.
pub fn g17(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        Self {
            name: "polarlam",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Serialize)]
pub struct CartesianDocument {
    pub t1111: f64,
    pub t1112: f64,
    pub t1122: f64,
    pub t1212: f64,
    pub t1222: f64,
    pub t2222: f64,
}

impl From<Cartesian4> for CartesianDocument {
    fn from(c: Cartesian4) -> Self {
        Self {
            t1111: c.c1111,
            t1112: c.c1112,
            t1122: c.c1122,
            t1212: c.c1212,
            t1222: c.c1222,
            t2222: c.c2222,
        }
    }
}

#[derive(Serialize)]
pub struct TensorDocument {
    pub t0: f64,
    pub t1: f64,
    pub r0: f64,
    pub r1: f64,
    pub phi0_deg: f64,
    pub phi1_deg: f64,
    pub symmetry: String,
    pub cartesian: CartesianDocument,
}

impl TensorDocument {
    pub fn from_tensor(t: &PolarElastic4) -> Self {
        Self {
            t0: t.t0,
            t1: t.t1,
            r0: t.r0,
            r1: t.r1,
            phi0_deg: t.phi0.to_degrees(),
            phi1_deg: t.phi1.to_degrees(),
            symmetry: t.classify(DEFAULT_CLASSIFY_TOL).to_string(),
            cartesian: t.to_cartesian_at(0.0).into(),
        }
    }
}

#[derive(Serialize)]
pub struct AnglesDocument {
    pub phi_a_deg: f64,
    pub phi_b_deg: f64,
    pub phi_d_deg: f64,
    pub delta_a_deg: f64,
    pub delta_d_deg: f64,
    pub delta_a_conventional: bool,
    pub delta_d_conventional: bool,
}

impl From<&DerivedAngles> for AnglesDocument {
    fn from(da: &DerivedAngles) -> Self {
        Self {
            phi_a_deg: da.phi_a.to_degrees(),
            phi_b_deg: da.phi_b.to_degrees(),
            phi_d_deg: da.phi_d.to_degrees(),
            delta_a_deg: da.delta_a.to_degrees(),
            delta_d_deg: da.delta_d.to_degrees(),
            delta_a_conventional: da.delta_a_conventional,
            delta_d_conventional: da.delta_d_conventional,
        }
    }
}

#[derive(Serialize)]
pub struct LaminateDocument {
    pub thickness: f64,
    pub a: TensorDocument,
    pub b: TensorDocument,
    pub d: TensorDocument,
    pub coupling_is_zero: bool,
    pub angles: AnglesDocument,
}

impl LaminateDocument {
    pub fn new(lp: &LaminatePolar, da: &DerivedAngles) -> Self {
        Self {
            thickness: lp.thickness(),
            a: TensorDocument::from_tensor(lp.a()),
            b: TensorDocument::from_tensor(lp.b()),
            d: TensorDocument::from_tensor(lp.d()),
            coupling_is_zero: lp.b().r0 == 0.0 && lp.b().r1 == 0.0,
            angles: da.into(),
        }
    }
}

#[derive(Serialize)]
pub struct MarginDocument {
    pub name: String,
    pub expression: String,
    pub value: f64,
    pub normalized: f64,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmin_deg: Option<[f64; 2]>,
}

impl From<&ConditionMargin> for MarginDocument {
    fn from(m: &ConditionMargin) -> Self {
        Self {
            name: m.name.to_string(),
            expression: m.expression.to_string(),
            value: m.value,
            normalized: m.normalized,
            kind: match m.kind {
                MarginKind::Strict => "strict",
                MarginKind::NonNegative => "non-negative",
            },
            argmin_deg: m.argmin.map(|(a, b)| [a.to_degrees(), b.to_degrees()]),
        }
    }
}

#[derive(Serialize)]
pub struct MinimizerDocument {
    pub grid_min: f64,
    pub certified_lower_bound: f64,
    pub converged: bool,
}

#[derive(Serialize)]
pub struct ParametersDocument {
    pub tol: f64,
    pub grid_step_deg: f64,
    pub case_requested: String,
}

#[derive(Serialize)]
pub struct ReportDocument {
    pub tool: ToolInfo,
    pub input: InputDocument,
    pub parameters: ParametersDocument,
    pub laminate: LaminateDocument,
    pub case_used: String,
    pub verdict: String,
    pub scale: f64,
    pub margins: Vec<MarginDocument>,
    pub informational: Vec<MarginDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_margin: Option<MarginDocument>,
    pub snapped: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimizer: Option<MinimizerDocument>,
}

impl ReportDocument {
    pub fn new(
        document: InputDocument,
        lp: &LaminatePolar,
        da: &DerivedAngles,
        report: &BoundsReport,
        parameters: ParametersDocument,
    ) -> Self {
        Self {
            tool: ToolInfo::current(),
            input: document,
            parameters,
            laminate: LaminateDocument::new(lp, da),
            case_used: report.case_used.to_string(),
            verdict: report.verdict.to_string(),
            scale: report.scale,
            margins: report.margins.iter().map(Into::into).collect(),
            informational: report.informational.iter().map(Into::into).collect(),
            worst_margin: report.worst().map(Into::into),
            snapped: report.snapped.iter().map(|s| s.to_string()).collect(),
            minimizer: report
                .minimizer
                .map(|m: MinimizerSummary| MinimizerDocument {
                    grid_min: m.grid_min,
                    certified_lower_bound: m.certified_lower_bound,
                    converged: m.converged,
                }),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("case:    {}", self.case_used));
        push(&mut out, format!("verdict: {}", self.verdict));
        push(&mut out, format!("scale:   {}", self.scale));
        if !self.snapped.is_empty() {
            push(&mut out, format!("snapped: {}", self.snapped.join(", ")));
        }
        push(&mut out, "margins:".to_string());
        for m in &self.margins {
            let argmin = m
                .argmin_deg
                .map(|[a, b]| format!("  @ ({a:.6} deg, {b:.6} deg)"))
                .unwrap_or_default();
            push(
                &mut out,
                format!(
                    "  {:<16} {:>24} (normalized {:+.6e}){argmin}",
                    m.name,
                    g17(m.value),
                    m.normalized
                ),
            );
        }
        push(&mut out, "informational:".to_string());
        for m in &self.informational {
            push(
                &mut out,
                format!(
                    "  {:<24} {:>24} (normalized {:+.6e})",
                    m.name,
                    g17(m.value),
                    m.normalized
                ),
            );
        }
        if let Some(m) = &self.minimizer {
            push(
                &mut out,
                format!(
                    "minimizer: grid_min {} certified_lower_bound {} converged {}",
                    g17(m.grid_min),
                    g17(m.certified_lower_bound),
                    m.converged
                ),
            );
        }
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}
