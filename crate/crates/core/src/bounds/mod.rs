//! Feasibility of a laminate triple under positive strain energy.
//!
//! The energy quadratic form must be positive definite for every pair of
//! strain/curvature deviator directions. This module evaluates that
//! requirement three ways: through the leading principal minors of the
//! energy matrix, through closed-form condition sets in tensor
//! invariants, and through certified global minimization of the
//! determinant surface.

mod cases;
mod margins;
mod matrix;
mod minimize;

pub use cases::{
    dispatch_check, feasibility_aligned, feasibility_general, feasibility_special, SpecialCase,
};
pub use margins::{
    aligned_m4_candidates, coupled_iso_m4_candidates, full_square_m4_candidates, m2_margins,
    m3_margins, m4_value, r0_ortho_m4_candidates, square_b_m4_candidates, to_laminate_frame,
    AlignedConfig, M2Margins, M3Margins, CANDIDATE_POINTS,
};
pub use matrix::{assemble_m, sylvester_minors, MatrixM};
pub use minimize::{m4_lipschitz_bound, minimize_m4, M4Minimum};

use std::f64::consts::PI;
use thiserror::Error;

/// Result of a feasibility decision with a tolerance band around zero:
/// strict inequalities cannot be decided exactly in floating point, so a
/// margin inside the band yields `Marginal`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Marginal,
    Infeasible,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Feasible => "feasible",
            Verdict::Marginal => "marginal",
            Verdict::Infeasible => "infeasible",
        })
    }
}

/// Whether a condition is a strict inequality or a non-negativity
/// requirement. Non-negative margins sit exactly at zero for symmetric
/// configurations, so they participate only in the infeasibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginKind {
    Strict,
    NonNegative,
}

/// One evaluated condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionMargin {
    /// Stable identifier, `<set>.<index>` or `<set>.info.<tag>`.
    pub name: &'static str,
    /// Human-readable form of the condition's left-hand side.
    pub expression: &'static str,
    pub value: f64,
    /// `value` divided by `scale^degree`, the unit used for the verdict.
    pub normalized: f64,
    pub kind: MarginKind,
    /// Polynomial degree of the condition in the stress-unit moduli.
    pub degree: u32,
    /// For minimized conditions, the minimizing direction pair in the
    /// laminate frame, wrapped to `[0, pi/2)`.
    pub argmin: Option<(f64, f64)>,
}

/// Summary of the numeric minimization backing a report, when one ran.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizerSummary {
    pub grid_min: f64,
    pub certified_lower_bound: f64,
    pub converged: bool,
}

/// Parameters of a feasibility evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// Relative tolerance of the verdict band and of the vanishing-moduli
    /// snap applied before closed-form evaluation.
    pub tol: f64,
    /// Grid step of the global minimization, radians.
    pub grid_step: f64,
    /// Absolute angle tolerance of the minimization refinement.
    pub refine_tol: f64,
    /// When set, dispatch also runs the general path and records its
    /// verdict for agreement checks.
    pub cross_check_general: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            grid_step: PI / 360.0,
            refine_tol: 1e-12,
            cross_check_general: false,
        }
    }
}

/// Full outcome of a feasibility evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    /// Which condition set produced the verdict.
    pub case_used: &'static str,
    pub verdict: Verdict,
    /// Conditions that drive the verdict.
    pub margins: Vec<ConditionMargin>,
    /// Redundant conditions evaluated for reporting only (the bending-side
    /// analogues and discarded intermediate conditions).
    pub informational: Vec<ConditionMargin>,
    /// Normalization unit `sqrt(T0 T1)`; a margin of degree `d` is
    /// normalized by `scale^d`.
    pub scale: f64,
    pub tol: f64,
    /// Moduli snapped to zero before closed-form evaluation.
    pub snapped: Vec<&'static str>,
    /// Present when a numeric minimization backed the last margin.
    pub minimizer: Option<MinimizerSummary>,
    /// Verdict of the general path, recorded in cross-check mode.
    pub cross_check_verdict: Option<Verdict>,
}

impl BoundsReport {
    /// The binding margin: smallest normalized value among the strict
    /// conditions and any violated non-negativity condition.
    pub fn worst(&self) -> Option<&ConditionMargin> {
        self.margins
            .iter()
            .filter(|m| matches!(m.kind, MarginKind::Strict) || m.normalized < 0.0)
            .min_by(|a, b| a.normalized.total_cmp(&b.normalized))
    }

    /// Margin looked up by identifier, searching both lists.
    pub fn margin(&self, name: &str) -> Option<&ConditionMargin> {
        self.margins
            .iter()
            .chain(self.informational.iter())
            .find(|m| m.name == name)
    }
}

/// Verdict rule shared by the closed-form and oracle paths: any margin
/// below the band is infeasible; otherwise a strict margin inside the band
/// is marginal; otherwise feasible.
pub(crate) fn verdict_from(margins: &[ConditionMargin], tol: f64) -> Verdict {
    let mut marginal = false;
    for m in margins {
        if m.normalized < -tol {
            return Verdict::Infeasible;
        }
        if matches!(m.kind, MarginKind::Strict) && m.normalized <= tol {
            marginal = true;
        }
    }
    if marginal {
        Verdict::Marginal
    } else {
        Verdict::Feasible
    }
}

/// Three-valued admissibility of a single layer, applying the shared
/// tolerance rule to its margins at their polynomial degrees.
pub fn layer_verdict(p: &crate::polar::PolarElastic4, tol: f64) -> Verdict {
    let m = p.layer_bounds();
    let unit = (p.t0.abs() * p.t1.abs()).sqrt().max(f64::MIN_POSITIVE);
    let entry = |name, value, degree: u32, kind| ConditionMargin {
        name,
        expression: name,
        value,
        normalized: value / unit.powi(degree as i32),
        kind,
        degree,
        argmin: None,
    };
    let margins = [
        entry("layer.T0", m.t0, 1, MarginKind::Strict),
        entry("layer.T1", m.t1, 1, MarginKind::Strict),
        entry("layer.R0", m.r0, 1, MarginKind::NonNegative),
        entry("layer.R1", m.r1, 1, MarginKind::NonNegative),
        entry("layer.T0-R0", m.anisotropy_gap, 1, MarginKind::Strict),
        entry("layer.M2poly", m.coupling_poly, 3, MarginKind::Strict),
    ];
    verdict_from(&margins, tol)
}

/// A condition set was requested for a laminate outside its pattern.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CaseError {
    #[error("alignment pattern fails: {angle} = {value} rad is off the grid")]
    NotAligned { angle: &'static str, value: f64 },
    #[error("{case} pattern requires {name} = 0, got {value}")]
    PatternMismatch {
        case: &'static str,
        name: &'static str,
        value: f64,
    },
}
