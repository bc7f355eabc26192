//! Condition-set evaluators and case dispatch.
//!
//! The general set decides feasibility for any laminate through the
//! extension-side closed forms plus a certified numeric minimum of the
//! determinant surface. Symmetric special cases replace the numeric
//! minimum with closed candidate values. Dispatch snaps near-zero moduli,
//! classifies the vanishing pattern and routes to the most specific set.

use std::f64::consts::FRAC_PI_4;

use crate::bounds::margins::{
    aligned_m4_candidates, coupled_iso_m4_candidates, full_square_m4_candidates, m2_margins,
    m3_margins, r0_ortho_m4_candidates, square_b_m4_candidates, to_laminate_frame, AlignedConfig,
    CANDIDATE_POINTS,
};
use crate::bounds::minimize::minimize_m4;
use crate::bounds::{
    verdict_from, BoundsReport, CaseError, CheckOptions, ConditionMargin, MarginKind,
    MinimizerSummary,
};
use crate::lamination::{derived_angles, DerivedAngles, LaminatePolar};
use crate::polar::{grid_distance, PolarElastic4, ANGLE_TOL};

/// The symmetric special cases with dedicated condition sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    /// `R1B = 0`, aligned orthotropic tensors.
    SquareSymmetricB,
    /// `R1A = R1B = R1D = 0`, aligned.
    FullySquareSymmetric,
    /// `R0A = R0B = R0D = 0`; the aligned sub-variant is used when the
    /// shift angles sit on the half-pi grid.
    R0Orthotropic,
    /// `R0A = R1A = R0D = R1D = 0` (isotropic extension and bending).
    CoupledIsotropic,
}

impl SpecialCase {
    pub fn label(&self) -> &'static str {
        match self {
            SpecialCase::SquareSymmetricB => "square-symmetric coupling",
            SpecialCase::FullySquareSymmetric => "fully square symmetric",
            SpecialCase::R0Orthotropic => "r0-orthotropic",
            SpecialCase::CoupledIsotropic => "coupled isotropic",
        }
    }
}

/// Margin accumulator normalizing by `scale^degree`.
struct MarginSet {
    unit: f64,
    margins: Vec<ConditionMargin>,
    informational: Vec<ConditionMargin>,
}

impl MarginSet {
    fn new(lp: &LaminatePolar) -> Self {
        Self {
            unit: lp.unit_scale(),
            margins: Vec::new(),
            informational: Vec::new(),
        }
    }

    fn entry(
        &self,
        name: &'static str,
        expression: &'static str,
        value: f64,
        degree: u32,
        kind: MarginKind,
        argmin: Option<(f64, f64)>,
    ) -> ConditionMargin {
        ConditionMargin {
            name,
            expression,
            value,
            normalized: value / self.unit.powi(degree as i32),
            kind,
            degree,
            argmin,
        }
    }

    fn nonneg(&mut self, name: &'static str, expression: &'static str, value: f64) {
        let m = self.entry(name, expression, value, 1, MarginKind::NonNegative, None);
        self.margins.push(m);
    }

    fn strict(&mut self, name: &'static str, expression: &'static str, value: f64, degree: u32) {
        let m = self.entry(name, expression, value, degree, MarginKind::Strict, None);
        self.margins.push(m);
    }

    fn strict_min(
        &mut self,
        name: &'static str,
        expression: &'static str,
        value: f64,
        degree: u32,
        argmin: (f64, f64),
    ) {
        let m = self.entry(
            name,
            expression,
            value,
            degree,
            MarginKind::Strict,
            Some(argmin),
        );
        self.margins.push(m);
    }

    fn info(&mut self, name: &'static str, expression: &'static str, value: f64, degree: u32) {
        let m = self.entry(name, expression, value, degree, MarginKind::Strict, None);
        self.informational.push(m);
    }

    fn finish(
        self,
        case_used: &'static str,
        opts: &CheckOptions,
        snapped: Vec<&'static str>,
        minimizer: Option<MinimizerSummary>,
    ) -> BoundsReport {
        let verdict = verdict_from(&self.margins, opts.tol);
        BoundsReport {
            case_used,
            verdict,
            margins: self.margins,
            informational: self.informational,
            scale: self.unit,
            tol: opts.tol,
            snapped,
            minimizer,
            cross_check_verdict: None,
        }
    }
}

/// Snaps anisotropic moduli within `tol * sqrt(T0 T1)` of zero to exact
/// zeros (resolving their angles by convention) and records which.
fn snap_laminate(lp: &LaminatePolar, tol: f64) -> (LaminatePolar, Vec<&'static str>) {
    let threshold = tol * lp.unit_scale();
    let mut snapped = Vec::new();
    let snap_tensor = |t: &PolarElastic4, names: [&'static str; 2], log: &mut Vec<&'static str>| {
        let mut r0 = t.r0;
        let mut r1 = t.r1;
        if r0 > 0.0 && r0 <= threshold {
            r0 = 0.0;
            log.push(names[0]);
        }
        if r1 > 0.0 && r1 <= threshold {
            r1 = 0.0;
            log.push(names[1]);
        }
        PolarElastic4::assemble(t.t0, t.t1, r0, r1, t.phi0, t.phi1)
    };
    let a = snap_tensor(lp.a(), ["R0A", "R1A"], &mut snapped);
    let b = snap_tensor(lp.b(), ["R0B", "R1B"], &mut snapped);
    let d = snap_tensor(lp.d(), ["R0D", "R1D"], &mut snapped);
    let sn = LaminatePolar::new(a, b, d, lp.thickness()).expect("snap preserves validity");
    (sn, snapped)
}

fn min_candidate(values: &[f64]) -> (usize, f64) {
    values
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("candidate list is non-empty")
}

/// The complete general condition set: extension-side closed forms plus
/// the certified numeric minimum of the determinant surface. When the
/// coupling vanishes the set reduces to the separate extension and bending
/// conditions and no minimization is needed.
pub fn feasibility_general(lp: &LaminatePolar, opts: &CheckOptions) -> BoundsReport {
    let (sn, snapped) = snap_laminate(lp, opts.tol);
    if sn.b().r0 == 0.0 && sn.b().r1 == 0.0 {
        return uncoupled_reduction(&sn, opts, snapped);
    }
    let da = derived_angles(&sn);
    let m2a = m2_margins(sn.a());
    let m2d = m2_margins(sn.d());
    let m3a = m3_margins(sn.a(), sn.b(), da.delta_a);
    let m3d = m3_margins(sn.d(), sn.b(), da.delta_d);
    let min4 = minimize_m4(&sn, &da, opts.grid_step, opts.refine_tol);

    let mut s = MarginSet::new(&sn);
    s.nonneg("general.1", "R0A", sn.a().r0);
    s.nonneg("general.2", "R1A", sn.a().r1);
    s.nonneg("general.3", "R0B", sn.b().r0);
    s.nonneg("general.4", "R1B", sn.b().r1);
    s.nonneg("general.5", "R0D", sn.d().r0);
    s.nonneg("general.6", "R1D", sn.d().r1);
    s.strict("general.7", "T0 - R0A", m2a.gap, 1);
    s.strict(
        "general.8",
        "T1 (T0^2 - R0A^2) - 2 R1A^2 (T0 - R0A cos 4 Phi_A)",
        m2a.poly,
        3,
    );
    s.strict("general.9", "T0 T1 - R1A^2 - 3 R1B^2", m3a.linear, 2);
    s.strict(
        "general.10",
        "T1^2 (T0^2 - R0A^2) + 6 T1 R0A R1B^2 cos 4(Phi_A - delta_A) \
         - 2 R1A^2 [T1 (T0 - R0A cos 4 Phi_A) - 3 R1B^2] \
         - 6 R1B^2 (T0 T1 + R1A^2 cos 4 delta_A)",
        m3a.poly,
        4,
    );
    s.strict_min(
        "general.11",
        "min of the determinant surface over the direction torus",
        min4.value,
        4,
        to_laminate_frame(&sn, min4.argmin),
    );

    s.info("general.info.m2_mid_a", "T0 T1 - R1A^2", m2a.discarded, 2);
    s.info("general.info.m2_gap_d", "T0 - R0D", m2d.gap, 1);
    s.info(
        "general.info.m2_poly_d",
        "T1 (T0^2 - R0D^2) - 2 R1D^2 (T0 - R0D cos 4 Phi_D)",
        m2d.poly,
        3,
    );
    s.info("general.info.m2_mid_d", "T0 T1 - R1D^2", m2d.discarded, 2);
    s.info(
        "general.info.m3_lin_d",
        "T0 T1 - R1D^2 - 3 R1B^2",
        m3d.linear,
        2,
    );
    s.info(
        "general.info.m3_poly_d",
        "T1^2 (T0^2 - R0D^2) + 6 T1 R0D R1B^2 cos 4(Phi_D - delta_D) \
         - 2 R1D^2 [T1 (T0 - R0D cos 4 Phi_D) - 3 R1B^2] \
         - 6 R1B^2 (T0 T1 + R1D^2 cos 4 delta_D)",
        m3d.poly,
        4,
    );

    s.finish(
        "general",
        opts,
        snapped,
        Some(MinimizerSummary {
            grid_min: min4.grid_min,
            certified_lower_bound: min4.certified_lower_bound,
            converged: min4.converged,
        }),
    )
}

fn uncoupled_reduction(
    sn: &LaminatePolar,
    opts: &CheckOptions,
    snapped: Vec<&'static str>,
) -> BoundsReport {
    let m2a = m2_margins(sn.a());
    let m2d = m2_margins(sn.d());
    let mut s = MarginSet::new(sn);
    s.nonneg("uncoupled.1", "R0A", sn.a().r0);
    s.nonneg("uncoupled.2", "R1A", sn.a().r1);
    s.strict("uncoupled.3", "T0 - R0A", m2a.gap, 1);
    s.strict(
        "uncoupled.4",
        "T1 (T0^2 - R0A^2) - 2 R1A^2 (T0 - R0A cos 4 Phi_A)",
        m2a.poly,
        3,
    );
    s.nonneg("uncoupled.5", "R0D", sn.d().r0);
    s.nonneg("uncoupled.6", "R1D", sn.d().r1);
    s.strict("uncoupled.7", "T0 - R0D", m2d.gap, 1);
    s.strict(
        "uncoupled.8",
        "T1 (T0^2 - R0D^2) - 2 R1D^2 (T0 - R0D cos 4 Phi_D)",
        m2d.poly,
        3,
    );
    s.info("uncoupled.info.m2_mid_a", "T0 T1 - R1A^2", m2a.discarded, 2);
    s.info("uncoupled.info.m2_mid_d", "T0 T1 - R1D^2", m2d.discarded, 2);
    s.finish("general (uncoupled reduction)", opts, snapped, None)
}

/// Closed-form set for aligned orthotropic configurations: invariant and
/// shift angles on their quarter- and half-pi grids (angles attached to
/// vanished moduli excepted). The determinant minimum is the smallest of
/// the four candidate values.
pub fn feasibility_aligned(
    lp: &LaminatePolar,
    opts: &CheckOptions,
) -> Result<BoundsReport, CaseError> {
    let (sn, snapped) = snap_laminate(lp, opts.tol);
    let da = derived_angles(&sn);
    let cfg = AlignedConfig::extract(&sn, &da)?;
    let candidates = aligned_m4_candidates(&sn, &cfg);
    let (idx, min4) = min_candidate(&candidates);
    let sa = if cfg.k_a % 2 == 0 { 1.0 } else { -1.0 };
    let sd = if cfg.k_d % 2 == 0 { 1.0 } else { -1.0 };
    let (t0, t1) = (sn.t0(), sn.t1());
    let (r1a2, r1b2, r1d2) = (
        sn.a().r1 * sn.a().r1,
        sn.b().r1 * sn.b().r1,
        sn.d().r1 * sn.d().r1,
    );

    let mut s = MarginSet::new(&sn);
    s.nonneg("aligned.1", "R0A", sn.a().r0);
    s.nonneg("aligned.2", "R1A", sn.a().r1);
    s.nonneg("aligned.3", "R0B", sn.b().r0);
    s.nonneg("aligned.4", "R1B", sn.b().r1);
    s.nonneg("aligned.5", "R0D", sn.d().r0);
    s.nonneg("aligned.6", "R1D", sn.d().r1);
    s.strict("aligned.7", "T0 - R0A", t0 - sn.a().r0, 1);
    s.strict(
        "aligned.8",
        "T0 T1 - R1A^2 - 3 R1B^2",
        t0 * t1 - r1a2 - 3.0 * r1b2,
        2,
    );
    s.strict(
        "aligned.9",
        "T1 [T0 + (-1)^kA R0A] - 2 R1A^2 - 6 R1B^2",
        t1 * (t0 + sa * sn.a().r0) - 2.0 * r1a2 - 6.0 * r1b2,
        2,
    );
    s.strict_min(
        "aligned.10",
        "min of the four candidate values of the determinant surface",
        min4,
        4,
        to_laminate_frame(&sn, CANDIDATE_POINTS[idx]),
    );

    s.info(
        "aligned.info.m4_p1",
        "determinant surface at (0, 0)",
        candidates[0],
        4,
    );
    s.info(
        "aligned.info.m4_p2",
        "determinant surface at (pi/4, 0)",
        candidates[1],
        4,
    );
    s.info(
        "aligned.info.m4_p3",
        "determinant surface at (0, pi/4)",
        candidates[2],
        4,
    );
    s.info(
        "aligned.info.m4_p4",
        "determinant surface at (pi/4, pi/4)",
        candidates[3],
        4,
    );
    s.info("aligned.info.gap_d", "T0 - R0D", t0 - sn.d().r0, 1);
    s.info(
        "aligned.info.m2m3_d",
        "T1 [T0 + (-1)^kD R0D] - 2 R1D^2 - 6 R1B^2",
        t1 * (t0 + sd * sn.d().r0) - 2.0 * r1d2 - 6.0 * r1b2,
        2,
    );
    Ok(s.finish("aligned orthotropic", opts, snapped, None))
}

fn require_pattern(
    snapped_value: f64,
    raw_value: f64,
    case: &'static str,
    name: &'static str,
) -> Result<(), CaseError> {
    if snapped_value == 0.0 {
        Ok(())
    } else {
        Err(CaseError::PatternMismatch {
            case,
            name,
            value: raw_value,
        })
    }
}

/// Evaluates the condition set of one symmetric special case, after
/// verifying its vanishing-moduli pattern (within the snap tolerance) and,
/// where the case's closed forms require it, the alignment pattern.
pub fn feasibility_special(
    lp: &LaminatePolar,
    case: SpecialCase,
    opts: &CheckOptions,
) -> Result<BoundsReport, CaseError> {
    let (sn, snapped) = snap_laminate(lp, opts.tol);
    let da = derived_angles(&sn);
    match case {
        SpecialCase::SquareSymmetricB => square_b(&sn, &da, lp, opts, snapped),
        SpecialCase::FullySquareSymmetric => full_square(&sn, &da, lp, opts, snapped),
        SpecialCase::R0Orthotropic => r0_ortho(&sn, &da, lp, opts, snapped),
        SpecialCase::CoupledIsotropic => coupled_iso(&sn, &da, lp, opts, snapped),
    }
}

fn square_b(
    sn: &LaminatePolar,
    da: &DerivedAngles,
    raw: &LaminatePolar,
    opts: &CheckOptions,
    snapped: Vec<&'static str>,
) -> Result<BoundsReport, CaseError> {
    let label = SpecialCase::SquareSymmetricB.label();
    require_pattern(sn.b().r1, raw.b().r1, label, "R1B")?;
    let cfg = AlignedConfig::extract(sn, da)?;
    let candidates = square_b_m4_candidates(sn, &cfg);
    let (idx, min4) = min_candidate(&candidates);
    let sa = if cfg.k_a % 2 == 0 { 1.0 } else { -1.0 };
    let sd = if cfg.k_d % 2 == 0 { 1.0 } else { -1.0 };
    let (t0, t1) = (sn.t0(), sn.t1());

    let mut s = MarginSet::new(sn);
    s.nonneg("square-b.1", "R0A", sn.a().r0);
    s.nonneg("square-b.2", "R1A", sn.a().r1);
    s.nonneg("square-b.3", "R0B", sn.b().r0);
    s.nonneg("square-b.4", "R0D", sn.d().r0);
    s.nonneg("square-b.5", "R1D", sn.d().r1);
    s.strict("square-b.6", "T0 - R0A", t0 - sn.a().r0, 1);
    s.strict(
        "square-b.7",
        "T1 [T0 + (-1)^kA R0A] - 2 R1A^2",
        t1 * (t0 + sa * sn.a().r0) - 2.0 * sn.a().r1 * sn.a().r1,
        2,
    );
    s.strict_min(
        "square-b.8",
        "min of the four candidate values of the determinant surface",
        min4,
        4,
        to_laminate_frame(sn, CANDIDATE_POINTS[idx]),
    );
    s.info(
        "square-b.info.m4_p1",
        "determinant surface at (0, 0)",
        candidates[0],
        4,
    );
    s.info(
        "square-b.info.m4_p2",
        "determinant surface at (pi/4, 0)",
        candidates[1],
        4,
    );
    s.info(
        "square-b.info.m4_p3",
        "determinant surface at (0, pi/4)",
        candidates[2],
        4,
    );
    s.info(
        "square-b.info.m4_p4",
        "determinant surface at (pi/4, pi/4)",
        candidates[3],
        4,
    );
    s.info("square-b.info.gap_d", "T0 - R0D", t0 - sn.d().r0, 1);
    s.info(
        "square-b.info.poly_d",
        "T1 [T0 + (-1)^kD R0D] - 2 R1D^2",
        t1 * (t0 + sd * sn.d().r0) - 2.0 * sn.d().r1 * sn.d().r1,
        2,
    );
    Ok(s.finish(label, opts, snapped, None))
}

fn full_square(
    sn: &LaminatePolar,
    da: &DerivedAngles,
    raw: &LaminatePolar,
    opts: &CheckOptions,
    snapped: Vec<&'static str>,
) -> Result<BoundsReport, CaseError> {
    let label = SpecialCase::FullySquareSymmetric.label();
    require_pattern(sn.a().r1, raw.a().r1, label, "R1A")?;
    require_pattern(sn.b().r1, raw.b().r1, label, "R1B")?;
    require_pattern(sn.d().r1, raw.d().r1, label, "R1D")?;
    let cfg = AlignedConfig::extract(sn, da)?;
    let candidates = full_square_m4_candidates(sn, &cfg);
    let (idx, min4) = min_candidate(&candidates);
    let t0 = sn.t0();

    let mut s = MarginSet::new(sn);
    s.nonneg("full-square.1", "R0A", sn.a().r0);
    s.nonneg("full-square.2", "R0B", sn.b().r0);
    s.nonneg("full-square.3", "R0D", sn.d().r0);
    s.strict("full-square.4", "T0 - R0A", t0 - sn.a().r0, 1);
    s.strict_min(
        "full-square.5",
        "min of the four candidate values (quadratic forms without T1^2)",
        min4,
        2,
        to_laminate_frame(sn, CANDIDATE_POINTS[idx]),
    );
    s.info(
        "full-square.info.m4_p1",
        "candidate at (0, 0)",
        candidates[0],
        2,
    );
    s.info(
        "full-square.info.m4_p2",
        "candidate at (pi/4, 0)",
        candidates[1],
        2,
    );
    s.info(
        "full-square.info.m4_p3",
        "candidate at (0, pi/4)",
        candidates[2],
        2,
    );
    s.info(
        "full-square.info.m4_p4",
        "candidate at (pi/4, pi/4)",
        candidates[3],
        2,
    );
    s.info("full-square.info.gap_d", "T0 - R0D", t0 - sn.d().r0, 1);
    Ok(s.finish(label, opts, snapped, None))
}

fn r0_ortho(
    sn: &LaminatePolar,
    da: &DerivedAngles,
    raw: &LaminatePolar,
    opts: &CheckOptions,
    snapped: Vec<&'static str>,
) -> Result<BoundsReport, CaseError> {
    let label = SpecialCase::R0Orthotropic.label();
    require_pattern(sn.a().r0, raw.a().r0, label, "R0A")?;
    require_pattern(sn.b().r0, raw.b().r0, label, "R0B")?;
    require_pattern(sn.d().r0, raw.d().r0, label, "R0D")?;
    let (t0, t1) = (sn.t0(), sn.t1());
    let tt = t0 * t1;
    let (r1a2, r1b2, r1d2) = (
        sn.a().r1 * sn.a().r1,
        sn.b().r1 * sn.b().r1,
        sn.d().r1 * sn.d().r1,
    );
    let m3a = m3_margins(sn.a(), sn.b(), da.delta_a);
    let m3d = m3_margins(sn.d(), sn.b(), da.delta_d);

    if let Ok(cfg) = AlignedConfig::extract(sn, da) {
        let candidates = r0_ortho_m4_candidates(sn, &cfg);
        let (idx, min4) = min_candidate(&candidates);
        let mut s = MarginSet::new(sn);
        s.nonneg("r0-aligned.1", "R1A", sn.a().r1);
        s.nonneg("r0-aligned.2", "R1B", sn.b().r1);
        s.nonneg("r0-aligned.3", "R1D", sn.d().r1);
        s.strict(
            "r0-aligned.4",
            "T0 T1 - R1A^2 - 3 R1B^2",
            tt - r1a2 - 3.0 * r1b2,
            2,
        );
        s.strict(
            "r0-aligned.5",
            "T0 T1 - 2 R1A^2 - 6 R1B^2",
            tt - 2.0 * r1a2 - 6.0 * r1b2,
            2,
        );
        s.strict_min(
            "r0-aligned.6",
            "min of the three non-constant candidate values",
            min4,
            4,
            to_laminate_frame(sn, CANDIDATE_POINTS[idx]),
        );
        s.info(
            "r0-aligned.info.m4_p1",
            "candidate at (0, 0)",
            candidates[0],
            4,
        );
        s.info(
            "r0-aligned.info.m4_p2",
            "candidate at (pi/4, 0)",
            candidates[1],
            4,
        );
        s.info(
            "r0-aligned.info.m4_p3",
            "candidate at (0, pi/4)",
            candidates[2],
            4,
        );
        s.info(
            "r0-aligned.info.m4_p4",
            "constant candidate (T0 T1)^2",
            tt * tt,
            4,
        );
        s.info(
            "r0-aligned.info.lin_d",
            "T0 T1 - R1D^2 - 3 R1B^2",
            tt - r1d2 - 3.0 * r1b2,
            2,
        );
        s.info(
            "r0-aligned.info.m2m3_d",
            "T0 T1 - 2 R1D^2 - 6 R1B^2",
            tt - 2.0 * r1d2 - 6.0 * r1b2,
            2,
        );
        return Ok(s.finish("r0-orthotropic (aligned)", opts, snapped, None));
    }

    let min4 = minimize_m4(sn, da, opts.grid_step, opts.refine_tol);
    let mut s = MarginSet::new(sn);
    s.nonneg("r0-ortho.1", "R1A", sn.a().r1);
    s.nonneg("r0-ortho.2", "R1B", sn.b().r1);
    s.nonneg("r0-ortho.3", "R1D", sn.d().r1);
    s.strict("r0-ortho.4", "T0 T1 - 2 R1A^2", tt - 2.0 * r1a2, 2);
    s.strict("r0-ortho.5", "T0 T1 - R1A^2 - 3 R1B^2", m3a.linear, 2);
    s.strict(
        "r0-ortho.6",
        "T0^2 T1^2 - 2 R1A^2 (T0 T1 - 3 R1B^2) - 6 R1B^2 (T0 T1 + R1A^2 cos 4 delta_A)",
        m3a.poly,
        4,
    );
    s.strict_min(
        "r0-ortho.7",
        "min of the determinant surface over the direction torus",
        min4.value,
        4,
        to_laminate_frame(sn, min4.argmin),
    );
    s.info("r0-ortho.info.m2_d", "T0 T1 - 2 R1D^2", tt - 2.0 * r1d2, 2);
    s.info(
        "r0-ortho.info.lin_d",
        "T0 T1 - R1D^2 - 3 R1B^2",
        m3d.linear,
        2,
    );
    s.info(
        "r0-ortho.info.m3_poly_d",
        "T0^2 T1^2 - 2 R1D^2 (T0 T1 - 3 R1B^2) - 6 R1B^2 (T0 T1 + R1D^2 cos 4 delta_D)",
        m3d.poly,
        4,
    );
    Ok(s.finish(
        label,
        opts,
        snapped,
        Some(MinimizerSummary {
            grid_min: min4.grid_min,
            certified_lower_bound: min4.certified_lower_bound,
            converged: min4.converged,
        }),
    ))
}

fn coupled_iso(
    sn: &LaminatePolar,
    da: &DerivedAngles,
    raw: &LaminatePolar,
    opts: &CheckOptions,
    snapped: Vec<&'static str>,
) -> Result<BoundsReport, CaseError> {
    let label = SpecialCase::CoupledIsotropic.label();
    require_pattern(sn.a().r0, raw.a().r0, label, "R0A")?;
    require_pattern(sn.a().r1, raw.a().r1, label, "R1A")?;
    require_pattern(sn.d().r0, raw.d().r0, label, "R0D")?;
    require_pattern(sn.d().r1, raw.d().r1, label, "R1D")?;
    let (t0, t1) = (sn.t0(), sn.t1());
    let tt = t0 * t1;
    let r1b2 = sn.b().r1 * sn.b().r1;

    let mut s = MarginSet::new(sn);
    s.nonneg("iso.1", "R0B", sn.b().r0);
    s.nonneg("iso.2", "R1B", sn.b().r1);
    s.strict("iso.3", "T0 T1 - 6 R1B^2", tt - 6.0 * r1b2, 2);

    let orthotropic_b = sn.b().r0 == 0.0 || grid_distance(da.phi_b, FRAC_PI_4) <= ANGLE_TOL;
    let minimizer = if orthotropic_b {
        let candidates = coupled_iso_m4_candidates(sn);
        let (idx, min4) = min_candidate(&candidates);
        let points = [(0.0, 0.0), (FRAC_PI_4, 0.0), (FRAC_PI_4, FRAC_PI_4)];
        s.strict_min(
            "iso.4",
            "min of the candidate values of the determinant surface",
            min4,
            4,
            to_laminate_frame(sn, points[idx]),
        );
        s.info("iso.info.m4_p1", "candidate at (0, 0)", candidates[0], 4);
        s.info(
            "iso.info.m4_mixed",
            "candidate at the mixed points",
            candidates[1],
            4,
        );
        s.info(
            "iso.info.m4_p4",
            "candidate at (pi/4, pi/4)",
            candidates[2],
            4,
        );
        None
    } else {
        let min4 = minimize_m4(sn, da, opts.grid_step, opts.refine_tol);
        s.strict_min(
            "iso.4",
            "min of the determinant surface over the direction torus",
            min4.value,
            4,
            to_laminate_frame(sn, min4.argmin),
        );
        Some(MinimizerSummary {
            grid_min: min4.grid_min,
            certified_lower_bound: min4.certified_lower_bound,
            converged: min4.converged,
        })
    };
    Ok(s.finish(label, opts, snapped, minimizer))
}

/// Routes a laminate to the most specific applicable condition set:
/// vanishing coupling first, then the symmetric special cases, then the
/// aligned closed forms, then the general set. With
/// `opts.cross_check_general` set, also runs the general path and records
/// its verdict.
pub fn dispatch_check(lp: &LaminatePolar, opts: &CheckOptions) -> BoundsReport {
    let mut report = dispatch_route(lp, opts);
    if opts.cross_check_general && !report.case_used.starts_with("general") {
        let general = feasibility_general(lp, opts);
        report.cross_check_verdict = Some(general.verdict);
    }
    report
}

fn dispatch_route(lp: &LaminatePolar, opts: &CheckOptions) -> BoundsReport {
    let (sn, _) = snap_laminate(lp, opts.tol);
    let (a, b, d) = (sn.a(), sn.b(), sn.d());

    if b.r0 == 0.0 && b.r1 == 0.0 {
        return feasibility_general(lp, opts);
    }
    if a.r0 == 0.0 && a.r1 == 0.0 && d.r0 == 0.0 && d.r1 == 0.0 {
        return feasibility_special(lp, SpecialCase::CoupledIsotropic, opts)
            .expect("isotropic pattern verified");
    }
    if a.r1 == 0.0 && b.r1 == 0.0 && d.r1 == 0.0 {
        if let Ok(report) = feasibility_special(lp, SpecialCase::FullySquareSymmetric, opts) {
            return report;
        }
    }
    if a.r0 == 0.0 && b.r0 == 0.0 && d.r0 == 0.0 {
        return feasibility_special(lp, SpecialCase::R0Orthotropic, opts)
            .expect("r0 pattern verified");
    }
    if b.r1 == 0.0 {
        if let Ok(report) = feasibility_special(lp, SpecialCase::SquareSymmetricB, opts) {
            return report;
        }
    }
    if let Ok(report) = feasibility_aligned(lp, opts) {
        return report;
    }
    feasibility_general(lp, opts)
}
