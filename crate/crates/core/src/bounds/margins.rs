//! Closed-form margin expressions for the feasibility condition sets.
//!
//! All expressions are written in tensor invariants (`T0`, `T1`, the six
//! anisotropic moduli, the invariant angles `Phi_A`, `Phi_B`, `Phi_D`) and
//! the two shift angles `delta_A`, `delta_D`, so every margin is frame
//! independent.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::bounds::CaseError;
use crate::lamination::{DerivedAngles, LaminatePolar};
use crate::polar::{grid_distance, PolarElastic4, ANGLE_TOL};

/// Margins of the two-minor condition for a single tensor (`A` or `D`,
/// carrying the layer isotropic moduli).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct M2Margins {
    /// `T0 - R0`
    pub gap: f64,
    /// `T1 (T0^2 - R0^2) - 2 R1^2 (T0 - R0 cos 4 Phi)`
    pub poly: f64,
    /// `T0 T1 - R1^2`; implied by the two margins above and reported only
    /// informationally.
    pub discarded: f64,
}

/// Two-minor condition margins for tensor `x` (taken as `A` or `D`).
pub fn m2_margins(x: &PolarElastic4) -> M2Margins {
    let c = (4.0 * x.invariant_angle()).cos();
    M2Margins {
        gap: x.t0 - x.r0,
        poly: x.t1 * (x.t0 * x.t0 - x.r0 * x.r0) - 2.0 * x.r1 * x.r1 * (x.t0 - x.r0 * c),
        discarded: x.t0 * x.t1 - x.r1 * x.r1,
    }
}

/// Margins of the three-minor condition coupling tensor `x` (`A` with
/// `delta = delta_A`, or `D` with `delta = delta_D`) to the coupling
/// tensor `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct M3Margins {
    /// `T0 T1 - R1x^2 - 3 R1B^2`
    pub linear: f64,
    /// The quartic interaction polynomial.
    pub poly: f64,
}

pub fn m3_margins(x: &PolarElastic4, b: &PolarElastic4, delta: f64) -> M3Margins {
    let (t0, t1) = (x.t0, x.t1);
    let phi = x.invariant_angle();
    let r1b2 = b.r1 * b.r1;
    let r1x2 = x.r1 * x.r1;
    // phi - delta is the four-harmonic orientation of x in the coupling frame
    M3Margins {
        linear: t0 * t1 - r1x2 - 3.0 * r1b2,
        poly: t1 * t1 * (t0 * t0 - x.r0 * x.r0)
            + 6.0 * t1 * x.r0 * r1b2 * (4.0 * (phi - delta)).cos()
            - 2.0 * r1x2 * (t1 * (t0 - x.r0 * (4.0 * phi).cos()) - 3.0 * r1b2)
            - 6.0 * r1b2 * (t0 * t1 + r1x2 * (4.0 * delta).cos()),
    }
}

/// The quartic determinant surface of the energy matrix, normalized by its
/// diagonal prefactor, written in the frame of the coupling tensor
/// (`theta = Phi1^B`). `phi_eps` and `phi_kap` are measured in that frame;
/// the expression has period `pi/2` in each.
pub fn m4_value(lp: &LaminatePolar, da: &DerivedAngles, phi_eps: f64, phi_kap: f64) -> f64 {
    let (t0, t1) = (lp.t0(), lp.t1());
    let (r0a, r1a) = (lp.a().r0, lp.a().r1);
    let (r0b, r1b) = (lp.b().r0, lp.b().r1);
    let (r0d, r1d) = (lp.d().r0, lp.d().r1);
    let (pe, pk) = (phi_eps, phi_kap);

    let ce = (2.0 * pe).cos();
    let ck = (2.0 * pk).cos();
    let (ce2, ck2) = (ce * ce, ck * ck);
    let ca = (2.0 * (da.delta_a + pe)).cos();
    let cd = (2.0 * (da.delta_d + pk)).cos();
    let ga = (4.0 * (da.phi_a - da.delta_a - pe)).cos();
    let gd = (4.0 * (da.phi_d - da.delta_d - pk)).cos();
    let cb = (2.0 * (2.0 * da.phi_b - pe - pk)).cos();
    let r1b2 = r1b * r1b;

    let fa = t0 * t1 + t1 * r0a * ga - 2.0 * r1a * r1a * ca * ca;
    let fd = t0 * t1 + t1 * r0d * gd - 2.0 * r1d * r1d * cd * cd;

    fa * fd + 36.0 * r1b2 * r1b2 * ce2 * ck2
        - 6.0 * t0 * t1 * r1b2 * (ce2 + ck2)
        - 3.0 * t1 * t1 * r0b * r0b * cb * cb
        - 24.0 * r1a * r1b2 * r1d * ca * ce * cd * ck
        - 6.0 * t1 * r1b2 * (r0a * ga * ck2 + r0d * gd * ce2)
        + 12.0 * t1 * r0b * r1b * cb * (r1a * ca * ck + r1d * cd * ce)
}

/// The four stationary candidate points of the determinant surface for
/// aligned configurations, in the coupling frame.
pub const CANDIDATE_POINTS: [(f64, f64); 4] = [
    (0.0, 0.0),
    (FRAC_PI_4, 0.0),
    (0.0, FRAC_PI_4),
    (FRAC_PI_4, FRAC_PI_4),
];

/// Discrete configuration of an aligned-orthotropic laminate: parities of
/// the invariant angles on the quarter-pi grid and of the shift angles on
/// the half-pi grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlignedConfig {
    pub k_a: u8,
    pub k_b: u8,
    pub k_d: u8,
    pub lambda_a: u8,
    pub lambda_d: u8,
}

fn parity(angle: f64, grid: f64) -> u8 {
    ((angle / grid).round() as i64).rem_euclid(2) as u8
}

impl AlignedConfig {
    /// Extracts the configuration, verifying the alignment pattern.
    ///
    /// The check is term-aware: an angle constrains the configuration only
    /// when the modulus it multiplies is nonzero, so conventions attached
    /// to vanished moduli never reject a laminate. The effective
    /// quarter-pi-grid angles of `A` and `D` are `Phi_X - delta_X` (their
    /// four-harmonic orientation seen from the coupling frame).
    pub fn extract(lp: &LaminatePolar, da: &DerivedAngles) -> Result<Self, CaseError> {
        let e_a = da.phi_a - da.delta_a;
        let e_d = da.phi_d - da.delta_d;
        let checks: [(&'static str, f64, f64, bool); 5] = [
            ("Phi_A - delta_A", e_a, FRAC_PI_4, lp.a().r0 > 0.0),
            ("delta_A", da.delta_a, FRAC_PI_2, lp.a().r1 > 0.0),
            ("Phi_D - delta_D", e_d, FRAC_PI_4, lp.d().r0 > 0.0),
            ("delta_D", da.delta_d, FRAC_PI_2, lp.d().r1 > 0.0),
            ("Phi_B", da.phi_b, FRAC_PI_4, lp.b().r0 > 0.0),
        ];
        for (name, angle, grid, active) in checks {
            if active && grid_distance(angle, grid) > ANGLE_TOL {
                return Err(CaseError::NotAligned {
                    angle: name,
                    value: angle,
                });
            }
        }
        Ok(AlignedConfig {
            k_a: parity(e_a, FRAC_PI_4),
            k_b: parity(da.phi_b, FRAC_PI_4),
            k_d: parity(e_d, FRAC_PI_4),
            lambda_a: parity(da.delta_a, FRAC_PI_2),
            lambda_d: parity(da.delta_d, FRAC_PI_2),
        })
    }

    fn signs(&self) -> (f64, f64, f64, f64, f64) {
        let s = |k: u8| if k % 2 == 0 { 1.0 } else { -1.0 };
        (
            s(self.k_a),
            s(self.k_b),
            s(self.k_d),
            s(self.lambda_a),
            s(self.lambda_d),
        )
    }
}

/// Values of the determinant surface at the four candidate points for an
/// aligned configuration (closed forms, general coupled case).
pub fn aligned_m4_candidates(lp: &LaminatePolar, cfg: &AlignedConfig) -> [f64; 4] {
    let (t0, t1) = (lp.t0(), lp.t1());
    let (r0a, r1a) = (lp.a().r0, lp.a().r1);
    let (r0b, r1b) = (lp.b().r0, lp.b().r1);
    let (r0d, r1d) = (lp.d().r0, lp.d().r1);
    let (sa, sb, sd, ta, td) = cfg.signs();
    let (r1a2, r1b2, r1d2) = (r1a * r1a, r1b * r1b, r1d * r1d);

    let m41 = (t0 * t1 + sa * t1 * r0a - 2.0 * r1a2) * (t0 * t1 + sd * t1 * r0d - 2.0 * r1d2)
        + 36.0 * r1b2 * r1b2
        - 3.0 * t1 * t1 * r0b * r0b
        - 6.0 * t1 * r1b2 * (2.0 * t0 + sa * r0a + sd * r0d)
        + 12.0 * sb * t1 * r0b * r1b * (ta * r1a + td * r1d)
        - 24.0 * ta * td * r1a * r1b2 * r1d;
    let m42 = t1 * (t0 - sa * r0a) * (t1 * (t0 + sd * r0d) - 2.0 * r1d2 - 6.0 * r1b2);
    let m43 = t1 * (t0 - sd * r0d) * (t1 * (t0 + sa * r0a) - 2.0 * r1a2 - 6.0 * r1b2);
    let m44 = t1 * t1 * ((t0 - sa * r0a) * (t0 - sd * r0d) - 3.0 * r0b * r0b);
    [m41, m42, m43, m44]
}

/// Candidate values for a square-symmetric coupling (`R1B = 0`), aligned.
pub fn square_b_m4_candidates(lp: &LaminatePolar, cfg: &AlignedConfig) -> [f64; 4] {
    let (t0, t1) = (lp.t0(), lp.t1());
    let (r0a, r1a) = (lp.a().r0, lp.a().r1);
    let r0b = lp.b().r0;
    let (r0d, r1d) = (lp.d().r0, lp.d().r1);
    let (sa, _, sd, _, _) = cfg.signs();
    let (r1a2, r1d2) = (r1a * r1a, r1d * r1d);

    let qa = t1 * (t0 + sa * r0a) - 2.0 * r1a2;
    let qd = t1 * (t0 + sd * r0d) - 2.0 * r1d2;
    [
        qa * qd - 3.0 * t1 * t1 * r0b * r0b,
        t1 * (t0 - sa * r0a) * qd,
        t1 * (t0 - sd * r0d) * qa,
        t1 * t1 * ((t0 - sa * r0a) * (t0 - sd * r0d) - 3.0 * r0b * r0b),
    ]
}

/// Candidate values for fully square-symmetric laminates
/// (`R1A = R1B = R1D = 0`), aligned. These forms carry no factor `T1^2`
/// and are quadratic in the moduli.
pub fn full_square_m4_candidates(lp: &LaminatePolar, cfg: &AlignedConfig) -> [f64; 4] {
    let t0 = lp.t0();
    let (r0a, r0b, r0d) = (lp.a().r0, lp.b().r0, lp.d().r0);
    let (sa, _, sd, _, _) = cfg.signs();
    [
        (t0 + sa * r0a) * (t0 + sd * r0d) - 3.0 * r0b * r0b,
        (t0 - sa * r0a) * (t0 + sd * r0d),
        (t0 - sd * r0d) * (t0 + sa * r0a),
        (t0 - sa * r0a) * (t0 - sd * r0d) - 3.0 * r0b * r0b,
    ]
}

/// Candidate values for aligned laminates without four-harmonic
/// anisotropy (`R0A = R0B = R0D = 0`). The fourth candidate is the
/// constant `(T0 T1)^2` and is always positive.
pub fn r0_ortho_m4_candidates(lp: &LaminatePolar, cfg: &AlignedConfig) -> [f64; 3] {
    let tt = lp.t0() * lp.t1();
    let (r1a, r1b, r1d) = (lp.a().r1, lp.b().r1, lp.d().r1);
    let (_, _, _, ta, td) = cfg.signs();
    let (r1a2, r1b2, r1d2) = (r1a * r1a, r1b * r1b, r1d * r1d);
    [
        (tt - 2.0 * r1a2) * (tt - 2.0 * r1d2)
            - 12.0 * r1b2 * (tt - 3.0 * r1b2 + 2.0 * ta * td * r1a * r1d),
        tt * (tt - 2.0 * r1d2 - 6.0 * r1b2),
        tt * (tt - 2.0 * r1a2 - 6.0 * r1b2),
    ]
}

/// Candidate values for coupled isotropic laminates with orthotropic
/// coupling. The two mixed candidate points share one value, so three
/// distinct forms remain: `[at (0,0), at mixed points, at (pi/4, pi/4)]`.
pub fn coupled_iso_m4_candidates(lp: &LaminatePolar) -> [f64; 3] {
    let (t0, t1) = (lp.t0(), lp.t1());
    let (r0b, r1b) = (lp.b().r0, lp.b().r1);
    let tt = t0 * t1;
    let r1b2 = r1b * r1b;
    let square = t1 * t1 * (t0 * t0 - 3.0 * r0b * r0b);
    [
        square - 12.0 * r1b2 * (tt - 3.0 * r1b2),
        tt * (tt - 6.0 * r1b2),
        square,
    ]
}

/// Converts an angle pair from the coupling frame back to the laminate
/// frame, wrapped into `[0, pi/2)`.
pub fn to_laminate_frame(lp: &LaminatePolar, point: (f64, f64)) -> (f64, f64) {
    let wrap = |x: f64| x.rem_euclid(FRAC_PI_2);
    (wrap(point.0 + lp.b().phi1), wrap(point.1 + lp.b().phi1))
}
