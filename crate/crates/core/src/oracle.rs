//! Independent ground truth for differential testing.
//!
//! Nothing here reuses the closed-form condition sets: positive
//! definiteness is decided by eigenvalues of the 6x6 plate law (cyclic
//! Jacobi on the tiny fixed-size matrix), energies are sampled directly
//! from the three equivalent quadratic forms, and condition expressions
//! are minimized by exhaustive grid scans.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::{assemble_m, m4_value, Verdict};
use crate::lamination::{
    derived_angles, plate_law_matrix, polar_energy, DerivedAngles, LaminatePolar, PlateLaw,
    Stacking,
};
use crate::polar::{Cartesian2, PolarElastic4};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("matrix is not symmetric at ({i}, {j}): {left} vs {right}")]
    NotSymmetric {
        i: usize,
        j: usize,
        left: f64,
        right: f64,
    },
}

/// Eigenvalue-based feasibility verdict of the plate law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleVerdict {
    pub min_eigenvalue: f64,
    /// `min_eigenvalue / max |K_ij|`, the quantity the tolerance rule
    /// applies to.
    pub normalized: f64,
    pub verdict: Verdict,
    /// Jacobi rotations spent.
    pub iterations: usize,
}

/// Cyclic Jacobi eigenvalues of a small symmetric matrix. Iterates sweeps
/// until the off-diagonal norm falls below 1e-14 of the matrix norm.
#[allow(clippy::needless_range_loop)]
fn jacobi_eigenvalues<const N: usize>(mut a: [[f64; N]; N]) -> ([f64; N], usize) {
    let norm: f64 = a
        .iter()
        .flatten()
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    let mut rotations = 0;
    for _sweep in 0..60 {
        let mut off = 0.0;
        for i in 0..N {
            for j in (i + 1)..N {
                off += a[i][j] * a[i][j];
            }
        }
        if (2.0 * off).sqrt() <= 1e-14 * norm {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                rotations += 1;
            }
        }
    }
    let mut eigs = [0.0; N];
    for i in 0..N {
        eigs[i] = a[i][i];
    }
    eigs.sort_by(f64::total_cmp);
    (eigs, rotations)
}

/// Positive-definiteness check of the plate law by eigenvalue, with the
/// shared tolerance rule applied to the normalized minimum eigenvalue.
#[allow(clippy::needless_range_loop)]
pub fn kelvin_pd_check(law: &PlateLaw, tol: f64) -> Result<OracleVerdict, OracleError> {
    let k = law.matrix();
    for i in 0..6 {
        for j in (i + 1)..6 {
            if k[i][j] != k[j][i] {
                return Err(OracleError::NotSymmetric {
                    i,
                    j,
                    left: k[i][j],
                    right: k[j][i],
                });
            }
        }
    }
    let (eigs, iterations) = jacobi_eigenvalues(*k);
    let min_eigenvalue = eigs[0];
    let scale = law.max_abs_entry().max(f64::MIN_POSITIVE);
    let normalized = min_eigenvalue / scale;
    let verdict = if normalized < -tol {
        Verdict::Infeasible
    } else if normalized <= tol {
        Verdict::Marginal
    } else {
        Verdict::Feasible
    };
    Ok(OracleVerdict {
        min_eigenvalue,
        normalized,
        verdict,
        iterations,
    })
}

/// Minimum plate energy over `n` pseudo-random unit-norm strain/curvature
/// states. Each sample is cross-evaluated through the polar energy, the
/// 4x4 quadratic form and the 6x6 law; the three values must agree to
/// 1e-10 of the law scale.
pub fn energy_min_sample(lp: &LaminatePolar, n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let law = plate_law_matrix(lp);
    let scale = law.max_abs_entry();
    let h = lp.thickness();
    let mut min_energy = f64::INFINITY;
    for _ in 0..n.max(1) {
        let x = random_unit6(&mut rng);
        let sqrt2 = std::f64::consts::SQRT_2;
        let eps = Cartesian2 {
            e11: x[0],
            e22: x[1],
            e12: x[2] / sqrt2,
        };
        let kap = Cartesian2 {
            e11: x[3],
            e22: x[4],
            e12: x[5] / sqrt2,
        };
        let (pe, pk) = (eps.to_polar(), kap.to_polar());

        let u_polar = polar_energy(lp, &pe, &pk);
        let u_law = law.energy(&eps, &kap);
        let m = assemble_m(lp, pe.phi, pk.phi);
        let v = [pe.t, pe.r, pk.t, pk.r];
        let mut quad = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                quad += v[i] * m.entries()[i][j] * v[j];
            }
        }
        let u_quad = h / 24.0 * quad;

        let band = 1e-10 * scale.max(1e-300);
        assert!(
            (u_polar - u_law).abs() <= band && (u_polar - u_quad).abs() <= band,
            "energy paths disagree: polar {u_polar}, law {u_law}, quadratic {u_quad}"
        );
        min_energy = min_energy.min(u_law);
    }
    min_energy
}

fn random_unit6(rng: &mut ChaCha8Rng) -> [f64; 6] {
    loop {
        let mut x = [0.0; 6];
        for v in &mut x {
            *v = standard_normal(rng);
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for v in &mut x {
                *v /= norm;
            }
            return x;
        }
    }
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller on open-interval uniforms
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// Condition expressions minimized by exhaustive grid scan, used as slow
/// oracles against the closed forms and the refined minimizer.
pub enum BoundExpression<'a> {
    /// Extension-side two-minor quadratic of a tensor (`A` or `D`), as a
    /// function of one direction angle in the laminate frame.
    M2Quadratic(&'a PolarElastic4),
    /// Bracket of the three-minor condition: the two-minor quadratic of
    /// `x` minus the coupling term `6 R1B^2 cos^2 2(Phi1B - phi)`.
    M3Bracket {
        x: &'a PolarElastic4,
        coupling: &'a PolarElastic4,
    },
    /// The determinant surface in the coupling frame (two angles).
    M4Surface {
        lp: &'a LaminatePolar,
        angles: &'a DerivedAngles,
    },
}

impl BoundExpression<'_> {
    fn eval(&self, phi_eps: f64, phi_kap: f64) -> f64 {
        match self {
            BoundExpression::M2Quadratic(x) => {
                x.t1 * (x.t0 + x.r0 * (4.0 * (x.phi0 - phi_eps)).cos())
                    - 2.0 * x.r1 * x.r1 * (2.0 * (x.phi1 - phi_eps)).cos().powi(2)
            }
            BoundExpression::M3Bracket { x, coupling } => {
                x.t0 * x.t1 + x.t1 * x.r0 * (4.0 * (x.phi0 - phi_eps)).cos()
                    - 2.0 * x.r1 * x.r1 * (2.0 * (x.phi1 - phi_eps)).cos().powi(2)
                    - 6.0
                        * coupling.r1
                        * coupling.r1
                        * (2.0 * (coupling.phi1 - phi_eps)).cos().powi(2)
            }
            BoundExpression::M4Surface { lp, angles } => m4_value(lp, angles, phi_eps, phi_kap),
        }
    }

    fn is_two_dimensional(&self) -> bool {
        matches!(self, BoundExpression::M4Surface { .. })
    }
}

/// Exhaustive minimum of a condition expression over its period
/// (`[0, pi/2)` per angle) on a grid of the given step. Returns the
/// minimum and its location.
pub fn grid_min_expression(expr: &BoundExpression<'_>, grid_step: f64) -> (f64, (f64, f64)) {
    let n = (FRAC_PI_2 / grid_step).round().max(1.0) as usize;
    let step = FRAC_PI_2 / n as f64;
    let mut best = (f64::INFINITY, (0.0, 0.0));
    if expr.is_two_dimensional() {
        for i in 0..n {
            for j in 0..n {
                let (pe, pk) = (i as f64 * step, j as f64 * step);
                let v = expr.eval(pe, pk);
                if v < best.0 {
                    best = (v, (pe, pk));
                }
            }
        }
    } else {
        for i in 0..n {
            let pe = i as f64 * step;
            let v = expr.eval(pe, 0.0);
            if v < best.0 {
                best = (v, (pe, 0.0));
            }
        }
    }
    best
}

/// Golden-section refinement of a one-dimensional expression minimum
/// around a grid cell.
pub fn refine_min_1d<F: Fn(f64) -> f64>(f: F, center: f64, half_width: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (center - half_width, center + half_width);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Admissible ranges for random ply generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlyBounds {
    pub t0: (f64, f64),
    pub t1: (f64, f64),
    /// `R0` is drawn uniformly in `[0, r0_max_ratio * T0]`.
    pub r0_max_ratio: f64,
    /// `R1` is drawn uniformly inside its admissibility bound scaled by
    /// this margin.
    pub r1_margin: f64,
}

impl Default for PlyBounds {
    fn default() -> Self {
        Self {
            t0: (0.5, 2.0),
            t1: (0.5, 2.0),
            r0_max_ratio: 0.95,
            r1_margin: 0.95,
        }
    }
}

/// Deterministic random-laminate generation for differential testing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
    pub ply_bounds: PlyBounds,
    pub max_plies: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self {
            count: 100,
            seed: 0,
            ply_bounds: PlyBounds::default(),
            max_plies: 16,
        }
    }
}

/// A random ply strictly inside the single-layer bounds: moduli are drawn
/// uniformly within margins of the admissibility limits, so no rejection
/// loop is needed.
pub fn random_ply(rng: &mut ChaCha8Rng, bounds: &PlyBounds) -> PolarElastic4 {
    let t0 = rng.gen_range(bounds.t0.0..bounds.t0.1);
    let t1 = rng.gen_range(bounds.t1.0..bounds.t1.1);
    let r0 = rng.gen_range(0.0..bounds.r0_max_ratio * t0);
    let phi0 = rng.gen_range(-FRAC_PI_4..FRAC_PI_4);
    let phi1 = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
    let c = (4.0 * (phi0 - phi1)).cos();
    let r1_limit = (t1 * (t0 * t0 - r0 * r0) / (2.0 * (t0 - r0 * c))).sqrt();
    let r1 = rng.gen_range(0.0..1.0) * bounds.r1_margin * r1_limit;
    let ply = PolarElastic4::new(t0, t1, r0, r1, phi0, phi1).expect("finite moduli");
    debug_assert!(ply.layer_bounds().admissible());
    ply
}

/// Stream of random identical-ply stacks, deterministic for a fixed seed.
/// Every fourth stack is a palindrome (no coupling), a cross-ply stack
/// (aligned family) or a quasi-isotropic angle set; the rest draw their
/// orientations uniformly.
pub fn random_laminates(spec: &SampleSpec) -> Vec<Stacking> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for index in 0..spec.count {
        let ply = random_ply(&mut rng, &spec.ply_bounds);
        let n = rng.gen_range(2..=spec.max_plies.max(2));
        let h = rng.gen_range(0.2..3.0);
        let angles = match index % 4 {
            0 => {
                let half: Vec<f64> = (0..n.div_ceil(2))
                    .map(|_| rng.gen_range(-FRAC_PI_2..FRAC_PI_2))
                    .collect();
                let mut full = half.clone();
                let skip = n % 2; // middle ply shared for odd counts
                full.extend(half.iter().rev().skip(skip));
                full
            }
            1 => (0..n)
                .map(|_| if rng.gen::<bool>() { 0.0 } else { FRAC_PI_2 })
                .collect(),
            2 => (0..n)
                .map(|_| [0.0, PI / 3.0, -PI / 3.0][rng.gen_range(0..3)])
                .collect(),
            _ => (0..n)
                .map(|_| rng.gen_range(-FRAC_PI_2..FRAC_PI_2))
                .collect(),
        };
        out.push(Stacking::new(ply, angles, h).expect("generated plies are admissible"));
    }
    out
}

/// A random synthetic laminate triple with positive isotropic moduli and
/// free anisotropic moduli (not necessarily feasible), for exercising the
/// condition sets on both sides of the boundary.
pub fn random_coupled_laminate(rng: &mut ChaCha8Rng) -> LaminatePolar {
    let t0: f64 = rng.gen_range(0.5..2.0);
    let t1: f64 = rng.gen_range(0.5..2.0);
    let unit = (t0 * t1).sqrt();
    let mut tensor = |t0v: f64, t1v: f64, r0_max: f64| {
        PolarElastic4::new(
            t0v,
            t1v,
            rng.gen_range(0.0..r0_max),
            rng.gen_range(0.0..1.1 * unit),
            rng.gen_range(-FRAC_PI_4..FRAC_PI_4),
            rng.gen_range(-FRAC_PI_2..FRAC_PI_2),
        )
        .expect("finite moduli")
    };
    let a = tensor(t0, t1, 1.1 * t0);
    let b = tensor(0.0, 0.0, 1.1 * t0);
    let d = tensor(t0, t1, 1.1 * t0);
    LaminatePolar::new(a, b, d, rng.gen_range(0.3..3.0)).expect("valid synthetic triple")
}

/// A random aligned-orthotropic synthetic laminate: all invariant angles
/// on the quarter-pi grid and shift angles on the half-pi grid, drawn from
/// random parities. `r0b_zero` restricts to the family whose determinant
/// minimum provably sits at the candidate points.
pub fn random_aligned_laminate(rng: &mut ChaCha8Rng, r0b_zero: bool) -> LaminatePolar {
    let t0: f64 = rng.gen_range(0.5..2.0);
    let t1: f64 = rng.gen_range(0.5..2.0);
    let unit = (t0 * t1).sqrt();
    let k: [u8; 5] = [
        rng.gen_range(0..2),
        rng.gen_range(0..2),
        rng.gen_range(0..2),
        rng.gen_range(0..2),
        rng.gen_range(0..2),
    ];
    let (k_a, k_b, k_d, lambda_a, lambda_d) = (k[0], k[1], k[2], k[3], k[4]);
    // coupling frame: Phi1B = 0
    let phi1a = -(lambda_a as f64) * FRAC_PI_2;
    let phi0a = k_a as f64 * FRAC_PI_4 + phi1a;
    let phi1d = -(lambda_d as f64) * FRAC_PI_2;
    let phi0d = k_d as f64 * FRAC_PI_4 + phi1d;
    let phi0b = k_b as f64 * FRAC_PI_4;

    let r0b = if r0b_zero {
        0.0
    } else {
        rng.gen_range(0.0..1.1 * t0)
    };
    let a = PolarElastic4::new(
        t0,
        t1,
        rng.gen_range(0.0..1.1 * t0),
        rng.gen_range(0.0..1.1 * unit),
        phi0a,
        phi1a,
    )
    .expect("finite moduli");
    let b = PolarElastic4::new(0.0, 0.0, r0b, rng.gen_range(0.0..1.1 * unit), phi0b, 0.0)
        .expect("finite moduli");
    let d = PolarElastic4::new(
        t0,
        t1,
        rng.gen_range(0.0..1.1 * t0),
        rng.gen_range(0.0..1.1 * unit),
        phi0d,
        phi1d,
    )
    .expect("finite moduli");
    let theta = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
    LaminatePolar::new(a, b, d, rng.gen_range(0.3..3.0))
        .expect("valid synthetic triple")
        .rotated(theta)
}

/// A random synthetic laminate satisfying one special-case pattern
/// exactly, with the angle grids its closed forms require. The moduli
/// straddle the feasibility boundary. A random common rotation is applied,
/// so the pattern is exercised in an arbitrary frame.
pub fn random_special_case_laminate(
    rng: &mut ChaCha8Rng,
    case: crate::bounds::SpecialCase,
) -> LaminatePolar {
    use crate::bounds::SpecialCase;
    let t0: f64 = rng.gen_range(0.5..2.0);
    let t1: f64 = rng.gen_range(0.5..2.0);
    let unit = (t0 * t1).sqrt();
    let quarter = |rng: &mut ChaCha8Rng| rng.gen_range(0..2) as f64 * FRAC_PI_4;
    let half = |rng: &mut ChaCha8Rng| -(rng.gen_range(0..2) as f64) * FRAC_PI_2;

    // built in the coupling frame, then rotated
    let (a, b, d) = match case {
        SpecialCase::SquareSymmetricB => {
            let phi1a = half(rng);
            let phi1d = half(rng);
            let a = PolarElastic4::new(
                t0,
                t1,
                rng.gen_range(0.0..1.1 * t0),
                rng.gen_range(0.0..1.1 * unit),
                quarter(rng) + phi1a,
                phi1a,
            );
            let b = PolarElastic4::new(0.0, 0.0, rng.gen_range(0.0..1.1 * t0), 0.0, 0.0, 0.0);
            let d = PolarElastic4::new(
                t0,
                t1,
                rng.gen_range(0.0..1.1 * t0),
                rng.gen_range(0.0..1.1 * unit),
                quarter(rng) + phi1d,
                phi1d,
            );
            (a, b, d)
        }
        SpecialCase::FullySquareSymmetric => {
            let a =
                PolarElastic4::new(t0, t1, rng.gen_range(0.0..1.1 * t0), 0.0, quarter(rng), 0.0);
            let b = PolarElastic4::new(0.0, 0.0, rng.gen_range(0.0..1.1 * t0), 0.0, 0.0, 0.0);
            let d =
                PolarElastic4::new(t0, t1, rng.gen_range(0.0..1.1 * t0), 0.0, quarter(rng), 0.0);
            (a, b, d)
        }
        SpecialCase::R0Orthotropic => {
            let a = PolarElastic4::new(t0, t1, 0.0, rng.gen_range(0.0..1.1 * unit), 0.0, half(rng));
            let b = PolarElastic4::new(0.0, 0.0, 0.0, rng.gen_range(0.0..1.1 * unit), 0.0, 0.0);
            let d = PolarElastic4::new(t0, t1, 0.0, rng.gen_range(0.0..1.1 * unit), 0.0, half(rng));
            (a, b, d)
        }
        SpecialCase::CoupledIsotropic => {
            let a = PolarElastic4::new(t0, t1, 0.0, 0.0, 0.0, 0.0);
            // one in three draws leaves the coupling non-orthotropic, which
            // exercises the numeric minimization route of this case
            let phi0b = if rng.gen_range(0..3) == 0 {
                rng.gen_range(-FRAC_PI_4..FRAC_PI_4)
            } else {
                quarter(rng)
            };
            let b = PolarElastic4::new(
                0.0,
                0.0,
                rng.gen_range(0.0..1.1 * t0),
                rng.gen_range(0.0..1.1 * unit),
                phi0b,
                0.0,
            );
            let d = PolarElastic4::new(t0, t1, 0.0, 0.0, 0.0, 0.0);
            (a, b, d)
        }
    };
    let lp = LaminatePolar::new(
        a.expect("finite moduli"),
        b.expect("finite moduli"),
        d.expect("finite moduli"),
        rng.gen_range(0.3..3.0),
    )
    .expect("valid synthetic triple");
    lp.rotated(rng.gen_range(-FRAC_PI_2..FRAC_PI_2))
}

/// Convenience: oracle verdict of a laminate triple.
pub fn oracle_verdict(lp: &LaminatePolar, tol: f64) -> OracleVerdict {
    kelvin_pd_check(&plate_law_matrix(lp), tol).expect("plate law is symmetric by construction")
}
