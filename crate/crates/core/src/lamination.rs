//! Classical lamination theory for stacks of identical plies.
//!
//! A stack of `n` identical layers of total thickness `h` produces the
//! extension/coupling/bending triple `(A, B, D)` of the plate law
//!
//! ```text
//! {N}   [ h A      h^2/2 B ] {eps}
//! {M} = [ h^2/2 B  h^3/12 D ] {kap}
//! ```
//!
//! In polar form the isotropic parts are fixed by the layer
//! (`T0^A = T0^D = T0`, `T1^A = T1^D = T1`, `T0^B = T1^B = 0`) while the
//! anisotropic parts are weighted sums of the ply orientation harmonics.

use num_complex::Complex64;
use thiserror::Error;

use crate::polar::{normalize_phi1, Cartesian2, Polar2, PolarElastic4};

/// Relative threshold under which a computed anisotropic modulus is
/// considered an exact zero of the stacking arithmetic and snapped.
const SNAP_REL: f64 = 1e-13;

/// Construction failures for laminates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LaminateError {
    #[error("stacking must contain at least one ply")]
    EmptyStacking,
    #[error("thickness must be positive and finite, got {0}")]
    NonPositiveThickness(f64),
    #[error("layer violates the single-layer elastic bounds ({name} = {value})")]
    InadmissibleLayer { name: &'static str, value: f64 },
    #[error("isotropic moduli of extension and bending tensors must match: {left} vs {right}")]
    IsotropicPartMismatch { left: f64, right: f64 },
    #[error("coupling tensor must have vanishing isotropic part, got T0B={t0}, T1B={t1}")]
    CouplingIsotropicPart { t0: f64, t1: f64 },
    #[error("isotropic moduli must be positive, got T0={t0}, T1={t1}")]
    NonPositiveIsotropicModuli { t0: f64, t1: f64 },
}

/// Identical-ply laminate: layer moduli, ordered ply orientations
/// (bottom to top) and total thickness.
#[derive(Debug, Clone, PartialEq)]
pub struct Stacking {
    ply: PolarElastic4,
    angles: Vec<f64>,
    h: f64,
}

impl Stacking {
    /// Validates the layer (admissible single-layer bounds), the ply count
    /// and the thickness.
    pub fn new(ply: PolarElastic4, angles: Vec<f64>, h: f64) -> Result<Self, LaminateError> {
        if angles.is_empty() {
            return Err(LaminateError::EmptyStacking);
        }
        if !h.is_finite() || h <= 0.0 {
            return Err(LaminateError::NonPositiveThickness(h));
        }
        let margins = ply.layer_bounds();
        if !margins.admissible() {
            let (name, value) = margins
                .entries()
                .into_iter()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("six margins");
            return Err(LaminateError::InadmissibleLayer { name, value });
        }
        Ok(Self { ply, angles, h })
    }

    pub fn ply(&self) -> &PolarElastic4 {
        &self.ply
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn ply_count(&self) -> usize {
        self.angles.len()
    }

    pub fn thickness(&self) -> f64 {
        self.h
    }

    /// Same stack with every ply orientation increased by `theta`.
    pub fn rotated(&self, theta: f64) -> Self {
        Self {
            ply: self.ply,
            angles: self.angles.iter().map(|a| a + theta).collect(),
            h: self.h,
        }
    }

    /// Same stack traversed top to bottom.
    pub fn reversed(&self) -> Self {
        let mut angles = self.angles.clone();
        angles.reverse();
        Self {
            ply: self.ply,
            angles,
            h: self.h,
        }
    }
}

/// Polar sets of the extension (`A`), coupling (`B`) and bending (`D`)
/// tensors of a laminate, plus the thickness.
///
/// Invariants: `A` and `D` share the positive isotropic moduli of the layer,
/// `B` has none, and all anisotropic moduli are non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaminatePolar {
    a: PolarElastic4,
    b: PolarElastic4,
    d: PolarElastic4,
    h: f64,
}

impl LaminatePolar {
    /// Validates a synthetic triple. The isotropic parts of `A` and `D`
    /// must agree to 1e-9 relative (they are then unified exactly), must be
    /// positive, and `B` must carry none.
    pub fn new(
        a: PolarElastic4,
        b: PolarElastic4,
        d: PolarElastic4,
        h: f64,
    ) -> Result<Self, LaminateError> {
        if !h.is_finite() || h <= 0.0 {
            return Err(LaminateError::NonPositiveThickness(h));
        }
        let scale = a.t0.abs().max(a.t1.abs()).max(1e-300);
        if (a.t0 - d.t0).abs() > 1e-9 * scale {
            return Err(LaminateError::IsotropicPartMismatch {
                left: a.t0,
                right: d.t0,
            });
        }
        if (a.t1 - d.t1).abs() > 1e-9 * scale {
            return Err(LaminateError::IsotropicPartMismatch {
                left: a.t1,
                right: d.t1,
            });
        }
        if b.t0.abs() > 1e-12 * scale || b.t1.abs() > 1e-12 * scale {
            return Err(LaminateError::CouplingIsotropicPart { t0: b.t0, t1: b.t1 });
        }
        if a.t0 <= 0.0 || a.t1 <= 0.0 {
            return Err(LaminateError::NonPositiveIsotropicModuli { t0: a.t0, t1: a.t1 });
        }
        let d = PolarElastic4 {
            t0: a.t0,
            t1: a.t1,
            ..d
        };
        let b = PolarElastic4 {
            t0: 0.0,
            t1: 0.0,
            ..b
        };
        Ok(Self { a, b, d, h })
    }

    /// Classical lamination theory for a stack of identical plies.
    ///
    /// With ply index `k = 1..n` bottom to top, the anisotropic harmonics
    /// are averaged with weights `1`, `2k - n - 1` and `3 (2k - n - 1)^2 + 1`
    /// over `n`, `n^2` and `n^3` for `A`, `B` and `D` respectively, so that
    /// a single-ply stack returns the layer itself. Moduli that come out
    /// below the floating-point noise floor of the weighted sums are
    /// snapped to exact zeros, which also resolves their angles by the
    /// vanishing-modulus convention.
    pub fn from_stacking(s: &Stacking) -> Self {
        let n = s.angles.len();
        let nf = n as f64;
        let ply = s.ply;
        let z0 = Complex64::from_polar(ply.r0, 4.0 * ply.phi0);
        let z1 = Complex64::from_polar(ply.r1, 2.0 * ply.phi1);

        let mut s4 = [Complex64::ZERO; 3];
        let mut s2 = [Complex64::ZERO; 3];
        for (idx, &delta) in s.angles.iter().enumerate() {
            let u = 2.0 * (idx as f64 + 1.0) - nf - 1.0;
            let weights = [1.0, u, 3.0 * u * u + 1.0];
            let e4 = Complex64::from_polar(1.0, 4.0 * delta);
            let e2 = Complex64::from_polar(1.0, 2.0 * delta);
            for (i, w) in weights.iter().enumerate() {
                s4[i] += w * e4;
                s2[i] += w * e2;
            }
        }

        let snap = SNAP_REL * ply.t0.max(ply.t1).max(ply.r0).max(ply.r1);
        let tensor = |z4: Complex64, z2: Complex64, t0: f64, t1: f64| {
            let (r0, phi0) = if z4.norm() <= snap {
                (0.0, 0.0)
            } else {
                (z4.norm(), z4.arg() / 4.0)
            };
            let (r1, phi1) = if z2.norm() <= snap {
                (0.0, 0.0)
            } else {
                (z2.norm(), z2.arg() / 2.0)
            };
            PolarElastic4::assemble(t0, t1, r0, r1, phi0, phi1)
        };

        let a = tensor(z0 * s4[0] / nf, z1 * s2[0] / nf, ply.t0, ply.t1);
        let b = tensor(z0 * s4[1] / (nf * nf), z1 * s2[1] / (nf * nf), 0.0, 0.0);
        let d = tensor(
            z0 * s4[2] / nf.powi(3),
            z1 * s2[2] / nf.powi(3),
            ply.t0,
            ply.t1,
        );
        Self { a, b, d, h: s.h }
    }

    pub fn a(&self) -> &PolarElastic4 {
        &self.a
    }

    pub fn b(&self) -> &PolarElastic4 {
        &self.b
    }

    pub fn d(&self) -> &PolarElastic4 {
        &self.d
    }

    pub fn thickness(&self) -> f64 {
        self.h
    }

    /// Shared isotropic moduli of the extension and bending tensors.
    pub fn t0(&self) -> f64 {
        self.a.t0
    }

    pub fn t1(&self) -> f64 {
        self.a.t1
    }

    /// Stress-unit reference scale `sqrt(T0 T1)` used to normalize margins.
    pub fn unit_scale(&self) -> f64 {
        (self.t0() * self.t1()).sqrt()
    }

    /// The laminate seen from a frame rotated by `theta`.
    pub fn rotated(&self, theta: f64) -> Self {
        Self {
            a: self.a.rotated(theta),
            b: self.b.rotated(theta),
            d: self.d.rotated(theta),
            h: self.h,
        }
    }

    /// Copy with the anisotropic part of `B` replaced (moduli must be
    /// non-negative); used by feasibility scans over the coupling plane.
    pub fn with_coupling(&self, r0b: f64, r1b: f64, phi0b: f64, phi1b: f64) -> Self {
        Self {
            b: PolarElastic4::assemble(0.0, 0.0, r0b.max(0.0), r1b.max(0.0), phi0b, phi1b),
            ..*self
        }
    }
}

/// Frame-independent angles derived from a laminate triple: the tensor
/// invariants `Phi_X = Phi0^X - Phi1^X` and the shift angles of `A` and `D`
/// relative to the coupling tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedAngles {
    /// `Phi0^A - Phi1^A`, in `[-pi/4, pi/4)`.
    pub phi_a: f64,
    /// `Phi0^B - Phi1^B`, in `[-pi/4, pi/4)`.
    pub phi_b: f64,
    /// `Phi0^D - Phi1^D`, in `[-pi/4, pi/4)`.
    pub phi_d: f64,
    /// `Phi1^B - Phi1^A`, in `[-pi/2, pi/2)`.
    pub delta_a: f64,
    /// `Phi1^B - Phi1^D`, in `[-pi/2, pi/2)`.
    pub delta_d: f64,
    /// True when `delta_a` rests on a vanishing-modulus angle convention.
    pub delta_a_conventional: bool,
    /// True when `delta_d` rests on a vanishing-modulus angle convention.
    pub delta_d_conventional: bool,
}

/// Computes the derived angles of a laminate. Vanishing-modulus angle
/// conventions are already stored in the tensors; the flags report where
/// they were used.
pub fn derived_angles(lp: &LaminatePolar) -> DerivedAngles {
    let (a, b, d) = (lp.a(), lp.b(), lp.d());
    DerivedAngles {
        phi_a: a.invariant_angle(),
        phi_b: b.invariant_angle(),
        phi_d: d.invariant_angle(),
        delta_a: normalize_phi1(b.phi1 - a.phi1),
        delta_d: normalize_phi1(b.phi1 - d.phi1),
        delta_a_conventional: a.r1 == 0.0 || b.r1 == 0.0,
        delta_d_conventional: d.r1 == 0.0 || b.r1 == 0.0,
    }
}

/// The 6x6 plate stiffness law in Kelvin-normalized strain/curvature
/// coordinates, with blocks weighted `h`, `h^2/2` and `h^3/12`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateLaw {
    k: [[f64; 6]; 6],
    h: f64,
}

impl PlateLaw {
    /// Assembles the law from the polar triple.
    pub fn from_laminate(lp: &LaminatePolar) -> Self {
        let ka = lp.a().to_cartesian_at(0.0).kelvin3();
        let kb = lp.b().to_cartesian_at(0.0).kelvin3();
        let kd = lp.d().to_cartesian_at(0.0).kelvin3();
        let h = lp.thickness();
        let (wa, wb, wd) = (h, h * h / 2.0, h * h * h / 12.0);
        let mut k = [[0.0; 6]; 6];
        for i in 0..3 {
            for j in 0..3 {
                k[i][j] = wa * ka[i][j];
                k[i][j + 3] = wb * kb[i][j];
                k[i + 3][j] = wb * kb[i][j];
                k[i + 3][j + 3] = wd * kd[i][j];
            }
        }
        Self { k, h }
    }

    /// Assembles the law from Cartesian tensors directly.
    pub fn from_cartesian(
        a: &crate::polar::Cartesian4,
        b: &crate::polar::Cartesian4,
        d: &crate::polar::Cartesian4,
        h: f64,
    ) -> Self {
        let (ka, kb, kd) = (a.kelvin3(), b.kelvin3(), d.kelvin3());
        let (wa, wb, wd) = (h, h * h / 2.0, h * h * h / 12.0);
        let mut k = [[0.0; 6]; 6];
        for i in 0..3 {
            for j in 0..3 {
                k[i][j] = wa * ka[i][j];
                k[i][j + 3] = wb * kb[i][j];
                k[i + 3][j] = wb * kb[i][j];
                k[i + 3][j + 3] = wd * kd[i][j];
            }
        }
        Self { k, h }
    }

    /// Wraps a raw matrix; the caller is responsible for symmetry.
    pub fn from_matrix(k: [[f64; 6]; 6], h: f64) -> Self {
        Self { k, h }
    }

    pub fn matrix(&self) -> &[[f64; 6]; 6] {
        &self.k
    }

    pub fn thickness(&self) -> f64 {
        self.h
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.k
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, &v| acc.max(v.abs()))
    }

    /// Strain energy density `1/2 x^T K x` of a strain/curvature state.
    pub fn energy(&self, eps: &Cartesian2, kap: &Cartesian2) -> f64 {
        let e = eps.kelvin();
        let c = kap.kelvin();
        let x = [e[0], e[1], e[2], c[0], c[1], c[2]];
        let mut u = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                u += x[i] * self.k[i][j] * x[j];
            }
        }
        0.5 * u
    }
}

/// Plate law of a laminate (block weights `h`, `h^2/2`, `h^3/12`).
pub fn plate_law_matrix(lp: &LaminatePolar) -> PlateLaw {
    PlateLaw::from_laminate(lp)
}

/// Strain energy density per unit area, written in the polar components of
/// the strain and curvature fields.
pub fn polar_energy(lp: &LaminatePolar, eps: &Polar2, kap: &Polar2) -> f64 {
    let (a, b, d) = (lp.a(), lp.b(), lp.d());
    let (t0, t1, h) = (lp.t0(), lp.t1(), lp.thickness());
    let (te, re, pe) = (eps.t, eps.r, eps.phi);
    let (tk, rk, pk) = (kap.t, kap.r, kap.phi);

    let extension = 2.0 * t1 * te * te
        + (t0 + a.r0 * (4.0 * (a.phi0 - pe)).cos()) * re * re
        + 4.0 * a.r1 * te * re * (2.0 * (a.phi1 - pe)).cos();
    let coupling = 2.0 * b.r1 * te * rk * (2.0 * (b.phi1 - pk)).cos()
        + 2.0 * b.r1 * tk * re * (2.0 * (b.phi1 - pe)).cos()
        + b.r0 * re * rk * (2.0 * (2.0 * b.phi0 - pe - pk)).cos();
    let bending = 2.0 * t1 * tk * tk
        + (t0 + d.r0 * (4.0 * (d.phi0 - pk)).cos()) * rk * rk
        + 4.0 * d.r1 * tk * rk * (2.0 * (d.phi1 - pk)).cos();

    2.0 * h * extension + 2.0 * h * h * coupling + h * h * h / 6.0 * bending
}

/// The paper-facing name of [`LaminatePolar::from_stacking`].
pub fn compute_abd_polar(s: &Stacking) -> LaminatePolar {
    LaminatePolar::from_stacking(s)
}
