//! Polar form of plane elastic tensors.
//!
//! A fourth-rank plane tensor with the major and minor symmetries is
//! represented by two isotropic moduli `T0`, `T1`, two anisotropic moduli
//! `R0 >= 0`, `R1 >= 0` and two angles `Phi0`, `Phi1`. The moduli and the
//! difference `Phi0 - Phi1` are frame invariants; rotating the frame by
//! `theta` subtracts `theta` from both angles. A symmetric second-rank
//! tensor is likewise represented by an invariant pair `(t, r)` and one
//! angle, the analytic form of the Mohr circle construction.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use thiserror::Error;

/// Default relative tolerance for symmetry classification.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-8;

/// Absolute tolerance for angle-grid comparisons, in radians.
pub const ANGLE_TOL: f64 = 1e-8;

/// Wraps `angle` into the half-open interval `[-period/2, period/2)`.
pub(crate) fn wrap(angle: f64, period: f64) -> f64 {
    let x = angle.rem_euclid(period);
    if x >= period / 2.0 {
        x - period
    } else {
        x
    }
}

/// Normalizes a `Phi0`-type angle (period `pi/2`) into `[-pi/4, pi/4)`.
pub fn normalize_phi0(angle: f64) -> f64 {
    wrap(angle, FRAC_PI_2)
}

/// Normalizes a `Phi1`-type angle (period `pi`) into `[-pi/2, pi/2)`.
pub fn normalize_phi1(angle: f64) -> f64 {
    wrap(angle, PI)
}

/// Distance from `angle` to the nearest multiple of `grid`.
pub(crate) fn grid_distance(angle: f64, grid: f64) -> f64 {
    wrap(angle, grid)
        .abs()
        .min((grid - wrap(angle, grid).abs()).abs())
}

/// Validation failures for material data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaterialError {
    #[error("component {name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("anisotropic modulus {name} must be non-negative, got {value}")]
    NegativeAnisotropicModulus { name: &'static str, value: f64 },
    #[error("engineering constant {name} must be positive, got {value}")]
    NonPositiveModulus { name: &'static str, value: f64 },
    #[error("Poisson coupling out of range: 1 - nu12*nu21 = {value} <= 0")]
    PoissonBound { value: f64 },
}

/// Polar parameter set of a fourth-rank plane elastic tensor.
///
/// Angles are stored normalized: `phi0` in `[-pi/4, pi/4)` and `phi1` in
/// `[-pi/2, pi/2)`, the periods of the respective harmonics. When a modulus
/// is exactly zero its angle is undetermined; the stored value then follows
/// the convention `phi1 := phi0` for `r1 = 0`, `phi0 := phi1` for `r0 = 0`,
/// and both zero when the tensor has no anisotropic part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarElastic4 {
    pub t0: f64,
    pub t1: f64,
    pub r0: f64,
    pub r1: f64,
    pub phi0: f64,
    pub phi1: f64,
}

/// Elastic symmetry classes of a plane tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    OrdinaryOrthotropyK0,
    OrdinaryOrthotropyK1,
    R0Orthotropy,
    SquareSymmetry,
    Isotropy,
    GenericAnisotropy,
}

impl std::fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SymmetryClass::OrdinaryOrthotropyK0 => "ordinary orthotropy (k=0)",
            SymmetryClass::OrdinaryOrthotropyK1 => "ordinary orthotropy (k=1)",
            SymmetryClass::R0Orthotropy => "R0-orthotropy",
            SymmetryClass::SquareSymmetry => "square symmetry",
            SymmetryClass::Isotropy => "isotropy",
            SymmetryClass::GenericAnisotropy => "generic anisotropy",
        };
        f.write_str(name)
    }
}

/// Admissibility margins of a single layer.
///
/// The layer is admissible when the strict margins are positive and the
/// moduli margins non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerMargins {
    pub t0: f64,
    pub t1: f64,
    pub r0: f64,
    pub r1: f64,
    /// `T0 - R0`
    pub anisotropy_gap: f64,
    /// `T1 (T0^2 - R0^2) - 2 R1^2 (T0 - R0 cos 4(Phi0 - Phi1))`
    pub coupling_poly: f64,
}

impl LayerMargins {
    /// Strictly admissible layer: positive isotropic moduli and both
    /// polynomial margins positive.
    pub fn admissible(&self) -> bool {
        self.t0 > 0.0
            && self.t1 > 0.0
            && self.r0 >= 0.0
            && self.r1 >= 0.0
            && self.anisotropy_gap > 0.0
            && self.coupling_poly > 0.0
    }

    /// Named margins in reporting order.
    pub fn entries(&self) -> [(&'static str, f64); 6] {
        [
            ("layer.T0", self.t0),
            ("layer.T1", self.t1),
            ("layer.R0", self.r0),
            ("layer.R1", self.r1),
            ("layer.T0-R0", self.anisotropy_gap),
            ("layer.M2poly", self.coupling_poly),
        ]
    }
}

impl PolarElastic4 {
    /// Builds a validated polar set: all components finite, `r0, r1 >= 0`.
    /// Angles are normalized and the vanishing-modulus convention applied.
    pub fn new(
        t0: f64,
        t1: f64,
        r0: f64,
        r1: f64,
        phi0: f64,
        phi1: f64,
    ) -> Result<Self, MaterialError> {
        for (name, value) in [
            ("T0", t0),
            ("T1", t1),
            ("R0", r0),
            ("R1", r1),
            ("Phi0", phi0),
            ("Phi1", phi1),
        ] {
            if !value.is_finite() {
                return Err(MaterialError::NonFinite { name, value });
            }
        }
        if r0 < 0.0 {
            return Err(MaterialError::NegativeAnisotropicModulus {
                name: "R0",
                value: r0,
            });
        }
        if r1 < 0.0 {
            return Err(MaterialError::NegativeAnisotropicModulus {
                name: "R1",
                value: r1,
            });
        }
        Ok(Self::assemble(t0, t1, r0, r1, phi0, phi1))
    }

    /// Internal infallible constructor; normalizes angles and applies the
    /// vanishing-modulus convention. Callers guarantee `r0, r1 >= 0`.
    pub(crate) fn assemble(t0: f64, t1: f64, r0: f64, r1: f64, phi0: f64, phi1: f64) -> Self {
        let mut p = Self {
            t0,
            t1,
            r0,
            r1,
            phi0: normalize_phi0(phi0),
            phi1: normalize_phi1(phi1),
        };
        p.apply_vanish_convention();
        p
    }

    fn apply_vanish_convention(&mut self) {
        match (self.r0 == 0.0, self.r1 == 0.0) {
            (true, true) => {
                self.phi0 = 0.0;
                self.phi1 = 0.0;
            }
            (false, true) => self.phi1 = normalize_phi1(self.phi0),
            (true, false) => self.phi0 = normalize_phi0(self.phi1),
            (false, false) => {}
        }
    }

    /// Isotropic tensor: anisotropic moduli vanish.
    pub fn isotropic(t0: f64, t1: f64) -> Self {
        Self::assemble(t0, t1, 0.0, 0.0, 0.0, 0.0)
    }

    /// Invariant angle `Phi0 - Phi1` reduced to its `pi/2` period.
    pub fn invariant_angle(&self) -> f64 {
        normalize_phi0(self.phi0 - self.phi1)
    }

    /// Cartesian components at direction `theta`.
    pub fn to_cartesian_at(&self, theta: f64) -> Cartesian4 {
        let c4 = (4.0 * (self.phi0 - theta)).cos();
        let s4 = (4.0 * (self.phi0 - theta)).sin();
        let c2 = (2.0 * (self.phi1 - theta)).cos();
        let s2 = (2.0 * (self.phi1 - theta)).sin();
        Cartesian4 {
            c1111: self.t0 + 2.0 * self.t1 + self.r0 * c4 + 4.0 * self.r1 * c2,
            c1112: self.r0 * s4 + 2.0 * self.r1 * s2,
            c1122: -self.t0 + 2.0 * self.t1 - self.r0 * c4,
            c1212: self.t0 - self.r0 * c4,
            c1222: -self.r0 * s4 + 2.0 * self.r1 * s2,
            c2222: self.t0 + 2.0 * self.t1 + self.r0 * c4 - 4.0 * self.r1 * c2,
        }
    }

    /// The same tensor seen from a frame rotated by `theta`: moduli are
    /// unchanged, both angles decrease by `theta`.
    pub fn rotated(&self, theta: f64) -> Self {
        Self::assemble(
            self.t0,
            self.t1,
            self.r0,
            self.r1,
            self.phi0 - theta,
            self.phi1 - theta,
        )
    }

    /// Elastic symmetry classification under a relative tolerance on the
    /// moduli. The reference scale is `max(T0, T1, R0, R1)`; for tensors
    /// with vanishing isotropic part (the coupling tensor) it is `R0 + R1`.
    /// Moduli tests take precedence over the angle test.
    pub fn classify(&self, rel_tol: f64) -> SymmetryClass {
        let tmax = self.t0.max(self.t1);
        let scale = if tmax > 0.0 {
            tmax.max(self.r0).max(self.r1)
        } else {
            self.r0 + self.r1
        };
        if scale <= 0.0 {
            return SymmetryClass::Isotropy;
        }
        let r0_zero = self.r0 <= rel_tol * scale;
        let r1_zero = self.r1 <= rel_tol * scale;
        match (r0_zero, r1_zero) {
            (true, true) => SymmetryClass::Isotropy,
            (false, true) => SymmetryClass::SquareSymmetry,
            (true, false) => SymmetryClass::R0Orthotropy,
            (false, false) => {
                let phi = self.invariant_angle();
                if phi.abs() <= ANGLE_TOL {
                    SymmetryClass::OrdinaryOrthotropyK0
                } else if (phi.abs() - FRAC_PI_4).abs() <= ANGLE_TOL {
                    SymmetryClass::OrdinaryOrthotropyK1
                } else {
                    SymmetryClass::GenericAnisotropy
                }
            }
        }
    }

    /// Admissibility margins of the tensor taken as a single layer.
    pub fn layer_bounds(&self) -> LayerMargins {
        let c = (4.0 * self.invariant_angle()).cos();
        LayerMargins {
            t0: self.t0,
            t1: self.t1,
            r0: self.r0,
            r1: self.r1,
            anisotropy_gap: self.t0 - self.r0,
            coupling_poly: self.t1 * (self.t0 * self.t0 - self.r0 * self.r0)
                - 2.0 * self.r1 * self.r1 * (self.t0 - self.r0 * c),
        }
    }
}

/// The six independent Cartesian components of a fourth-rank plane tensor
/// with the major and minor symmetries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cartesian4 {
    pub c1111: f64,
    pub c1112: f64,
    pub c1122: f64,
    pub c1212: f64,
    pub c1222: f64,
    pub c2222: f64,
}

impl Cartesian4 {
    /// Inverts the polar component formulas at `theta = 0`. Total on finite
    /// input; moduli come out non-negative and angles normalized.
    pub fn to_polar(&self) -> PolarElastic4 {
        let t0 = (self.c1111 - 2.0 * self.c1122 + 4.0 * self.c1212 + self.c2222) / 8.0;
        let t1 = (self.c1111 + 2.0 * self.c1122 + self.c2222) / 8.0;
        let z0 = Complex64::new(
            self.c1111 - 2.0 * self.c1122 - 4.0 * self.c1212 + self.c2222,
            4.0 * (self.c1112 - self.c1222),
        ) / 8.0;
        let z1 = Complex64::new(self.c1111 - self.c2222, 2.0 * (self.c1112 + self.c1222)) / 8.0;
        PolarElastic4::assemble(t0, t1, z0.norm(), z1.norm(), z0.arg() / 4.0, z1.arg() / 2.0)
    }

    /// Component by Cartesian index name, for diagram emission.
    pub fn component(&self, name: &str) -> Option<f64> {
        match name {
            "T1111" => Some(self.c1111),
            "T1112" => Some(self.c1112),
            "T1122" => Some(self.c1122),
            "T1212" => Some(self.c1212),
            "T1222" => Some(self.c1222),
            "T2222" => Some(self.c2222),
            _ => None,
        }
    }

    /// Names accepted by [`Cartesian4::component`].
    pub const COMPONENT_NAMES: [&'static str; 6] =
        ["T1111", "T1112", "T1122", "T1212", "T1222", "T2222"];

    /// Matrix of the quadratic form `e . C e` in the orthonormal
    /// (Kelvin-scaled) basis `(e11, e22, sqrt(2) e12)`.
    pub fn kelvin3(&self) -> [[f64; 3]; 3] {
        let s = std::f64::consts::SQRT_2;
        [
            [self.c1111, self.c1122, s * self.c1112],
            [self.c1122, self.c2222, s * self.c1222],
            [s * self.c1112, s * self.c1222, 2.0 * self.c1212],
        ]
    }
}

/// Symmetric second-rank plane tensor (strain, curvature).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cartesian2 {
    pub e11: f64,
    pub e12: f64,
    pub e22: f64,
}

impl Cartesian2 {
    /// Polar (Mohr circle) decomposition: `t = (e11+e22)/2` and
    /// `r exp(2 i phi) = (e11-e22)/2 + i e12`. When `r = 0` the angle is 0.
    pub fn to_polar(&self) -> Polar2 {
        let t = 0.5 * (self.e11 + self.e22);
        let z = Complex64::new(0.5 * (self.e11 - self.e22), self.e12);
        let r = z.norm();
        let phi = if r == 0.0 {
            0.0
        } else {
            normalize_phi1(z.arg() / 2.0)
        };
        Polar2 { t, r, phi }
    }

    /// Kelvin-scaled coordinates `(e11, e22, sqrt(2) e12)`.
    pub fn kelvin(&self) -> [f64; 3] {
        [self.e11, self.e22, std::f64::consts::SQRT_2 * self.e12]
    }
}

/// Polar components of a symmetric second-rank plane tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar2 {
    pub t: f64,
    /// Deviator modulus, `>= 0`.
    pub r: f64,
    /// Deviator direction, normalized to `[-pi/2, pi/2)`.
    pub phi: f64,
}

impl Polar2 {
    /// Cartesian components at direction `theta`.
    pub fn to_cartesian_at(&self, theta: f64) -> Cartesian2 {
        let c = (2.0 * (self.phi - theta)).cos();
        let s = (2.0 * (self.phi - theta)).sin();
        Cartesian2 {
            e11: self.t + self.r * c,
            e12: self.r * s,
            e22: self.t - self.r * c,
        }
    }
}

/// Engineering constants of an orthotropic ply in its material frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineeringConstants {
    pub e1: f64,
    pub e2: f64,
    pub g12: f64,
    pub nu12: f64,
}

impl EngineeringConstants {
    /// Reduced plane-stress stiffness of the ply in its material frame.
    pub fn to_cartesian(&self) -> Result<Cartesian4, MaterialError> {
        for (name, value) in [("E1", self.e1), ("E2", self.e2), ("G12", self.g12)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(MaterialError::NonPositiveModulus { name, value });
            }
        }
        if !self.nu12.is_finite() {
            return Err(MaterialError::NonFinite {
                name: "nu12",
                value: self.nu12,
            });
        }
        let nu21 = self.nu12 * self.e2 / self.e1;
        let den = 1.0 - self.nu12 * nu21;
        if den <= 0.0 {
            return Err(MaterialError::PoissonBound { value: den });
        }
        Ok(Cartesian4 {
            c1111: self.e1 / den,
            c1112: 0.0,
            c1122: self.nu12 * self.e2 / den,
            c1212: self.g12,
            c1222: 0.0,
            c2222: self.e2 / den,
        })
    }

    /// Convenience: straight to the polar set.
    pub fn to_polar(&self) -> Result<PolarElastic4, MaterialError> {
        Ok(self.to_cartesian()?.to_polar())
    }
}
