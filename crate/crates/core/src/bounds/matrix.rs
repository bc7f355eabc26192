//! The 4x4 quadratic-form matrix of the plate energy and its leading
//! principal minors.
//!
//! In the polar components `(t_eps, r_eps, t_kap, r_kap)` of the strain and
//! curvature fields the energy density is `U = h/24 v^T M v`, with `M`
//! depending on the two deviator directions `phi_eps`, `phi_kap`. Positive
//! definiteness of `M` for every direction pair is the feasibility
//! condition; the Sylvester criterion reduces it to the positivity of the
//! four leading principal minors.

use crate::lamination::LaminatePolar;

/// The symmetric energy matrix at a fixed direction pair. Entry `(0, 2)`
/// is identically zero: the two mean parts couple only through their
/// deviators.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixM {
    m: [[f64; 4]; 4],
    phi_eps: f64,
    phi_kap: f64,
    h: f64,
}

impl MatrixM {
    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.m
    }

    pub fn phi_eps(&self) -> f64 {
        self.phi_eps
    }

    pub fn phi_kap(&self) -> f64 {
        self.phi_kap
    }

    pub fn thickness(&self) -> f64 {
        self.h
    }

    /// Leading principal minors `(M1, M2, M3, M4)`.
    pub fn minors(&self) -> [f64; 4] {
        sylvester_minors(self)
    }
}

/// Assembles the energy matrix of a laminate at directions
/// `(phi_eps, phi_kap)`, with the numeric prefactors 96, 48, 24, 8, 4 and
/// the thickness powers of the plate law.
pub fn assemble_m(lp: &LaminatePolar, phi_eps: f64, phi_kap: f64) -> MatrixM {
    let (a, b, d) = (lp.a(), lp.b(), lp.d());
    let (t0, t1) = (lp.t0(), lp.t1());
    let h = lp.thickness();
    let h2 = h * h;

    let m00 = 96.0 * t1;
    let m01 = 96.0 * a.r1 * (2.0 * (a.phi1 - phi_eps)).cos();
    let m03 = 48.0 * h * b.r1 * (2.0 * (b.phi1 - phi_kap)).cos();
    let m11 = 48.0 * (t0 + a.r0 * (4.0 * (a.phi0 - phi_eps)).cos());
    let m12 = 48.0 * h * b.r1 * (2.0 * (b.phi1 - phi_eps)).cos();
    let m13 = 24.0 * h * b.r0 * (2.0 * (2.0 * b.phi0 - phi_eps - phi_kap)).cos();
    let m22 = 8.0 * h2 * t1;
    let m23 = 8.0 * h2 * d.r1 * (2.0 * (d.phi1 - phi_kap)).cos();
    let m33 = 4.0 * h2 * (t0 + d.r0 * (4.0 * (d.phi0 - phi_kap)).cos());

    MatrixM {
        m: [
            [m00, m01, 0.0, m03],
            [m01, m11, m12, m13],
            [0.0, m12, m22, m23],
            [m03, m13, m23, m33],
        ],
        phi_eps,
        phi_kap,
        h,
    }
}

/// The four leading principal minors of the energy matrix, in order.
pub fn sylvester_minors(m: &MatrixM) -> [f64; 4] {
    let a = &m.m;
    let m1 = a[0][0];
    let m2 = det2(a[0][0], a[0][1], a[1][0], a[1][1]);
    let m3 = det3([
        [a[0][0], a[0][1], a[0][2]],
        [a[1][0], a[1][1], a[1][2]],
        [a[2][0], a[2][1], a[2][2]],
    ]);
    let m4 = det4(a);
    [m1, m2, m3, m4]
}

fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a * d - b * c
}

fn det3(a: [[f64; 3]; 3]) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn det4(a: &[[f64; 4]; 4]) -> f64 {
    let mut det = 0.0;
    for col in 0..4 {
        if a[0][col] == 0.0 {
            continue;
        }
        let mut sub = [[0.0; 3]; 3];
        for (i, row) in a[1..].iter().enumerate() {
            let mut jj = 0;
            for (j, &v) in row.iter().enumerate() {
                if j != col {
                    sub[i][jj] = v;
                    jj += 1;
                }
            }
        }
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * a[0][col] * det3(sub);
    }
    det
}
