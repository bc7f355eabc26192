//! Global minimization of the determinant surface over the direction torus.
//!
//! The surface is a low-degree trigonometric polynomial with period `pi/2`
//! in each direction angle, so an exhaustive grid scan followed by a local
//! derivative-free refinement finds the global minimum reliably. A
//! Lipschitz bound on the gradient, assembled term by term from the
//! coefficient magnitudes and harmonic degrees, turns the grid minimum
//! into a certified lower bound for the true minimum.

use std::f64::consts::FRAC_PI_2;

use crate::bounds::margins::m4_value;
use crate::lamination::{DerivedAngles, LaminatePolar};

/// Result of the global minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct M4Minimum {
    /// Best value found; never above any grid sample.
    pub value: f64,
    /// Location of the best value, in the coupling frame, in `[0, pi/2)^2`.
    pub argmin: (f64, f64),
    /// Best grid sample before refinement.
    pub grid_min: f64,
    /// `grid_min - L * step / sqrt(2)`: no point of the torus lies below
    /// this value.
    pub certified_lower_bound: f64,
    /// False when the refinement stalled and the grid value was kept.
    pub converged: bool,
}

/// Bound on the gradient norm of the determinant surface, from the sum of
/// `|coefficient| * harmonic degree` over its terms.
pub fn m4_lipschitz_bound(lp: &LaminatePolar) -> f64 {
    let (t0, t1) = (lp.t0(), lp.t1());
    let (r0a, r1a) = (lp.a().r0, lp.a().r1);
    let (r0b, r1b) = (lp.b().r0, lp.b().r1);
    let (r0d, r1d) = (lp.d().r0, lp.d().r1);
    let tt = t0 * t1;
    let (r1a2, r1b2, r1d2) = (r1a * r1a, r1b * r1b, r1d * r1d);

    // |f_X| and |f_X'| for the two extension-like quadratic factors
    let bound_a = (tt - r1a2).abs() + t1 * r0a + r1a2;
    let grad_a = 4.0 * (t1 * r0a + r1a2);
    let bound_d = (tt - r1d2).abs() + t1 * r0d + r1d2;
    let grad_d = 4.0 * (t1 * r0d + r1d2);

    let shared = 72.0 * r1b2 * r1b2
        + 12.0 * tt * r1b2
        + 6.0 * t1 * t1 * r0b * r0b
        + 48.0 * r1a * r1b2 * r1d
        + 48.0 * t1 * r0b * r1b * (r1a + r1d);
    let l_eps = grad_a * bound_d + shared + 6.0 * t1 * r1b2 * (4.0 * r0a + 2.0 * r0d);
    let l_kap = grad_d * bound_a + shared + 6.0 * t1 * r1b2 * (4.0 * r0d + 2.0 * r0a);
    (l_eps * l_eps + l_kap * l_kap).sqrt()
}

/// Exhaustive grid scan at `grid_step` over `[0, pi/2)^2` followed by
/// Nelder-Mead refinement seeded on the best cell and its neighbors.
///
/// `grid_step` is snapped to an exact divisor of `pi/2`; `refine_tol` is
/// the absolute angle tolerance of the refinement.
pub fn minimize_m4(
    lp: &LaminatePolar,
    da: &DerivedAngles,
    grid_step: f64,
    refine_tol: f64,
) -> M4Minimum {
    let n = (FRAC_PI_2 / grid_step).round().max(1.0) as usize;
    let step = FRAC_PI_2 / n as f64;
    let f = |pe: f64, pk: f64| m4_value(lp, da, pe, pk);

    let mut grid_min = f64::INFINITY;
    let mut best = (0.0, 0.0);
    for i in 0..n {
        let pe = i as f64 * step;
        for j in 0..n {
            let pk = j as f64 * step;
            let v = f(pe, pk);
            if v < grid_min {
                grid_min = v;
                best = (pe, pk);
            }
        }
    }

    // simplex spanning the best cell and its neighborhood
    let simplex = [
        (best.0 - step, best.1 - step),
        (best.0 + step, best.1 - step),
        (best.0, best.1 + step),
    ];
    let (refined_point, refined_value, converged) = nelder_mead(&f, simplex, refine_tol, 400);

    let (value, argmin) = if refined_value < grid_min {
        (refined_value, refined_point)
    } else {
        (grid_min, best)
    };
    let lipschitz = m4_lipschitz_bound(lp);
    M4Minimum {
        value,
        argmin: (
            argmin.0.rem_euclid(FRAC_PI_2),
            argmin.1.rem_euclid(FRAC_PI_2),
        ),
        grid_min,
        certified_lower_bound: grid_min - lipschitz * step / std::f64::consts::SQRT_2,
        converged,
    }
}

/// Standard two-dimensional Nelder-Mead descent. Converged when the
/// simplex diameter falls below `tol`.
fn nelder_mead<F: Fn(f64, f64) -> f64>(
    f: &F,
    simplex: [(f64, f64); 3],
    tol: f64,
    max_iter: usize,
) -> ((f64, f64), f64, bool) {
    let mut pts = simplex;
    let mut vals = [
        f(pts[0].0, pts[0].1),
        f(pts[1].0, pts[1].1),
        f(pts[2].0, pts[2].1),
    ];

    let order = |pts: &mut [(f64, f64); 3], vals: &mut [f64; 3]| {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        *pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        *vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];
    };

    let mut converged = false;
    for _ in 0..max_iter {
        order(&mut pts, &mut vals);
        let diameter = pts
            .iter()
            .flat_map(|a| pts.iter().map(move |b| (a.0 - b.0).hypot(a.1 - b.1)))
            .fold(0.0_f64, f64::max);
        if diameter < tol {
            converged = true;
            break;
        }

        let centroid = (0.5 * (pts[0].0 + pts[1].0), 0.5 * (pts[0].1 + pts[1].1));
        let reflect = (2.0 * centroid.0 - pts[2].0, 2.0 * centroid.1 - pts[2].1);
        let fr = f(reflect.0, reflect.1);
        if fr < vals[0] {
            let expand = (2.0 * reflect.0 - centroid.0, 2.0 * reflect.1 - centroid.1);
            let fe = f(expand.0, expand.1);
            if fe < fr {
                pts[2] = expand;
                vals[2] = fe;
            } else {
                pts[2] = reflect;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = reflect;
            vals[2] = fr;
        } else {
            let contract = (0.5 * (centroid.0 + pts[2].0), 0.5 * (centroid.1 + pts[2].1));
            let fc = f(contract.0, contract.1);
            if fc < vals[2] {
                pts[2] = contract;
                vals[2] = fc;
            } else {
                // shrink toward the best vertex
                for i in 1..3 {
                    pts[i] = (0.5 * (pts[0].0 + pts[i].0), 0.5 * (pts[0].1 + pts[i].1));
                    vals[i] = f(pts[i].0, pts[i].1);
                }
            }
        }
    }
    order(&mut pts, &mut vals);
    (pts[0], vals[0], converged)
}
