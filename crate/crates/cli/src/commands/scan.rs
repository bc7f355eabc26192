//! `scan`: feasibility over a grid in the coupling-moduli plane.
//!
//! Emits one CSV row per grid point, ordered by grid index. With
//! `--probe-conjecture`, closed-form verdicts are additionally compared
//! against the general path at the point and at perturbed alignment
//! angles, flagging candidate counterexamples to the idea that aligned
//! configurations are the restrictive ones.

use polarlam::bounds::{dispatch_check, feasibility_general, CheckOptions, Verdict};
use polarlam::lamination::LaminatePolar;
use polarlam::polar::PolarElastic4;

use crate::commands::{fail_input, load};
use crate::report::g17;
use crate::{exit, ScanArgs};

struct GridSpec {
    r0b: Vec<f64>,
    r1b: Vec<f64>,
}

fn parse_axis(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("axis {text:?} must have the form lo:hi:n"));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| format!("bad axis start {:?}", parts[0]))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| format!("bad axis end {:?}", parts[1]))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad axis count {:?}", parts[2]))?;
    if n == 0 {
        return Err("axis count must be at least 1".to_string());
    }
    if lo < 0.0 || hi < 0.0 {
        return Err("coupling moduli are non-negative".to_string());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect())
}

fn parse_grid(spec: &str, current: (f64, f64)) -> Result<GridSpec, String> {
    let mut r0b = vec![current.0];
    let mut r1b = vec![current.1];
    for item in spec.split(',') {
        let (key, axis) = item
            .split_once('=')
            .ok_or_else(|| format!("grid item {item:?} must have the form key=lo:hi:n"))?;
        match key.trim().to_ascii_lowercase().as_str() {
            "r0b" => r0b = parse_axis(axis)?,
            "r1b" => r1b = parse_axis(axis)?,
            other => {
                return Err(format!(
                    "grid over {other:?} is not supported; axes are r0b and r1b"
                ))
            }
        }
    }
    Ok(GridSpec { r0b, r1b })
}

/// Deterministic perturbations of the alignment angles: each tensor angle
/// in turn, nudged by a few degrees either way.
fn perturbations(lp: &LaminatePolar) -> Vec<LaminatePolar> {
    let amounts: [f64; 4] = [-15.0, -5.0, 5.0, 15.0];
    let mut out = Vec::with_capacity(20);
    let rebuild = |t: &PolarElastic4, dphi0: f64, dphi1: f64| {
        PolarElastic4::new(t.t0, t.t1, t.r0, t.r1, t.phi0 + dphi0, t.phi1 + dphi1)
            .expect("angle perturbation keeps the tensor valid")
    };
    for amount in amounts {
        let da = amount.to_radians();
        let variants = [
            (rebuild(lp.a(), da, 0.0), *lp.b(), *lp.d()),
            (rebuild(lp.a(), 0.0, da), *lp.b(), *lp.d()),
            ((*lp.a()), rebuild(lp.b(), da, 0.0), *lp.d()),
            ((*lp.a()), rebuild(lp.b(), 0.0, da), *lp.d()),
            ((*lp.a()), *lp.b(), rebuild(lp.d(), 0.0, da)),
        ];
        for (a, b, d) in variants {
            out.push(
                LaminatePolar::new(a, b, d, lp.thickness())
                    .expect("perturbation keeps the triple valid"),
            );
        }
    }
    out
}

pub fn run(args: &ScanArgs) -> u8 {
    let built = match load(&args.common) {
        Ok(b) => b,
        Err(e) => return fail_input(&e),
    };
    if !built.from_abd {
        return fail_input("scan requires an abd input (extension and bending fixed)");
    }
    let lp = &built.laminate;
    let grid = match parse_grid(&args.grid, (lp.b().r0, lp.b().r1)) {
        Ok(g) => g,
        Err(e) => return fail_input(&e),
    };
    let opts = args.common.check_options();
    // perturbation probes run many minimizations; a coarser grid is enough
    // to decide their verdicts
    let probe_opts = CheckOptions {
        grid_step: opts.grid_step.max(2.0_f64.to_radians()),
        ..opts
    };

    let header = if args.probe_conjecture {
        "r0b,r1b,verdict,case_used,worst_margin,worst_normalized,agree_general,probe_violations"
    } else {
        "r0b,r1b,verdict,case_used,worst_margin,worst_normalized"
    };
    println!("{header}");

    for &r0b in &grid.r0b {
        for &r1b in &grid.r1b {
            let point = lp.with_coupling(r0b, r1b, lp.b().phi0, lp.b().phi1);
            let report = dispatch_check(&point, &opts);
            let (worst_name, worst_norm) = report
                .worst()
                .map(|m| (m.name, m.normalized))
                .unwrap_or(("-", f64::NAN));
            let mut row = format!(
                "{},{},{},{},{worst_name},{}",
                g17(r0b),
                g17(r1b),
                report.verdict,
                report.case_used,
                g17(worst_norm)
            );
            if args.probe_conjecture {
                let closed_form = !report.case_used.starts_with("general");
                let general = feasibility_general(&point, &opts);
                let agree = report.verdict == general.verdict;
                let mut violations = 0usize;
                if closed_form && report.verdict == Verdict::Feasible {
                    for perturbed in perturbations(&point) {
                        let p = feasibility_general(&perturbed, &probe_opts);
                        let decisive = p
                            .worst()
                            .map(|m| m.normalized.abs() > 1e-7)
                            .unwrap_or(false);
                        if p.verdict == Verdict::Infeasible && decisive {
                            violations += 1;
                        }
                    }
                }
                row.push_str(&format!(",{agree},{violations}"));
            }
            println!("{row}");
        }
    }
    exit::OK
}
