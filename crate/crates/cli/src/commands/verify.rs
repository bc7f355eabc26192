//! `verify`: closed-form verdicts against the eigenvalue oracle.

use serde::Serialize;

use polarlam::bounds::{feasibility_general, CheckOptions, Verdict};
use polarlam::lamination::LaminatePolar;
use polarlam::oracle::{oracle_verdict, random_laminates, SampleSpec};

use crate::input::{build, parse_document, read_source};
use crate::report::{to_json, ToolInfo};
use crate::{exit, VerifyArgs};

#[derive(Serialize)]
struct DisagreementDocument {
    index: usize,
    closed_verdict: String,
    oracle_verdict: String,
    closed_worst_normalized: f64,
    oracle_normalized: f64,
}

#[derive(Serialize)]
struct VerifyParameters {
    mode: &'static str,
    samples: usize,
    seed: u64,
    tol: f64,
    grid_step_deg: f64,
}

#[derive(Serialize)]
struct VerifySummary {
    tool: ToolInfo,
    parameters: VerifyParameters,
    feasible: usize,
    marginal: usize,
    infeasible: usize,
    agreements: usize,
    disagreements: Vec<DisagreementDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

pub fn run(args: &VerifyArgs) -> u8 {
    let opts = CheckOptions {
        tol: args.tol,
        grid_step: args.grid_step_deg.to_radians(),
        ..CheckOptions::default()
    };

    let laminates: Vec<LaminatePolar> = if args.random {
        let spec = SampleSpec {
            count: args.samples.max(1),
            seed: args.seed,
            ..SampleSpec::default()
        };
        random_laminates(&spec)
            .iter()
            .map(LaminatePolar::from_stacking)
            .collect()
    } else {
        let path = match &args.input {
            Some(p) => p.clone(),
            None => {
                eprintln!("polarlam: verify needs an input document or --random");
                return exit::INPUT;
            }
        };
        let built = read_source(&path)
            .and_then(|text| parse_document(&text))
            .and_then(|doc| build(doc, None));
        match built {
            Ok(b) => vec![b.laminate],
            Err(e) => {
                eprintln!("polarlam: {e}");
                return exit::INPUT;
            }
        }
    };

    let band = args.tol.max(1e-7);
    let mut feasible = 0;
    let mut marginal = 0;
    let mut infeasible = 0;
    let mut agreements = 0;
    let mut disagreements = Vec::new();
    for (index, lp) in laminates.iter().enumerate() {
        let closed = feasibility_general(lp, &opts);
        let eig = oracle_verdict(lp, args.tol);
        match closed.verdict {
            Verdict::Feasible => feasible += 1,
            Verdict::Marginal => marginal += 1,
            Verdict::Infeasible => infeasible += 1,
        }
        let closed_worst = closed.worst().map(|m| m.normalized).unwrap_or(f64::NAN);
        let in_band = closed_worst.abs() <= band || eig.normalized.abs() <= band;
        if closed.verdict == eig.verdict || in_band {
            agreements += 1;
        } else {
            disagreements.push(DisagreementDocument {
                index,
                closed_verdict: closed.verdict.to_string(),
                oracle_verdict: eig.verdict.to_string(),
                closed_worst_normalized: closed_worst,
                oracle_normalized: eig.normalized,
            });
        }
    }

    let total = laminates.len();
    let note = (marginal == total && total > 0)
        .then(|| format!("all {total} samples are marginal at tol {}", args.tol));
    let summary = VerifySummary {
        tool: ToolInfo::current(),
        parameters: VerifyParameters {
            mode: if args.random { "random" } else { "input" },
            samples: total,
            seed: args.seed,
            tol: args.tol,
            grid_step_deg: args.grid_step_deg,
        },
        feasible,
        marginal,
        infeasible,
        agreements,
        disagreements,
        note,
    };

    let failed = !summary.disagreements.is_empty();
    if args.json {
        println!("{}", to_json(&summary));
    } else {
        println!(
            "samples {total}: feasible {feasible}, marginal {marginal}, infeasible {infeasible}"
        );
        println!(
            "oracle agreement: {agreements}/{total} ({} disagreements)",
            summary.disagreements.len()
        );
        for d in &summary.disagreements {
            println!(
                "  sample {}: closed {} vs oracle {} (worst {:+.3e}, eig {:+.3e})",
                d.index,
                d.closed_verdict,
                d.oracle_verdict,
                d.closed_worst_normalized,
                d.oracle_normalized
            );
        }
        if let Some(note) = &summary.note {
            println!("note: {note}");
        }
    }
    if failed {
        exit::DISAGREEMENT
    } else {
        exit::OK
    }
}
