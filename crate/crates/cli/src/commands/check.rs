//! `check`: decide feasibility, auto-dispatched or with a forced case.

use polarlam::bounds::{
    dispatch_check, feasibility_aligned, feasibility_general, feasibility_special, BoundsReport,
    CaseError, SpecialCase,
};

use crate::commands::{fail_input, load};
use crate::report::{to_json, ParametersDocument, ReportDocument};
use crate::{exit, CaseChoice, CheckArgs};

fn case_name(choice: CaseChoice) -> &'static str {
    match choice {
        CaseChoice::Auto => "auto",
        CaseChoice::General => "general",
        CaseChoice::Aligned => "aligned",
        CaseChoice::SquareB => "square-b",
        CaseChoice::FullSquare => "full-square",
        CaseChoice::R0 => "r0",
        CaseChoice::Isotropic => "isotropic",
    }
}

pub fn run(args: &CheckArgs) -> u8 {
    let built = match load(&args.common) {
        Ok(b) => b,
        Err(e) => return fail_input(&e),
    };
    let opts = args.common.check_options();
    let lp = &built.laminate;

    let outcome: Result<BoundsReport, CaseError> = match args.case {
        CaseChoice::Auto => Ok(dispatch_check(lp, &opts)),
        CaseChoice::General => Ok(feasibility_general(lp, &opts)),
        CaseChoice::Aligned => feasibility_aligned(lp, &opts),
        CaseChoice::SquareB => feasibility_special(lp, SpecialCase::SquareSymmetricB, &opts),
        CaseChoice::FullSquare => feasibility_special(lp, SpecialCase::FullySquareSymmetric, &opts),
        CaseChoice::R0 => feasibility_special(lp, SpecialCase::R0Orthotropic, &opts),
        CaseChoice::Isotropic => feasibility_special(lp, SpecialCase::CoupledIsotropic, &opts),
    };

    let report = match outcome {
        Ok(report) => report,
        Err(err) => {
            eprintln!("polarlam: case not applicable: {err}");
            return exit::CASE_NOT_APPLICABLE;
        }
    };

    let parameters = ParametersDocument {
        tol: args.common.tol,
        grid_step_deg: args.common.grid_step_deg,
        case_requested: case_name(args.case).to_string(),
    };
    let doc = ReportDocument::new(built.document, lp, &built.angles, &report, parameters);
    if args.common.json {
        println!("{}", to_json(&doc));
    } else {
        print!("{}", doc.render_text());
    }
    exit::from_verdict(report.verdict)
}
