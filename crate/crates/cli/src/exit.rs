//! Process exit codes of every subcommand.

pub const OK: u8 = 0;
/// `verify` found a closed-form/oracle disagreement outside the band.
pub const DISAGREEMENT: u8 = 1;
/// Malformed or semantically invalid input.
pub const INPUT: u8 = 2;
pub const INFEASIBLE: u8 = 3;
pub const MARGINAL: u8 = 4;
/// A forced condition set does not apply to the laminate.
pub const CASE_NOT_APPLICABLE: u8 = 5;

pub fn from_verdict(verdict: polarlam::bounds::Verdict) -> u8 {
    match verdict {
        polarlam::bounds::Verdict::Feasible => OK,
        polarlam::bounds::Verdict::Marginal => MARGINAL,
        polarlam::bounds::Verdict::Infeasible => INFEASIBLE,
    }
}
