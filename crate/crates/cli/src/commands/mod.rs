//! One module per subcommand.

pub mod abd;
pub mod check;
pub mod classify;
pub mod diagram;
pub mod scan;
pub mod verify;

use crate::input::{build, parse_document, read_source, BuiltInput};
use crate::CommonArgs;

/// Shared input pipeline; callers map `Err` to the input-error exit code.
pub(crate) fn load(common: &CommonArgs) -> Result<BuiltInput, String> {
    let text = read_source(&common.input)?;
    let document = parse_document(&text)?;
    build(document, common.h)
}

pub(crate) fn fail_input(err: &str) -> u8 {
    eprintln!("polarlam: {err}");
    crate::exit::INPUT
}
