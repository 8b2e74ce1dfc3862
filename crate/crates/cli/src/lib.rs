//! Shared pieces of the `subshift` binary: exit codes, text rendering and the HTTP service.

pub mod service;
pub mod text;

use subshift::report::{AnalysisOptions, AnalysisReport, RefusalKind};
use subshift::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_REFUSED: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

/// Exit code for an error raised before a report exists.
pub fn exit_code_for_error(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidPermutation(_) => EXIT_PARSE,
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Io(_) | Error::Internal(_) => EXIT_FAILURE,
        _ => EXIT_REFUSED,
    }
}

/// Budget refusals win over other refusals of explicitly requested stages.
pub fn exit_code_for_report(report: &AnalysisReport, options: &AnalysisOptions) -> u8 {
    let refusals = report.explicit_refusals(options);
    if refusals.iter().any(|(_, k, _)| *k == RefusalKind::Budget) {
        EXIT_BUDGET
    } else if refusals.is_empty() {
        EXIT_OK
    } else {
        EXIT_REFUSED
    }
}
