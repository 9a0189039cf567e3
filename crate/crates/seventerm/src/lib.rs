//! Problem files, the verification pipeline and reports for `seventerm`.

pub mod json;
pub mod problem;
pub mod report;
pub mod run;

pub use problem::{InputError, Problem, ProblemSpec};
pub use report::Report;
pub use run::{run, run_many, run_with};
