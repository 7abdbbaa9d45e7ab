//! Construction-script front end: parser, canonical serializer, runner,
//! and deterministic report output.
//!
//! The line-oriented `.scn` syntax and a JSON document form both produce
//! the same [`Script`] tree. Statement kinds: block, product, mark, glue,
//! fiber_sum, luttinger, mcg_check, family, assert, report, plus `param`
//! declarations resolved at run time.

mod ast;
mod emit;
mod lex;
mod parse;
mod report;
mod run;

pub use ast::{
    AssertValue, BlockCtor, DeclareFields, Directive, FormalWord, IntOrParam, Property, Script,
    Statement, StatementKind,
};
pub use emit::{emit_script, emit_script_json};
pub use parse::parse_script;
pub use report::{
    emit_report, model_section, AssertionOutcome, ClassLine, CySection, EulerCheck, FormSection,
    MarkingLine, McgSection, ModelSection, Pi1Section, Report, ReportFormat, Summary,
    REPORT_SCHEMA,
};
pub use run::{run_script, RunOptions, DEFAULT_MAX_COSETS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("invalid JSON script: {message}")]
    Json { message: String },
    #[error("line {line}: duplicate name `{name}`")]
    DuplicateName { line: usize, name: String },
    #[error("line {line}: `{name}` is not defined by an earlier statement")]
    UndefinedName { line: usize, name: String },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("line {line}: {message}")]
    Run { line: usize, message: String },
}

impl ScriptError {
    /// Parse/validation errors versus execution errors both map to exit
    /// code 2 in the CLI; assertion failures are not errors.
    pub fn line(&self) -> usize {
        match self {
            ScriptError::Syntax { line, .. }
            | ScriptError::DuplicateName { line, .. }
            | ScriptError::UndefinedName { line, .. }
            | ScriptError::Invalid { line, .. }
            | ScriptError::Run { line, .. } => *line,
            ScriptError::Json { .. } => 0,
        }
    }
}
