use thiserror::Error;

use crate::separation::TrimTrace;

/// Errors raised anywhere in the pipeline.
///
/// The CLI maps each variant onto an exit code via [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error ({kind}): {detail}")]
    Validation { kind: ValidationKind, detail: String },

    #[error("point lies on a spanned hyperplane: {0}")]
    Ambiguous(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("trimming exhausted a set after {} steps", .trace.steps.len())]
    TrimExhausted { trace: Box<TrimTrace> },

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationKind {
    Duplicate,
    SizeMismatch,
    GeneralPosition,
    ColorCount,
    Dimension,
    Empty,
}

impl std::fmt::Display for ValidationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ValidationKind::Duplicate => "duplicate",
            ValidationKind::SizeMismatch => "size mismatch",
            ValidationKind::GeneralPosition => "general position",
            ValidationKind::ColorCount => "color count",
            ValidationKind::Dimension => "dimension",
            ValidationKind::Empty => "empty",
        };
        f.write_str(s)
    }
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn validation(kind: ValidationKind, detail: impl Into<String>) -> Self {
        Error::Validation {
            kind,
            detail: detail.into(),
        }
    }

    pub fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Innermost error, skipping stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    /// 2 for input problems, 3 for budgets and gates.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::Budget(_) | Error::UnsupportedDimension(_) | Error::TrimExhausted { .. } => 3,
            _ => 2,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.root() {
            Error::Input(_) => "input",
            Error::Parse(_) => "parse",
            Error::Validation { .. } => "validation",
            Error::Ambiguous(_) => "ambiguous",
            Error::UnsupportedDimension(_) => "unsupported-dimension",
            Error::Budget(_) => "budget",
            Error::TrimExhausted { .. } => "trim-exhausted",
            Error::Stage { .. } => "stage",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
