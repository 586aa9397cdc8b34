use thiserror::Error;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    At {
        path: String,
        #[source]
        source: graded_k1_core::Error,
    },
    #[error("{message}")]
    Invalid { code: &'static str, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl JobError {
    pub(crate) fn invalid(code: &'static str, message: impl Into<String>) -> Self {
        JobError::Invalid { code, message: message.into() }
    }

    pub(crate) fn syntax(text: &str, e: &toml::de::Error) -> Self {
        let offset = e.span().map_or(0, |s| s.start).min(text.len());
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        JobError::Syntax { line, column, message: e.message().trim().to_string() }
    }

    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            JobError::Syntax { .. } => "syntax",
            JobError::At { source, .. } => source.code(),
            JobError::Invalid { code, .. } => code,
            JobError::Io { .. } => "io",
        }
    }
}
