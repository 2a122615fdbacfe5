use thiserror::Error;

/// CLI-level errors with the documented exit-code classes: 2 for
/// parse/validation problems, 3 for size limits, 4 for Cauchy-bound
/// violations, 5 for internal failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: invalid space file: {message}")]
    Json { path: String, message: String },

    #[error("{path}: dist[{row}][{col}]: cannot read {literal:?} as an exact rational")]
    Entry {
        path: String,
        row: usize,
        col: usize,
        literal: String,
    },

    #[error("{}{source}", context_prefix(.context))]
    Core {
        context: Option<String>,
        #[source]
        source: ghmetric::Error,
    },

    #[error("unknown generator kind {0:?}")]
    UnknownKind(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("{0}")]
    Usage(String),
}

fn context_prefix(context: &Option<String>) -> String {
    match context {
        Some(c) => format!("{c}: "),
        None => String::new(),
    }
}

impl From<ghmetric::Error> for CliError {
    fn from(source: ghmetric::Error) -> Self {
        CliError::Core {
            context: None,
            source,
        }
    }
}

impl CliError {
    pub fn with_context(source: ghmetric::Error, context: impl Into<String>) -> Self {
        CliError::Core {
            context: Some(context.into()),
            source,
        }
    }

    /// Stable machine-readable class name.
    pub fn kind(&self) -> &'static str {
        use ghmetric::Error as E;
        match self {
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "parse",
            CliError::Entry { .. } => "parse",
            CliError::UnknownKind(_) => "unknown-kind",
            CliError::InvalidParams(_) => "invalid-params",
            CliError::Usage(_) => "usage",
            CliError::Core { source, .. } => match source {
                E::EmptySpace => "empty-space",
                E::DuplicateLabel(_) => "duplicate-label",
                E::DimensionMismatch { .. } => "dimension-mismatch",
                E::AsymmetricMatrix(..) => "asymmetric-matrix",
                E::NegativeDistance(..) => "negative-distance",
                E::NonzeroDiagonal(_) => "nonzero-diagonal",
                E::ZeroOffDiagonal(..) => "zero-off-diagonal",
                E::TriangleViolation(..) => "triangle-violation",
                E::IndexOutOfRange { .. } => "index-out-of-range",
                E::EmptySubset => "empty-subset",
                E::EmptyInput(_) => "empty-input",
                E::MapLengthMismatch { .. } => "map-length-mismatch",
                E::NotIsometric(..) => "not-isometric",
                E::NotSurjective { .. } => "not-surjective",
                E::SizeLimitExceeded(..) => "size-limit-exceeded",
                E::SlackTooSmall { .. } => "slack-too-small",
                E::CauchyBoundViolated { .. } => "cauchy-bound-violated",
                E::CauchyBoundMissing(_) => "cauchy-bound-missing",
                E::Internal(_) => "internal",
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core { source, .. } => match source {
                ghmetric::Error::SizeLimitExceeded(..) => 3,
                ghmetric::Error::CauchyBoundViolated { .. } => 4,
                ghmetric::Error::Internal(_) => 5,
                _ => 2,
            },
            _ => 2,
        }
    }

    /// The machine-readable form printed on standard error.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "error": { "kind": self.kind(), "message": self.to_string() }
        })
    }
}
