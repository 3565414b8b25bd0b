use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] relcalc_core::Error),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    /// 2 for bad input or configuration, 3 when the rejection sampler runs
    /// out of attempts, 1 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(relcalc_core::Error::AttemptsExhausted { .. }) => 3,
            CliError::Config(_) | CliError::Core(_) => 2,
            CliError::Io { .. } => 1,
        }
    }

    /// The JSON object written to stderr.
    pub fn to_json(&self) -> Value {
        match self {
            CliError::Core(relcalc_core::Error::AttemptsExhausted {
                requested,
                accepted,
                attempts,
                predictive_mass,
            }) => json!({
                "error": "attempts_exhausted",
                "message": self.to_string(),
                "requested": requested,
                "accepted": accepted,
                "attempts": attempts,
                "predictive_mass": predictive_mass,
            }),
            CliError::Io { .. } => json!({"error": "io", "message": self.to_string()}),
            _ => json!({"error": "validation", "message": self.to_string()}),
        }
    }
}
