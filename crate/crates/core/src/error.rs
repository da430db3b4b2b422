use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A station has arrival rate at or above its service capacity.
    #[error("unstable: stage {stage} has arrival rate {arrival_rate} >= service rate {service_rate}")]
    Unstable {
        stage: usize,
        arrival_rate: f64,
        service_rate: f64,
    },

    /// No subchain count satisfies the delay SLA, not even a single chain.
    #[error("infeasible: response time {response}s at l = 1 does not meet the delay SLA of {delay_sla}s")]
    Infeasible { response: f64, delay_sla: f64 },

    /// A simulated queue grew past the configured bound.
    #[error("simulation diverged: station {station} queue reached {length} packets")]
    Diverged { station: usize, length: usize },

    #[error("{}", validation_message(.field, .message, .line))]
    Validation {
        field: String,
        message: String,
        line: Option<usize>,
    },

    #[error("{}", parse_message(.message, .line))]
    Parse { message: String, line: Option<usize> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn validation_message(field: &str, message: &str, line: &Option<usize>) -> String {
    match line {
        Some(line) => format!("validation error at line {line}: {field}: {message}"),
        None => format!("validation error: {field}: {message}"),
    }
}

fn parse_message(message: &str, line: &Option<usize>) -> String {
    match line {
        Some(line) => format!("parse error at line {line}: {message}"),
        None => format!("parse error: {message}"),
    }
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
            line: None,
        }
    }

    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 10,
            Error::Validation { .. } => 11,
            Error::Infeasible { .. } => 12,
            Error::Unstable { .. } => 13,
            Error::Diverged { .. } => 14,
            Error::InvalidArgument(_) | Error::Io(_) | Error::Csv(_) => 1,
        }
    }
}
