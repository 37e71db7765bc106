use thiserror::Error;

/// Errors produced across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` is reserved")]
    ReservedSymbol(String),
    #[error("homomorphism is undefined on symbol `{0}`")]
    MissingMapping(String),
    #[error("malformed configuration: {0}")]
    MalformedConfiguration(String),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("machine declares no reversal bound")]
    MissingReversalBound,
    #[error("machine must be {0} first (pipeline order: normalize_stays, then annotate_phases)")]
    NotPrepared(&'static str),
    #[error("state `{state}` is in phase {phase}; {hint}")]
    WrongPhase {
        state: String,
        phase: usize,
        hint: &'static str,
    },
    #[error("determinism violated in state `{0}`: more than one rule applies")]
    Nondeterministic(String),
    #[error("label sequence is not valid for any state")]
    InvalidLabelSequence,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
