use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degree cap exceeded: form-degree {form_degree}, variable-degree {var_degree} (caps: form {max_form}, variable {max_var})")]
    CapExceeded {
        form_degree: usize,
        var_degree: usize,
        max_form: usize,
        max_var: usize,
    },

    #[error("unsupported context: {0}")]
    UnsupportedContext(String),

    #[error("singular block: {0}")]
    SingularBlock(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),

    #[error("unstable window: {0}")]
    UnstableWindow(String),

    #[error("recursion depth exceeded while evaluating {0}")]
    RecursionDepth(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown identifier `{name}` at line {line}, column {column}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
