use std::fmt;

use thiserror::Error;

use crate::logic::Atom;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What went wrong while reading a TGF or APX file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingSeparator,
    UndeclaredArgument(String),
    EmptyArgument,
    TrailingTokens,
    MalformedAttack,
    MalformedFact(String),
    InvalidIdentifier(String),
    InvalidUtf8,
    Dimacs(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingSeparator => write!(f, "missing '#' separator"),
            ParseErrorKind::UndeclaredArgument(id) => write!(f, "undeclared argument {id}"),
            ParseErrorKind::EmptyArgument => write!(f, "empty argument identifier"),
            ParseErrorKind::TrailingTokens => write!(f, "unexpected tokens after argument identifier"),
            ParseErrorKind::MalformedAttack => write!(f, "attack lines must be of the form 'x y'"),
            ParseErrorKind::MalformedFact(fact) => write!(f, "malformed fact '{fact}'"),
            ParseErrorKind::InvalidIdentifier(id) => write!(f, "invalid argument identifier '{id}'"),
            ParseErrorKind::InvalidUtf8 => write!(f, "input is not valid UTF-8"),
            ParseErrorKind::Dimacs(msg) => write!(f, "{msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("unknown argument {0}")]
    UnknownArgument(String),
    #[error("atom {0} is not assigned by the interpretation")]
    UnassignedAtom(Atom),
    #[error("literal over unregistered variable {0}")]
    UnregisteredVariable(Atom),
    #[error("interpretation assigns atom {0} both ways")]
    InconsistentAssignment(Atom),
    #[error("interpretation is not a model of the theory")]
    NotAModel,
    #[error("atom {0} does not occur in the theory")]
    ForeignAtom(Atom),
    #[error("unsupported task {0}")]
    UnsupportedTask(String),
    #[error("task {0} requires a query argument (-a)")]
    MissingQuery(String),
    #[error("task {0} does not take a query argument")]
    UnexpectedQuery(String),
    #[error("ideal-extension instance has {0} distinct preferred projections, expected exactly one")]
    NonUniqueIdeal(usize),
    #[error("brute-force oracle limited to {limit} arguments, got {actual}")]
    OracleTooLarge { limit: usize, actual: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
