//! Abstract argumentation reasoning by circumscription.
//!
//! Semantics of an argumentation framework are encoded as propositional
//! theories whose minimal models, with respect to a set of literals, are
//! exactly the extensions. A CDCL solver drives model minimization,
//! enumeration and acceptance queries.

pub mod af;
pub mod circumscription;
pub mod cli;
pub mod encoding;
pub mod error;
pub mod logic;
pub mod oracle;
pub mod sat;
pub mod tasks;

pub use af::{ArgId, ArgumentationFramework, Extension};
pub use circumscription::{Circumscriber, CircumscriptionInstance, PreferredModel};
pub use encoding::Semantics;
pub use error::{Error, ParseError, Result};
pub use logic::{Atom, Formula, Interpretation, Literal, Theory};
pub use sat::{SolveResult, Solver};
pub use tasks::{Problem, Reasoner, TaskId, TaskResult};
