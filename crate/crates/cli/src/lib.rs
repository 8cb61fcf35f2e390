//! File formats, commands and verification suites behind the `blockqap`
//! binary.

pub mod commands;
pub mod format;
pub mod parallel;
pub mod verify;

use std::fmt;

/// Process exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    VerifyFailed = 1,
    /// Unreadable file, malformed document or invalid values.
    BadInput = 2,
    /// The instance has no supported structure and no fallback was asked for.
    Unsupported = 3,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// A command failure with the exit status it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            exit: Exit::BadInput,
            message: message.into(),
        }
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        Failure {
            exit: Exit::Unsupported,
            message: message.into(),
        }
    }

    pub fn context(self, prefix: impl fmt::Display) -> Self {
        Failure {
            message: format!("{prefix}: {}", self.message),
            ..self
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

/// Library errors reaching the command layer are input problems unless a
/// caller says otherwise.
impl From<blockqap::Error> for Failure {
    fn from(e: blockqap::Error) -> Self {
        Failure::input(e.to_string())
    }
}
