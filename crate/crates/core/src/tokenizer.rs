//! Splitting of programming identifiers into natural-language words.
//!
//! Splits happen at underscores, at lower→upper case transitions, at
//! letter↔digit boundaries, and before the last capital of an upper-case run
//! that is followed by a lower-case letter (`XMLFile` → `xml`, `file`).

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TokenizeError {
    #[error("invalid identifier {identifier:?}: {reason}")]
    InvalidIdentifier { identifier: String, reason: String },
}

/// A lowercase word or a run of ASCII digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token(String);

impl Token {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_numeric(&self) -> bool {
        self.0.bytes().all(|b| b.is_ascii_digit())
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl PartialEq<&str> for Token {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

impl Serialize for Token {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Lower,
    Upper,
    Digit,
}

fn classify(c: char) -> Option<Class> {
    if c.is_ascii_lowercase() {
        Some(Class::Lower)
    } else if c.is_ascii_uppercase() {
        Some(Class::Upper)
    } else if c.is_ascii_digit() {
        Some(Class::Digit)
    } else {
        None
    }
}

/// Returns true when `identifier` is non-empty and made only of ASCII
/// letters, digits and underscores.
pub fn is_identifier(identifier: &str) -> bool {
    !identifier.is_empty()
        && identifier
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

pub fn tokenize(identifier: &str) -> Result<Vec<Token>, TokenizeError> {
    if identifier.is_empty() {
        return Err(TokenizeError::InvalidIdentifier {
            identifier: String::new(),
            reason: "empty identifier".into(),
        });
    }
    if let Some(bad) = identifier
        .chars()
        .find(|c| !(c.is_ascii_alphanumeric() || *c == '_'))
    {
        return Err(TokenizeError::InvalidIdentifier {
            identifier: identifier.to_string(),
            reason: format!("character {bad:?} is not a letter, digit or underscore"),
        });
    }

    let chars: Vec<char> = identifier.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut prev: Option<Class> = None;

    for (i, &c) in chars.iter().enumerate() {
        let Some(class) = classify(c) else {
            // underscore
            flush(&mut current, &mut tokens);
            prev = None;
            continue;
        };
        if let Some(p) = prev {
            let next_is_lower = chars
                .get(i + 1)
                .is_some_and(|n| n.is_ascii_lowercase());
            let split = match (p, class) {
                (Class::Lower, Class::Upper) => true,
                (Class::Digit, Class::Lower | Class::Upper) => true,
                (Class::Lower | Class::Upper, Class::Digit) => true,
                (Class::Upper, Class::Upper) => next_is_lower,
                _ => false,
            };
            if split {
                flush(&mut current, &mut tokens);
            }
        }
        current.push(c.to_ascii_lowercase());
        prev = Some(class);
    }
    flush(&mut current, &mut tokens);
    Ok(tokens)
}

fn flush(current: &mut String, tokens: &mut Vec<Token>) {
    if !current.is_empty() {
        tokens.push(Token(std::mem::take(current)));
    }
}
