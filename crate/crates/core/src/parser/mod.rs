//! Parsing of service interface sources into an [`InterfaceModel`].
//!
//! The source type is decided by file extension: `.java` files go through a
//! declaration scanner, `.wsdl` and `.xml` files through a WSDL 1.1 port type
//! reader.

mod java;
mod wsdl;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tokenizer::{tokenize, Token, TokenizeError};

pub use java::parse_java;
pub use wsdl::parse_wsdl;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("unsupported file type: {0}")]
    UnsupportedFileType(String),
    #[error("{path}: {message}")]
    Syntax { path: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl ParseError {
    pub(crate) fn syntax(path: &str, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceType {
    Java,
    Wsdl,
}

impl SourceType {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceType::Java => "java",
            SourceType::Wsdl => "wsdl",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "java" => Some(SourceType::Java),
            "wsdl" => Some(SourceType::Wsdl),
            _ => None,
        }
    }
}

impl fmt::Display for SourceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ParameterDecl {
    pub name: String,
    pub tokens: Vec<Token>,
    pub declared_type: String,
}

impl ParameterDecl {
    pub fn new(name: &str, declared_type: impl Into<String>) -> Result<Self, TokenizeError> {
        Ok(Self {
            name: name.to_string(),
            tokens: tokenize(name)?,
            declared_type: declared_type.into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MethodDecl {
    pub name: String,
    pub tokens: Vec<Token>,
    pub parameters: Vec<ParameterDecl>,
    pub return_type: String,
}

impl MethodDecl {
    pub fn new(
        name: &str,
        return_type: impl Into<String>,
        parameters: Vec<ParameterDecl>,
    ) -> Result<Self, TokenizeError> {
        Ok(Self {
            name: name.to_string(),
            tokens: tokenize(name)?,
            parameters,
            return_type: return_type.into(),
        })
    }

    pub fn arity(&self) -> usize {
        self.parameters.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InterfaceModel {
    pub source_file: String,
    pub source_type: SourceType,
    pub interface_name: String,
    pub methods: Vec<MethodDecl>,
}

impl InterfaceModel {
    /// Builds a model, enforcing unique parameter names per method and unique
    /// `(name, arity)` pairs across methods.
    pub fn new(
        source_file: impl Into<String>,
        source_type: SourceType,
        interface_name: impl Into<String>,
        methods: Vec<MethodDecl>,
    ) -> Result<Self, ParseError> {
        let source_file = source_file.into();
        let mut signatures = HashSet::new();
        for method in &methods {
            let mut names = HashSet::new();
            for p in &method.parameters {
                if !names.insert(p.name.as_str()) {
                    return Err(ParseError::syntax(
                        &source_file,
                        format!("duplicate parameter {} in method {}", p.name, method.name),
                    ));
                }
            }
            if !signatures.insert((method.name.as_str(), method.arity())) {
                return Err(ParseError::syntax(
                    &source_file,
                    format!(
                        "duplicate method {} with {} parameter(s)",
                        method.name,
                        method.arity()
                    ),
                ));
            }
        }
        Ok(Self {
            source_file,
            source_type,
            interface_name: interface_name.into(),
            methods,
        })
    }

    /// Union of all method and parameter name tokens, digit runs excluded.
    pub fn keywords(&self) -> BTreeSet<String> {
        extract_keywords(self)
    }
}

pub fn detect_source_type(path: impl AsRef<Path>) -> Result<SourceType, ParseError> {
    let path = path.as_ref();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("java") => Ok(SourceType::Java),
        Some("wsdl" | "xml") => Ok(SourceType::Wsdl),
        _ => Err(ParseError::UnsupportedFileType(path.display().to_string())),
    }
}

/// Parses `text` according to the type implied by `path`'s extension.
pub fn parse_source(path: &str, text: &str) -> Result<InterfaceModel, ParseError> {
    match detect_source_type(path)? {
        SourceType::Java => parse_java(text, path),
        SourceType::Wsdl => parse_wsdl(text, path),
    }
}

pub fn parse_file(path: impl AsRef<Path>) -> Result<InterfaceModel, ParseError> {
    let path: PathBuf = path.as_ref().to_path_buf();
    let display = path.display().to_string();
    detect_source_type(&path)?;
    let text = std::fs::read_to_string(&path).map_err(|source| ParseError::Io {
        path: display.clone(),
        source,
    })?;
    parse_source(&display, &text)
}

pub fn extract_keywords(model: &InterfaceModel) -> BTreeSet<String> {
    model
        .methods
        .iter()
        .flat_map(|m| {
            m.tokens
                .iter()
                .chain(m.parameters.iter().flat_map(|p| p.tokens.iter()))
        })
        .filter(|t| !t.is_numeric())
        .map(|t| t.as_str().to_string())
        .collect()
}
