//! Consumer-side access to a saved metadata script.
//!
//! Programs that expose a service load the script once and answer "what does
//! this method or parameter mean" queries from it. Method and parameter names
//! are identifiers and match exactly; keyword terms match case-insensitively.
//! Unknown names yield empty answers.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::metadata::{AnnotationTarget, KeywordAnnotation, MetadataScript, ScriptError};

#[derive(Debug, Error)]
pub enum ReaderError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Schema(#[from] ScriptError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MethodDescription {
    pub description: Option<String>,
    pub keywords: Vec<KeywordAnnotation>,
}

impl MethodDescription {
    pub fn is_empty(&self) -> bool {
        self.description.is_none() && self.keywords.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KeywordHit {
    pub target: AnnotationTarget,
    pub annotation: KeywordAnnotation,
}

#[derive(Debug, Clone)]
pub struct MetadataReader {
    script: MetadataScript,
}

impl MetadataReader {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ReaderError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ReaderError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_xml(&text)
    }

    pub fn from_xml(text: &str) -> Result<Self, ReaderError> {
        Ok(Self::new(MetadataScript::from_xml(text)?))
    }

    pub fn new(script: MetadataScript) -> Self {
        Self { script }
    }

    pub fn script(&self) -> &MetadataScript {
        &self.script
    }

    pub fn describe_method(&self, method: &str) -> MethodDescription {
        self.script
            .method(method)
            .map(|m| MethodDescription {
                description: m.description.clone(),
                keywords: m.keywords.clone(),
            })
            .unwrap_or_default()
    }

    pub fn describe_parameter(&self, method: &str, parameter: &str) -> Vec<KeywordAnnotation> {
        self.script
            .keywords_for(&AnnotationTarget::parameter(method, parameter))
            .map(<[_]>::to_vec)
            .unwrap_or_default()
    }

    pub fn find_keyword(&self, term: &str) -> Vec<KeywordHit> {
        let folded = term.to_lowercase();
        self.script
            .annotations()
            .into_iter()
            .filter(|(_, k)| k.term == folded)
            .map(|(target, k)| KeywordHit {
                target,
                annotation: k.clone(),
            })
            .collect()
    }
}
