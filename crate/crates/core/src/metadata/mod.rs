//! Append-only annotation state for one interface.
//!
//! A [`MetadataScript`] holds, per method name, an optional free-text
//! description, the method's keyword annotations and per-parameter keyword
//! annotations. Annotations are only ever appended. The script is saved as
//! XML ([`MetadataScript::to_xml`]) and shown to people as one line per
//! annotation ([`MetadataScript::to_display`]).

mod xml;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dictionary::DefinitionRecord;
use crate::parser::{InterfaceModel, SourceType};

pub use xml::SCRIPT_VERSION;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("unknown target: {0}")]
    UnknownTarget(String),
    #[error("invalid annotation: {0}")]
    InvalidAnnotation(String),
    #[error("schema error at {0}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KeywordAnnotation {
    pub term: String,
    pub language: String,
    pub source: String,
    pub definition: String,
}

fn xml_safe(field: &str, value: &str) -> Result<(), ScriptError> {
    if value.trim().is_empty() {
        return Err(ScriptError::InvalidAnnotation(format!("{field} is empty")));
    }
    if let Some(c) = value
        .chars()
        .find(|c| c.is_control() && !matches!(c, '\t' | '\n' | '\r'))
    {
        return Err(ScriptError::InvalidAnnotation(format!(
            "{field} contains control character U+{:04X}",
            c as u32
        )));
    }
    Ok(())
}

impl KeywordAnnotation {
    /// Validates the fields and stores the term lowercased.
    pub fn new(
        term: &str,
        language: &str,
        source: &str,
        definition: &str,
    ) -> Result<Self, ScriptError> {
        xml_safe("term", term)?;
        xml_safe("language", language)?;
        xml_safe("source", source)?;
        xml_safe("definition", definition)?;
        Ok(Self {
            term: term.to_lowercase(),
            language: language.to_string(),
            source: source.to_string(),
            definition: definition.to_string(),
        })
    }

    /// Re-validates a value that may have come straight from deserialization.
    pub fn normalized(self) -> Result<Self, ScriptError> {
        Self::new(&self.term, &self.language, &self.source, &self.definition)
    }
}

impl TryFrom<&DefinitionRecord> for KeywordAnnotation {
    type Error = ScriptError;

    fn try_from(r: &DefinitionRecord) -> Result<Self, Self::Error> {
        Self::new(&r.term, &r.language, &r.source, &r.definition)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnotationTarget {
    pub method_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter_name: Option<String>,
}

impl AnnotationTarget {
    pub fn method(name: impl Into<String>) -> Self {
        Self {
            method_name: name.into(),
            parameter_name: None,
        }
    }

    pub fn parameter(method: impl Into<String>, parameter: impl Into<String>) -> Self {
        Self {
            method_name: method.into(),
            parameter_name: Some(parameter.into()),
        }
    }

    /// `method` or `method.parameter`.
    pub fn label(&self) -> String {
        match &self.parameter_name {
            Some(p) => format!("{}.{}", self.method_name, p),
            None => self.method_name.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ParameterEntry {
    pub name: String,
    pub keywords: Vec<KeywordAnnotation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MethodEntry {
    pub name: String,
    pub description: Option<String>,
    pub keywords: Vec<KeywordAnnotation>,
    pub parameters: Vec<ParameterEntry>,
}

impl MethodEntry {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            description: None,
            keywords: Vec::new(),
            parameters: Vec::new(),
        }
    }

    pub fn parameter(&self, name: &str) -> Option<&ParameterEntry> {
        self.parameters.iter().find(|p| p.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MetadataScript {
    pub interface_name: String,
    pub source_file: String,
    pub source_type: SourceType,
    pub methods: Vec<MethodEntry>,
}

impl MetadataScript {
    /// One empty entry per method name. Overloads share an entry; their
    /// parameters are merged in order of first appearance.
    pub fn new(model: &InterfaceModel) -> Self {
        let mut methods: Vec<MethodEntry> = Vec::new();
        for decl in &model.methods {
            let idx = match methods.iter().position(|m| m.name == decl.name) {
                Some(i) => i,
                None => {
                    methods.push(MethodEntry::new(&decl.name));
                    methods.len() - 1
                }
            };
            let entry = &mut methods[idx];
            for p in &decl.parameters {
                if entry.parameter(&p.name).is_none() {
                    entry.parameters.push(ParameterEntry {
                        name: p.name.clone(),
                        keywords: Vec::new(),
                    });
                }
            }
        }
        Self {
            interface_name: model.interface_name.clone(),
            source_file: model.source_file.clone(),
            source_type: model.source_type,
            methods,
        }
    }

    pub fn method(&self, name: &str) -> Option<&MethodEntry> {
        self.methods.iter().find(|m| m.name == name)
    }

    fn method_mut(&mut self, name: &str) -> Result<&mut MethodEntry, ScriptError> {
        self.methods
            .iter_mut()
            .find(|m| m.name == name)
            .ok_or_else(|| ScriptError::UnknownTarget(format!("method {name}")))
    }

    /// Keyword list for `target`, if the target exists.
    pub fn keywords_for(&self, target: &AnnotationTarget) -> Option<&[KeywordAnnotation]> {
        let method = self.method(&target.method_name)?;
        match &target.parameter_name {
            None => Some(&method.keywords),
            Some(p) => method.parameter(p).map(|p| p.keywords.as_slice()),
        }
    }

    /// Appends `annotation` to the end of `target`'s list. Returns the total
    /// number of annotations in the script afterwards.
    pub fn add_annotation(
        &mut self,
        target: &AnnotationTarget,
        annotation: KeywordAnnotation,
    ) -> Result<usize, ScriptError> {
        let annotation = annotation.normalized()?;
        let method = self.method_mut(&target.method_name)?;
        let list = match &target.parameter_name {
            None => &mut method.keywords,
            Some(p) => {
                &mut method
                    .parameters
                    .iter_mut()
                    .find(|e| &e.name == p)
                    .ok_or_else(|| {
                        ScriptError::UnknownTarget(format!("parameter {}.{p}", target.method_name))
                    })?
                    .keywords
            }
        };
        list.push(annotation);
        Ok(self.annotation_count())
    }

    pub fn set_description(
        &mut self,
        method: &str,
        description: Option<String>,
    ) -> Result<(), ScriptError> {
        if let Some(d) = &description {
            xml_safe("description", d)?;
        }
        self.method_mut(method)?.description = description;
        Ok(())
    }

    /// All annotations in script order: for each method its own keywords,
    /// then each parameter's keywords.
    pub fn annotations(&self) -> Vec<(AnnotationTarget, &KeywordAnnotation)> {
        let mut out = Vec::new();
        for m in &self.methods {
            for k in &m.keywords {
                out.push((AnnotationTarget::method(&m.name), k));
            }
            for p in &m.parameters {
                for k in &p.keywords {
                    out.push((AnnotationTarget::parameter(&m.name, &p.name), k));
                }
            }
        }
        out
    }

    pub fn annotation_count(&self) -> usize {
        self.methods
            .iter()
            .map(|m| m.keywords.len() + m.parameters.iter().map(|p| p.keywords.len()).sum::<usize>())
            .sum()
    }

    /// One line per annotation:
    /// `method[.param] :: term | language | source | definition`.
    pub fn to_display(&self) -> String {
        let mut out = String::new();
        for (target, k) in self.annotations() {
            let definition: String = k
                .definition
                .chars()
                .map(|c| if c == '\n' || c == '\r' { ' ' } else { c })
                .collect();
            out.push_str(&format!(
                "{} :: {} | {} | {} | {}\n",
                target.label(),
                k.term,
                k.language,
                k.source,
                definition
            ));
        }
        out
    }
}
