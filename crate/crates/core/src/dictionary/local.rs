use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;
use url::Url;

use super::{fold_term, is_absolute_url, DefinitionRecord, DefinitionSource, DictionaryError};

#[derive(Deserialize)]
struct Line {
    term: String,
    language: String,
    definition: String,
    source: Option<String>,
}

/// A dictionary held in memory, loaded from a JSON-lines file.
///
/// Each line is an object with `term`, `language`, `definition` and an
/// optional `source`. Lines without a source are stamped with the
/// dictionary's own URL. Repeated `(term, language)` pairs accumulate in file
/// order.
#[derive(Debug, Clone, Default)]
pub struct LocalDictionary {
    entries: HashMap<(String, String), Vec<DefinitionRecord>>,
}

impl LocalDictionary {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, DictionaryError> {
        let path = path.as_ref();
        let absolute = std::path::absolute(path).map_err(|e| DictionaryError::io(path, e))?;
        let url = Url::from_file_path(&absolute)
            .map(String::from)
            .map_err(|_| DictionaryError::Config(format!("cannot form a URL for {}", path.display())))?;
        Self::load_with_source(path, &url)
    }

    pub fn load_with_source(path: &Path, default_source: &str) -> Result<Self, DictionaryError> {
        let text = std::fs::read_to_string(path).map_err(|e| DictionaryError::io(path, e))?;
        Self::parse(&text, default_source)
    }

    pub fn parse(text: &str, default_source: &str) -> Result<Self, DictionaryError> {
        let mut entries: HashMap<(String, String), Vec<DefinitionRecord>> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let format = |message: String| DictionaryError::Format {
                line: line_no,
                message,
            };
            let line: Line = serde_json::from_str(raw).map_err(|e| format(e.to_string()))?;
            let term = fold_term(&line.term);
            if term.is_empty() {
                return Err(format("empty term".into()));
            }
            if line.language.is_empty() {
                return Err(format("empty language".into()));
            }
            if line.definition.trim().is_empty() {
                return Err(format("empty definition".into()));
            }
            let source = line.source.unwrap_or_else(|| default_source.to_string());
            if !is_absolute_url(&source) {
                return Err(format(format!("source {source:?} is not an absolute URL")));
            }
            entries
                .entry((term.clone(), line.language.clone()))
                .or_default()
                .push(DefinitionRecord {
                    term,
                    language: line.language,
                    source,
                    definition: line.definition,
                });
        }
        Ok(Self { entries })
    }

    pub fn get(&self, term: &str, language: &str) -> &[DefinitionRecord] {
        self.entries
            .get(&(fold_term(term), language.to_string()))
            .map(Vec::as_slice)
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl DefinitionSource for LocalDictionary {
    fn fetch(&self, term: &str, language: &str) -> Result<Vec<DefinitionRecord>, DictionaryError> {
        Ok(self.get(term, language).to_vec())
    }
}
