use std::io::Write;
use std::path::{Path, PathBuf};

use super::{DefinitionRecord, DictionaryError};

/// Directory cache with one JSON file per `(provider, language, term)`.
///
/// Layout: `<root>/<provider>/<language>/<term>.json`, each component
/// encoded so that only `[a-z0-9-]` appear verbatim and every other byte is
/// written as `_XX`. Deleting a file invalidates that entry.
#[derive(Debug, Clone)]
pub struct DiskCache {
    root: PathBuf,
}

pub(crate) fn encode_component(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for b in s.bytes() {
        if b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-' {
            out.push(b as char);
        } else {
            out.push_str(&format!("_{b:02X}"));
        }
    }
    if out.is_empty() {
        out.push('_');
    }
    out
}

impl DiskCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn entry_path(&self, provider: &str, language: &str, term: &str) -> PathBuf {
        self.root
            .join(encode_component(provider))
            .join(encode_component(language))
            .join(format!("{}.json", encode_component(term)))
    }

    /// Unreadable or corrupt entries count as misses.
    pub fn get(&self, provider: &str, language: &str, term: &str) -> Option<Vec<DefinitionRecord>> {
        let text = std::fs::read_to_string(self.entry_path(provider, language, term)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(
        &self,
        provider: &str,
        language: &str,
        term: &str,
        records: &[DefinitionRecord],
    ) -> Result<(), DictionaryError> {
        let path = self.entry_path(provider, language, term);
        let dir = path.parent().expect("entry path has a parent");
        std::fs::create_dir_all(dir).map_err(|e| DictionaryError::io(dir, e))?;
        let body = serde_json::to_vec_pretty(records).expect("records serialize");
        // Write to a sibling temp file and rename so readers never see a partial entry.
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| DictionaryError::io(dir, e))?;
        tmp.write_all(&body).map_err(|e| DictionaryError::io(&path, e))?;
        tmp.persist(&path)
            .map_err(|e| DictionaryError::io(&path, e.error))?;
        Ok(())
    }
}
