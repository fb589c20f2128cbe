//! Keyword definition lookup across pluggable dictionary providers.
//!
//! Every returned [`DefinitionRecord`] carries the URL of the dictionary it
//! came from. Results are cached on disk, one file per
//! `(provider, language, folded term)`.

mod cache;
mod local;

use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use url::Url;

pub use cache::DiskCache;
pub use local::LocalDictionary;

/// Location of the dictionary fixture shipped with this crate.
pub const BUNDLED_DICTIONARY_PATH: &str =
    concat!(env!("CARGO_MANIFEST_DIR"), "/data/en-dictionary.jsonl");
const BUNDLED_DICTIONARY: &str = include_str!("../../data/en-dictionary.jsonl");

#[derive(Debug, Error)]
pub enum DictionaryError {
    #[error("invalid provider configuration: {0}")]
    Config(String),
    #[error("unknown provider {0:?}")]
    UnknownProvider(String),
    #[error("provider {provider:?} does not support language {language:?}")]
    UnsupportedLanguage { provider: String, language: String },
    #[error("provider {provider:?} unavailable: {reason}")]
    ProviderUnavailable { provider: String, reason: String },
    #[error("lookup term is empty")]
    EmptyTerm,
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

impl DictionaryError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        DictionaryError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DefinitionRecord {
    pub term: String,
    pub language: String,
    pub source: String,
    pub definition: String,
}

impl DefinitionRecord {
    pub fn is_valid(&self) -> bool {
        !self.definition.trim().is_empty() && !self.language.is_empty() && is_absolute_url(&self.source)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProviderKind {
    #[serde(rename = "local-file")]
    LocalFile,
    #[serde(rename = "http")]
    Http,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProviderConfig {
    pub id: String,
    pub display_name: String,
    /// Site URL for `http` providers; a path or `file://` URL for `local-file`.
    pub base_url: String,
    pub kind: ProviderKind,
    pub languages: Vec<String>,
}

impl ProviderConfig {
    pub fn supports(&self, language: &str) -> bool {
        self.languages.iter().any(|l| l == language)
    }
}

pub fn is_absolute_url(s: &str) -> bool {
    Url::parse(s).is_ok()
}

/// Case-folds a lookup term. Keyword lists are not case sensitive.
pub fn fold_term(term: &str) -> String {
    term.trim().to_lowercase()
}

/// The stock provider list: three online dictionaries plus the bundled
/// offline fixture.
pub fn default_config() -> Vec<ProviderConfig> {
    let en = || vec!["en".to_string()];
    vec![
        ProviderConfig {
            id: "freedicts".into(),
            display_name: "FreeDicts".into(),
            base_url: "http://www.dicts.info/".into(),
            kind: ProviderKind::Http,
            languages: en(),
        },
        ProviderConfig {
            id: "memidex".into(),
            display_name: "Memidex".into(),
            base_url: "http://www.memidex.com/".into(),
            kind: ProviderKind::Http,
            languages: en(),
        },
        ProviderConfig {
            id: "synonymsdict".into(),
            display_name: "SynonymsDict".into(),
            base_url: "http://www.synonym.com/".into(),
            kind: ProviderKind::Http,
            languages: en(),
        },
        ProviderConfig {
            id: "local".into(),
            display_name: "Local dictionary".into(),
            base_url: bundled_dictionary_url(),
            kind: ProviderKind::LocalFile,
            languages: en(),
        },
    ]
}

pub fn bundled_dictionary_url() -> String {
    Url::from_file_path(BUNDLED_DICTIONARY_PATH)
        .map(String::from)
        .unwrap_or_else(|_| format!("file://{BUNDLED_DICTIONARY_PATH}"))
}

/// Reads a provider config file: a JSON array of [`ProviderConfig`]. An empty
/// file is an empty list.
pub fn load_config(path: impl AsRef<Path>) -> Result<Vec<ProviderConfig>, DictionaryError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| DictionaryError::io(path, e))?;
    let mut configs = parse_config(&text)?;
    // Relative local dictionary paths are relative to the config file.
    if let Some(dir) = path.parent() {
        for c in configs.iter_mut() {
            if c.kind == ProviderKind::LocalFile
                && Url::parse(&c.base_url).is_err()
                && Path::new(&c.base_url).is_relative()
            {
                c.base_url = dir.join(&c.base_url).display().to_string();
            }
        }
    }
    validate_config(&configs)?;
    Ok(configs)
}

pub fn parse_config(text: &str) -> Result<Vec<ProviderConfig>, DictionaryError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let configs: Vec<ProviderConfig> =
        serde_json::from_str(text).map_err(|e| DictionaryError::Config(e.to_string()))?;
    validate_config(&configs)?;
    Ok(configs)
}

fn validate_config(configs: &[ProviderConfig]) -> Result<(), DictionaryError> {
    let mut seen = HashSet::new();
    for c in configs {
        if c.id.is_empty() {
            return Err(DictionaryError::Config("provider with empty id".into()));
        }
        if !seen.insert(c.id.as_str()) {
            return Err(DictionaryError::Config(format!("duplicate provider id {:?}", c.id)));
        }
        if c.kind == ProviderKind::Http && !is_absolute_url(&c.base_url) {
            return Err(DictionaryError::Config(format!(
                "provider {:?}: base URL {:?} is not absolute",
                c.id, c.base_url
            )));
        }
    }
    Ok(())
}

/// Something that answers `(term, language)` with definitions. Terms passed
/// in are already case-folded.
pub trait DefinitionSource: Send + Sync {
    fn fetch(&self, term: &str, language: &str) -> Result<Vec<DefinitionRecord>, DictionaryError>;
}

/// Fetch-and-extract hook for an online dictionary. Returns the definition
/// texts found for `term`; the gateway stamps them with the provider's URL.
pub trait FetchHook: Send + Sync {
    fn fetch(&self, base_url: &str, term: &str, language: &str) -> Result<Vec<String>, String>;
}

struct HttpSource {
    config: ProviderConfig,
    hook: Option<Arc<dyn FetchHook>>,
}

impl DefinitionSource for HttpSource {
    fn fetch(&self, term: &str, language: &str) -> Result<Vec<DefinitionRecord>, DictionaryError> {
        let unavailable = |reason: String| DictionaryError::ProviderUnavailable {
            provider: self.config.id.clone(),
            reason,
        };
        let hook = self
            .hook
            .as_ref()
            .ok_or_else(|| unavailable("no fetch hook registered".into()))?;
        let texts = hook
            .fetch(&self.config.base_url, term, language)
            .map_err(unavailable)?;
        Ok(texts
            .into_iter()
            .map(|definition| DefinitionRecord {
                term: term.to_string(),
                language: language.to_string(),
                source: self.config.base_url.clone(),
                definition,
            })
            .collect())
    }
}

pub struct Gateway {
    providers: Vec<ProviderConfig>,
    sources: HashMap<String, Box<dyn DefinitionSource>>,
    cache: DiskCache,
}

impl std::fmt::Debug for Gateway {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Gateway")
            .field("providers", &self.providers)
            .field("cache", &self.cache)
            .finish()
    }
}

impl Gateway {
    pub fn new(
        providers: Vec<ProviderConfig>,
        cache_dir: impl Into<PathBuf>,
    ) -> Result<Self, DictionaryError> {
        validate_config(&providers)?;
        let mut sources: HashMap<String, Box<dyn DefinitionSource>> = HashMap::new();
        for config in &providers {
            let source: Box<dyn DefinitionSource> = match config.kind {
                ProviderKind::LocalFile => Box::new(open_local(config)?),
                ProviderKind::Http => Box::new(HttpSource {
                    config: config.clone(),
                    hook: None,
                }),
            };
            sources.insert(config.id.clone(), source);
        }
        Ok(Self {
            providers,
            sources,
            cache: DiskCache::new(cache_dir),
        })
    }

    pub fn with_default_config(cache_dir: impl Into<PathBuf>) -> Result<Self, DictionaryError> {
        Self::new(default_config(), cache_dir)
    }

    /// Attaches a fetch hook to an `http` provider.
    pub fn set_fetch_hook(
        &mut self,
        provider_id: &str,
        hook: Arc<dyn FetchHook>,
    ) -> Result<(), DictionaryError> {
        let config = self
            .provider(provider_id)
            .ok_or_else(|| DictionaryError::UnknownProvider(provider_id.to_string()))?
            .clone();
        if config.kind != ProviderKind::Http {
            return Err(DictionaryError::Config(format!(
                "provider {provider_id:?} is not an http provider"
            )));
        }
        self.sources.insert(
            provider_id.to_string(),
            Box::new(HttpSource {
                config,
                hook: Some(hook),
            }),
        );
        Ok(())
    }

    pub fn list_providers(&self) -> &[ProviderConfig] {
        &self.providers
    }

    pub fn provider(&self, id: &str) -> Option<&ProviderConfig> {
        self.providers.iter().find(|p| p.id == id)
    }

    pub fn cache(&self) -> &DiskCache {
        &self.cache
    }

    pub fn lookup(
        &self,
        provider_id: &str,
        term: &str,
        language: &str,
    ) -> Result<Vec<DefinitionRecord>, DictionaryError> {
        let config = self
            .provider(provider_id)
            .ok_or_else(|| DictionaryError::UnknownProvider(provider_id.to_string()))?;
        let folded = fold_term(term);
        if folded.is_empty() {
            return Err(DictionaryError::EmptyTerm);
        }
        if !config.supports(language) {
            return Err(DictionaryError::UnsupportedLanguage {
                provider: provider_id.to_string(),
                language: language.to_string(),
            });
        }
        if let Some(hit) = self.cache.get(provider_id, language, &folded) {
            return Ok(hit);
        }
        let records: Vec<DefinitionRecord> = self.sources[provider_id]
            .fetch(&folded, language)?
            .into_iter()
            .filter(DefinitionRecord::is_valid)
            .collect();
        self.cache.put(provider_id, language, &folded, &records)?;
        Ok(records)
    }
}

fn open_local(config: &ProviderConfig) -> Result<LocalDictionary, DictionaryError> {
    let (path, source_url) = match Url::parse(&config.base_url) {
        Ok(url) if url.scheme() == "file" => {
            let path = url.to_file_path().map_err(|_| {
                DictionaryError::Config(format!("provider {:?}: bad file URL", config.id))
            })?;
            (path, config.base_url.clone())
        }
        Ok(_) => {
            return Err(DictionaryError::Config(format!(
                "provider {:?}: local-file providers need a path or file:// URL",
                config.id
            )))
        }
        Err(_) => {
            let path = std::path::absolute(&config.base_url)
                .map_err(|e| DictionaryError::io(Path::new(&config.base_url), e))?;
            let url = Url::from_file_path(&path)
                .map(String::from)
                .map_err(|_| DictionaryError::Config(format!("provider {:?}: bad path", config.id)))?;
            (path, url)
        }
    };
    if path == Path::new(BUNDLED_DICTIONARY_PATH) && !path.exists() {
        return LocalDictionary::parse(BUNDLED_DICTIONARY, &source_url);
    }
    LocalDictionary::load_with_source(&path, &source_url)
}
