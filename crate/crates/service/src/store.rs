//! File-backed project persistence.
//!
//! Each project lives in `<data>/projects/<id>/` as the uploaded source file
//! (under `source/`), the current `script.xml`, and a small `project.json`
//! with timestamps. The script file is the only record of the annotations.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use parking_lot::RwLock;
use rand::distributions::Alphanumeric;
use rand::Rng;
use semdesc_core::parser::{self, extract_keywords};
use semdesc_core::{InterfaceModel, MetadataScript};
use serde::{Deserialize, Serialize};
use tokio::sync::Mutex;

use crate::error::ApiError;

const SCRIPT_FILE: &str = "script.xml";
const META_FILE: &str = "project.json";
const SOURCE_DIR: &str = "source";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ProjectMeta {
    id: String,
    source_name: String,
    created_at: u64,
    updated_at: u64,
}

#[derive(Debug, Clone)]
pub struct Project {
    pub id: String,
    pub source_name: String,
    pub model: InterfaceModel,
    pub script: MetadataScript,
    pub created_at: u64,
    pub updated_at: u64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProjectSummary {
    pub id: String,
    pub model: InterfaceModel,
    pub keywords: Vec<String>,
    pub annotation_count: usize,
    pub created_at: u64,
    pub updated_at: u64,
}

impl Project {
    pub fn summary(&self) -> ProjectSummary {
        ProjectSummary {
            id: self.id.clone(),
            model: self.model.clone(),
            keywords: extract_keywords(&self.model).into_iter().collect(),
            annotation_count: self.script.annotation_count(),
            created_at: self.created_at,
            updated_at: self.updated_at,
        }
    }

    fn meta(&self) -> ProjectMeta {
        ProjectMeta {
            id: self.id.clone(),
            source_name: self.source_name.clone(),
            created_at: self.created_at,
            updated_at: self.updated_at,
        }
    }
}

pub fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or_default()
}

fn new_id() -> String {
    rand::thread_rng()
        .sample_iter(&Alphanumeric)
        .take(12)
        .map(|b| (b as char).to_ascii_lowercase())
        .collect()
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().expect("project files live in a directory");
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// All projects, each behind its own lock so writes to one project are
/// serialized while different projects proceed independently.
#[derive(Debug)]
pub struct ProjectStore {
    root: PathBuf,
    projects: RwLock<HashMap<String, Arc<Mutex<Project>>>>,
}

impl ProjectStore {
    /// Opens (creating if needed) `<data_dir>/projects` and loads every
    /// project found there.
    pub fn open(data_dir: &Path) -> std::io::Result<Self> {
        let root = data_dir.join("projects");
        std::fs::create_dir_all(&root)?;
        let mut projects = HashMap::new();
        for entry in std::fs::read_dir(&root)? {
            let dir = entry?.path();
            if !dir.is_dir() {
                continue;
            }
            match load_project(&dir) {
                Ok(p) => {
                    projects.insert(p.id.clone(), Arc::new(Mutex::new(p)));
                }
                Err(e) => tracing::warn!("skipping project at {}: {e}", dir.display()),
            }
        }
        Ok(Self {
            root,
            projects: RwLock::new(projects),
        })
    }

    pub fn project_dir(&self, id: &str) -> PathBuf {
        self.root.join(id)
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Project>>, ApiError> {
        self.projects
            .read()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::unknown_project(id))
    }

    pub fn ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.projects.read().keys().cloned().collect();
        ids.sort();
        ids
    }

    pub fn create(&self, filename: &str, content: &str) -> Result<Project, ApiError> {
        let source_name = Path::new(filename)
            .file_name()
            .and_then(|n| n.to_str())
            .filter(|n| !n.is_empty())
            .ok_or_else(|| ApiError::bad_request("InvalidFilename", format!("bad filename {filename:?}")))?
            .to_string();
        let model = parser::parse_source(&source_name, content)?;
        let script = MetadataScript::new(&model);
        let now = now_millis();
        let mut id = new_id();
        while self.projects.read().contains_key(&id) || self.project_dir(&id).exists() {
            id = new_id();
        }
        let project = Project {
            id: id.clone(),
            source_name: source_name.clone(),
            model,
            script,
            created_at: now,
            updated_at: now,
        };
        let dir = self.project_dir(&id);
        std::fs::create_dir_all(dir.join(SOURCE_DIR)).map_err(ApiError::internal)?;
        std::fs::write(dir.join(SOURCE_DIR).join(&source_name), content).map_err(ApiError::internal)?;
        persist(&dir, &project).map_err(ApiError::internal)?;
        self.projects
            .write()
            .insert(id, Arc::new(Mutex::new(project.clone())));
        Ok(project)
    }

    /// Writes the project's script and metadata to disk.
    pub fn save(&self, project: &Project) -> Result<(), ApiError> {
        persist(&self.project_dir(&project.id), project).map_err(ApiError::internal)
    }
}

fn persist(dir: &Path, project: &Project) -> std::io::Result<()> {
    write_atomic(&dir.join(SCRIPT_FILE), project.script.to_xml().as_bytes())?;
    let meta = serde_json::to_vec_pretty(&project.meta()).expect("metadata serializes");
    write_atomic(&dir.join(META_FILE), &meta)
}

fn load_project(dir: &Path) -> Result<Project, String> {
    let meta: ProjectMeta = serde_json::from_str(
        &std::fs::read_to_string(dir.join(META_FILE)).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let source = std::fs::read_to_string(dir.join(SOURCE_DIR).join(&meta.source_name))
        .map_err(|e| e.to_string())?;
    let model = parser::parse_source(&meta.source_name, &source).map_err(|e| e.to_string())?;
    let script = MetadataScript::from_xml(
        &std::fs::read_to_string(dir.join(SCRIPT_FILE)).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    Ok(Project {
        id: meta.id,
        source_name: meta.source_name,
        model,
        script,
        created_at: meta.created_at,
        updated_at: meta.updated_at,
    })
}
