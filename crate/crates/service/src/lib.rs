//! HTTP service for annotating service interfaces with dictionary metadata.
//!
//! | method | path | purpose |
//! |---|---|---|
//! | `POST` | `/projects` | upload `{filename, content}`, parse it, start an empty script |
//! | `GET` | `/projects`, `/projects/{id}` | project summaries |
//! | `POST` | `/projects/{id}/annotations` | append `{target, annotation}` |
//! | `GET` | `/projects/{id}/script?format=xml\|display` | the script |
//! | `GET` | `/dictionaries` | configured providers |
//! | `GET` | `/dictionaries/{id}/lookup?term=&language=` | definitions |
//! | `POST` | `/match` | rank scripts or projects against a request |
//!
//! Built UI assets, when configured, are served from `/`.

mod error;
mod store;

use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use semdesc_core::matcher::{self, ConceptRequirement, MatchConfig, MatchReport, MatchRequest};
use semdesc_core::{AnnotationTarget, DefinitionRecord, Gateway, KeywordAnnotation, MetadataScript, ProviderConfig};
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

pub use error::ApiError;
pub use store::{Project, ProjectStore, ProjectSummary};

pub struct AppState {
    pub gateway: Arc<Gateway>,
    pub store: ProjectStore,
    pub match_config: MatchConfig,
    pub ui_dir: Option<PathBuf>,
}

impl AppState {
    pub fn open(data_dir: impl Into<PathBuf>, gateway: Gateway) -> std::io::Result<Self> {
        let data_dir = data_dir.into();
        Ok(Self {
            gateway: Arc::new(gateway),
            store: ProjectStore::open(&data_dir)?,
            match_config: MatchConfig::DEFAULT,
            ui_dir: None,
        })
    }

    pub fn with_ui_dir(mut self, dir: Option<PathBuf>) -> Self {
        self.ui_dir = dir;
        self
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    let ui_dir = state.ui_dir.clone();
    let api = Router::new()
        .route("/projects", post(create_project).get(list_projects))
        .route("/projects/:id", get(get_project))
        .route("/projects/:id/annotations", post(add_annotation))
        .route("/projects/:id/script", get(get_script))
        .route("/dictionaries", get(list_dictionaries))
        .route("/dictionaries/:id/lookup", get(lookup))
        .route("/match", post(run_match))
        .with_state(state);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { "semdesc annotation service\n" })),
    }
}

/// Serves `router(state)` on an already-bound listener until the process exits.
pub async fn serve(listener: tokio::net::TcpListener, state: Arc<AppState>) -> std::io::Result<()> {
    axum::serve(listener, router(state)).await
}

#[derive(Debug, Deserialize)]
pub struct Upload {
    pub filename: String,
    pub content: String,
}

async fn create_project(
    State(state): State<Arc<AppState>>,
    Json(upload): Json<Upload>,
) -> Result<(StatusCode, Json<ProjectSummary>), ApiError> {
    let project = state.store.create(&upload.filename, &upload.content)?;
    Ok((StatusCode::CREATED, Json(project.summary())))
}

async fn list_projects(State(state): State<Arc<AppState>>) -> Result<Json<Vec<ProjectSummary>>, ApiError> {
    let mut out = Vec::new();
    for id in state.store.ids() {
        out.push(state.store.get(&id)?.lock().await.summary());
    }
    Ok(Json(out))
}

async fn get_project(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<ProjectSummary>, ApiError> {
    Ok(Json(state.store.get(&id)?.lock().await.summary()))
}

#[derive(Debug, Deserialize, Serialize)]
pub struct AnnotationBody {
    pub target: AnnotationTarget,
    pub annotation: KeywordAnnotation,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct AnnotationCount {
    pub annotation_count: usize,
}

async fn add_annotation(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(body): Json<AnnotationBody>,
) -> Result<Json<AnnotationCount>, ApiError> {
    let handle = state.store.get(&id)?;
    let mut project = handle.lock().await;
    let mut updated = project.clone();
    let annotation_count = updated.script.add_annotation(&body.target, body.annotation)?;
    updated.updated_at = store::now_millis();
    // Only commit in memory once the new script is on disk.
    state.store.save(&updated)?;
    *project = updated;
    Ok(Json(AnnotationCount { annotation_count }))
}

#[derive(Debug, Deserialize)]
struct ScriptQuery {
    format: Option<String>,
}

async fn get_script(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<ScriptQuery>,
) -> Result<Response, ApiError> {
    let handle = state.store.get(&id)?;
    let project = handle.lock().await;
    match q.format.as_deref().unwrap_or("xml") {
        "xml" => Ok((
            [(header::CONTENT_TYPE, "application/xml; charset=utf-8")],
            project.script.to_xml(),
        )
            .into_response()),
        "display" => Ok((
            [(header::CONTENT_TYPE, "text/plain; charset=utf-8")],
            project.script.to_display(),
        )
            .into_response()),
        other => Err(ApiError::bad_request(
            "UnknownFormat",
            format!("unknown format {other:?}; expected xml or display"),
        )),
    }
}

async fn list_dictionaries(State(state): State<Arc<AppState>>) -> Json<Vec<ProviderConfig>> {
    Json(state.gateway.list_providers().to_vec())
}

#[derive(Debug, Deserialize)]
struct LookupQuery {
    term: String,
    language: Option<String>,
}

async fn lookup(
    State(state): State<Arc<AppState>>,
    Path(provider): Path<String>,
    Query(q): Query<LookupQuery>,
) -> Result<Json<Vec<DefinitionRecord>>, ApiError> {
    let gateway = state.gateway.clone();
    let language = q.language.unwrap_or_else(|| "en".to_string());
    let records = tokio::task::spawn_blocking(move || gateway.lookup(&provider, &q.term, &language))
        .await
        .map_err(ApiError::internal)??;
    Ok(Json(records))
}

/// One match candidate: either an inline script document or a project id.
#[derive(Debug, Clone, Deserialize, Serialize, Default)]
#[serde(rename_all = "camelCase")]
pub struct CandidateRef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub service_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xml: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub project_id: Option<String>,
}

/// The request document's `concepts` plus the candidates to rank.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct MatchBody {
    #[serde(default)]
    pub concepts: Vec<ConceptRequirement>,
    pub candidates: Vec<CandidateRef>,
}

async fn run_match(
    State(state): State<Arc<AppState>>,
    Json(body): Json<MatchBody>,
) -> Result<Json<Vec<MatchReport>>, ApiError> {
    let request = MatchRequest::new(body.concepts)?;
    let mut candidates: Vec<(String, MetadataScript)> = Vec::new();
    for (i, c) in body.candidates.into_iter().enumerate() {
        let (default_id, script) = match (c.xml, c.project_id) {
            (Some(xml), None) => {
                let script = MetadataScript::from_xml(&xml)?;
                (script.interface_name.clone(), script)
            }
            (None, Some(pid)) => {
                let script = state.store.get(&pid)?.lock().await.script.clone();
                (pid, script)
            }
            _ => {
                return Err(ApiError::new(
                    StatusCode::UNPROCESSABLE_ENTITY,
                    "InvalidRequest",
                    format!("candidate {i} needs exactly one of xml or projectId"),
                ))
            }
        };
        candidates.push((c.service_id.unwrap_or(default_id), script));
    }
    Ok(Json(matcher::rank_services(&state.match_config, &request, &candidates)?))
}
