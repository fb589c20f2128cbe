use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use semdesc_core::{DictionaryError, MatchError, ParseError, ScriptError};
use serde_json::json;

/// An error rendered as `{"error": <code>, "message": <text>}`.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            code,
            message: message.into(),
        }
    }

    pub fn bad_request(code: &'static str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, code, message)
    }

    pub fn unknown_project(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "UnknownProject", format!("no project {id:?}"))
    }

    pub fn internal(e: impl std::fmt::Display) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "InternalError", e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = Json(json!({ "error": self.code, "message": self.message }));
        (self.status, body).into_response()
    }
}

impl From<ParseError> for ApiError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::UnsupportedFileType(_) => {
                Self::new(StatusCode::UNSUPPORTED_MEDIA_TYPE, "UnsupportedFileType", e.to_string())
            }
            ParseError::Syntax { .. } => {
                Self::new(StatusCode::UNPROCESSABLE_ENTITY, "ParseError", e.to_string())
            }
            ParseError::Io { .. } => Self::internal(e),
        }
    }
}

impl From<DictionaryError> for ApiError {
    fn from(e: DictionaryError) -> Self {
        let (status, code) = match e {
            DictionaryError::UnknownProvider(_) => (StatusCode::NOT_FOUND, "UnknownProvider"),
            DictionaryError::ProviderUnavailable { .. } => {
                (StatusCode::SERVICE_UNAVAILABLE, "ProviderUnavailable")
            }
            DictionaryError::UnsupportedLanguage { .. } => {
                (StatusCode::BAD_REQUEST, "UnsupportedLanguage")
            }
            DictionaryError::EmptyTerm => (StatusCode::BAD_REQUEST, "EmptyTerm"),
            _ => (StatusCode::INTERNAL_SERVER_ERROR, "DictionaryError"),
        };
        Self::new(status, code, e.to_string())
    }
}

impl From<ScriptError> for ApiError {
    fn from(e: ScriptError) -> Self {
        let code = match e {
            ScriptError::UnknownTarget(_) => "UnknownTarget",
            ScriptError::InvalidAnnotation(_) => "InvalidAnnotation",
            ScriptError::Schema(_) => "SchemaError",
        };
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, code, e.to_string())
    }
}

impl From<MatchError> for ApiError {
    fn from(e: MatchError) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, "InvalidRequest", e.to_string())
    }
}
