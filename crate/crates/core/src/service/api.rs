use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{
    BlockedEntry, ClassifyResponse, FeedbackAck, FeedbackEvent, FetchError, Health, Service,
};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: String,
    pub message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> ApiError {
        ApiError {
            status,
            code: code.into(),
            message: message.into(),
        }
    }

    pub fn bad_request(code: &str, message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::BAD_REQUEST, code, message)
    }

    pub fn not_found(code: &str, message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, code, message)
    }

    pub fn conflict(code: &str, message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::CONFLICT, code, message)
    }

    pub fn internal(message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }

    pub fn batch_too_large(n: usize, max: usize) -> ApiError {
        ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            "batch_too_large",
            format!("{n} texts exceeds the limit of {max}"),
        )
    }

    pub fn from_core(e: Error) -> ApiError {
        match e {
            Error::Training(m) => {
                ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "training_failed", m)
            }
            Error::InvalidArgument(m) => ApiError::bad_request("invalid_argument", m),
            other => ApiError::internal(other.to_string()),
        }
    }

    pub fn fetch(e: FetchError) -> ApiError {
        let status = match e {
            FetchError::InvalidUrl(_) => StatusCode::BAD_REQUEST,
            FetchError::Timeout => StatusCode::GATEWAY_TIMEOUT,
            _ => StatusCode::BAD_GATEWAY,
        };
        ApiError::new(status, e.code(), e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(json!({"error": {"code": self.code, "message": self.message}})),
        )
            .into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> ApiError {
        ApiError::new(r.status(), "malformed_request", r.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(r: QueryRejection) -> ApiError {
        ApiError::new(r.status(), "malformed_request", r.body_text())
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyRequest {
    #[serde(default)]
    pub user: Option<String>,
    pub texts: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyUrlRequest {
    #[serde(default)]
    pub user: Option<String>,
    pub url: String,
}

#[derive(Debug, Serialize)]
pub struct ClassifyUrlResponse {
    pub title: String,
    #[serde(flatten)]
    pub response: ClassifyResponse,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeedbackRequest {
    pub event: FeedbackEvent,
}

#[derive(Debug, Deserialize)]
pub struct UserQuery {
    pub user: String,
}

#[derive(Debug, Serialize)]
pub struct BlockedResponse {
    pub user: String,
    pub entries: Vec<BlockedEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockFeedbackRequest {
    pub user: String,
    pub link: String,
    pub correct: bool,
}

#[derive(Debug, Serialize)]
pub struct RetrainResponse {
    pub model_version: u64,
}

pub fn router(svc: Arc<Service>) -> Router {
    Router::new()
        .route("/v1/classify", post(classify))
        .route("/v1/classify-url", post(classify_url))
        .route("/v1/feedback", post(feedback))
        .route("/v1/blocked", get(blocked))
        .route("/v1/blocked/feedback", post(block_feedback))
        .route("/v1/admin/retrain", post(retrain))
        .route("/v1/health", get(health))
        .fallback(|| async { ApiError::not_found("no_route", "no such endpoint") })
        .with_state(svc)
}

async fn classify(
    State(svc): State<Arc<Service>>,
    req: Result<Json<ClassifyRequest>, JsonRejection>,
) -> ApiResult<ClassifyResponse> {
    let Json(req) = req?;
    Ok(Json(svc.classify(req.user.as_deref(), req.texts).await?))
}

async fn classify_url(
    State(svc): State<Arc<Service>>,
    req: Result<Json<ClassifyUrlRequest>, JsonRejection>,
) -> ApiResult<ClassifyUrlResponse> {
    let Json(req) = req?;
    let (title, response) = svc.classify_url(req.user.as_deref(), &req.url).await?;
    Ok(Json(ClassifyUrlResponse { title, response }))
}

async fn feedback(
    State(svc): State<Arc<Service>>,
    req: Result<Json<FeedbackRequest>, JsonRejection>,
) -> ApiResult<FeedbackAck> {
    let Json(req) = req?;
    Ok(Json(svc.record_feedback(req.event).await?))
}

async fn blocked(
    State(svc): State<Arc<Service>>,
    q: Result<Query<UserQuery>, QueryRejection>,
) -> ApiResult<BlockedResponse> {
    let Query(q) = q?;
    let entries = svc.list_blocked(&q.user).await?;
    Ok(Json(BlockedResponse {
        user: q.user,
        entries,
    }))
}

async fn block_feedback(
    State(svc): State<Arc<Service>>,
    req: Result<Json<BlockFeedbackRequest>, JsonRejection>,
) -> ApiResult<FeedbackAck> {
    let Json(req) = req?;
    Ok(Json(
        svc.feedback_on_block(&req.user, &req.link, req.correct)
            .await?,
    ))
}

async fn retrain(State(svc): State<Arc<Service>>) -> ApiResult<RetrainResponse> {
    let v = svc.retrain().await.map_err(ApiError::from_core)?;
    Ok(Json(RetrainResponse { model_version: v }))
}

async fn health(State(svc): State<Arc<Service>>) -> Json<Health> {
    Json(svc.health())
}
