//! Stateless JSON service over the analysis report.

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Query};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use subshift::complexes::{anderson_putnam, barge_diamond, export_graph, GraphFormat};
use subshift::report::{analyze, AnalysisOptions, RefusalKind, DEFAULT_REPORT_WORD_BUDGET};
use subshift::{Error, Substitution};

/// Request bodies past this size are answered with 413 before parsing.
pub const MAX_BODY_BYTES: usize = 64 * 1024;
/// Largest total image length accepted in one request.
pub const MAX_TOTAL_LENGTH: usize = 4096;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeRequest {
    pub sub: String,
    #[serde(default)]
    pub options: AnalysisOptions,
}

#[derive(Debug, Serialize)]
struct RefusalEntry {
    stage: &'static str,
    kind: RefusalKind,
    reason: String,
}

pub fn router() -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/api/analyze", post(analyze_handler))
        .route("/api/graph", get(graph_handler))
        .layer(DefaultBodyLimit::max(MAX_BODY_BYTES))
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(json!({ "error": message.into() }))).into_response()
}

fn status_for(e: &Error) -> StatusCode {
    match e {
        Error::Parse(_) | Error::InvalidPermutation(_) => StatusCode::BAD_REQUEST,
        Error::Budget { .. } => StatusCode::PAYLOAD_TOO_LARGE,
        Error::Io(_) | Error::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        _ => StatusCode::UNPROCESSABLE_ENTITY,
    }
}

fn parse_sub(text: &str) -> Result<Substitution, Response> {
    let sub = Substitution::parse(text).map_err(|e| error(StatusCode::BAD_REQUEST, e.to_string()))?;
    if sub.total_length() > MAX_TOTAL_LENGTH {
        return Err(error(
            StatusCode::PAYLOAD_TOO_LARGE,
            format!("total image length {} exceeds {MAX_TOTAL_LENGTH}", sub.total_length()),
        ));
    }
    Ok(sub)
}

async fn health() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok" }))
}

async fn analyze_handler(body: Bytes) -> Response {
    // parsed by hand so that malformed JSON is a 400 rather than axum's 422
    let req: AnalyzeRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, format!("malformed request: {e}")),
    };
    let sub = match parse_sub(&req.sub) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let mut options = req.options;
    options.word_budget = Some(options.word_budget.unwrap_or(DEFAULT_REPORT_WORD_BUDGET).min(DEFAULT_REPORT_WORD_BUDGET));
    let joined = tokio::task::spawn_blocking(move || analyze(&sub, &options).map(|r| (r, options))).await;
    let (report, options) = match joined {
        Ok(Ok(x)) => x,
        Ok(Err(e)) => return error(status_for(&e), e.to_string()),
        Err(e) => return error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    };
    let refusals: Vec<RefusalEntry> = report
        .explicit_refusals(&options)
        .into_iter()
        .map(|(stage, kind, reason)| RefusalEntry { stage, kind, reason })
        .collect();
    if refusals.is_empty() {
        return (StatusCode::OK, Json(report)).into_response();
    }
    let status = if refusals.iter().any(|r| r.kind == RefusalKind::Budget) {
        StatusCode::PAYLOAD_TOO_LARGE
    } else {
        StatusCode::UNPROCESSABLE_ENTITY
    };
    let message = format!("{} requested stage(s) refused", refusals.len());
    (status, Json(json!({ "error": message, "refusals": refusals, "report": report }))).into_response()
}

#[derive(Debug, Deserialize)]
pub struct GraphQuery {
    pub sub: String,
    #[serde(default = "default_kind")]
    pub kind: String,
    #[serde(default = "default_format")]
    pub format: String,
}

fn default_kind() -> String {
    "ap".into()
}

fn default_format() -> String {
    "dot".into()
}

async fn graph_handler(Query(q): Query<GraphQuery>) -> Response {
    let sub = match parse_sub(&q.sub) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let format: GraphFormat = match q.format.parse() {
        Ok(f) => f,
        Err(e) => return error(StatusCode::BAD_REQUEST, format!("{e}")),
    };
    let build = match q.kind.as_str() {
        "bd" => barge_diamond,
        "ap" => anderson_putnam,
        other => return error(StatusCode::BAD_REQUEST, format!("unknown graph kind {other:?}")),
    };
    let graph = match tokio::task::spawn_blocking(move || build(&sub)).await {
        Ok(Ok(g)) => g,
        Ok(Err(e)) => return error(status_for(&e), e.to_string()),
        Err(e) => return error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    };
    let content_type = match format {
        GraphFormat::Dot => "text/vnd.graphviz; charset=utf-8",
        GraphFormat::Tikz => "text/x-tex; charset=utf-8",
    };
    ([(header::CONTENT_TYPE, content_type)], export_graph(&graph, format)).into_response()
}

/// Serves until the process is stopped.
pub async fn serve(bind: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((bind, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
