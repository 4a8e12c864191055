//! HTTP service for reviewing machine translations.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::extract::{Path as UrlPath, Query, Request, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use textsql_core::review::{ReviewError, ReviewState, RevisionRequest};
use textsql_core::translate::protect_or_passthrough;
use textsql_core::{Corpus, ExampleRecord, Language, SchemaCatalog, Status};
use tokio::sync::RwLock;
use tower_http::cors::{AllowOrigin, CorsLayer};

use crate::io::{load_corpus, save_corpus, CorpusFormat};
use crate::journal::Journal;

pub struct ServiceConfig {
    pub corpus_path: PathBuf,
    pub journal_path: PathBuf,
    /// Where POST /export writes.
    pub export_dir: PathBuf,
    pub schemas: Option<SchemaCatalog>,
    /// English corpus with the same base ids, when the reviewed corpus has
    /// no English records of its own.
    pub source_path: Option<PathBuf>,
    pub token: Option<String>,
    /// Allowed browser origin; `None` allows any.
    pub cors_origin: Option<String>,
}

pub struct AppState {
    inner: RwLock<Inner>,
    sources: HashMap<String, String>,
    schemas: Option<SchemaCatalog>,
    export_dir: PathBuf,
    token: Option<String>,
    cors_origin: Option<String>,
}

struct Inner {
    review: ReviewState,
    journal: Journal,
}

impl AppState {
    /// Loads the corpus and replays the journal over it.
    pub fn load(cfg: ServiceConfig) -> anyhow::Result<AppState> {
        let corpus = load_corpus(&cfg.corpus_path)?;
        let mut sources: HashMap<String, String> = HashMap::new();
        if let Some(p) = &cfg.source_path {
            for r in load_corpus(p)?.records {
                sources.insert(r.base_id().to_string(), r.question);
            }
        }
        for r in corpus.records.iter().filter(|r| r.language == Language::En) {
            sources.insert(r.base_id().to_string(), r.question.clone());
        }
        let (journal, replay) = Journal::open(&cfg.journal_path)?;
        let review = ReviewState::replay(corpus, &replay.entries).map_err(|(i, e)| {
            anyhow::anyhow!("{}: entry {} does not replay: {e}", cfg.journal_path.display(), i + 1)
        })?;
        Ok(AppState {
            inner: RwLock::new(Inner { review, journal }),
            sources,
            schemas: cfg.schemas,
            export_dir: cfg.export_dir,
            token: cfg.token,
            cors_origin: cfg.cors_origin,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleView {
    pub id: String,
    pub db_id: String,
    pub language: Language,
    pub status: Status,
    pub question: String,
    /// The English question with the same base id, if known.
    pub source_question: Option<String>,
    pub sql: String,
    pub schema_summary: Vec<String>,
    /// Quoted values in the question and in the source, for highlighting.
    pub literals: Vec<String>,
    pub source_literals: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExamplePage {
    pub total: usize,
    pub page: usize,
    pub per_page: usize,
    pub items: Vec<ExampleView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsView {
    pub total: usize,
    pub by_status: BTreeMap<String, usize>,
    pub by_language: BTreeMap<String, usize>,
    pub journal_entries: usize,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct ListQuery {
    pub status: Option<String>,
    pub lang: Option<String>,
    pub q: Option<String>,
    pub db_id: Option<String>,
    pub page: Option<usize>,
    pub per_page: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExportRequest {
    pub format: String,
}

pub const MAX_PER_PAGE: usize = 500;

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(json!({ "error": message.into() }))).into_response()
}

fn literal_list(text: &str) -> Vec<String> {
    protect_or_passthrough(text, &Default::default()).0.literals
}

impl AppState {
    fn view(&self, r: &ExampleRecord) -> ExampleView {
        let source_question = match r.language {
            Language::En => None,
            _ => self.sources.get(r.base_id()).cloned(),
        };
        let schema_summary =
            self.schemas.as_ref().and_then(|c| c.get(&r.db_id).ok()).map(|s| s.summary()).unwrap_or_default();
        ExampleView {
            id: r.id.clone(),
            db_id: r.db_id.clone(),
            language: r.language,
            status: r.status,
            question: r.question.clone(),
            source_literals: source_question.as_deref().map(literal_list).unwrap_or_default(),
            source_question,
            sql: r.sql.clone(),
            schema_summary,
            literals: literal_list(&r.question),
        }
    }

    fn stats_of(&self, inner: &Inner) -> StatsView {
        let corpus = inner.review.corpus();
        let mut by_status: BTreeMap<String, usize> = Status::ALL.iter().map(|s| (s.name().to_string(), 0)).collect();
        for (s, n) in corpus.status_histogram() {
            by_status.insert(s.name().to_string(), n);
        }
        let mut by_language = BTreeMap::new();
        for r in &corpus.records {
            *by_language.entry(r.language.code().to_string()).or_insert(0) += 1;
        }
        StatsView { total: corpus.len(), by_status, by_language, journal_entries: inner.journal.len() }
    }
}

async fn list_examples(State(state): State<Arc<AppState>>, Query(q): Query<ListQuery>) -> Response {
    let status = match q.status.as_deref().filter(|s| !s.is_empty()) {
        None => None,
        Some(s) => match Status::parse(s) {
            Some(st) => Some(st),
            None => return error(StatusCode::BAD_REQUEST, format!("unknown status {s}")),
        },
    };
    let lang = match q.lang.as_deref().filter(|s| !s.is_empty()) {
        None => None,
        Some(s) => match Language::parse(s) {
            Some(l) => Some(l),
            None => return error(StatusCode::BAD_REQUEST, format!("unknown language {s}")),
        },
    };
    let needle = q.q.as_deref().filter(|s| !s.is_empty()).map(str::to_lowercase);
    let per_page = q.per_page.unwrap_or(50).clamp(1, MAX_PER_PAGE);
    let page = q.page.unwrap_or(1).max(1);

    let inner = state.inner.read().await;
    let matches: Vec<&ExampleRecord> = inner
        .review
        .corpus()
        .records
        .iter()
        .filter(|r| status.is_none_or(|s| r.status == s))
        .filter(|r| lang.is_none_or(|l| r.language == l))
        .filter(|r| q.db_id.as_deref().filter(|d| !d.is_empty()).is_none_or(|d| r.db_id == d))
        .filter(|r| {
            needle.as_deref().is_none_or(|n| {
                r.question.to_lowercase().contains(n)
                    || r.sql.to_lowercase().contains(n)
                    || r.id.to_lowercase().contains(n)
                    || state.sources.get(r.base_id()).is_some_and(|s| s.to_lowercase().contains(n))
            })
        })
        .collect();
    let items = matches.iter().skip((page - 1) * per_page).take(per_page).map(|r| state.view(r)).collect();
    Json(ExamplePage { total: matches.len(), page, per_page, items }).into_response()
}

async fn get_example(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Response {
    let inner = state.inner.read().await;
    match inner.review.get(&id) {
        Some(r) => Json(state.view(r)).into_response(),
        None => error(StatusCode::NOT_FOUND, format!("unknown record id {id}")),
    }
}

async fn put_example(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<RevisionRequest>, axum::extract::rejection::JsonRejection>,
) -> Response {
    let Json(req) = match body {
        Ok(b) => b,
        Err(e) => return error(StatusCode::BAD_REQUEST, e.body_text()),
    };
    let mut inner = state.inner.write().await;
    let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true);
    let entry = match inner.review.prepare(&id, &req, &timestamp) {
        Ok(e) => e,
        Err(e @ ReviewError::UnknownId(_)) => return error(StatusCode::NOT_FOUND, e.to_string()),
        Err(e @ ReviewError::Stale(_)) => return error(StatusCode::CONFLICT, e.to_string()),
        Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string()),
    };
    if let Err(e) = inner.journal.append(&entry) {
        log::error!("{e}");
        return error(StatusCode::INTERNAL_SERVER_ERROR, "could not write the journal");
    }
    inner.review.apply(&entry).expect("prepared entry applies");
    let view = state.view(inner.review.get(&id).expect("id checked"));
    Json(view).into_response()
}

async fn export(State(state): State<Arc<AppState>>, body: Option<Json<ExportRequest>>) -> Response {
    let name = body.map(|Json(b)| b.format).unwrap_or_else(|| "spider-json".into());
    let Some(format) = CorpusFormat::parse(&name) else {
        return error(StatusCode::BAD_REQUEST, format!("unknown export format {name}"));
    };
    let path = export_path(&state.export_dir, format);
    let inner = state.inner.read().await;
    let mut corpus: Corpus = inner.review.corpus().clone();
    corpus.log_step(&format!("review: {} revisions", inner.journal.len()));
    if let Err(e) = save_corpus(&corpus, &path, format) {
        log::error!("{e}");
        return error(StatusCode::INTERNAL_SERVER_ERROR, "could not write the export");
    }
    Json(json!({ "path": path, "format": name, "records": corpus.len() })).into_response()
}

async fn stats(State(state): State<Arc<AppState>>) -> Response {
    let inner = state.inner.read().await;
    Json(state.stats_of(&inner)).into_response()
}

async fn require_token(State(state): State<Arc<AppState>>, req: Request, next: Next) -> Response {
    let Some(token) = &state.token else {
        return next.run(req).await;
    };
    if req.method() == Method::OPTIONS {
        return next.run(req).await;
    }
    let given = req
        .headers()
        .get(header::AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.strip_prefix("Bearer "));
    if given == Some(token.as_str()) {
        next.run(req).await
    } else {
        error(StatusCode::UNAUTHORIZED, "missing or wrong bearer token")
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    let origin = match state.cors_origin.as_deref().and_then(|o| HeaderValue::from_str(o).ok()) {
        Some(o) => AllowOrigin::exact(o),
        None => AllowOrigin::any(),
    };
    let cors = CorsLayer::new()
        .allow_origin(origin)
        .allow_methods([Method::GET, Method::PUT, Method::POST, Method::OPTIONS])
        .allow_headers([header::AUTHORIZATION, header::CONTENT_TYPE]);
    Router::new()
        .route("/examples", get(list_examples))
        .route("/examples/{*id}", get(get_example).put(put_example))
        .route("/export", post(export))
        .route("/stats", get(stats))
        .layer(middleware::from_fn_with_state(state.clone(), require_token))
        .layer(cors)
        .with_state(state)
}

/// Binds `addr` and serves until the process ends.
pub async fn serve(state: Arc<AppState>, addr: &str) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("review service listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state)).await?;
    Ok(())
}

pub fn export_path(dir: &Path, format: CorpusFormat) -> PathBuf {
    dir.join(match format {
        CorpusFormat::SpiderJson => "export.json",
        CorpusFormat::Csv => "export.csv",
    })
}
