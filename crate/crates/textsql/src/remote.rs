//! HTTP translation backend.
//!
//! The wire format is a POST of `{q, source, target}` answered by
//! `{translatedText}`. Vendor layers adapt it to specific services.

use std::path::Path;
use std::time::Duration;

use futures::stream::{self, StreamExt};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use textsql_core::translate::{BackendError, TranslationBackend};
use textsql_core::Language;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Vendor {
    #[default]
    Generic,
    GoogleV2,
    Libretranslate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RemoteConfig {
    pub vendor: Vendor,
    pub endpoint: String,
    /// Environment variable holding the API key. Unset or empty means no key.
    pub credential_env: String,
    pub concurrency: usize,
    pub max_retries: u32,
    pub retry_backoff_ms: u64,
    pub timeout_secs: u64,
    pub max_chars: usize,
}

impl Default for RemoteConfig {
    fn default() -> Self {
        RemoteConfig {
            vendor: Vendor::Generic,
            endpoint: String::new(),
            credential_env: "TEXTSQL_TRANSLATE_KEY".into(),
            concurrency: 4,
            max_retries: 3,
            retry_backoff_ms: 500,
            timeout_secs: 30,
            max_chars: 5000,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{0}: {1}")]
    Read(String, std::io::Error),
    #[error("{0}: {1}")]
    Parse(String, toml::de::Error),
    #[error("no endpoint configured")]
    NoEndpoint,
}

impl RemoteConfig {
    pub fn load(path: &Path) -> Result<RemoteConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read(path.display().to_string(), e))?;
        let mut cfg: RemoteConfig =
            toml::from_str(&text).map_err(|e| ConfigError::Parse(path.display().to_string(), e))?;
        if cfg.endpoint.is_empty() && cfg.vendor == Vendor::GoogleV2 {
            cfg.endpoint = "https://translation.googleapis.com/language/translate/v2".into();
        }
        Ok(cfg)
    }

    pub fn credential(&self) -> Option<String> {
        std::env::var(&self.credential_env).ok().filter(|k| !k.is_empty())
    }
}

/// Request body for one batch.
pub fn request_body(vendor: Vendor, texts: &[String], source: Language, target: Language, key: Option<&str>) -> Value {
    let mut body = json!({ "q": texts, "source": source.code(), "target": target.code() });
    match vendor {
        Vendor::Generic => {}
        Vendor::GoogleV2 => body["format"] = json!("text"),
        Vendor::Libretranslate => {
            body["format"] = json!("text");
            if let Some(k) = key {
                body["api_key"] = json!(k);
            }
        }
    }
    body
}

/// Translations from a response body, in request order.
pub fn parse_response(vendor: Vendor, body: &Value) -> Result<Vec<String>, String> {
    let strings = |v: &Value| -> Result<Vec<String>, String> {
        match v {
            Value::String(s) => Ok(vec![s.clone()]),
            Value::Array(items) => items
                .iter()
                .map(|i| i.as_str().map(String::from).ok_or_else(|| "non-string translation".to_string()))
                .collect(),
            _ => Err("missing translatedText".into()),
        }
    };
    match vendor {
        Vendor::Generic | Vendor::Libretranslate => strings(&body["translatedText"]),
        Vendor::GoogleV2 => body["data"]["translations"]
            .as_array()
            .ok_or_else(|| "missing data.translations".to_string())?
            .iter()
            .map(|t| t["translatedText"].as_str().map(String::from).ok_or_else(|| "missing translatedText".into()))
            .collect(),
    }
}

enum Attempt {
    Retry(String),
    Fatal(BackendError),
}

pub struct RemoteBackend {
    config: RemoteConfig,
    key: Option<String>,
    client: reqwest::Client,
    runtime: tokio::runtime::Runtime,
}

impl RemoteBackend {
    pub fn new(config: RemoteConfig) -> Result<RemoteBackend, ConfigError> {
        if config.endpoint.is_empty() {
            return Err(ConfigError::NoEndpoint);
        }
        let key = config.credential();
        let client = reqwest::Client::builder()
            .timeout(Duration::from_secs(config.timeout_secs.max(1)))
            .build()
            .expect("http client builds");
        let runtime = tokio::runtime::Builder::new_multi_thread()
            .worker_threads(config.concurrency.clamp(1, 16))
            .enable_all()
            .build()
            .expect("tokio runtime builds");
        Ok(RemoteBackend { config, key, client, runtime })
    }

    pub fn config(&self) -> &RemoteConfig {
        &self.config
    }

    async fn send_once(&self, texts: &[String], source: Language, target: Language) -> Result<Vec<String>, Attempt> {
        let cfg = &self.config;
        let body = request_body(cfg.vendor, texts, source, target, self.key.as_deref());
        let mut req = self.client.post(&cfg.endpoint).json(&body);
        match (cfg.vendor, &self.key) {
            (Vendor::Generic, Some(k)) => req = req.bearer_auth(k),
            (Vendor::GoogleV2, Some(k)) => req = req.query(&[("key", k)]),
            _ => {}
        }
        let resp = match req.send().await {
            Ok(r) => r,
            Err(e) if e.is_connect() => return Err(Attempt::Retry(format!("connect: {e}"))),
            Err(e) => return Err(Attempt::Retry(e.to_string())),
        };
        let status = resp.status();
        if status == reqwest::StatusCode::UNAUTHORIZED || status == reqwest::StatusCode::FORBIDDEN {
            return Err(Attempt::Fatal(BackendError::Unavailable(format!("{} rejected the credentials", status))));
        }
        if status == reqwest::StatusCode::TOO_MANY_REQUESTS || status.is_server_error() {
            return Err(Attempt::Retry(format!("HTTP {status}")));
        }
        if !status.is_success() {
            return Err(Attempt::Fatal(BackendError::Failed(format!("HTTP {status}"))));
        }
        let value: Value = resp.json().await.map_err(|e| Attempt::Fatal(BackendError::Failed(e.to_string())))?;
        let out = parse_response(cfg.vendor, &value).map_err(|e| Attempt::Fatal(BackendError::Failed(e)))?;
        if out.len() != texts.len() {
            return Err(Attempt::Fatal(BackendError::Failed(format!(
                "{} translations for {} texts",
                out.len(),
                texts.len()
            ))));
        }
        Ok(out)
    }

    async fn send(&self, texts: &[String], source: Language, target: Language) -> Result<Vec<String>, BackendError> {
        let mut last = String::new();
        let mut connect_only = true;
        for attempt in 0..=self.config.max_retries {
            if attempt > 0 {
                tokio::time::sleep(Duration::from_millis(self.config.retry_backoff_ms << (attempt - 1).min(6))).await;
            }
            match self.send_once(texts, source, target).await {
                Ok(v) => return Ok(v),
                Err(Attempt::Fatal(e)) => return Err(e),
                Err(Attempt::Retry(msg)) => {
                    connect_only &= msg.starts_with("connect:");
                    log::warn!("translation request failed (attempt {}): {msg}", attempt + 1);
                    last = msg;
                }
            }
        }
        if connect_only {
            Err(BackendError::Unavailable(last))
        } else {
            Err(BackendError::Failed(last))
        }
    }
}

impl TranslationBackend for RemoteBackend {
    fn kind(&self) -> &'static str {
        "remote-http"
    }

    fn translate_batch(&mut self, texts: &[String], source: Language, target: Language)
        -> Result<Vec<String>, BackendError> {
        self.runtime.block_on(self.send(texts, source, target))
    }

    fn translate_batches(
        &mut self,
        batches: &[Vec<String>],
        source: Language,
        target: Language,
    ) -> Vec<Result<Vec<String>, BackendError>> {
        let this = &*self;
        let limit = this.config.concurrency.max(1);
        this.runtime.block_on(
            stream::iter(batches)
                .map(|b| this.send(b, source, target))
                .buffered(limit)
                .collect::<Vec<_>>(),
        )
    }
}
