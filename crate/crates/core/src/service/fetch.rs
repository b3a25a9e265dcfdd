//! Server-side page fetch for links that have no anchor text.

use std::sync::LazyLock;
use std::time::Duration;

use regex::Regex;

use crate::blocker::decode_entities;

static TITLE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?is)<title\b[^>]*>(.*?)</title\s*>").unwrap());

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FetchError {
    #[error("invalid url: {0}")]
    InvalidUrl(String),
    #[error("request timed out")]
    Timeout,
    #[error("upstream returned status {0}")]
    Status(u16),
    #[error("page has no title")]
    MissingTitle,
    #[error("request failed: {0}")]
    Transport(String),
}

impl FetchError {
    pub fn code(&self) -> &'static str {
        match self {
            FetchError::InvalidUrl(_) => "invalid_url",
            FetchError::Timeout => "fetch_timeout",
            FetchError::Status(_) => "upstream_status",
            FetchError::MissingTitle => "missing_title",
            FetchError::Transport(_) => "fetch_failed",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fetcher {
    client: reqwest::Client,
    timeout: Duration,
    max_bytes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FetchedPage {
    pub title: String,
    /// The bytes read, capped at `max_bytes`, lossily decoded.
    pub html: String,
}

/// First `<title>` element, entity-decoded and whitespace-normalized.
pub fn extract_title(html: &str) -> Option<String> {
    let raw = TITLE.captures(html)?.get(1)?.as_str();
    let t = decode_entities(raw)
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ");
    (!t.is_empty()).then_some(t)
}

impl Fetcher {
    pub fn new(timeout: Duration, max_bytes: usize) -> Fetcher {
        let client = reqwest::Client::builder()
            .timeout(timeout)
            .redirect(reqwest::redirect::Policy::limited(5))
            .build()
            .expect("http client builds");
        Fetcher {
            client,
            timeout,
            max_bytes,
        }
    }

    pub async fn resolve_title(&self, url: &str) -> Result<FetchedPage, FetchError> {
        let parsed = reqwest::Url::parse(url).map_err(|e| FetchError::InvalidUrl(e.to_string()))?;
        if !matches!(parsed.scheme(), "http" | "https") {
            return Err(FetchError::InvalidUrl(format!(
                "unsupported scheme {}",
                parsed.scheme()
            )));
        }
        let fut = async {
            let mut resp = self.client.get(parsed).send().await.map_err(map_err)?;
            if !resp.status().is_success() {
                return Err(FetchError::Status(resp.status().as_u16()));
            }
            let mut body = Vec::new();
            while let Some(chunk) = resp.chunk().await.map_err(map_err)? {
                let room = self.max_bytes - body.len();
                body.extend_from_slice(&chunk[..chunk.len().min(room)]);
                if body.len() >= self.max_bytes {
                    break;
                }
            }
            Ok(body)
        };
        let body = tokio::time::timeout(self.timeout, fut)
            .await
            .map_err(|_| FetchError::Timeout)??;
        let html = String::from_utf8_lossy(&body).into_owned();
        let title = extract_title(&html).ok_or(FetchError::MissingTitle)?;
        Ok(FetchedPage { title, html })
    }
}

fn map_err(e: reqwest::Error) -> FetchError {
    if e.is_timeout() {
        FetchError::Timeout
    } else {
        FetchError::Transport(e.to_string())
    }
}
