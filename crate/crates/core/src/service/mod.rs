//! HTTP service: classification, per-user blocking, feedback capture,
//! durable event log and model retraining.

pub mod api;
pub mod events;
pub mod fetch;
pub mod registry;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use tokio::sync::Mutex as AsyncMutex;

use crate::annotation::AnnotatedHeadline;
use crate::blocker::{Action, BlockDecision, Blocker, ConceptGraph, Method, UserProfile};
use crate::corpus::{load_corpus, sample_corpus, CorpusFormat, Label, LabeledHeadline};
use crate::error::{Error, Result};
use crate::model::{Engine, ModelBundle};

/// Annotation, label and score for one non-empty classify item.
type Scored = (AnnotatedHeadline, Label, f64);

pub use api::{router, ApiError};
pub use events::{EventLog, FeedbackEvent, FeedbackKind, LogEntry, Record};
pub use fetch::{extract_title, FetchError, FetchedPage, Fetcher};
pub use registry::ModelRegistry;

pub const MAX_BATCH: usize = 200;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub listen: String,
    pub state_dir: PathBuf,
    /// Base training corpus for retraining; the bundled sample when unset.
    pub base_corpus: Option<PathBuf>,
    /// Concept graph file; the bundled graph when unset.
    pub graph: Option<PathBuf>,
    pub method: Method,
    pub user_methods: BTreeMap<String, Method>,
    pub hybrid_weight: f64,
    /// None disables scheduled retraining.
    pub retrain_interval: Option<Duration>,
    pub fetch_timeout: Duration,
    pub fetch_max_bytes: usize,
    pub max_batch: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            listen: "127.0.0.1:8080".into(),
            state_dir: PathBuf::from("clickbait-state"),
            base_corpus: None,
            graph: None,
            method: Method::Pattern,
            user_methods: BTreeMap::new(),
            hybrid_weight: crate::blocker::DEFAULT_HYBRID_WEIGHT,
            retrain_interval: Some(Duration::from_secs(24 * 3600)),
            fetch_timeout: Duration::from_secs(5),
            fetch_max_bytes: 512 * 1024,
            max_batch: MAX_BATCH,
        }
    }
}

pub fn now_ms() -> i64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis() as i64)
}

/// 32 bytes, hex encoded.
pub fn valid_user_id(s: &str) -> bool {
    s.len() == 64 && s.bytes().all(|b| b.is_ascii_hexdigit())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockedEntry {
    pub link: String,
    pub headline: String,
    pub timestamp: i64,
    pub basis: BlockDecision,
    /// Reader's verdict on this block, once given.
    pub correct: Option<bool>,
}

#[derive(Debug, Default)]
struct UserState {
    profile: UserProfile,
    last_ts: Option<i64>,
    seen: HashMap<(i64, String, FeedbackKind), u64>,
    blocked: Vec<BlockedEntry>,
    blocked_links: HashSet<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemError {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyItem {
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ItemError>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyResponse {
    pub version: u64,
    pub results: Vec<ClassifyItem>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeedbackAck {
    pub seq: u64,
    pub duplicate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Health {
    pub version: String,
    pub model_version: u64,
}

pub struct Service {
    pub config: ServiceConfig,
    registry: ModelRegistry,
    blocker: Blocker,
    users: DashMap<String, Arc<AsyncMutex<UserState>>>,
    /// Corrected training examples keyed by log sequence, so retraining sees
    /// them in log order regardless of which request finished first.
    corrections: parking_lot::Mutex<BTreeMap<u64, (String, Label)>>,
    base_corpus: Vec<LabeledHeadline>,
    log: EventLog,
    fetcher: Fetcher,
    retrain_lock: AsyncMutex<()>,
}

fn event_log_path(cfg: &ServiceConfig) -> PathBuf {
    cfg.state_dir.join("events.jsonl")
}

impl Service {
    /// Open the state directory, load the newest bundle (seeding it with
    /// `initial` when newer or when none exists) and replay the event log.
    pub fn open(config: ServiceConfig, initial: Option<ModelBundle>) -> Result<Service> {
        std::fs::create_dir_all(&config.state_dir).map_err(|e| Error::io(&config.state_dir, e))?;
        let registry = ModelRegistry::open(&config.state_dir.join("bundles"), initial)?;
        let graph = match &config.graph {
            Some(p) => ConceptGraph::load(p)?,
            None => ConceptGraph::bundled(),
        };
        let engine = registry.active();
        let mut blocker = Blocker::new(&engine.bundle.lexicons, Arc::new(graph));
        blocker.hybrid_weight = config.hybrid_weight;
        let base_corpus = match &config.base_corpus {
            Some(p) => load_corpus(p, CorpusFormat::from_path(p))?.headlines,
            None => sample_corpus(),
        };
        let log_path = event_log_path(&config);
        let entries = events::recover(&log_path)?;
        let mut users: HashMap<String, UserState> = HashMap::new();
        let mut corrections = BTreeMap::new();
        for e in &entries {
            let user = record_user(&e.record).to_string();
            let st = users.entry(user).or_default();
            apply(st, e.seq, &e.record, &engine, &blocker, &mut corrections);
        }
        let log = EventLog::open(&log_path, entries.len() as u64)?;
        tracing::info!(
            events = entries.len(),
            users = users.len(),
            model_version = engine.version(),
            "service state restored"
        );
        let fetcher = Fetcher::new(config.fetch_timeout, config.fetch_max_bytes);
        Ok(Service {
            registry,
            blocker,
            users: users
                .into_iter()
                .map(|(k, v)| (k, Arc::new(AsyncMutex::new(v))))
                .collect(),
            corrections: parking_lot::Mutex::new(corrections),
            base_corpus,
            log,
            fetcher,
            retrain_lock: AsyncMutex::new(()),
            config,
        })
    }

    pub fn registry(&self) -> &ModelRegistry {
        &self.registry
    }

    pub fn engine(&self) -> Arc<Engine> {
        self.registry.active()
    }

    pub fn health(&self) -> Health {
        Health {
            version: env!("CARGO_PKG_VERSION").to_string(),
            model_version: self.registry.active().version(),
        }
    }

    pub fn method_for(&self, user: &str) -> Method {
        self.config
            .user_methods
            .get(user)
            .copied()
            .unwrap_or(self.config.method)
    }

    fn user(&self, id: &str) -> Option<Arc<AsyncMutex<UserState>>> {
        self.users.get(id).map(|r| r.value().clone())
    }

    fn user_or_create(&self, id: &str) -> Arc<AsyncMutex<UserState>> {
        self.users
            .entry(id.to_string())
            .or_default()
            .value()
            .clone()
    }

    pub async fn classify(
        &self,
        user: Option<&str>,
        texts: Vec<String>,
    ) -> std::result::Result<ClassifyResponse, ApiError> {
        self.classify_with_page(user, texts, None, None).await
    }

    /// `link` and `html` are set for URL-resolved titles.
    async fn classify_with_page(
        &self,
        user: Option<&str>,
        texts: Vec<String>,
        link: Option<String>,
        html: Option<String>,
    ) -> std::result::Result<ClassifyResponse, ApiError> {
        if texts.len() > self.config.max_batch {
            return Err(ApiError::batch_too_large(
                texts.len(),
                self.config.max_batch,
            ));
        }
        if let Some(u) = user {
            check_user(u)?;
        }
        // One snapshot for the whole request: every item sees the same version.
        let engine = self.registry.active();
        let version = engine.version();
        let eng = engine.clone();
        let scored: Vec<(String, Option<Scored>)> = tokio::task::spawn_blocking(move || {
            texts
                .into_iter()
                .map(|t| {
                    let trimmed = t.trim();
                    if trimmed.is_empty() {
                        return (t, None);
                    }
                    let h = eng.annotate(trimmed);
                    let c = eng.classify_annotated(&h);
                    (t, Some((h, c.label, c.score)))
                })
                .collect()
        })
        .await
        .map_err(|e| ApiError::internal(format!("classification task failed: {e}")))?;

        let state = user.and_then(|u| self.user(u));
        let mut results = Vec::with_capacity(scored.len());
        for (text, out) in scored {
            let Some((h, label, score)) = out else {
                results.push(ClassifyItem {
                    text,
                    label: None,
                    score: None,
                    block: None,
                    error: Some(ItemError {
                        code: "empty_text".into(),
                        message: "headline is empty".into(),
                    }),
                });
                continue;
            };
            let mut block = None;
            if let Some(u) = user {
                let mut blocked = false;
                if let (Some(st), true) = (&state, label.is_clickbait()) {
                    let mut st = st.lock().await;
                    let q = self.blocker.query(&h, html.as_deref());
                    let d = self.blocker.decide(self.method_for(u), &q, &st.profile);
                    blocked = d.is_block();
                    let l = link.clone().unwrap_or_else(|| text.trim().to_string());
                    if blocked && !st.blocked_links.contains(&l) {
                        let rec = Record::AutoBlock {
                            user: u.to_string(),
                            link: l,
                            headline: text.trim().to_string(),
                            timestamp: now_ms(),
                            decision: d,
                        };
                        let seq = self
                            .log
                            .append(rec.clone())
                            .await
                            .map_err(ApiError::from_core)?;
                        let mut sink = BTreeMap::new();
                        apply(&mut st, seq, &rec, &engine, &self.blocker, &mut sink);
                    }
                }
                block = Some(blocked);
            }
            results.push(ClassifyItem {
                text,
                label: Some(label),
                score: Some(score),
                block,
                error: None,
            });
        }
        Ok(ClassifyResponse { version, results })
    }

    pub async fn classify_url(
        &self,
        user: Option<&str>,
        url: &str,
    ) -> std::result::Result<(String, ClassifyResponse), ApiError> {
        let page = self
            .fetcher
            .resolve_title(url)
            .await
            .map_err(ApiError::fetch)?;
        let resp = self
            .classify_with_page(
                user,
                vec![page.title.clone()],
                Some(url.to_string()),
                Some(page.html),
            )
            .await?;
        Ok((page.title, resp))
    }

    pub async fn record_feedback(
        &self,
        mut ev: FeedbackEvent,
    ) -> std::result::Result<FeedbackAck, ApiError> {
        check_user(&ev.user)?;
        ev.headline = ev.headline.split_whitespace().collect::<Vec<_>>().join(" ");
        if ev.headline.is_empty() {
            return Err(ApiError::bad_request("empty_text", "headline is empty"));
        }
        if ev.timestamp < 0 {
            return Err(ApiError::bad_request(
                "invalid_timestamp",
                "timestamp must be non-negative UTC milliseconds",
            ));
        }
        let st = self.user_or_create(&ev.user);
        let mut st = st.lock().await;
        if let Some(&seq) = st.seen.get(&(ev.timestamp, ev.headline.clone(), ev.kind)) {
            return Ok(FeedbackAck {
                seq,
                duplicate: true,
            });
        }
        if let Some(last) = st.last_ts {
            if ev.timestamp < last {
                return Err(ApiError::conflict(
                    "stale_timestamp",
                    format!(
                        "timestamp {} precedes the user's last stored event at {last}",
                        ev.timestamp
                    ),
                ));
            }
        }
        let rec = Record::Feedback(ev);
        let seq = self
            .log
            .append(rec.clone())
            .await
            .map_err(ApiError::from_core)?;
        let engine = self.registry.active();
        let mut corrections = BTreeMap::new();
        apply(&mut st, seq, &rec, &engine, &self.blocker, &mut corrections);
        self.corrections.lock().extend(corrections);
        Ok(FeedbackAck {
            seq,
            duplicate: false,
        })
    }

    pub async fn list_blocked(
        &self,
        user: &str,
    ) -> std::result::Result<Vec<BlockedEntry>, ApiError> {
        check_user(user)?;
        Ok(match self.user(user) {
            Some(st) => st.lock().await.blocked.clone(),
            None => Vec::new(),
        })
    }

    /// Reader's verdict on an automatic block. An incorrect block records a
    /// click on that link, moving its pattern to the click side.
    pub async fn feedback_on_block(
        &self,
        user: &str,
        link: &str,
        correct: bool,
    ) -> std::result::Result<FeedbackAck, ApiError> {
        check_user(user)?;
        let Some(st) = self.user(user) else {
            return Err(ApiError::not_found(
                "unknown_entry",
                "user has no blocked links",
            ));
        };
        let mut st = st.lock().await;
        if !st.blocked_links.contains(link) {
            return Err(ApiError::not_found(
                "unknown_entry",
                format!("no blocked entry for link {link:?}"),
            ));
        }
        let timestamp = now_ms().max(st.last_ts.unwrap_or(0));
        let rec = Record::BlockFeedback {
            user: user.to_string(),
            link: link.to_string(),
            correct,
            timestamp,
        };
        let seq = self
            .log
            .append(rec.clone())
            .await
            .map_err(ApiError::from_core)?;
        let engine = self.registry.active();
        apply(
            &mut st,
            seq,
            &rec,
            &engine,
            &self.blocker,
            &mut BTreeMap::new(),
        );
        Ok(FeedbackAck {
            seq,
            duplicate: false,
        })
    }

    /// The base corpus plus every corrected example recorded so far.
    pub fn training_corpus(&self) -> Vec<LabeledHeadline> {
        let mut out = self.base_corpus.clone();
        let first = out.iter().map(|h| h.id + 1).max().unwrap_or(0);
        for ((text, label), id) in self.corrections.lock().values().zip(first..) {
            out.push(LabeledHeadline {
                id,
                text: text.clone(),
                label: *label,
                source: Some("feedback".into()),
            });
        }
        out
    }

    /// Train a new classifier from scratch and publish it. Annotators are
    /// carried over: their treebank never changes between versions.
    pub async fn retrain(&self) -> Result<u64> {
        let _guard = self.retrain_lock.lock().await;
        let engine = self.registry.active();
        let corpus = self.training_corpus();
        let version = self.registry.versions().last().copied().unwrap_or(0) + 1;
        let eng = engine.clone();
        let res = tokio::task::spawn_blocking(move || {
            ModelBundle::train_with_annotator(
                &corpus,
                &eng.annotator,
                eng.bundle.lexicons.clone(),
                &eng.bundle.config,
                version,
            )
        })
        .await
        .map_err(|e| Error::Training(format!("retrain task failed: {e}")))
        .and_then(|r| r);
        match res.and_then(|b| self.registry.publish(b)) {
            Ok(v) => {
                tracing::info!(version = v, "retrained model published");
                Ok(v)
            }
            Err(e) => {
                tracing::error!(error = %e, active = engine.version(), "retrain failed; active model unchanged");
                Err(e)
            }
        }
    }

    pub fn event_log_path(&self) -> PathBuf {
        event_log_path(&self.config)
    }
}

fn check_user(u: &str) -> std::result::Result<(), ApiError> {
    if valid_user_id(u) {
        Ok(())
    } else {
        Err(ApiError::bad_request(
            "invalid_user",
            "user id must be 64 hex characters",
        ))
    }
}

fn record_user(r: &Record) -> &str {
    match r {
        Record::Feedback(e) => &e.user,
        Record::AutoBlock { user, .. } | Record::BlockFeedback { user, .. } => user,
    }
}

/// The single place where a logged record changes in-memory state; used for
/// live requests and for replay alike.
fn apply(
    st: &mut UserState,
    seq: u64,
    rec: &Record,
    engine: &Engine,
    blocker: &Blocker,
    corrections: &mut BTreeMap<u64, (String, Label)>,
) {
    match rec {
        Record::Feedback(ev) => {
            st.seen
                .insert((ev.timestamp, ev.headline.clone(), ev.kind), seq);
            st.last_ts = Some(st.last_ts.map_or(ev.timestamp, |t| t.max(ev.timestamp)));
            let action = match ev.kind {
                FeedbackKind::BlockSimilar => Some(Action::Blocked),
                FeedbackKind::Clicked => Some(Action::Clicked),
                FeedbackKind::ReportFalsePositive => {
                    corrections.insert(seq, (ev.headline.clone(), Label::NonClickbait));
                    None
                }
                FeedbackKind::ReportFalseNegative => {
                    corrections.insert(seq, (ev.headline.clone(), Label::Clickbait));
                    None
                }
            };
            if let Some(a) = action {
                st.profile.user_id = ev.user.clone();
                let h = engine.annotate(&ev.headline);
                let q = blocker.query(&h, None);
                st.profile
                    .update(blocker.entry(ev.link(), &h, q, a, ev.timestamp));
            }
        }
        Record::AutoBlock {
            link,
            headline,
            timestamp,
            decision,
            ..
        } => {
            if st.blocked_links.insert(link.clone()) {
                st.blocked.push(BlockedEntry {
                    link: link.clone(),
                    headline: headline.clone(),
                    timestamp: *timestamp,
                    basis: *decision,
                    correct: None,
                });
            }
        }
        Record::BlockFeedback {
            user,
            link,
            correct,
            timestamp,
        } => {
            let Some(entry) = st.blocked.iter_mut().find(|e| &e.link == link) else {
                return;
            };
            entry.correct = Some(*correct);
            let headline = entry.headline.clone();
            if !*correct {
                st.profile.user_id = user.clone();
                let h = engine.annotate(&headline);
                let q = blocker.query(&h, None);
                st.profile
                    .update(blocker.entry(link, &h, q, Action::Clicked, *timestamp));
            }
            st.last_ts = Some(st.last_ts.map_or(*timestamp, |t| t.max(*timestamp)));
        }
    }
}

/// Bind, serve until SIGTERM / ctrl-c, then drain in-flight requests.
pub async fn serve(service: Arc<Service>) -> Result<()> {
    let listener = tokio::net::TcpListener::bind(&service.config.listen)
        .await
        .map_err(|e| Error::io(&service.config.listen, e))?;
    let addr = listener
        .local_addr()
        .map_err(|e| Error::io(&service.config.listen, e))?;
    tracing::info!(%addr, model_version = service.engine().version(), "listening");
    if let Some(every) = service.config.retrain_interval {
        let svc = service.clone();
        tokio::spawn(async move {
            let mut tick = tokio::time::interval_at(tokio::time::Instant::now() + every, every);
            loop {
                tick.tick().await;
                let _ = svc.retrain().await;
            }
        });
    }
    axum::serve(listener, router(service))
        .with_graceful_shutdown(shutdown_signal())
        .await
        .map_err(|e| Error::io(addr.to_string(), e))
}

async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
    tracing::info!("shutdown requested; draining");
}
