mod common;

use std::io::Write as _;
use std::path::Path;
use std::sync::Arc;
use std::time::Duration;

use axum::response::Html;
use axum::routing::get;
use clickbait_core::corpus::Label;
use clickbait_core::model::Engine;
use clickbait_core::service::{
    router, BlockedEntry, ClassifyResponse, FeedbackAck, FeedbackEvent, FeedbackKind, Service,
    ServiceConfig,
};
use common::{bundle, OTHER_USER, USER};
use serde_json::{json, Value};
use tempfile::TempDir;

fn config(dir: &Path) -> ServiceConfig {
    ServiceConfig {
        state_dir: dir.to_path_buf(),
        retrain_interval: None,
        ..ServiceConfig::default()
    }
}

fn open(dir: &Path) -> Service {
    Service::open(config(dir), Some(bundle().clone())).unwrap()
}

async fn start(svc: Arc<Service>) -> String {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, router(svc)).await.unwrap() });
    format!("http://{addr}")
}

struct Api {
    base: String,
    http: reqwest::Client,
}

impl Api {
    async fn new(svc: Arc<Service>) -> Api {
        Api {
            base: start(svc).await,
            http: reqwest::Client::builder().no_proxy().build().unwrap(),
        }
    }

    async fn post(&self, path: &str, body: Value) -> (u16, Value) {
        let r = self
            .http
            .post(format!("{}{path}", self.base))
            .header("content-type", "application/json")
            .body(body.to_string())
            .send()
            .await
            .unwrap();
        let status = r.status().as_u16();
        (
            status,
            serde_json::from_slice(&r.bytes().await.unwrap()).unwrap(),
        )
    }

    async fn get(&self, path: &str) -> (u16, Value) {
        let r = self
            .http
            .get(format!("{}{path}", self.base))
            .send()
            .await
            .unwrap();
        let status = r.status().as_u16();
        (
            status,
            serde_json::from_slice(&r.bytes().await.unwrap()).unwrap(),
        )
    }

    async fn classify(&self, user: Option<&str>, texts: &[&str]) -> ClassifyResponse {
        let (s, v) = self
            .post("/v1/classify", json!({"user": user, "texts": texts}))
            .await;
        assert_eq!(s, 200, "{v}");
        serde_json::from_value(v).unwrap()
    }

    async fn feedback(&self, kind: &str, headline: &str, ts: i64) -> (u16, Value) {
        self.post(
            "/v1/feedback",
            json!({"event": {"user": USER, "kind": kind, "headline": headline, "timestamp": ts}}),
        )
        .await
    }
}

fn error_code(v: &Value) -> &str {
    v["error"]["code"].as_str().unwrap_or_default()
}

const GREYS: &str = "Which Dead `Grey's Anatomy' Character Are You";
const SCHUMER: &str = "Which `Inside Amy Schumer' Character Are You";

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn block_similar_then_variant_is_blocked() {
    let dir = TempDir::new().unwrap();
    let api = Api::new(Arc::new(open(dir.path()))).await;

    // Cold profile: clickbait but never blocked.
    let r = api.classify(Some(USER), &[SCHUMER]).await;
    assert_eq!(r.results[0].label, Some(Label::Clickbait));
    assert_eq!(r.results[0].block, Some(false));

    let (s, v) = api.feedback("BlockSimilar", GREYS, 1_000).await;
    assert_eq!(s, 200, "{v}");
    let r = api
        .classify(Some(USER), &[SCHUMER, "Court rejects appeal in fraud case"])
        .await;
    assert_eq!(r.results[0].block, Some(true));
    assert_eq!(r.results[1].label, Some(Label::NonClickbait));
    assert_eq!(r.results[1].block, Some(false));

    // Other users and anonymous requests are unaffected.
    assert_eq!(
        api.classify(Some(OTHER_USER), &[SCHUMER]).await.results[0].block,
        Some(false)
    );
    assert_eq!(api.classify(None, &[SCHUMER]).await.results[0].block, None);

    // One blocked entry however often the headline is seen.
    api.classify(Some(USER), &[SCHUMER]).await;
    let (s, v) = api.get(&format!("/v1/blocked?user={USER}")).await;
    assert_eq!(s, 200);
    let entries: Vec<BlockedEntry> = serde_json::from_value(v["entries"].clone()).unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0].headline, SCHUMER);
    assert!((entries[0].basis.block_score - 5.0 / 6.0).abs() < 1e-12);
    assert_eq!(entries[0].correct, None);

    // "That block was wrong" turns the link into a click; the identical click
    // pattern now outweighs the distance-1 block pattern.
    let (s, v) = api
        .post(
            "/v1/blocked/feedback",
            json!({"user": USER, "link": SCHUMER, "correct": false}),
        )
        .await;
    assert_eq!(s, 200, "{v}");
    assert_eq!(
        api.classify(Some(USER), &[SCHUMER]).await.results[0].block,
        Some(false)
    );
    let (_, v) = api.get(&format!("/v1/blocked?user={USER}")).await;
    assert_eq!(v["entries"][0]["correct"], json!(false));

    let (s, v) = api
        .post(
            "/v1/blocked/feedback",
            json!({"user": USER, "link": "nope", "correct": true}),
        )
        .await;
    assert_eq!((s, error_code(&v)), (404, "unknown_entry"));
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn request_validation() {
    let dir = TempDir::new().unwrap();
    let api = Api::new(Arc::new(open(dir.path()))).await;

    let (s, a) = api
        .feedback("Clicked", "Ten Dogs Who Are Better At Yoga Than You", 5)
        .await;
    assert_eq!(s, 200);
    let first: FeedbackAck = serde_json::from_value(a).unwrap();
    assert!(!first.duplicate);
    // Whitespace differences do not defeat deduplication.
    let (s, a) = api
        .feedback("Clicked", "  Ten Dogs Who Are Better At  Yoga Than You ", 5)
        .await;
    assert_eq!(s, 200);
    let again: FeedbackAck = serde_json::from_value(a).unwrap();
    assert_eq!((again.seq, again.duplicate), (first.seq, true));

    let (s, v) = api.feedback("Clicked", "Another headline", 4).await;
    assert_eq!((s, error_code(&v)), (409, "stale_timestamp"));
    let (s, v) = api.feedback("Clicked", "   ", 9).await;
    assert_eq!((s, error_code(&v)), (400, "empty_text"));
    let (s, v) = api.feedback("Clicked", "x", -1).await;
    assert_eq!((s, error_code(&v)), (400, "invalid_timestamp"));
    let (s, v) = api.feedback("Exploded", "x", 9).await;
    assert_eq!((s, error_code(&v)), (422, "malformed_request"));
    let (s, v) = api
        .post(
            "/v1/feedback",
            json!({"event": {"user": "alice", "kind": "Clicked", "headline": "x", "timestamp": 9}}),
        )
        .await;
    assert_eq!((s, error_code(&v)), (400, "invalid_user"));

    let big: Vec<String> = (0..201).map(|i| format!("headline {i}")).collect();
    let (s, v) = api.post("/v1/classify", json!({"texts": big})).await;
    assert_eq!((s, error_code(&v)), (413, "batch_too_large"));
    let (s, _) = api.post("/v1/classify", json!({"texts": big[..200]})).await;
    assert_eq!(s, 200);

    let r = api.classify(None, &["", "Obama signs the bill"]).await;
    assert_eq!(r.results[0].error.as_ref().unwrap().code, "empty_text");
    assert!(r.results[0].label.is_none());
    assert!(r.results[1].label.is_some());

    let r = api
        .http
        .post(format!("{}/v1/classify", api.base))
        .header("content-type", "application/json")
        .body("{not json")
        .send()
        .await
        .unwrap();
    assert_eq!(r.status().as_u16(), 400);
    let v: Value = serde_json::from_slice(&r.bytes().await.unwrap()).unwrap();
    assert_eq!(error_code(&v), "malformed_request");

    let (s, v) = api.get("/v1/nowhere").await;
    assert_eq!((s, error_code(&v)), (404, "no_route"));
    let (s, v) = api.get("/v1/blocked").await;
    assert_eq!((s, error_code(&v)), (400, "malformed_request"));
    let (s, v) = api.get("/v1/health").await;
    assert_eq!(s, 200);
    assert_eq!(v["model_version"], json!(1));
}

fn probe() -> Vec<String> {
    let mut p: Vec<String> = clickbait_core::corpus::sample_corpus()
        .into_iter()
        .step_by(10)
        .take(48)
        .map(|h| h.text)
        .collect();
    p.push(SCHUMER.into());
    p.push("Which Dead `Friends' Character Are You".into());
    assert_eq!(p.len(), 50);
    p
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn crash_restart_replays_to_identical_responses() {
    let dir = TempDir::new().unwrap();
    let probe = probe();
    let ev = |kind, headline: &str, ts| FeedbackEvent {
        user: USER.into(),
        kind,
        headline: headline.into(),
        url: None,
        timestamp: ts,
    };

    let (before, blocked_before, log_len) = {
        let svc = open(dir.path());
        svc.record_feedback(ev(FeedbackKind::BlockSimilar, GREYS, 1))
            .await
            .unwrap();
        svc.record_feedback(ev(
            FeedbackKind::BlockSimilar,
            "You Won't Believe What This Dog Did Next",
            2,
        ))
        .await
        .unwrap();
        svc.record_feedback(ev(
            FeedbackKind::Clicked,
            "17 Things Only Cat Owners Will Understand",
            3,
        ))
        .await
        .unwrap();
        svc.record_feedback(ev(
            FeedbackKind::ReportFalsePositive,
            "Senate passes farm bill",
            4,
        ))
        .await
        .unwrap();
        let r = svc.classify(Some(USER), probe.clone()).await.unwrap();
        assert!(r.results.iter().any(|i| i.block == Some(true)));
        let blocked = svc.list_blocked(USER).await.unwrap();
        let n = std::fs::read_to_string(svc.event_log_path())
            .unwrap()
            .lines()
            .count();
        (r, blocked, n)
        // dropped without any shutdown step
    };

    // A write cut short by the crash.
    let log = dir.path().join("events.jsonl");
    let mut f = std::fs::OpenOptions::new().append(true).open(&log).unwrap();
    f.write_all(br#"{"seq":99,"type":"feedback","user":"#)
        .unwrap();
    drop(f);

    let svc = open(dir.path());
    let after = svc.classify(Some(USER), probe.clone()).await.unwrap();
    assert_eq!(
        serde_json::to_string(&before).unwrap(),
        serde_json::to_string(&after).unwrap()
    );
    assert_eq!(svc.list_blocked(USER).await.unwrap(), blocked_before);
    assert_eq!(
        svc.training_corpus().last().unwrap().label,
        Label::NonClickbait
    );
    // The torn tail is gone and the replayed auto-blocks were not logged again.
    assert_eq!(
        std::fs::read_to_string(&log).unwrap().lines().count(),
        log_len
    );
    let ack = svc
        .record_feedback(ev(FeedbackKind::Clicked, "Later", 10))
        .await
        .unwrap();
    assert_eq!(ack.seq, log_len as u64);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 8)]
async fn retrain_swap_is_atomic_under_load() {
    let dir = TempDir::new().unwrap();
    let svc = Arc::new(open(dir.path()));
    let api = Arc::new(Api::new(svc.clone()).await);
    let flipped = "Obama signs the bill";
    assert_eq!(
        api.classify(None, &[flipped]).await.results[0].label,
        Some(Label::NonClickbait)
    );
    for ts in 0..50 {
        let (s, _) = api.feedback("ReportFalseNegative", flipped, ts).await;
        assert_eq!(s, 200);
    }
    // Feedback alone never changes the active model.
    assert_eq!(api.classify(None, &[flipped]).await.version, 1);

    let mut texts: Vec<String> = probe().into_iter().take(19).collect();
    texts.push(flipped.into());
    let body = json!({"texts": texts});

    let retrain = {
        let api = api.clone();
        tokio::spawn(async move { api.post("/v1/admin/retrain", json!({})).await })
    };
    let mut tasks = Vec::new();
    for i in 0..100u64 {
        let api = api.clone();
        let body = body.clone();
        tasks.push(tokio::spawn(async move {
            tokio::time::sleep(Duration::from_millis(i * 25)).await;
            api.post("/v1/classify", body).await
        }));
    }
    let (s, v) = retrain.await.unwrap();
    assert_eq!((s, v["model_version"].as_u64()), (200, Some(2)), "{v}");
    let mut responses = Vec::new();
    for t in tasks {
        let (s, v) = t.await.unwrap();
        assert_eq!(s, 200);
        responses.push(serde_json::from_value::<ClassifyResponse>(v).unwrap());
    }
    for _ in 0..5 {
        let (_, v) = api.post("/v1/classify", body.clone()).await;
        responses.push(serde_json::from_value(v).unwrap());
    }

    let engines = [
        Engine::new(bundle().clone()),
        Engine::new(svc.registry().load_version(2).unwrap()),
    ];
    let expected: Vec<Vec<f64>> = engines
        .iter()
        .map(|e| texts.iter().map(|t| e.classify(t).unwrap().score).collect())
        .collect();
    let last = expected[0].len() - 1;
    assert!(
        (expected[0][last] - expected[1][last]).abs() > 1e-6,
        "versions must be distinguishable"
    );
    assert_eq!(
        engines[1].classify(flipped).unwrap().label,
        Label::Clickbait
    );

    let mut seen = [0usize; 2];
    for r in &responses {
        let v = r.version as usize - 1;
        seen[v] += 1;
        for (item, want) in r.results.iter().zip(&expected[v]) {
            let got = item.score.unwrap();
            assert!(
                (got - want).abs() <= 1e-9 * want.abs().max(1.0),
                "version {} item {:?}: {got} vs {want}",
                r.version,
                item.text
            );
        }
    }
    assert_eq!(seen.iter().sum::<usize>(), 105);
    assert!(seen[1] >= 5);
    assert_eq!(api.get("/v1/health").await.1["model_version"], json!(2));

    // The new version survives a restart.
    drop(api);
    let svc2 = Service::open(config(dir.path()), Some(bundle().clone())).unwrap();
    assert_eq!(svc2.engine().version(), 2);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn failed_retrain_keeps_the_active_model() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("one-class.jsonl");
    std::fs::write(
        &corpus,
        "{\"headline\": \"You Won't Believe This\", \"label\": \"clickbait\"}\n",
    )
    .unwrap();
    let cfg = ServiceConfig {
        base_corpus: Some(corpus),
        ..config(&dir.path().join("state"))
    };
    let svc = Arc::new(Service::open(cfg, Some(bundle().clone())).unwrap());
    let api = Api::new(svc.clone()).await;
    let (s, v) = api.post("/v1/admin/retrain", json!({})).await;
    assert_eq!((s, error_code(&v)), (500, "training_failed"), "{v}");
    assert_eq!(svc.engine().version(), 1);
    assert_eq!(svc.registry().versions(), vec![1]);
}

async fn fixture_site() -> String {
    let app = axum::Router::new()
        .route("/hello", get(|| async { Html("<html><head><title>Hello &amp; World</title></head><body>hi</body></html>") }))
        .route(
            "/bait",
            get(|| async { Html("<html><head><title>Which `Inside Amy Schumer' Character Are You</title></head></html>") }),
        )
        .route("/notitle", get(|| async { Html("<html><body>nothing</body></html>") }))
        .route(
            "/slow",
            get(|| async {
                tokio::time::sleep(Duration::from_secs(5)).await;
                Html("<title>late</title>")
            }),
        );
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    format!("http://{addr}")
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn classify_url_resolves_titles() {
    let dir = TempDir::new().unwrap();
    let cfg = ServiceConfig {
        fetch_timeout: Duration::from_millis(500),
        ..config(dir.path())
    };
    let api = Api::new(Arc::new(
        Service::open(cfg, Some(bundle().clone())).unwrap(),
    ))
    .await;
    let site = fixture_site().await;

    let (s, v) = api
        .post("/v1/classify-url", json!({"url": format!("{site}/hello")}))
        .await;
    assert_eq!(s, 200, "{v}");
    assert_eq!(v["title"], json!("Hello & World"));
    assert_eq!(v["version"], json!(1));
    assert_eq!(v["results"][0]["text"], json!("Hello & World"));

    // URL-resolved blocks are keyed by the URL.
    let (s, _) = api.feedback("BlockSimilar", GREYS, 1).await;
    assert_eq!(s, 200);
    let url = format!("{site}/bait");
    let (s, v) = api
        .post("/v1/classify-url", json!({"user": USER, "url": url}))
        .await;
    assert_eq!(s, 200, "{v}");
    assert_eq!(v["results"][0]["block"], json!(true));
    let (_, v) = api.get(&format!("/v1/blocked?user={USER}")).await;
    assert_eq!(v["entries"][0]["link"], json!(url));

    let (s, v) = api
        .post(
            "/v1/classify-url",
            json!({"url": format!("{site}/notitle")}),
        )
        .await;
    assert_eq!((s, error_code(&v)), (502, "missing_title"));
    let (s, v) = api
        .post("/v1/classify-url", json!({"url": format!("{site}/absent")}))
        .await;
    assert_eq!((s, error_code(&v)), (502, "upstream_status"));
    let (s, v) = api
        .post("/v1/classify-url", json!({"url": format!("{site}/slow")}))
        .await;
    assert_eq!((s, error_code(&v)), (504, "fetch_timeout"));
    let (s, v) = api
        .post("/v1/classify-url", json!({"url": "ftp://example.com/x"}))
        .await;
    assert_eq!((s, error_code(&v)), (400, "invalid_url"));
}
