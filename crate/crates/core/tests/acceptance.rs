//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clickbait_core::annotation::conllu::bundled_treebank;
use clickbait_core::annotation::{Annotator, ParserParams, PennTag, TaggerParams};
use clickbait_core::bayes::{score_nb, train_nb, NbFamily};
use clickbait_core::blocker::{
    normalize_pattern, word_edit_distance, Action, Blocker, ConceptGraph, HeadlinePattern, Method,
    PatternToken, UserProfile,
};
use clickbait_core::classifier::svm::{smo, train_svm_smo, SvmParams};
use clickbait_core::classifier::{
    roc_auc, table2, FeatureGroup, LexiconMatcher, ModelKind, Prepared, TrainConfig,
};
use clickbait_core::corpus::{compute_corpus_stats, sample_corpus, Label, Lexicons};
use clickbait_core::model::Engine;
use clickbait_core::service::{
    router, ClassifyResponse, FeedbackEvent, FeedbackKind, Service, ServiceConfig,
};
use clickbait_core::simulate::{synthetic_pattern_user, synthetic_topic_user, ProfileEvent};
use common::{bundle, oracles, USER};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Report {
    failed: usize,
    total: usize,
}

impl Report {
    fn check(&mut self, id: usize, name: &str, ok: bool, detail: String) {
        self.total += 1;
        if !ok {
            self.failed += 1;
        }
        println!(
            "{} [{id:>2}] {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
}

fn nb_brute_force() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..300 {
        let n_docs = rng.gen_range(2..40);
        let docs: Vec<(Vec<String>, Label)> = (0..n_docs)
            .map(|i| {
                let len = rng.gen_range(0..7);
                let items = (0..len)
                    .map(|_| format!("t{}", rng.gen_range(0..15)))
                    .collect();
                let label = match i {
                    0 => Label::Clickbait,
                    1 => Label::NonClickbait,
                    _ if rng.gen_bool(0.5) => Label::Clickbait,
                    _ => Label::NonClickbait,
                };
                (items, label)
            })
            .collect();
        let items: Vec<String> = (0..rng.gen_range(0..=50))
            .map(|_| format!("t{}", rng.gen_range(0..18)))
            .collect();
        let alpha = rng.gen_range(0.1..2.0);
        let m = train_nb(NbFamily::WordNGram, &docs, alpha).expect("both classes present");
        worst = worst
            .max((score_nb(&m, &items) - oracles::nb_joint_log_odds(&docs, &items, alpha)).abs());
    }
    (
        worst < 1e-9,
        format!("300 random models, up to 50 items, max |diff| = {worst:.2e}"),
    )
}

fn ids_to_pattern(ids: &[u8]) -> HeadlinePattern {
    HeadlinePattern {
        items: ids
            .iter()
            .map(|&i| match i {
                0 => PatternToken::Quote,
                1 => PatternToken::Number,
                2 => PatternToken::Tag(PennTag::Jj),
                n => PatternToken::Literal(format!("w{n}")),
            })
            .collect(),
    }
}

fn edit_distance() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut dp_bad = 0;
    for _ in 0..1000 {
        let a: Vec<u8> = (0..rng.gen_range(0..15))
            .map(|_| rng.gen_range(0..6))
            .collect();
        let b: Vec<u8> = (0..rng.gen_range(0..15))
            .map(|_| rng.gen_range(0..6))
            .collect();
        if word_edit_distance(&ids_to_pattern(&a), &ids_to_pattern(&b))
            != oracles::edit_distance_matrix(&a, &b)
        {
            dp_bad += 1;
        }
    }
    let table = oracles::edit_distance_exhaustive(3, 4);
    let ex_bad = table
        .iter()
        .filter(|((a, b), d)| word_edit_distance(&ids_to_pattern(a), &ids_to_pattern(b)) != **d)
        .count();
    (
        dp_bad == 0 && ex_bad == 0,
        format!("{dp_bad}/1000 random pairs differ from DP, {ex_bad}/{} exhaustive pairs (len <= 4) differ", table.len()),
    )
}

fn pattern_examples(annotator: &Annotator, blocker_lex: &Lexicons) -> (bool, String) {
    let top: std::collections::HashSet<String> =
        blocker_lex.top200.entries.iter().cloned().collect();
    let cases = [
        (
            "Which Dead `Grey's Anatomy' Character Are You",
            "which JJ <QUOTE> character are you",
        ),
        (
            "Which `Inside Amy Schumer' Character Are You",
            "which <QUOTE> character are you",
        ),
        ("15 Things", "<D> NNS"),
    ];
    let mut out = Vec::new();
    let mut ok = true;
    for (h, want) in cases {
        let got = normalize_pattern(&annotator.annotate(0, h), &top).to_string();
        ok &= got == want;
        out.push(format!("{got:?}"));
    }
    (ok, out.join(", "))
}

fn smo_checks() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut worst_kkt, mut worst_sum): (f64, f64) = (0.0, 0.0);
    for _ in 0..25 {
        let n = rng.gen_range(10..80);
        let xs: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect();
        let ys: Vec<f64> = (0..n)
            .map(|i| {
                if i == 0 || (i > 1 && rng.gen_bool(0.5)) {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect();
        let (c, gamma) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..2.0));
        let s = smo(&xs, &ys, c, gamma, 1e-3, 10_000_000).expect("solvable");
        worst_kkt = worst_kkt.max(oracles::kkt_violation(&xs, &ys, &s.alpha, s.bias, c, gamma));
        worst_sum = worst_sum.max(
            s.alpha
                .iter()
                .zip(&ys)
                .map(|(a, y)| a * y)
                .sum::<f64>()
                .abs(),
        );
    }
    let xs = vec![
        vec![0.0, 0.0],
        vec![1.0, 1.0],
        vec![0.0, 1.0],
        vec![1.0, 0.0],
    ];
    let ys = vec![-1.0, -1.0, 1.0, 1.0];
    let m = train_svm_smo(
        &xs,
        &ys,
        &SvmParams {
            c: 10.0,
            gamma: Some(1.0),
            ..SvmParams::default()
        },
    )
    .expect("xor trains");
    let correct = xs
        .iter()
        .zip(&ys)
        .filter(|(x, y)| m.decision(x) * **y > 0.0)
        .count();
    let acc = correct as f64 / 4.0;
    (
        worst_kkt <= 1e-3 && worst_sum <= 1e-6 && acc == 1.0,
        format!("max KKT violation {worst_kkt:.2e}, max |sum alpha y| {worst_sum:.2e}, XOR training accuracy {acc}"),
    )
}

fn auc_checks() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    for t in 0..300 {
        let n = rng.gen_range(2..=500);
        let labels: Vec<Label> = (0..n)
            .map(|i| match i {
                0 => Label::Clickbait,
                1 => Label::NonClickbait,
                _ if rng.gen_bool(0.4) => Label::Clickbait,
                _ => Label::NonClickbait,
            })
            .collect();
        // half the trials with heavy ties
        let scores: Vec<f64> = (0..n)
            .map(|_| {
                if t % 2 == 0 {
                    f64::from(rng.gen_range(0..10))
                } else {
                    rng.gen_range(-3.0..3.0)
                }
            })
            .collect();
        if roc_auc(&labels, &scores).unwrap() != oracles::auc_pairwise(&labels, &scores) {
            bad += 1;
        }
    }
    (
        bad == 0,
        format!("{bad}/300 random score sets (<= 500 items) differ from the pairwise count"),
    )
}

fn replay_split(
    events: &[ProfileEvent],
    holdout: f64,
    blocker: &Blocker,
    ann: &Annotator,
) -> (UserProfile, Vec<(clickbait_core::blocker::Query, Action)>) {
    let mut evs: Vec<&ProfileEvent> = events.iter().collect();
    evs.sort_by(|a, b| (a.timestamp, &a.link).cmp(&(b.timestamp, &b.link)));
    let n_train = ((1.0 - holdout) * evs.len() as f64).round() as usize;
    let mut profile = UserProfile::new(&evs[0].user);
    let mut test = Vec::new();
    for (i, e) in evs.iter().enumerate() {
        let h = ann.annotate(0, &e.headline);
        let q = match &e.tags {
            Some(t) => blocker.query_with_tags(&h, t.iter().cloned().collect::<BTreeSet<_>>()),
            None => blocker.query(&h, None),
        };
        if i < n_train {
            profile.update(blocker.entry(&e.link, &h, q, e.action, e.timestamp));
        } else {
            test.push((q, e.action));
        }
    }
    (profile, test)
}

fn blocking(ann: &Annotator) -> (bool, String) {
    let lex = Lexicons::bundled();
    let holdout = 0.2;
    let mut blocker = Blocker::new(&lex, Arc::new(ConceptGraph::toy()));
    let acc = |blocker: &Blocker, events: &[ProfileEvent], m: Method| {
        let (p, test) = replay_split(events, holdout, blocker, ann);
        test.iter()
            .filter(|(q, a)| blocker.decide(m, q, &p).is_block() == (*a == Action::Blocked))
            .count() as f64
            / test.len() as f64
    };
    let pattern_user = synthetic_pattern_user("pattern-user", 200, 1);
    let topic_user = synthetic_topic_user("topic-user", 200, 2);
    let pa = acc(&blocker, &pattern_user, Method::Pattern);
    let ta = acc(&blocker, &topic_user, Method::Topic);

    let mut mismatches = 0;
    let mut compared = 0;
    for events in [&pattern_user, &topic_user] {
        let (p, test) = replay_split(events, holdout, &blocker, ann);
        for (q, _) in &test {
            for (w, pure) in [(0.0, Method::Pattern), (1.0, Method::Topic)] {
                blocker.hybrid_weight = w;
                let h = blocker.decide(Method::Hybrid, q, &p);
                let r = blocker.decide(pure, q, &p);
                let same = h.decision == r.decision
                    && (w == 1.0
                        || (h.block_score, h.click_score) == (r.block_score, r.click_score));
                mismatches += usize::from(!same);
                compared += 1;
            }
        }
    }
    (
        pa >= 0.9 && ta >= 0.9 && mismatches == 0,
        format!(
            "pattern method on pattern user {pa:.3}, topic method on topic user {ta:.3} (toy graph), hybrid w=0/w=1 mismatches {mismatches}/{compared}"
        ),
    )
}

async fn service_checks(report: &mut Report) {
    let http = reqwest::Client::builder()
        .no_proxy()
        .build()
        .expect("client");
    let post = |base: String, path: &'static str, body: serde_json::Value| {
        let http = http.clone();
        async move {
            let r = http
                .post(format!("{base}{path}"))
                .header("content-type", "application/json")
                .body(body.to_string())
                .send()
                .await
                .expect("request");
            let s = r.status().as_u16();
            (
                s,
                serde_json::from_slice::<serde_json::Value>(&r.bytes().await.expect("body"))
                    .expect("json"),
            )
        }
    };
    let start = |svc: Arc<Service>| async move {
        let l = tokio::net::TcpListener::bind("127.0.0.1:0")
            .await
            .expect("bind");
        let addr = l.local_addr().expect("addr");
        tokio::spawn(async move { axum::serve(l, router(svc)).await.expect("serve") });
        format!("http://{addr}")
    };
    let config = |dir: &Path| ServiceConfig {
        state_dir: dir.to_path_buf(),
        retrain_interval: None,
        ..ServiceConfig::default()
    };

    // BlockSimilar, then a distance-1 variant.
    let dir = tempfile::TempDir::new().expect("tempdir");
    let base = start(Arc::new(
        Service::open(config(dir.path()), Some(bundle().clone())).expect("open"),
    ))
    .await;
    let ev = serde_json::json!({"event": {"user": USER, "kind": "BlockSimilar", "headline": "Which Dead `Grey's Anatomy' Character Are You", "timestamp": 1}});
    let (s1, _) = post(base.clone(), "/v1/feedback", ev).await;
    let (s2, v) = post(
        base.clone(),
        "/v1/classify",
        serde_json::json!({"user": USER, "texts": ["Which `Inside Amy Schumer' Character Are You"]}),
    )
    .await;
    let block = v["results"][0]["block"].clone();
    report.check(
        10,
        "service: BlockSimilar then distance-1 variant",
        s1 == 200 && s2 == 200 && block == serde_json::json!(true),
        format!("feedback {s1}, classify {s2}, block = {block}"),
    );

    // Crash and restart.
    let dir = tempfile::TempDir::new().expect("tempdir");
    let probe: Vec<String> = {
        let mut p: Vec<String> = sample_corpus()
            .into_iter()
            .step_by(7)
            .take(48)
            .map(|h| h.text)
            .collect();
        p.push("Which `Inside Amy Schumer' Character Are You".into());
        p.push("Which Dead `Friends' Character Are You".into());
        p
    };
    let fb = |kind, h: &str, ts| FeedbackEvent {
        user: USER.into(),
        kind,
        headline: h.into(),
        url: None,
        timestamp: ts,
    };
    let before = {
        let svc = Service::open(config(dir.path()), Some(bundle().clone())).expect("open");
        svc.record_feedback(fb(
            FeedbackKind::BlockSimilar,
            "Which Dead `Grey's Anatomy' Character Are You",
            1,
        ))
        .await
        .expect("fb");
        svc.record_feedback(fb(
            FeedbackKind::Clicked,
            "17 Things Only Cat Owners Will Understand",
            2,
        ))
        .await
        .expect("fb");
        svc.record_feedback(fb(
            FeedbackKind::ReportFalseNegative,
            "Obama signs the bill",
            3,
        ))
        .await
        .expect("fb");
        svc.classify(Some(USER), probe.clone())
            .await
            .expect("classify")
    };
    {
        use std::io::Write;
        let mut f = std::fs::OpenOptions::new()
            .append(true)
            .open(dir.path().join("events.jsonl"))
            .expect("log");
        f.write_all(br#"{"seq":7,"type":"feed"#)
            .expect("torn write");
    }
    let after = Service::open(config(dir.path()), Some(bundle().clone()))
        .expect("reopen")
        .classify(Some(USER), probe.clone())
        .await
        .expect("classify");
    let same = serde_json::to_string(&before).ok() == serde_json::to_string(&after).ok();
    let blocks = after
        .results
        .iter()
        .filter(|r| r.block == Some(true))
        .count();
    report.check(
        10,
        "service: crash-restart replay",
        same && probe.len() == 50,
        format!(
            "{} probe items, responses identical = {same} ({blocks} blocked)",
            probe.len()
        ),
    );

    // Retrain under load.
    let dir = tempfile::TempDir::new().expect("tempdir");
    let svc = Arc::new(Service::open(config(dir.path()), Some(bundle().clone())).expect("open"));
    let base = start(svc.clone()).await;
    let flipped = "Obama signs the bill";
    for ts in 0..50 {
        let ev = serde_json::json!({"event": {"user": USER, "kind": "ReportFalseNegative", "headline": flipped, "timestamp": ts}});
        post(base.clone(), "/v1/feedback", ev).await;
    }
    let mut texts: Vec<String> = probe.iter().take(19).cloned().collect();
    texts.push(flipped.into());
    let body = serde_json::json!({"texts": texts});
    let retrain = tokio::spawn(post(
        base.clone(),
        "/v1/admin/retrain",
        serde_json::json!({}),
    ));
    let mut tasks = Vec::new();
    for i in 0..100u64 {
        let fut = post(base.clone(), "/v1/classify", body.clone());
        tasks.push(tokio::spawn(async move {
            tokio::time::sleep(Duration::from_millis(i * 20)).await;
            fut.await
        }));
    }
    let (rs, rv) = retrain.await.expect("join");
    let mut responses = Vec::new();
    for t in tasks {
        let (s, v) = t.await.expect("join");
        if s == 200 {
            responses.push(serde_json::from_value::<ClassifyResponse>(v).expect("response"));
        }
    }
    let v2 = svc.registry().load_version(2).ok();
    let engines: Vec<Engine> = std::iter::once(bundle().clone())
        .chain(v2)
        .map(Engine::new)
        .collect();
    let expected: Vec<Vec<f64>> = engines
        .iter()
        .map(|e| {
            texts
                .iter()
                .map(|t| e.classify(t).expect("score").score)
                .collect()
        })
        .collect();
    let mut counts = [0usize; 2];
    let mut mixed = 0;
    for r in &responses {
        let v = r.version as usize - 1;
        let Some(want) = expected.get(v) else {
            mixed += 1;
            continue;
        };
        counts[v] += 1;
        let consistent = r
            .results
            .iter()
            .zip(want)
            .all(|(i, w)| (i.score.unwrap_or(f64::NAN) - w).abs() <= 1e-9 * w.abs().max(1.0));
        mixed += usize::from(!consistent);
    }
    report.check(
        10,
        "service: atomic retrain swap under 100 concurrent classify requests",
        rs == 200 && responses.len() == 100 && mixed == 0 && engines.len() == 2,
        format!(
            "retrain -> {rs} {}, {} ok responses (v1 {}, v2 {}), mixed-version responses {mixed}",
            rv["model_version"],
            responses.len(),
            counts[0],
            counts[1]
        ),
    );
}

fn main() {
    let mut r = Report {
        failed: 0,
        total: 0,
    };

    let (ok, d) = nb_brute_force();
    r.check(1, "NB score equals brute-force joint log-odds", ok, d);
    let (ok, d) = edit_distance();
    r.check(2, "edit distance", ok, d);

    let start = Instant::now();
    let annotator = Annotator::train(
        &bundled_treebank(),
        &TaggerParams::default(),
        &ParserParams::default(),
    )
    .expect("annotators train");
    let annotator_secs = start.elapsed().as_secs_f64();
    let lexicons = Lexicons::bundled();
    let (ok, d) = pattern_examples(&annotator, &lexicons);
    r.check(3, "pattern normalization worked examples", ok, d);

    let (ok, d) = smo_checks();
    r.check(4, "SMO optimality", ok, d);
    let (ok, d) = auc_checks();
    r.check(5, "AUC equals pairwise oracle", ok, d);

    let corpus = sample_corpus();
    let lex = LexiconMatcher::new(&lexicons);
    let prep = Prepared::new(corpus.clone(), &annotator, &lex);
    let cfg = TrainConfig::default();
    let mut groups = FeatureGroup::SINGLE.to_vec();
    groups.push(FeatureGroup::All);
    let t = table2(&prep, &lex, &cfg, &[ModelKind::Svm], &groups, 10, cfg.seed)
        .expect("evaluation runs");
    let secs = start.elapsed().as_secs_f64();
    let all = t
        .get(FeatureGroup::All, ModelKind::Svm)
        .expect("cell")
        .accuracy;
    let dw = t.downworthy.accuracy;
    r.check(
        6,
        "10-fold CV: all-features SVM >= Downworthy + 10 points",
        corpus.len() >= 400 && all >= dw + 0.10 && secs < 300.0,
        format!(
            "n = {}, SVM {all:.4} vs Downworthy {dw:.4}, {secs:.1}s including {annotator_secs:.1}s annotator training",
            corpus.len()
        ),
    );
    let singles: Vec<String> = FeatureGroup::SINGLE
        .iter()
        .map(|g| {
            format!(
                "{} {:.4}",
                g.name(),
                t.get(*g, ModelKind::Svm).expect("cell").accuracy
            )
        })
        .collect();
    let dominated = FeatureGroup::SINGLE
        .iter()
        .all(|g| all >= t.get(*g, ModelKind::Svm).expect("cell").accuracy);
    r.check(
        7,
        "all features >= every single group",
        dominated,
        format!("All {all:.4}; {}", singles.join(", ")),
    );

    let st = compute_corpus_stats(&corpus, &prep.annotated, &lexicons).expect("stats");
    let dirs = st.directions();
    let ok = dirs.iter().all(|(_, v)| *v == Some(true));
    let detail = dirs
        .iter()
        .map(|(n, v)| format!("{n}: {}", v.map_or("n/a", |b| if b { "yes" } else { "no" })))
        .collect::<Vec<_>>();
    r.check(8, "corpus directions", ok, detail.join("; "));

    let (ok, d) = blocking(&annotator);
    r.check(9, "blocking", ok, d);

    let rt = tokio::runtime::Builder::new_multi_thread()
        .worker_threads(8)
        .enable_all()
        .build()
        .expect("runtime");
    rt.block_on(service_checks(&mut r));

    println!("{}/{} criteria passed", r.total - r.failed, r.total);
}
