mod common;

use std::ffi::OsString;
use std::io::Cursor;
use std::path::Path;

use clickbait_core::cli::{run, EXIT_DATA, EXIT_OK, EXIT_TRAINING, EXIT_USAGE};
use clickbait_core::corpus::{sample_corpus, serialize_corpus, CorpusFormat, Label};
use clickbait_core::model::{Engine, ModelBundle};
use clickbait_core::report::{SIMULATION_CSV_HEADER, STATS_CSV_HEADER, TABLE2_CSV_HEADER};
use clickbait_core::simulate::{serialize_events, synthetic_pattern_user};
use tempfile::TempDir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with(args: &[&str], stdin: &str) -> Out {
    let mut argv: Vec<OsString> = vec!["clickbait".into()];
    argv.extend(args.iter().map(OsString::from));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        argv,
        &mut Cursor::new(stdin.as_bytes().to_vec()),
        &mut out,
        &mut err,
    );
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn cli(args: &[&str]) -> Out {
    run_with(args, "")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// 20 headlines of each class from the sample, for quick end-to-end runs.
fn small_corpus(dir: &Path) -> std::path::PathBuf {
    let all = sample_corpus();
    let mut pick: Vec<_> = all
        .iter()
        .filter(|h| h.label == Label::Clickbait)
        .take(20)
        .cloned()
        .collect();
    pick.extend(
        all.iter()
            .filter(|h| h.label == Label::NonClickbait)
            .take(20)
            .cloned(),
    );
    let path = dir.join("small.jsonl");
    std::fs::write(&path, serialize_corpus(&pick, CorpusFormat::JsonLines)).unwrap();
    path
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(cli(&["train"]).code, EXIT_USAGE, "--bundle is required");
    assert_eq!(cli(&["classify", "x"]).code, EXIT_USAGE);
    assert_eq!(cli(&["eval", "--model", "perceptron"]).code, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);

    let dir = TempDir::new().unwrap();
    let conf = dir.path().join("bad.conf");
    std::fs::write(&conf, "folds = 2\ncolour = blue\n").unwrap();
    let o = cli(&["--config", p(&conf), "stats"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("colour"), "{}", o.stderr);

    let events = dir.path().join("e.jsonl");
    std::fs::write(&events, "").unwrap();
    assert_eq!(
        cli(&["simulate-block", "--events", p(&events), "--holdout", "1.5"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        cli(&[
            "simulate-block",
            "--events",
            p(&events),
            "--method",
            "vibes"
        ])
        .code,
        EXIT_USAGE
    );
}

#[test]
fn data_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let b = dir.path().join("b.json");
    let o = cli(&[
        "train",
        "--bundle",
        p(&b),
        "--corpus",
        "/no/such/corpus.jsonl",
    ]);
    assert_eq!(o.code, EXIT_DATA);
    assert!(o.stderr.contains("/no/such/corpus.jsonl"));
    assert_eq!(
        cli(&["classify", "--bundle", "/no/such/bundle.json", "x"]).code,
        EXIT_DATA
    );
    std::fs::write(&b, "{\"format\": 99}").unwrap();
    assert_eq!(cli(&["classify", "--bundle", p(&b), "x"]).code, EXIT_DATA);
    assert_eq!(
        cli(&["simulate-block", "--events", "/no/events.jsonl"]).code,
        EXIT_DATA
    );
}

#[test]
fn single_class_corpus() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("one.jsonl");
    let cb: Vec<_> = sample_corpus()
        .into_iter()
        .filter(|h| h.label == Label::Clickbait)
        .take(10)
        .collect();
    std::fs::write(&corpus, serialize_corpus(&cb, CorpusFormat::JsonLines)).unwrap();

    let o = cli(&[
        "train",
        "--bundle",
        p(&dir.path().join("b.json")),
        "--corpus",
        p(&corpus),
    ]);
    assert_eq!(o.code, EXIT_TRAINING, "{}", o.stderr);

    // Statistics still work; the missing class shows as n/a and the direction checks are skipped.
    let o = cli(&["stats", "--corpus", p(&corpus), "--format", "csv"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.starts_with(STATS_CSV_HEADER));
    assert!(o.stdout.contains("count,clickbait,10.0000"));
    assert!(o.stdout.contains("count,news,n/a"));
}

#[test]
fn train_is_deterministic_and_classify_reads_every_source() {
    let dir = TempDir::new().unwrap();
    let corpus = small_corpus(dir.path());
    let hash = |name: &str| {
        let o = cli(&[
            "train",
            "--bundle",
            p(&dir.path().join(name)),
            "--corpus",
            p(&corpus),
            "--seed",
            "7",
        ]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        o.stdout
            .lines()
            .find(|l| l.starts_with("bundle hash"))
            .unwrap()
            .to_string()
    };
    assert_eq!(hash("a.json"), hash("b.json"));
    assert_eq!(
        std::fs::read(dir.path().join("a.json")).unwrap(),
        std::fs::read(dir.path().join("b.json")).unwrap()
    );

    let bundle = dir.path().join("a.json");
    let o = cli(&[
        "classify",
        "--bundle",
        p(&bundle),
        "Which Disney Princess Are You",
        "   ",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].ends_with("\tWhich Disney Princess Are You"));
    assert!(lines[1].starts_with("error\t"));

    let o = run_with(
        &["classify", "--bundle", p(&bundle), "-"],
        "first line\n\nsecond line\n",
    );
    assert_eq!(o.stdout.lines().count(), 2);
    let o = run_with(&["classify", "--bundle", p(&bundle), "--file", "-"], "");
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, ""));
    let file = dir.path().join("h.txt");
    std::fs::write(&file, "a headline\nanother one\n").unwrap();
    assert_eq!(
        cli(&["classify", "--bundle", p(&bundle), "--file", p(&file)])
            .stdout
            .lines()
            .count(),
        2
    );
}

#[test]
fn bundle_round_trip_is_exact() {
    let b = common::bundle();
    let bytes = b.to_json().unwrap();
    let back = ModelBundle::from_json(&bytes).unwrap();
    assert_eq!(&back, b);
    assert_eq!(back.to_json().unwrap(), bytes);
    let (e1, e2) = (Engine::new(b.clone()), Engine::new(back));
    for h in sample_corpus().iter().take(40) {
        assert_eq!(
            e1.classify(&h.text).unwrap().score.to_bits(),
            e2.classify(&h.text).unwrap().score.to_bits()
        );
    }
}

#[test]
fn eval_two_folds_csv() {
    let dir = TempDir::new().unwrap();
    let corpus = small_corpus(dir.path());
    let conf = dir.path().join("c.conf");
    std::fs::write(
        &conf,
        format!(
            "# quick run\ncorpus = {}\nfolds=2\nmin_doc_freq = 2\n",
            corpus.display()
        ),
    )
    .unwrap();
    let csv_path = dir.path().join("t2.csv");
    let o = cli(&[
        "--config",
        p(&conf),
        "eval",
        "--format",
        "csv",
        "--csv",
        p(&csv_path),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], TABLE2_CSV_HEADER);
    // five feature rows times three models, plus the rule baseline
    assert_eq!(lines.len(), 1 + 15 + 1);
    assert!(lines.last().unwrap().starts_with("Downworthy,rules,"));
    for l in &lines[1..] {
        let f: Vec<&str> = l.split(',').collect();
        assert_eq!(f.len(), 11);
        let counts: usize = f[7..].iter().map(|x| x.parse::<usize>().unwrap()).sum();
        assert_eq!(counts, 40);
    }
    assert_eq!(std::fs::read_to_string(&csv_path).unwrap(), o.stdout);

    let o = cli(&[
        "--config",
        p(&conf),
        "eval",
        "--format",
        "table",
        "--model",
        "tree",
    ]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("2-fold cross validation on 40 headlines"));
}

#[test]
fn stats_on_sample_reports_directions() {
    let o = cli(&["stats", "--format", "table"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout.matches("PASS").count(), 4, "{}", o.stdout);
}

#[test]
fn simulate_block_from_events_file() {
    let dir = TempDir::new().unwrap();
    let events = dir.path().join("e.jsonl");
    std::fs::write(
        &events,
        serialize_events(&synthetic_pattern_user("u1", 60, 3)),
    )
    .unwrap();
    let o = cli(&[
        "simulate-block",
        "--events",
        p(&events),
        "--format",
        "csv",
        "--holdout",
        "0.25",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], SIMULATION_CSV_HEADER);
    assert_eq!(lines.len(), 4);
    let pattern: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(pattern[0], "pattern");
    assert!(pattern[1].parse::<f64>().unwrap() >= 0.9);

    let o = cli(&[
        "simulate-block",
        "--events",
        p(&events),
        "--method",
        "topic",
        "--graph",
        "toy",
        "--format",
        "csv",
    ]);
    assert_eq!((o.code, o.stdout.lines().count()), (EXIT_OK, 2));

    std::fs::write(&events, "").unwrap();
    let o = cli(&["simulate-block", "--events", p(&events), "--format", "csv"]);
    assert_eq!((o.code, o.stdout.trim()), (EXIT_OK, SIMULATION_CSV_HEADER));
}
