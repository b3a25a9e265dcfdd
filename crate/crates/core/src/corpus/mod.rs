//! Labeled headline corpora, lexicon assets and the comparative statistics.

mod folds;
mod lexicon;
mod stats;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use folds::{stratified_fold_indices, stratified_folds, FoldAssignment};
pub use lexicon::{load_lexicon, parse_lexicon, Lexicon, LexiconName, Lexicons};
pub use stats::{compute_corpus_stats, ClassStats, CorpusStats};

use crate::error::{Error, Result};

pub const SAMPLE_CORPUS: &str = include_str!("../../data/corpus/sample.jsonl");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "clickbait")]
    Clickbait,
    #[serde(rename = "news")]
    NonClickbait,
}

impl Label {
    pub const BOTH: [Label; 2] = [Label::Clickbait, Label::NonClickbait];

    /// Clickbait is class 0 everywhere a per-class array is used.
    pub fn index(self) -> usize {
        match self {
            Label::Clickbait => 0,
            Label::NonClickbait => 1,
        }
    }

    pub fn is_clickbait(self) -> bool {
        self == Label::Clickbait
    }

    pub fn sign(self) -> f64 {
        if self.is_clickbait() {
            1.0
        } else {
            -1.0
        }
    }

    pub fn flip(self) -> Label {
        match self {
            Label::Clickbait => Label::NonClickbait,
            Label::NonClickbait => Label::Clickbait,
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        match s.trim().to_ascii_lowercase().as_str() {
            "clickbait" => Some(Label::Clickbait),
            "news" | "non-clickbait" => Some(Label::NonClickbait),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Clickbait => "clickbait",
            Label::NonClickbait => "news",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledHeadline {
    pub id: u64,
    pub text: String,
    pub label: Label,
    pub source: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    JsonLines,
    Tsv,
}

impl CorpusFormat {
    pub fn from_path(path: &Path) -> CorpusFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("tsv") | Some("txt") => CorpusFormat::Tsv,
            _ => CorpusFormat::JsonLines,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct LoadedCorpus {
    pub headlines: Vec<LabeledHeadline>,
    /// (1-based line number, reason) for every rejected record.
    pub rejected: Vec<(usize, String)>,
}

#[derive(Deserialize)]
struct JsonRecord {
    headline: String,
    label: String,
    #[serde(default)]
    source: Option<String>,
}

#[derive(Serialize)]
struct JsonRecordOut<'a> {
    headline: &'a str,
    label: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<&'a str>,
}

pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<LoadedCorpus> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Error::Data(format!("{} is not UTF-8", path.display())))?;
    Ok(parse_corpus(&text, format))
}

pub fn parse_corpus(text: &str, format: CorpusFormat) -> LoadedCorpus {
    let mut out = LoadedCorpus::default();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_record(line, format) {
            Ok((text, label, source)) => {
                out.headlines.push(LabeledHeadline {
                    id: i as u64,
                    text,
                    label,
                    source,
                });
            }
            Err(reason) => out.rejected.push((i + 1, reason)),
        }
    }
    out
}

fn parse_record(
    line: &str,
    format: CorpusFormat,
) -> std::result::Result<(String, Label, Option<String>), String> {
    let (text, label, source) = match format {
        CorpusFormat::JsonLines => {
            let r: JsonRecord =
                serde_json::from_str(line).map_err(|e| format!("malformed JSON: {e}"))?;
            (r.headline, r.label, r.source)
        }
        CorpusFormat::Tsv => {
            let mut cols = line.split('\t');
            let text = cols.next().unwrap_or_default().to_string();
            let label = cols.next().ok_or("missing label column")?.to_string();
            let source = cols.next().map(str::to_string).filter(|s| !s.is_empty());
            (text, label, source)
        }
    };
    let label = Label::parse(&label).ok_or_else(|| format!("unknown label {label:?}"))?;
    let text = text.trim().to_string();
    if text.is_empty() {
        return Err("empty headline".into());
    }
    if text.contains(['\n', '\r']) {
        return Err("headline contains a newline".into());
    }
    Ok((text, label, source))
}

pub fn serialize_corpus(headlines: &[LabeledHeadline], format: CorpusFormat) -> String {
    let mut s = String::new();
    for h in headlines {
        match format {
            CorpusFormat::JsonLines => {
                let rec = JsonRecordOut {
                    headline: &h.text,
                    label: h.label.as_str(),
                    source: h.source.as_deref(),
                };
                s.push_str(&serde_json::to_string(&rec).expect("plain record serializes"));
            }
            CorpusFormat::Tsv => {
                s.push_str(&h.text);
                s.push('\t');
                s.push_str(h.label.as_str());
                if let Some(src) = &h.source {
                    s.push('\t');
                    s.push_str(src);
                }
            }
        }
        s.push('\n');
    }
    s
}

/// The bundled balanced sample corpus.
pub fn sample_corpus() -> Vec<LabeledHeadline> {
    parse_corpus(SAMPLE_CORPUS, CorpusFormat::JsonLines).headlines
}

/// Stable content hash of a corpus (text and label of every record, in order).
pub fn corpus_hash(headlines: &[LabeledHeadline]) -> String {
    crate::util::sha256_hex(serialize_corpus(headlines, CorpusFormat::Tsv).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_news_line() {
        let c = parse_corpus(
            r#"{"headline":"Visa deal or no migrant deal, Turkey warns EU","label":"news"}"#,
            CorpusFormat::JsonLines,
        );
        assert_eq!(c.headlines.len(), 1);
        assert_eq!(c.headlines[0].label, Label::NonClickbait);
    }

    #[test]
    fn empty_and_rejected() {
        let c = parse_corpus("", CorpusFormat::JsonLines);
        assert!(c.headlines.is_empty() && c.rejected.is_empty());
        let c = parse_corpus(r#"{"headline":"x","label":"foo"}"#, CorpusFormat::JsonLines);
        assert_eq!(c.rejected.len(), 1);
        assert_eq!(c.rejected[0].0, 1);
        let c = parse_corpus(
            "{\"headline\":\"a\\nb\",\"label\":\"news\"}",
            CorpusFormat::JsonLines,
        );
        assert_eq!(c.rejected.len(), 1);
    }

    #[test]
    fn labels_are_case_insensitive() {
        assert_eq!(Label::parse("ClickBait"), Some(Label::Clickbait));
        assert_eq!(Label::parse("NON-CLICKBAIT"), Some(Label::NonClickbait));
        assert_eq!(Label::parse("spam"), None);
    }

    #[test]
    fn tsv_round_trip() {
        let c = parse_corpus(
            "Birds fly\tnews\nYou Won't Believe This\tclickbait\tbuzzfeed.com\n",
            CorpusFormat::Tsv,
        );
        assert_eq!(c.headlines.len(), 2);
        let again = parse_corpus(
            &serialize_corpus(&c.headlines, CorpusFormat::Tsv),
            CorpusFormat::Tsv,
        );
        assert_eq!(again.headlines, c.headlines);
    }

    #[test]
    fn sample_is_balanced_and_large_enough() {
        let s = sample_corpus();
        assert!(s.len() >= 400);
        let cb = s.iter().filter(|h| h.label.is_clickbait()).count();
        assert_eq!(cb * 2, s.len());
    }
}
