use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::annotation::tokenize;
use crate::error::{Error, Result};
use crate::util::sha256_hex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LexiconName {
    StopWords,
    HyperbolicWords,
    InternetSlang,
    ClickbaitPhrases,
    Determiners,
    CommonWordsTop200,
    /// Phrase rules of the rule-based baseline.
    DownworthyRules,
}

impl LexiconName {
    pub const ALL: [LexiconName; 7] = [
        LexiconName::StopWords,
        LexiconName::HyperbolicWords,
        LexiconName::InternetSlang,
        LexiconName::ClickbaitPhrases,
        LexiconName::Determiners,
        LexiconName::CommonWordsTop200,
        LexiconName::DownworthyRules,
    ];

    pub fn file_name(self) -> &'static str {
        match self {
            LexiconName::StopWords => "stopwords.txt",
            LexiconName::HyperbolicWords => "hyperbolic.txt",
            LexiconName::InternetSlang => "slang.txt",
            LexiconName::ClickbaitPhrases => "clickbait_phrases.txt",
            LexiconName::Determiners => "determiners.txt",
            LexiconName::CommonWordsTop200 => "top200.txt",
            LexiconName::DownworthyRules => "downworthy.txt",
        }
    }

    fn bundled_text(self) -> &'static str {
        match self {
            LexiconName::StopWords => include_str!("../../data/lexicons/stopwords.txt"),
            LexiconName::HyperbolicWords => include_str!("../../data/lexicons/hyperbolic.txt"),
            LexiconName::InternetSlang => include_str!("../../data/lexicons/slang.txt"),
            LexiconName::ClickbaitPhrases => {
                include_str!("../../data/lexicons/clickbait_phrases.txt")
            }
            LexiconName::Determiners => include_str!("../../data/lexicons/determiners.txt"),
            LexiconName::CommonWordsTop200 => include_str!("../../data/lexicons/top200.txt"),
            LexiconName::DownworthyRules => include_str!("../../data/lexicons/downworthy.txt"),
        }
    }
}

impl fmt::Display for LexiconName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lexicon {
    pub name: LexiconName,
    pub entries: BTreeSet<String>,
}

impl Lexicon {
    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries as lowercase token sequences, using the headline tokenizer so
    /// that "you won't believe" matches the split form `you wo n't believe`.
    pub fn token_sequences(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|e| tokenize(e).into_iter().map(|t| t.normalized).collect())
            .collect()
    }

    pub fn hash(&self) -> String {
        let joined: Vec<&str> = self.entries.iter().map(String::as_str).collect();
        sha256_hex(joined.join("\n").as_bytes())
    }
}

pub fn parse_lexicon(text: &str, name: LexiconName) -> Result<Lexicon> {
    let entries: BTreeSet<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .collect::<Vec<_>>()
                .join(" ")
                .to_lowercase()
        })
        .collect();
    if entries.is_empty() {
        return Err(Error::EmptyLexicon(name.to_string()));
    }
    Ok(Lexicon { name, entries })
}

pub fn load_lexicon(path: &Path, name: LexiconName) -> Result<Lexicon> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_lexicon(&text, name)
}

/// Every lexicon the feature extractor, baseline and blocker need.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lexicons {
    pub stopwords: Lexicon,
    pub hyperbolic: Lexicon,
    pub slang: Lexicon,
    pub phrases: Lexicon,
    pub determiners: Lexicon,
    pub top200: Lexicon,
    pub downworthy: Lexicon,
}

impl Lexicons {
    pub fn bundled() -> Lexicons {
        let get = |n: LexiconName| {
            parse_lexicon(n.bundled_text(), n).expect("bundled lexicons are non-empty")
        };
        Lexicons {
            stopwords: get(LexiconName::StopWords),
            hyperbolic: get(LexiconName::HyperbolicWords),
            slang: get(LexiconName::InternetSlang),
            phrases: get(LexiconName::ClickbaitPhrases),
            determiners: get(LexiconName::Determiners),
            top200: get(LexiconName::CommonWordsTop200),
            downworthy: get(LexiconName::DownworthyRules),
        }
    }

    /// Load every lexicon from `dir`, using the standard file names.
    pub fn load_dir(dir: &Path) -> Result<Lexicons> {
        let get = |n: LexiconName| load_lexicon(&dir.join(n.file_name()), n);
        Ok(Lexicons {
            stopwords: get(LexiconName::StopWords)?,
            hyperbolic: get(LexiconName::HyperbolicWords)?,
            slang: get(LexiconName::InternetSlang)?,
            phrases: get(LexiconName::ClickbaitPhrases)?,
            determiners: get(LexiconName::Determiners)?,
            top200: get(LexiconName::CommonWordsTop200)?,
            downworthy: get(LexiconName::DownworthyRules)?,
        })
    }

    pub fn all(&self) -> [&Lexicon; 7] {
        [
            &self.stopwords,
            &self.hyperbolic,
            &self.slang,
            &self.phrases,
            &self.determiners,
            &self.top200,
            &self.downworthy,
        ]
    }

    pub fn hashes(&self) -> BTreeMap<String, String> {
        self.all()
            .iter()
            .map(|l| (l.name.to_string(), l.hash()))
            .collect()
    }
}
