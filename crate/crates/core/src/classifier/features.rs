//! Per-headline measures and the 15-dimensional feature vector.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::annotation::{tokenize, AnnotatedHeadline, PennTag, TokenKind};
use crate::bayes::{score_nb, train_nb, NaiveBayesModel, NbFamily};
use crate::corpus::{Label, Lexicon, Lexicons};
use crate::error::Result;
use crate::ngrams::{extract, extract_subject, prune, NGram, NGramKind, PrunedNGramSet};

pub const N_FEATURES: usize = 15;

pub const FEATURE_NAMES: [&str; N_FEATURES] = [
    "num_words",
    "avg_word_chars",
    "stop_to_content_ratio",
    "max_dependency_distance",
    "starts_with_cardinal",
    "unusual_punct_count",
    "contraction_count",
    "hyperbolic_present",
    "clickbait_phrase_count",
    "slang_count",
    "determiner_count",
    "subject_nb_score",
    "word_ngram_nb_score",
    "pos_ngram_nb_score",
    "syn_ngram_nb_score",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector(pub [f64; N_FEATURES]);

impl FeatureVector {
    pub fn masked(&self, group: FeatureGroup) -> FeatureVector {
        let mut v = [0.0; N_FEATURES];
        for i in group.indices() {
            v[i] = self.0[i];
        }
        FeatureVector(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FeatureGroup {
    SentenceStructure,
    WordPatterns,
    ClickbaitLanguage,
    NGrams,
    All,
}

impl FeatureGroup {
    pub const SINGLE: [FeatureGroup; 4] = [
        FeatureGroup::SentenceStructure,
        FeatureGroup::WordPatterns,
        FeatureGroup::ClickbaitLanguage,
        FeatureGroup::NGrams,
    ];

    pub fn indices(self) -> std::ops::Range<usize> {
        match self {
            FeatureGroup::SentenceStructure => 0..4,
            FeatureGroup::WordPatterns => 4..7,
            FeatureGroup::ClickbaitLanguage => 7..12,
            FeatureGroup::NGrams => 12..15,
            FeatureGroup::All => 0..15,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FeatureGroup::SentenceStructure => "Sentence Structure",
            FeatureGroup::WordPatterns => "Word Patterns",
            FeatureGroup::ClickbaitLanguage => "Clickbait Language",
            FeatureGroup::NGrams => "N-gram Features",
            FeatureGroup::All => "All Features",
        }
    }
}

/// Lowercase token-sequence matcher for phrase lexicons.
#[derive(Debug, Clone, Default)]
pub struct PhraseSet {
    phrases: Vec<Vec<String>>,
}

impl PhraseSet {
    pub fn new(lex: &Lexicon) -> PhraseSet {
        PhraseSet {
            phrases: lex
                .token_sequences()
                .into_iter()
                .filter(|p| !p.is_empty())
                .collect(),
        }
    }

    /// Occurrences of any phrase in `seq` (every start position, every phrase).
    pub fn count(&self, seq: &[String]) -> usize {
        (0..seq.len())
            .map(|i| {
                self.phrases
                    .iter()
                    .filter(|p| seq[i..].starts_with(p))
                    .count()
            })
            .sum()
    }
}

/// Lexicons prepared for fast per-headline lookup.
#[derive(Debug, Clone)]
pub struct LexiconMatcher {
    stop: HashSet<String>,
    hyperbolic: HashSet<String>,
    determiners: HashSet<String>,
    phrases: PhraseSet,
    slang: PhraseSet,
    downworthy: PhraseSet,
}

impl LexiconMatcher {
    pub fn new(l: &Lexicons) -> LexiconMatcher {
        let set = |x: &Lexicon| x.entries.iter().cloned().collect::<HashSet<_>>();
        LexiconMatcher {
            stop: set(&l.stopwords),
            hyperbolic: set(&l.hyperbolic),
            determiners: set(&l.determiners),
            phrases: PhraseSet::new(&l.phrases),
            slang: PhraseSet::new(&l.slang),
            downworthy: PhraseSet::new(&l.downworthy),
        }
    }

    pub fn is_stopword(&self, w: &str) -> bool {
        self.stop.contains(w)
    }

    /// The rule baseline: clickbait iff any rule phrase occurs.
    pub fn downworthy(&self, text: &str) -> Label {
        let seq: Vec<String> = tokenize(text)
            .into_iter()
            .filter(|t| t.is_word())
            .map(|t| t.normalized)
            .collect();
        if self.downworthy.count(&seq) > 0 {
            Label::Clickbait
        } else {
            Label::NonClickbait
        }
    }
}

/// A written word: one word token plus any contraction suffix glued to it.
struct Unit {
    base: String,
    merged: String,
    chars: usize,
}

fn units(h: &AnnotatedHeadline) -> (Vec<Unit>, Vec<Option<usize>>) {
    let mut out: Vec<Unit> = Vec::new();
    let mut pos = vec![None; h.len()];
    let mut prev_word = false;
    for (i, t) in h.tokens.iter().enumerate() {
        let tok = &t.token;
        if !tok.is_word() {
            prev_word = false;
            continue;
        }
        let lower = tok.surface.to_lowercase().replace('\u{2019}', "'");
        if tok.is_contraction_suffix() && prev_word {
            let u = out.last_mut().expect("previous word exists");
            u.merged.push_str(&lower);
            u.chars += tok.surface.chars().count();
        } else {
            out.push(Unit {
                base: lower.clone(),
                merged: lower,
                chars: tok.surface.chars().count(),
            });
        }
        pos[i] = Some(out.len() - 1);
        prev_word = true;
    }
    (out, pos)
}

/// Every count the structural, word-pattern and lexical features are built from.
/// The corpus statistics read the same struct.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeadlineMeasures {
    pub words: usize,
    pub stopwords: usize,
    pub content_words: usize,
    pub avg_word_chars: f64,
    pub max_dependency_distance: usize,
    pub starts_with_cardinal: bool,
    pub unusual_punct: usize,
    pub contractions: usize,
    pub hyperbolic: usize,
    pub phrases: usize,
    pub slang: usize,
    pub determiners: usize,
}

/// `!?`, `?!`, `...`, `!!!`, `***`, any run mixing `!` and `?`, or any run of
/// two or more identical non-period marks.
pub fn is_unusual_punct(run: &str) -> bool {
    let chars: Vec<char> = run.chars().collect();
    if chars.is_empty() {
        return false;
    }
    if matches!(run, "!?" | "?!" | "..." | "!!!" | "***" | "\u{2026}") {
        return true;
    }
    if run.contains('!') && run.contains('?') {
        return true;
    }
    chars.len() >= 2 && chars[0] != '.' && chars.iter().all(|&c| c == chars[0])
}

pub fn headline_measures(h: &AnnotatedHeadline, lex: &LexiconMatcher) -> HeadlineMeasures {
    let (units, pos) = units(h);
    let is_stop = |u: &Unit| lex.stop.contains(&u.merged) || lex.stop.contains(&u.base);
    let stopwords = units.iter().filter(|u| is_stop(u)).count();
    let words = units.len();
    let avg_word_chars = if words == 0 {
        0.0
    } else {
        units.iter().map(|u| u.chars as f64).sum::<f64>() / words as f64
    };

    let max_dependency_distance = h
        .arcs
        .iter()
        .filter_map(|a| Some(pos[a.head?]?.abs_diff(pos[a.dependent]?)))
        .max()
        .unwrap_or(0);

    let starts_with_cardinal = h
        .tokens
        .iter()
        .find(|t| t.token.is_word())
        .is_some_and(|t| t.tag == PennTag::Cd || t.token.kind == TokenKind::Number);

    let unusual_punct = h
        .tokens
        .iter()
        .filter(|t| t.token.kind == TokenKind::Punct && is_unusual_punct(&t.token.surface))
        .count();

    let contractions = h
        .tokens
        .iter()
        .filter(|t| t.token.is_contraction_suffix() && t.tag != PennTag::Pos)
        .count();

    let seq: Vec<String> = h
        .tokens
        .iter()
        .filter(|t| t.token.is_word())
        .map(|t| t.token.surface.to_lowercase().replace('\u{2019}', "'"))
        .collect();

    HeadlineMeasures {
        words,
        stopwords,
        content_words: words - stopwords,
        avg_word_chars,
        max_dependency_distance,
        starts_with_cardinal,
        unusual_punct,
        contractions,
        hyperbolic: units
            .iter()
            .filter(|u| lex.hyperbolic.contains(&u.merged) || lex.hyperbolic.contains(&u.base))
            .count(),
        phrases: lex.phrases.count(&seq),
        slang: lex.slang.count(&seq),
        determiners: units
            .iter()
            .filter(|u| lex.determiners.contains(&u.base))
            .count(),
    }
}

impl HeadlineMeasures {
    /// Stop words per content word; all-stopword headlines divide by 1.
    pub fn stop_to_content_ratio(&self) -> f64 {
        self.stopwords as f64 / self.content_words.max(1) as f64
    }
}

/// N-gram and subject items of one headline, extracted once and reused by every fold.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadlineItems {
    pub subject: String,
    pub word: Vec<NGram>,
    pub pos: Vec<NGram>,
    pub syn: Vec<NGram>,
}

impl HeadlineItems {
    pub fn of(h: &AnnotatedHeadline) -> HeadlineItems {
        HeadlineItems {
            subject: extract_subject(h),
            word: extract(h, NGramKind::Word),
            pos: extract(h, NGramKind::Pos),
            syn: extract(h, NGramKind::Syntactic),
        }
    }

    fn grams(&self, kind: NGramKind) -> &[NGram] {
        match kind {
            NGramKind::Word => &self.word,
            NGramKind::Pos => &self.pos,
            NGramKind::Syntactic => &self.syn,
        }
    }
}

const GRAM_KINDS: [NGramKind; 3] = [NGramKind::Word, NGramKind::Pos, NGramKind::Syntactic];

/// The pruned gram sets and the four auxiliary Naive Bayes scorers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbScorers {
    pub word_grams: PrunedNGramSet,
    pub pos_grams: PrunedNGramSet,
    pub syn_grams: PrunedNGramSet,
    pub subject: NaiveBayesModel,
    pub word: NaiveBayesModel,
    pub pos: NaiveBayesModel,
    pub syn: NaiveBayesModel,
}

fn pruned_sets(
    items: &[&HeadlineItems],
    labels: &[Label],
    min_df: u32,
) -> Result<[PrunedNGramSet; 3]> {
    let mut out = Vec::with_capacity(3);
    for kind in GRAM_KINDS {
        let docs: Vec<(Vec<NGram>, Label)> = items
            .iter()
            .zip(labels)
            .map(|(it, &l)| (it.grams(kind).to_vec(), l))
            .collect();
        out.push(prune(kind, &docs, min_df)?);
    }
    Ok(out.try_into().expect("three kinds"))
}

fn fit_models(
    items: &[&HeadlineItems],
    labels: &[Label],
    sets: &[PrunedNGramSet; 3],
    alpha: f64,
) -> Result<[NaiveBayesModel; 4]> {
    let subj: Vec<(Vec<&str>, Label)> = items
        .iter()
        .zip(labels)
        .map(|(it, &l)| (vec![it.subject.as_str()], l))
        .collect();
    let subject = train_nb(NbFamily::Subject, &subj, alpha)?;
    let mut rest = Vec::with_capacity(3);
    for (set, fam) in sets
        .iter()
        .zip([NbFamily::WordNGram, NbFamily::PosNGram, NbFamily::SynNGram])
    {
        let docs: Vec<(Vec<String>, Label)> = items
            .iter()
            .zip(labels)
            .map(|(it, &l)| (set.filter_keys(it.grams(set.kind)), l))
            .collect();
        rest.push(train_nb(fam, &docs, alpha)?);
    }
    let [word, pos, syn]: [NaiveBayesModel; 3] = rest.try_into().expect("three families");
    Ok([subject, word, pos, syn])
}

impl NbScorers {
    pub fn fit(
        items: &[&HeadlineItems],
        labels: &[Label],
        min_df: u32,
        alpha: f64,
    ) -> Result<NbScorers> {
        let sets = pruned_sets(items, labels, min_df)?;
        let [subject, word, pos, syn] = fit_models(items, labels, &sets, alpha)?;
        let [word_grams, pos_grams, syn_grams] = sets;
        Ok(NbScorers {
            word_grams,
            pos_grams,
            syn_grams,
            subject,
            word,
            pos,
            syn,
        })
    }

    pub fn scores(&self, it: &HeadlineItems) -> [f64; 4] {
        [
            score_nb(&self.subject, &[it.subject.as_str()]),
            score_nb(&self.word, &self.word_grams.filter_keys(&it.word)),
            score_nb(&self.pos, &self.pos_grams.filter_keys(&it.pos)),
            score_nb(&self.syn, &self.syn_grams.filter_keys(&it.syn)),
        ]
    }

    /// Out-of-fold scores for the training rows themselves: each row is scored by
    /// models that never saw it, so the main classifier is not trained on
    /// in-sample scores that are far more confident than anything seen at test time.
    /// The gram sets come from `self`; only the class-conditional counts are refit.
    pub fn stacked_scores(
        &self,
        items: &[&HeadlineItems],
        labels: &[Label],
        inner_k: usize,
        seed: u64,
    ) -> Result<Vec<[f64; 4]>> {
        let min_class = Label::BOTH
            .iter()
            .map(|l| labels.iter().filter(|x| *x == l).count())
            .min()
            .unwrap_or(0);
        let k = inner_k.min(min_class);
        if k < 2 {
            return Ok(items.iter().map(|it| self.scores(it)).collect());
        }
        let folds = crate::corpus::stratified_fold_indices(labels, k, seed)?;
        let sets = [
            self.word_grams.clone(),
            self.pos_grams.clone(),
            self.syn_grams.clone(),
        ];
        let mut out = vec![[0.0; 4]; items.len()];
        for f in 0..k {
            let (tr_items, tr_labels): (Vec<&HeadlineItems>, Vec<Label>) = (0..items.len())
                .filter(|&i| folds[i] != f)
                .map(|i| (items[i], labels[i]))
                .unzip();
            let [subject, word, pos, syn] =
                fit_models(&tr_items, &tr_labels, &sets, self.subject.smoothing_alpha)?;
            let inner = NbScorers {
                word_grams: sets[0].clone(),
                pos_grams: sets[1].clone(),
                syn_grams: sets[2].clone(),
                subject,
                word,
                pos,
                syn,
            };
            for i in (0..items.len()).filter(|&i| folds[i] == f) {
                out[i] = inner.scores(items[i]);
            }
        }
        Ok(out)
    }
}

pub fn assemble(m: &HeadlineMeasures, nb: [f64; 4]) -> FeatureVector {
    FeatureVector([
        m.words as f64,
        m.avg_word_chars,
        m.stop_to_content_ratio(),
        m.max_dependency_distance as f64,
        f64::from(u8::from(m.starts_with_cardinal)),
        m.unusual_punct as f64,
        m.contractions as f64,
        f64::from(u8::from(m.hyperbolic > 0)),
        m.phrases as f64,
        m.slang as f64,
        m.determiners as f64,
        nb[0],
        nb[1],
        nb[2],
        nb[3],
    ])
}

pub fn extract_features(
    h: &AnnotatedHeadline,
    lex: &LexiconMatcher,
    nb: &NbScorers,
) -> FeatureVector {
    assemble(&headline_measures(h, lex), nb.scores(&HeadlineItems::of(h)))
}
