//! Averaged-perceptron part-of-speech tagger.
//!
//! Punctuation, quotation marks and numbers get fixed tags from their token
//! kind; the perceptron handles word tokens only. Training sees every
//! treebank sentence in three casings (as written, Title Case, Sentence case)
//! so that the first tagging pass works on raw headlines.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::conllu::write_conllu;
use super::perceptron::{argmax, Trainer, Weights};
use super::tokenizer::{QuoteSide, Token, TokenKind};
use super::{AnnotatedHeadline, PennTag};
use crate::error::{Error, Result};
use crate::util::sha256_hex;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaggerParams {
    pub epochs: usize,
    pub seed: u64,
}

impl Default for TaggerParams {
    fn default() -> Self {
        TaggerParams { epochs: 5, seed: 7 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggerModel {
    pub version: u32,
    pub corpus_hash: String,
    pub epochs: usize,
    pub seed: u64,
    /// Frequent, unambiguous forms bypass the perceptron.
    pub tagdict: BTreeMap<String, PennTag>,
    pub weights: Weights,
}

const N_TAGS: usize = 45;

#[derive(Clone, Copy)]
enum Casing {
    AsIs,
    Title,
    Sentence,
}

fn recase(form: &str, casing: Casing, first: bool) -> String {
    let cap = |s: &str| -> String {
        let mut c = s.chars();
        match c.next() {
            Some(f) => f.to_uppercase().chain(c).collect(),
            None => String::new(),
        }
    };
    let lower = form.to_lowercase();
    let is_suffix = lower == "n't" || lower.starts_with('\'');
    match casing {
        Casing::AsIs => form.to_string(),
        Casing::Title if !is_suffix => form.split('-').map(cap).collect::<Vec<_>>().join("-"),
        Casing::Sentence if first && !is_suffix => cap(form),
        _ => form.to_string(),
    }
}

/// Tag forced by token kind, or `None` for words.
pub fn fixed_tag(token: &Token) -> Option<PennTag> {
    match token.kind {
        TokenKind::Quote(QuoteSide::Open) => Some(PennTag::OpenQuote),
        TokenKind::Quote(QuoteSide::Close) => Some(PennTag::CloseQuote),
        TokenKind::Number => Some(PennTag::Cd),
        TokenKind::Punct => Some(punct_tag(&token.surface)),
        TokenKind::Word => None,
    }
}

fn punct_tag(s: &str) -> PennTag {
    match s {
        "," => PennTag::Comma,
        "(" | "[" | "{" => PennTag::Lrb,
        ")" | "]" | "}" => PennTag::Rrb,
        "$" => PennTag::Dollar,
        "#" => PennTag::Hash,
        "..." | "\u{2026}" | ":" | ";" | "-" | "--" | "\u{2013}" | "\u{2014}" => PennTag::Colon,
        s if !s.is_empty() && s.chars().all(|c| matches!(c, '.' | '!' | '?')) => PennTag::Period,
        _ => PennTag::Sym,
    }
}

fn shape(w: &str) -> String {
    let mut out = String::new();
    let mut last = ' ';
    for c in w.chars() {
        let k = if c.is_uppercase() {
            'X'
        } else if c.is_lowercase() {
            'x'
        } else if c.is_ascii_digit() {
            'd'
        } else {
            c
        };
        if k != last {
            out.push(k);
            last = k;
        }
    }
    out
}

fn suffix(w: &str, n: usize) -> &str {
    let start = w
        .char_indices()
        .rev()
        .nth(n.saturating_sub(1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    &w[start..]
}

fn features(
    forms: &[String],
    lowers: &[String],
    i: usize,
    p1: &str,
    p2: &str,
    out: &mut Vec<String>,
) {
    out.clear();
    let w = forms[i].as_str();
    let lw = lowers[i].as_str();
    let get = |j: isize| -> &str {
        if j < 0 {
            "-START-"
        } else {
            lowers
                .get(j as usize)
                .map(|s| s.as_str())
                .unwrap_or("-END-")
        }
    };
    let i = i as isize;
    out.push("b".into());
    out.push(format!("w={w}"));
    out.push(format!("lw={lw}"));
    out.push(format!("s1={}", suffix(lw, 1)));
    out.push(format!("s2={}", suffix(lw, 2)));
    out.push(format!("s3={}", suffix(lw, 3)));
    out.push(format!("pre1={}", lw.chars().next().unwrap_or(' ')));
    out.push(format!("shape={}", shape(w)));
    out.push(format!("pos0shape={}_{}", i == 0, shape(w)));
    out.push(format!("pt={p1}"));
    out.push(format!("pt2={p2}_{p1}"));
    out.push(format!("ptw={p1}_{lw}"));
    out.push(format!("pw={}", get(i - 1)));
    out.push(format!("ps3={}", suffix(get(i - 1), 3)));
    out.push(format!("p2w={}", get(i - 2)));
    out.push(format!("nw={}", get(i + 1)));
    out.push(format!("ns3={}", suffix(get(i + 1), 3)));
    out.push(format!("n2w={}", get(i + 2)));
    out.push(format!(
        "nshape={}",
        forms
            .get((i + 1) as usize)
            .map(|f| shape(f))
            .unwrap_or_default()
    ));
    if w.contains('-') {
        out.push("hyph".into());
    }
}

fn allowed_for_word(class: usize) -> bool {
    PennTag::from_index(class).is_some_and(|t| !t.is_punct())
}

impl TaggerModel {
    pub fn train(treebank: &[AnnotatedHeadline], params: &TaggerParams) -> Result<Self> {
        if treebank.is_empty() {
            return Err(Error::Training("empty tagger training corpus".into()));
        }
        let corpus_hash = sha256_hex(write_conllu(treebank).as_bytes());
        let mut examples: Vec<(Vec<Token>, Vec<PennTag>)> = Vec::new();
        for h in treebank {
            for casing in [Casing::AsIs, Casing::Title, Casing::Sentence] {
                let toks: Vec<Token> = h
                    .tokens
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        let mut tok = t.token.clone();
                        tok.surface = recase(&tok.surface, casing, i == 0);
                        tok.normalized = tok.surface.clone();
                        tok
                    })
                    .collect();
                examples.push((toks, h.tags()));
            }
        }
        let tagdict = build_tagdict(&examples);

        let mut trainer = Trainer::new(N_TAGS);
        let mut order: Vec<usize> = (0..examples.len()).collect();
        let mut feats = Vec::new();
        let mut scores = Vec::new();
        for epoch in 0..params.epochs {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(epoch as u64));
            order.shuffle(&mut rng);
            for &ei in &order {
                let (toks, gold) = &examples[ei];
                let forms: Vec<String> = toks.iter().map(|t| t.surface.clone()).collect();
                let lowers: Vec<String> = forms.iter().map(|f| f.to_lowercase()).collect();
                let mut prev = ["-START-", "-START2-"];
                let mut guesses: Vec<PennTag> = Vec::with_capacity(toks.len());
                for i in 0..toks.len() {
                    let guess = if let Some(t) = fixed_tag(&toks[i]) {
                        t
                    } else if let Some(&t) = tagdict.get(&forms[i]) {
                        t
                    } else {
                        features(&forms, &lowers, i, prev[0], prev[1], &mut feats);
                        trainer.scores(&feats, &mut scores);
                        let g = argmax(&scores, allowed_for_word).unwrap_or(PennTag::Nn.index());
                        trainer.update(gold[i].index(), g, &feats);
                        trainer.tick();
                        PennTag::from_index(g).unwrap_or(PennTag::Nn)
                    };
                    guesses.push(guess);
                    prev = [guesses[i].as_str(), prev[0]];
                }
            }
        }
        Ok(TaggerModel {
            version: 1,
            corpus_hash,
            epochs: params.epochs,
            seed: params.seed,
            tagdict,
            weights: trainer.finish(),
        })
    }

    /// One tag per token, reading each token's form through `form`.
    pub fn tag_forms(&self, tokens: &[Token], form: impl Fn(&Token) -> &str) -> Vec<PennTag> {
        let forms: Vec<String> = tokens.iter().map(|t| form(t).to_string()).collect();
        let lowers: Vec<String> = forms.iter().map(|f| f.to_lowercase()).collect();
        let mut out: Vec<PennTag> = Vec::with_capacity(tokens.len());
        let mut feats = Vec::new();
        let mut scores = Vec::new();
        for i in 0..tokens.len() {
            let p1 = if i >= 1 {
                out[i - 1].as_str()
            } else {
                "-START-"
            };
            let p2 = if i >= 2 {
                out[i - 2].as_str()
            } else if i == 1 {
                "-START-"
            } else {
                "-START2-"
            };
            let tag = if let Some(t) = fixed_tag(&tokens[i]) {
                t
            } else if let Some(&t) = self.tagdict.get(&forms[i]) {
                t
            } else {
                features(&forms, &lowers, i, p1, p2, &mut feats);
                self.weights.scores(&feats, &mut scores);
                argmax(&scores, allowed_for_word)
                    .and_then(PennTag::from_index)
                    .unwrap_or(PennTag::Nn)
            };
            out.push(tag);
        }
        out
    }

    /// Token-level accuracy against gold tags, using the forms as written.
    pub fn accuracy(&self, gold: &[AnnotatedHeadline]) -> f64 {
        let (mut right, mut total) = (0usize, 0usize);
        for h in gold {
            let toks: Vec<Token> = h.tokens.iter().map(|t| t.token.clone()).collect();
            let pred = self.tag_forms(&toks, |t| t.surface.as_str());
            for (p, g) in pred.iter().zip(&h.tokens) {
                total += 1;
                right += usize::from(*p == g.tag);
            }
        }
        if total == 0 {
            0.0
        } else {
            right as f64 / total as f64
        }
    }
}

fn build_tagdict(examples: &[(Vec<Token>, Vec<PennTag>)]) -> BTreeMap<String, PennTag> {
    let mut counts: HashMap<&str, HashMap<PennTag, usize>> = HashMap::new();
    for (toks, tags) in examples {
        for (t, g) in toks.iter().zip(tags) {
            if t.kind == TokenKind::Word {
                *counts
                    .entry(t.surface.as_str())
                    .or_default()
                    .entry(*g)
                    .or_default() += 1;
            }
        }
    }
    let mut dict = BTreeMap::new();
    for (form, by_tag) in counts {
        let total: usize = by_tag.values().sum();
        let (tag, n) = by_tag
            .iter()
            .max_by_key(|(t, n)| (**n, std::cmp::Reverse(t.index())))
            .map(|(t, n)| (*t, *n))
            .unwrap();
        if total >= 20 && n as f64 / total as f64 >= 0.99 {
            dict.insert(form.to_string(), tag);
        }
    }
    dict
}
