//! Word, POS and syntactic N-grams, frequency pruning and subject extraction.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::annotation::AnnotatedHeadline;
use crate::corpus::Label;
use crate::error::{Error, Result};

pub const NO_SUBJECT: &str = "<NO_SUBJECT>";
pub const MAX_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NGramKind {
    Word,
    Pos,
    Syntactic,
}

impl NGramKind {
    pub fn min_len(self) -> usize {
        match self {
            NGramKind::Syntactic => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NGram {
    pub kind: NGramKind,
    pub items: Vec<String>,
}

impl NGram {
    pub fn new<S: Into<String>>(kind: NGramKind, items: impl IntoIterator<Item = S>) -> NGram {
        NGram {
            kind,
            items: items.into_iter().map(Into::into).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Flat string form used as a Naive Bayes item.
    pub fn key(&self) -> String {
        self.items.join(" ")
    }

    fn prefix(&self) -> NGram {
        NGram {
            kind: self.kind,
            items: self.items[..self.len() - 1].to_vec(),
        }
    }

    fn suffix(&self) -> NGram {
        NGram {
            kind: self.kind,
            items: self.items[1..].to_vec(),
        }
    }
}

fn contiguous(kind: NGramKind, seq: &[String], n_max: usize) -> Vec<NGram> {
    let mut out = Vec::new();
    for n in 1..=n_max.min(seq.len()) {
        for w in seq.windows(n) {
            out.push(NGram {
                kind,
                items: w.to_vec(),
            });
        }
    }
    out
}

/// All contiguous 1..=n_max sequences of normalized word tokens. Stop words stay.
pub fn extract_word_ngrams(h: &AnnotatedHeadline, n_max: usize) -> Vec<NGram> {
    let words: Vec<String> = h
        .tokens
        .iter()
        .filter(|t| t.token.is_word())
        .map(|t| t.token.normalized.clone())
        .collect();
    contiguous(NGramKind::Word, &words, n_max)
}

/// Contiguous tag sequences over the word tokens.
pub fn extract_pos_ngrams(h: &AnnotatedHeadline, n_max: usize) -> Vec<NGram> {
    let tags: Vec<String> = h
        .tokens
        .iter()
        .filter(|t| t.token.is_word())
        .map(|t| t.tag.as_str().to_string())
        .collect();
    contiguous(NGramKind::Pos, &tags, n_max)
}

/// Relation-label sequences along every downward path of n_min..=n_max arcs.
/// Arcs into punctuation and quote tokens are not part of any path.
pub fn extract_syntactic_ngrams(h: &AnnotatedHeadline, n_min: usize, n_max: usize) -> Vec<NGram> {
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); h.len()];
    for arc in &h.arcs {
        if let Some(p) = arc.head {
            if h.tokens[arc.dependent].token.is_word() {
                kids[p].push(arc.dependent);
            }
        }
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    for src in 0..h.len() {
        walk(h, &kids, src, n_min.max(1), n_max, &mut path, &mut out);
    }
    out
}

fn walk(
    h: &AnnotatedHeadline,
    kids: &[Vec<usize>],
    node: usize,
    n_min: usize,
    n_max: usize,
    path: &mut Vec<String>,
    out: &mut Vec<NGram>,
) {
    if path.len() >= n_max {
        return;
    }
    for &c in &kids[node] {
        path.push(h.arcs[c].relation.clone());
        if path.len() >= n_min {
            out.push(NGram {
                kind: NGramKind::Syntactic,
                items: path.clone(),
            });
        }
        walk(h, kids, c, n_min, n_max, path, out);
        path.pop();
    }
}

/// Lowercased dependent of the leftmost nsubj arc.
pub fn extract_subject(h: &AnnotatedHeadline) -> String {
    h.arcs
        .iter()
        .filter(|a| a.relation == "nsubj")
        .map(|a| a.dependent)
        .min()
        .map(|i| h.tokens[i].token.surface.to_lowercase())
        .unwrap_or_else(|| NO_SUBJECT.to_string())
}

pub fn extract(h: &AnnotatedHeadline, kind: NGramKind) -> Vec<NGram> {
    match kind {
        NGramKind::Word => extract_word_ngrams(h, MAX_N),
        NGramKind::Pos => extract_pos_ngrams(h, MAX_N),
        NGramKind::Syntactic => extract_syntactic_ngrams(h, 2, MAX_N),
    }
}

/// Stored as a list because JSON object keys must be strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RawPruned", from = "RawPruned")]
pub struct PrunedNGramSet {
    pub kind: NGramKind,
    pub min_doc_freq: u32,
    /// Document frequency per class, indexed by `Label::index`.
    pub grams: BTreeMap<NGram, [u32; 2]>,
}

impl PrunedNGramSet {
    pub fn contains(&self, g: &NGram) -> bool {
        self.grams.contains_key(g)
    }

    pub fn len(&self) -> usize {
        self.grams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grams.is_empty()
    }

    /// The retained grams of one headline, as Naive Bayes items (multiset kept).
    pub fn filter_keys(&self, grams: &[NGram]) -> Vec<String> {
        grams
            .iter()
            .filter(|g| self.contains(g))
            .map(NGram::key)
            .collect()
    }
}

/// Levelwise pruning: a length-n gram is only counted when both of its
/// length-(n-1) contiguous sub-grams survived the previous level.
pub fn prune(
    kind: NGramKind,
    docs: &[(Vec<NGram>, Label)],
    min_doc_freq: u32,
) -> Result<PrunedNGramSet> {
    if min_doc_freq < 1 {
        return Err(Error::InvalidArgument(
            "min_doc_freq must be at least 1".into(),
        ));
    }
    let distinct: Vec<(HashSet<&NGram>, Label)> = docs
        .iter()
        .map(|(g, l)| (g.iter().filter(|g| g.kind == kind).collect(), *l))
        .collect();
    let mut grams = BTreeMap::new();
    let mut prev: HashSet<NGram> = HashSet::new();
    for n in kind.min_len()..=MAX_N {
        let mut df: HashMap<&NGram, [u32; 2]> = HashMap::new();
        for (set, label) in &distinct {
            for g in set.iter().filter(|g| g.len() == n) {
                if n > kind.min_len() && !(prev.contains(&g.prefix()) && prev.contains(&g.suffix()))
                {
                    continue;
                }
                df.entry(*g).or_default()[label.index()] += 1;
            }
        }
        let kept: HashSet<NGram> = df
            .iter()
            .filter(|(_, c)| c[0] + c[1] >= min_doc_freq)
            .map(|(g, _)| (*g).clone())
            .collect();
        for g in &kept {
            grams.insert(g.clone(), df[g]);
        }
        if kept.is_empty() {
            break;
        }
        prev = kept;
    }
    Ok(PrunedNGramSet {
        kind,
        min_doc_freq,
        grams,
    })
}

#[derive(Serialize, Deserialize)]
struct RawPruned {
    kind: NGramKind,
    min_doc_freq: u32,
    grams: Vec<(Vec<String>, [u32; 2])>,
}

impl From<PrunedNGramSet> for RawPruned {
    fn from(p: PrunedNGramSet) -> Self {
        RawPruned {
            kind: p.kind,
            min_doc_freq: p.min_doc_freq,
            grams: p.grams.into_iter().map(|(g, c)| (g.items, c)).collect(),
        }
    }
}

impl From<RawPruned> for PrunedNGramSet {
    fn from(r: RawPruned) -> Self {
        let kind = r.kind;
        let grams = r
            .grams
            .into_iter()
            .map(|(items, c)| (NGram { kind, items }, c))
            .collect();
        PrunedNGramSet {
            kind,
            min_doc_freq: r.min_doc_freq,
            grams,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn headline(
        words: &[&str],
        tags: &[&str],
        heads: &[Option<usize>],
        rels: &[&str],
    ) -> AnnotatedHeadline {
        AnnotatedHeadline::from_gold(0, &words.join(" "), tags, heads, rels).unwrap()
    }

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn word_four_gram() {
        let h = headline(
            &["can", "we", "guess", "your", "zodiac"],
            &["MD", "PRP", "VB", "PRP$", "NN"],
            &[Some(2), Some(2), None, Some(4), Some(2)],
            &["aux", "nsubj", "root", "nmod:poss", "dobj"],
        );
        let g = extract_word_ngrams(&h, 4);
        assert!(g.contains(&NGram::new(NGramKind::Word, ["can", "we", "guess", "your"])));
        assert_eq!(g.len(), 5 + 4 + 3 + 2);
        let p = extract_pos_ngrams(&h, 1);
        assert_eq!(p.len(), 5);
        assert_eq!(extract_subject(&h), "we");
    }

    #[test]
    fn birds_fly() {
        let h = headline(
            &["Birds", "fly"],
            &["NNS", "VBP"],
            &[Some(1), None],
            &["nsubj", "root"],
        );
        assert_eq!(extract_subject(&h), "birds");
        assert!(extract_syntactic_ngrams(&h, 2, 4).is_empty());
        assert_eq!(extract_word_ngrams(&h, 4).len(), 3);
    }

    #[test]
    fn no_subject() {
        let h = headline(
            &["15", "Things"],
            &["CD", "NNS"],
            &[Some(1), None],
            &["nummod", "root"],
        );
        assert_eq!(extract_subject(&h), NO_SUBJECT);
    }

    #[test]
    fn syntactic_paths() {
        // root -> a(dobj) -> b(det); root -> c(nsubj)
        let h = headline(
            &["w", "x", "y", "z"],
            &["WDT", "NN", "VBP", "PRP"],
            &[Some(1), Some(2), None, Some(2)],
            &["det", "dobj", "root", "nsubj"],
        );
        let g = extract_syntactic_ngrams(&h, 2, 4);
        assert_eq!(g, vec![NGram::new(NGramKind::Syntactic, ["dobj", "det"])]);
    }

    #[test]
    fn prune_respects_subsequences() {
        let doc = |w: &[&str], l| (contiguous(NGramKind::Word, &s(w), 4), l);
        let docs = vec![
            doc(&["a", "b", "c"], Label::Clickbait),
            doc(&["a", "b", "c"], Label::NonClickbait),
            doc(&["a", "x", "c"], Label::Clickbait),
        ];
        let p = prune(NGramKind::Word, &docs, 2).unwrap();
        assert!(p.contains(&NGram::new(NGramKind::Word, ["a", "b", "c"])));
        assert_eq!(p.grams[&NGram::new(NGramKind::Word, ["a"])], [2, 1]);
        assert!(!p.contains(&NGram::new(NGramKind::Word, ["x"])));
        assert!(prune(NGramKind::Word, &docs, 0).is_err());
        let all = prune(NGramKind::Word, &docs, 1).unwrap();
        let distinct: std::collections::BTreeSet<_> =
            docs.iter().flat_map(|d| d.0.iter().cloned()).collect();
        assert_eq!(all.len(), distinct.len());
    }

    #[test]
    fn serde_keeps_kinds() {
        let docs = vec![(
            contiguous(NGramKind::Pos, &s(&["DT", "NN"]), 4),
            Label::Clickbait,
        )];
        let p = prune(NGramKind::Pos, &docs, 1).unwrap();
        assert_eq!(p.len(), 3);
        let back: PrunedNGramSet =
            serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
