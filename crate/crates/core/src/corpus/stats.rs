use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Label, LabeledHeadline, Lexicons};
use crate::annotation::AnnotatedHeadline;
use crate::classifier::features::{headline_measures, LexiconMatcher};
use crate::error::{Error, Result};
use crate::ngrams::extract_subject;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassStats {
    pub count: usize,
    pub mean_headline_words: f64,
    pub mean_word_chars: f64,
    /// Stop words over all words of the class.
    pub stopword_fraction: f64,
    pub contraction_headline_fraction: f64,
    pub hyperbolic_headline_fraction: f64,
    pub determiner_headline_fraction: f64,
    /// Longest dependency per headline -> number of headlines.
    pub dependency_distance_histogram: BTreeMap<usize, usize>,
    /// Tag -> share of all tokens of the class.
    pub pos_tag_distribution: BTreeMap<String, f64>,
    pub mean_tree_height: f64,
    /// Most frequent subject words with their share of headlines.
    pub top_subjects: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub clickbait: Option<ClassStats>,
    pub non_clickbait: Option<ClassStats>,
}

const TOP_SUBJECTS: usize = 10;

pub fn compute_corpus_stats(
    corpus: &[LabeledHeadline],
    annotations: &[AnnotatedHeadline],
    lexicons: &Lexicons,
) -> Result<CorpusStats> {
    let by_id: HashMap<u64, &AnnotatedHeadline> = annotations.iter().map(|a| (a.id, a)).collect();
    if by_id.len() != corpus.len() || annotations.len() != corpus.len() {
        return Err(Error::Data(format!(
            "{} annotations for {} headlines",
            annotations.len(),
            corpus.len()
        )));
    }
    let mut pairs = Vec::with_capacity(corpus.len());
    for h in corpus {
        let a = by_id
            .get(&h.id)
            .ok_or_else(|| Error::Data(format!("no annotation for headline id {}", h.id)))?;
        pairs.push((h.label, *a));
    }
    let lex = LexiconMatcher::new(lexicons);
    let class = |label: Label| {
        let members: Vec<&AnnotatedHeadline> = pairs
            .iter()
            .filter(|(l, _)| *l == label)
            .map(|(_, a)| *a)
            .collect();
        class_stats(&members, &lex)
    };
    Ok(CorpusStats {
        clickbait: class(Label::Clickbait),
        non_clickbait: class(Label::NonClickbait),
    })
}

fn class_stats(members: &[&AnnotatedHeadline], lex: &LexiconMatcher) -> Option<ClassStats> {
    if members.is_empty() {
        return None;
    }
    let n = members.len() as f64;
    let frac = |c: usize| c as f64 / n;
    let mut words = 0usize;
    let mut stop = 0usize;
    let mut sum_chars = 0.0;
    let (mut contr, mut hyper, mut det) = (0usize, 0usize, 0usize);
    let mut hist = BTreeMap::new();
    let mut tags: BTreeMap<String, usize> = BTreeMap::new();
    let mut n_tokens = 0usize;
    let mut height = 0usize;
    let mut subjects: HashMap<String, usize> = HashMap::new();
    for a in members {
        let m = headline_measures(a, lex);
        words += m.words;
        stop += m.stopwords;
        sum_chars += m.avg_word_chars;
        contr += usize::from(m.contractions > 0);
        hyper += usize::from(m.hyperbolic > 0);
        det += usize::from(m.determiners > 0);
        *hist.entry(m.max_dependency_distance).or_insert(0) += 1;
        for t in &a.tokens {
            *tags.entry(t.tag.as_str().to_string()).or_insert(0) += 1;
        }
        n_tokens += a.tokens.len();
        height += a.tree_height;
        *subjects.entry(extract_subject(a)).or_insert(0) += 1;
    }
    let mut top: Vec<(String, usize)> = subjects.into_iter().collect();
    top.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    top.truncate(TOP_SUBJECTS);
    Some(ClassStats {
        count: members.len(),
        mean_headline_words: words as f64 / n,
        mean_word_chars: sum_chars / n,
        stopword_fraction: if words == 0 {
            0.0
        } else {
            stop as f64 / words as f64
        },
        contraction_headline_fraction: frac(contr),
        hyperbolic_headline_fraction: frac(hyper),
        determiner_headline_fraction: frac(det),
        dependency_distance_histogram: hist,
        pos_tag_distribution: if n_tokens == 0 {
            BTreeMap::new()
        } else {
            tags.into_iter()
                .map(|(t, c)| (t, c as f64 / n_tokens as f64))
                .collect()
        },
        mean_tree_height: height as f64 / n,
        top_subjects: top.into_iter().map(|(s, c)| (s, frac(c))).collect(),
    })
}

impl CorpusStats {
    pub fn class(&self, label: Label) -> Option<&ClassStats> {
        match label {
            Label::Clickbait => self.clickbait.as_ref(),
            Label::NonClickbait => self.non_clickbait.as_ref(),
        }
    }

    /// (measure, clickbait value, news value); one row per measure, shared by
    /// the text table and the CSV so both carry identical numbers.
    pub fn rows(&self) -> Vec<(String, Option<f64>, Option<f64>)> {
        let mut names: Vec<String> = vec![
            "count".into(),
            "mean_headline_words".into(),
            "mean_word_chars".into(),
            "stopword_fraction".into(),
            "contraction_headline_fraction".into(),
            "hyperbolic_headline_fraction".into(),
            "determiner_headline_fraction".into(),
            "mean_tree_height".into(),
        ];
        let mut dists = std::collections::BTreeSet::new();
        let mut tags = std::collections::BTreeSet::new();
        for c in [&self.clickbait, &self.non_clickbait].into_iter().flatten() {
            dists.extend(c.dependency_distance_histogram.keys().copied());
            tags.extend(c.pos_tag_distribution.keys().cloned());
        }
        names.extend(dists.iter().map(|d| format!("dependency_distance[{d}]")));
        names.extend(tags.iter().map(|t| format!("pos_tag[{t}]")));
        names
            .into_iter()
            .map(|name| {
                let v = |c: &Option<ClassStats>| c.as_ref().map(|c| value(c, &name));
                let (a, b) = (v(&self.clickbait), v(&self.non_clickbait));
                (name, a, b)
            })
            .collect()
    }

    /// The four expected directions: longer headlines, shorter words, more stop
    /// words and more contractions in clickbait. None when a class is missing.
    pub fn directions(&self) -> Vec<(&'static str, Option<bool>)> {
        let both = self.clickbait.as_ref().zip(self.non_clickbait.as_ref());
        let check = |f: fn(&ClassStats, &ClassStats) -> bool| both.map(|(c, n)| f(c, n));
        vec![
            (
                "clickbait headlines are longer",
                check(|c, n| c.mean_headline_words > n.mean_headline_words),
            ),
            (
                "clickbait words are shorter",
                check(|c, n| c.mean_word_chars < n.mean_word_chars),
            ),
            (
                "clickbait uses more stop words",
                check(|c, n| c.stopword_fraction > n.stopword_fraction),
            ),
            (
                "clickbait uses more contractions",
                check(|c, n| c.contraction_headline_fraction > n.contraction_headline_fraction),
            ),
        ]
    }
}

fn value(c: &ClassStats, name: &str) -> f64 {
    match name {
        "count" => c.count as f64,
        "mean_headline_words" => c.mean_headline_words,
        "mean_word_chars" => c.mean_word_chars,
        "stopword_fraction" => c.stopword_fraction,
        "contraction_headline_fraction" => c.contraction_headline_fraction,
        "hyperbolic_headline_fraction" => c.hyperbolic_headline_fraction,
        "determiner_headline_fraction" => c.determiner_headline_fraction,
        "mean_tree_height" => c.mean_tree_height,
        _ => {
            if let Some(d) = name
                .strip_prefix("dependency_distance[")
                .and_then(|s| s.strip_suffix(']'))
            {
                let d: usize = d.parse().unwrap_or(usize::MAX);
                *c.dependency_distance_histogram.get(&d).unwrap_or(&0) as f64
            } else if let Some(t) = name
                .strip_prefix("pos_tag[")
                .and_then(|s| s.strip_suffix(']'))
            {
                *c.pos_tag_distribution.get(t).unwrap_or(&0.0)
            } else {
                f64::NAN
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn birds_fly_single_class() {
        let corpus = vec![LabeledHeadline {
            id: 0,
            text: "Birds fly".into(),
            label: Label::NonClickbait,
            source: None,
        }];
        let ann = vec![AnnotatedHeadline::from_gold(
            0,
            "Birds fly",
            &["NNS", "VBP"],
            &[Some(1), None],
            &["nsubj", "root"],
        )
        .unwrap()];
        let s = compute_corpus_stats(&corpus, &ann, &Lexicons::bundled()).unwrap();
        assert!(s.clickbait.is_none());
        let n = s.non_clickbait.as_ref().unwrap();
        assert_eq!(n.mean_headline_words, 2.0);
        assert_eq!(n.stopword_fraction, 0.0);
        assert!((n.pos_tag_distribution.values().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(s.directions().iter().all(|(_, d)| d.is_none()));
        let rows = s.rows();
        assert!(rows.iter().all(|r| r.1.is_none()));
    }

    #[test]
    fn misaligned_ids_fail() {
        let corpus = vec![LabeledHeadline {
            id: 7,
            text: "Birds fly".into(),
            label: Label::NonClickbait,
            source: None,
        }];
        let ann = vec![AnnotatedHeadline::from_gold(
            0,
            "Birds fly",
            &["NNS", "VBP"],
            &[Some(1), None],
            &["nsubj", "root"],
        )
        .unwrap()];
        assert!(compute_corpus_stats(&corpus, &ann, &Lexicons::bundled()).is_err());
    }
}
