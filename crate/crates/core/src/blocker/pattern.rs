use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::annotation::{AnnotatedHeadline, PennTag, QuoteSide, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternToken {
    Literal(String),
    Tag(PennTag),
    Number,
    Quote,
}

impl fmt::Display for PatternToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternToken::Literal(w) => f.write_str(w),
            PatternToken::Tag(t) => f.write_str(t.as_str()),
            PatternToken::Number => f.write_str("<D>"),
            PatternToken::Quote => f.write_str("<QUOTE>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct HeadlinePattern {
    pub items: Vec<PatternToken>,
}

impl HeadlinePattern {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn strings(&self) -> Vec<String> {
        self.items.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for HeadlinePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.strings().join(" "))
    }
}

fn quote_family(s: &str) -> u8 {
    match s {
        "\"" | "``" | "''" | "\u{201c}" | "\u{201d}" => 2,
        _ => 1,
    }
}

/// Rewrite a headline as literals, tags, `<D>` and `<QUOTE>`:
/// quoted spans collapse to `<QUOTE>`, numbers become `<D>`, common words stay
/// as lowercase literals, other content words become their tag, remaining
/// closed-class words stay literal. Punctuation carries no pattern token.
pub fn normalize_pattern(h: &AnnotatedHeadline, top200: &HashSet<String>) -> HeadlinePattern {
    let toks = &h.tokens;
    // Pair each opening quote with the next closing quote of the same family.
    let mut span_end = vec![None; toks.len()];
    let mut i = 0;
    while i < toks.len() {
        if let TokenKind::Quote(QuoteSide::Open) = toks[i].token.kind {
            let fam = quote_family(&toks[i].token.surface);
            let close = (i + 1..toks.len()).find(|&j| {
                toks[j].token.kind == TokenKind::Quote(QuoteSide::Close)
                    && quote_family(&toks[j].token.surface) == fam
            });
            if let Some(j) = close {
                span_end[i] = Some(j);
                i = j + 1;
                continue;
            }
        }
        i += 1;
    }
    let mut items = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if let Some(j) = span_end[i] {
            items.push(PatternToken::Quote);
            i = j + 1;
            continue;
        }
        let t = &toks[i];
        let lower = t.token.surface.to_lowercase().replace('\u{2019}', "'");
        let item = match t.token.kind {
            TokenKind::Quote(_) => Some(PatternToken::Literal(t.token.surface.clone())),
            TokenKind::Punct => None,
            TokenKind::Number => Some(PatternToken::Number),
            TokenKind::Word if t.tag == PennTag::Cd => Some(PatternToken::Number),
            TokenKind::Word if top200.contains(&lower) => Some(PatternToken::Literal(lower)),
            TokenKind::Word if t.tag.is_content() => Some(PatternToken::Tag(t.tag)),
            TokenKind::Word => Some(PatternToken::Literal(lower)),
        };
        items.extend(item);
        i += 1;
    }
    HeadlinePattern { items }
}

/// Levenshtein distance over pattern tokens with unit costs.
pub fn word_edit_distance(p: &HeadlinePattern, q: &HeadlinePattern) -> usize {
    let (a, b) = (&p.items, &q.items);
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// 1 - dist / max(|p|, |q|); two empty patterns are identical.
pub fn pattern_similarity(p: &HeadlinePattern, q: &HeadlinePattern) -> f64 {
    let m = p.len().max(q.len());
    if m == 0 {
        return 1.0;
    }
    1.0 - word_edit_distance(p, q) as f64 / m as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &[&str]) -> HeadlinePattern {
        HeadlinePattern {
            items: s
                .iter()
                .map(|w| PatternToken::Literal(w.to_string()))
                .collect(),
        }
    }

    #[test]
    fn distance_basics() {
        let p = pat(&["which", "jj", "q", "character", "are", "you"]);
        let q = pat(&["which", "q", "character", "are", "you"]);
        assert_eq!(word_edit_distance(&p, &p), 0);
        assert_eq!(word_edit_distance(&p, &q), 1);
        assert_eq!(word_edit_distance(&p, &HeadlinePattern::default()), 6);
        assert!((pattern_similarity(&p, &q) - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn fifteen_things() {
        let h = AnnotatedHeadline::from_gold(
            0,
            "15 Things",
            &["CD", "NNS"],
            &[Some(1), None],
            &["nummod", "root"],
        )
        .unwrap();
        let top: HashSet<String> = crate::corpus::Lexicons::bundled()
            .top200
            .entries
            .into_iter()
            .collect();
        assert_eq!(normalize_pattern(&h, &top).to_string(), "<D> NNS");
    }
}
