//! Rule-based headline tokenizer.
//!
//! Splits on whitespace, then walks each chunk: words (with internal hyphens,
//! abbreviation periods and name apostrophes), numbers (`6.4`, `8,000`),
//! quotation marks, contraction suffixes and runs of other punctuation.

use serde::{Deserialize, Serialize};

/// Suffixes split off as their own token. `n't` is handled separately.
const APOS_SUFFIXES: [&str; 6] = ["s", "re", "ll", "ve", "d", "m"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuoteSide {
    Open,
    Close,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    Word,
    Number,
    Punct,
    Quote(QuoteSide),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub normalized: String,
    pub index: usize,
    pub is_contraction_part: bool,
    pub kind: TokenKind,
}

impl Token {
    /// Word tokens are everything except punctuation and quotation marks.
    pub fn is_word(&self) -> bool {
        matches!(self.kind, TokenKind::Word | TokenKind::Number)
    }

    /// The split-off half of a contraction: `n't`, `'re`, `'s`, ...
    pub fn is_contraction_suffix(&self) -> bool {
        self.is_contraction_part && is_suffix_form(&self.surface)
    }
}

fn is_suffix_form(s: &str) -> bool {
    let s = s.to_lowercase().replace('\u{2019}', "'");
    s == "n't"
        || s.strip_prefix('\'')
            .is_some_and(|rest| APOS_SUFFIXES.contains(&rest))
}

pub(crate) fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

pub(crate) fn is_quote_char(c: char) -> bool {
    matches!(
        c,
        '"' | '\''
            | '`'
            | '\u{2018}'
            | '\u{2019}'
            | '\u{201C}'
            | '\u{201D}'
            | '\u{00AB}'
            | '\u{00BB}'
    )
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Raw {
    Word,
    Number,
    Punct,
    Quote,
    Suffix,
}

pub fn tokenize(text: &str) -> Vec<Token> {
    let mut raw: Vec<(String, Raw)> = Vec::new();
    for chunk in text.split_whitespace() {
        split_chunk(chunk, &mut raw);
    }

    let mut tokens: Vec<Token> = Vec::with_capacity(raw.len());
    for (surface, r) in raw {
        let kind = match r {
            Raw::Word | Raw::Suffix => TokenKind::Word,
            Raw::Number => TokenKind::Number,
            Raw::Punct => TokenKind::Punct,
            Raw::Quote => TokenKind::Quote(QuoteSide::Open),
        };
        if r == Raw::Suffix {
            // both halves of the contraction are flagged
            if let Some(prev) = tokens.last_mut() {
                if prev.is_word() {
                    prev.is_contraction_part = true;
                }
            }
        }
        let normalized = surface.to_lowercase().replace('\u{2019}', "'");
        tokens.push(Token {
            index: tokens.len(),
            normalized,
            surface,
            is_contraction_part: r == Raw::Suffix,
            kind,
        });
    }
    assign_quote_sides(&mut tokens);
    tokens
}

/// Quote family: single-style marks pair with each other, double-style with each other.
fn quote_family(s: &str) -> u8 {
    match s.chars().next() {
        Some('"' | '\u{201C}' | '\u{201D}' | '\u{00AB}' | '\u{00BB}') => 2,
        _ if s.chars().count() >= 2 => 2, // `` and ''
        _ => 1,
    }
}

fn assign_quote_sides(tokens: &mut [Token]) {
    let mut open: [usize; 3] = [0; 3];
    for t in tokens.iter_mut() {
        if !matches!(t.kind, TokenKind::Quote(_)) {
            continue;
        }
        let fam = quote_family(&t.surface) as usize;
        let c = t.surface.chars().next().unwrap_or('\'');
        let side = match c {
            '`' | '\u{2018}' | '\u{201C}' | '\u{00AB}' => QuoteSide::Open,
            '\u{2019}' | '\u{201D}' | '\u{00BB}' => {
                if open[fam] > 0 {
                    QuoteSide::Close
                } else {
                    QuoteSide::Open
                }
            }
            _ => {
                if open[fam] > 0 {
                    QuoteSide::Close
                } else {
                    QuoteSide::Open
                }
            }
        };
        match side {
            QuoteSide::Open => open[fam] += 1,
            QuoteSide::Close => open[fam] -= 1,
        }
        t.kind = TokenKind::Quote(side);
    }
}

fn split_chunk(chunk: &str, out: &mut Vec<(String, Raw)>) {
    let chars: Vec<char> = chunk.chars().collect();
    let n = chars.len();
    let mut i = 0;
    let chunk_start = out.len();
    while i < n {
        let c = chars[i];
        if is_quote_char(c) {
            if is_apostrophe(c) {
                if let Some(len) = suffix_at(&chars, i + 1) {
                    let attached = out.len() > chunk_start
                        && matches!(out.last().map(|t| t.1), Some(Raw::Word | Raw::Number));
                    if attached || i == 0 {
                        out.push((chars[i..i + 1 + len].iter().collect(), Raw::Suffix));
                        i += 1 + len;
                        continue;
                    }
                }
            }
            let mut j = i + 1;
            while j < n && chars[j] == c {
                j += 1;
            }
            out.push((chars[i..j].iter().collect(), Raw::Quote));
            i = j;
        } else if is_word_char(c) {
            let (end, kind) = scan_word(&chars, i);
            let word: String = chars[i..end].iter().collect();
            // "don't" / "can't" / "won't": the n belongs to the suffix
            if end + 1 < n
                && is_apostrophe(chars[end])
                && (chars[end + 1] == 't' || chars[end + 1] == 'T')
                && (end + 2 == n || !is_word_char(chars[end + 2]))
                && end > i
                && (chars[end - 1] == 'n' || chars[end - 1] == 'N')
            {
                let base: String = chars[i..end - 1].iter().collect();
                if !base.is_empty() {
                    out.push((base, Raw::Word));
                }
                out.push((chars[end - 1..end + 2].iter().collect(), Raw::Suffix));
                i = end + 2;
                continue;
            }
            out.push((word, kind));
            i = end;
        } else {
            let mut j = i + 1;
            while j < n && !is_word_char(chars[j]) && !is_quote_char(chars[j]) && chars[j] == c {
                j += 1;
            }
            // mixed runs such as "?!" or "!?!" are one token
            while j < n
                && !is_word_char(chars[j])
                && !is_quote_char(chars[j])
                && is_mark(chars[j])
                && is_mark(c)
            {
                j += 1;
            }
            out.push((chars[i..j].iter().collect(), Raw::Punct));
            i = j;
        }
    }
}

fn is_mark(c: char) -> bool {
    matches!(c, '!' | '?' | '.' | '\u{2026}' | '*')
}

/// Length of a contraction suffix (without its apostrophe) starting at `i`.
fn suffix_at(chars: &[char], i: usize) -> Option<usize> {
    for suf in APOS_SUFFIXES {
        let len = suf.len();
        if i + len > chars.len() {
            continue;
        }
        let cand: String = chars[i..i + len].iter().collect::<String>().to_lowercase();
        if cand == suf && (i + len == chars.len() || !is_word_char(chars[i + len])) {
            return Some(len);
        }
    }
    None
}

fn scan_word(chars: &[char], start: usize) -> (usize, Raw) {
    let n = chars.len();
    let numeric_start = chars[start].is_ascii_digit();
    let mut i = start;
    let mut all_numeric = true;
    let mut has_period = false;
    while i < n {
        let c = chars[i];
        if is_word_char(c) {
            if !c.is_ascii_digit() {
                all_numeric = false;
            }
            i += 1;
            continue;
        }
        let next_word = i + 1 < n && is_word_char(chars[i + 1]);
        match c {
            '-' if next_word => {
                all_numeric = false;
                i += 1;
            }
            ',' | '.'
                if numeric_start && all_numeric && i + 1 < n && chars[i + 1].is_ascii_digit() =>
            {
                i += 1;
            }
            '.' if single_letter_segment(chars, start, i) && (next_word || has_period) => {
                // abbreviations like U.S. keep their periods
                has_period = true;
                all_numeric = false;
                i += 1;
            }
            c if is_apostrophe(c) && next_word => {
                // stop before a contraction suffix or n't; keep O'Brien whole
                if suffix_at(chars, i + 1).is_some() {
                    break;
                }
                if i > start
                    && (chars[i - 1] == 'n' || chars[i - 1] == 'N')
                    && (chars[i + 1] == 't' || chars[i + 1] == 'T')
                    && (i + 2 == n || !is_word_char(chars[i + 2]))
                {
                    break;
                }
                all_numeric = false;
                i += 1;
            }
            _ => break,
        }
    }
    let kind = if numeric_start && all_numeric {
        Raw::Number
    } else {
        Raw::Word
    };
    (i, kind)
}

/// True when the word segment ending at `dot` (since the last period or start) is one letter.
fn single_letter_segment(chars: &[char], start: usize, dot: usize) -> bool {
    let seg_start = chars[start..dot]
        .iter()
        .rposition(|&c| c == '.')
        .map(|p| start + p + 1)
        .unwrap_or(start);
    dot - seg_start == 1 && chars[seg_start].is_alphabetic()
}

/// Number-shaped surface: digits with optional grouping commas and one decimal point.
pub fn is_number_shaped(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_digit())
        && s.chars()
            .all(|c| c.is_ascii_digit() || c == ',' || c == '.')
        && !s.ends_with(['.', ','])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(s: &str) -> Vec<String> {
        tokenize(s).into_iter().map(|t| t.surface).collect()
    }

    #[test]
    fn contractions_split_and_flagged() {
        let toks = tokenize("They're Coming");
        assert_eq!(surfaces("They're Coming"), ["They", "'re", "Coming"]);
        assert!(toks[0].is_contraction_part && toks[1].is_contraction_part);
        assert!(!toks[2].is_contraction_part);
        assert_eq!(
            surfaces("You Won't Believe"),
            ["You", "Wo", "n't", "Believe"]
        );
        assert_eq!(surfaces("can't stop"), ["ca", "n't", "stop"]);
        assert_eq!(surfaces("don't"), ["do", "n't"]);
        assert_eq!(
            surfaces("you'll we'd I'm we've"),
            ["you", "'ll", "we", "'d", "I", "'m", "we", "'ve"]
        );
    }

    #[test]
    fn reference_news_example() {
        let toks = tokenize("Visa deal or no migrant deal, Turkey warns EU");
        assert_eq!(toks.iter().filter(|t| t.is_word()).count(), 9);
        assert_eq!(
            toks.iter().filter(|t| t.kind == TokenKind::Punct).count(),
            1
        );
    }

    #[test]
    fn numbers_hyphens_abbreviations() {
        assert_eq!(surfaces("A 22-Year-Old"), ["A", "22-Year-Old"]);
        assert_eq!(
            surfaces("6.4 quake kills 8,000."),
            ["6.4", "quake", "kills", "8,000", "."]
        );
        assert_eq!(tokenize("15 Things")[0].kind, TokenKind::Number);
        assert_eq!(surfaces("U.S. troops"), ["U.S.", "troops"]);
        assert_eq!(surfaces("Birds fly."), ["Birds", "fly", "."]);
        assert_eq!(surfaces("O'Brien wins"), ["O'Brien", "wins"]);
    }

    #[test]
    fn punctuation_runs() {
        assert_eq!(
            surfaces("What?! No way!!!"),
            ["What", "?!", "No", "way", "!!!"]
        );
        assert_eq!(surfaces("wait..."), ["wait", "..."]);
    }

    #[test]
    fn quotes_have_sides() {
        let toks = tokenize("Which Dead `Grey's Anatomy' Character");
        let s: Vec<_> = toks.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(
            s,
            [
                "Which",
                "Dead",
                "`",
                "Grey",
                "'s",
                "Anatomy",
                "'",
                "Character"
            ]
        );
        assert_eq!(toks[2].kind, TokenKind::Quote(QuoteSide::Open));
        assert_eq!(toks[6].kind, TokenKind::Quote(QuoteSide::Close));
        assert!(toks[4].is_contraction_suffix());

        let toks = tokenize("Which 'Inside Amy Schumer' Character");
        assert_eq!(toks[1].kind, TokenKind::Quote(QuoteSide::Open));
        assert_eq!(toks[5].kind, TokenKind::Quote(QuoteSide::Close));
        let toks = tokenize("\u{201C}Hello\u{201D}");
        assert_eq!(toks.len(), 3);
        assert_eq!(toks[2].kind, TokenKind::Quote(QuoteSide::Close));
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("   ").is_empty());
    }

    #[test]
    fn idempotent_on_examples() {
        for s in [
            "Which Dead `Grey's Anatomy' Character Are You",
            "They Said She Had Cancer. What Happens Next Will Blow Your Mind",
            "You won't believe \"this\" -- ok?!",
            "'s 're n't",
        ] {
            let first = surfaces(s);
            assert_eq!(surfaces(&first.join(" ")), first, "{s}");
        }
    }
}
