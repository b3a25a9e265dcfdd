//! Tag extraction from a page head, with headline content words as fallback.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use regex::Regex;

use crate::annotation::AnnotatedHeadline;

static HEAD: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?is)<head\b[^>]*>(.*?)(?:</head\s*>|<body\b|$)").unwrap());
static META: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?is)<meta\b([^>]*)>").unwrap());
static ATTR: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r#"(?is)([a-z_:][-a-z0-9_:.]*)\s*=\s*(?:"([^"]*)"|'([^']*)'|([^\s"'>]+))"#).unwrap()
});

/// `name`/`property` values whose `content` holds article tags.
const TAG_METAS: [&str; 6] = [
    "keywords",
    "news_keywords",
    "article:tag",
    "og:article:tag",
    "parsely-tags",
    "sailthru.tags",
];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtractedTags {
    pub tags: BTreeSet<String>,
    pub warning: Option<String>,
}

/// Decode the handful of entities that show up in titles and meta values.
pub fn decode_entities(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(i) = rest.find('&') {
        out.push_str(&rest[..i]);
        rest = &rest[i..];
        let end = rest.find(';').filter(|&e| e <= 10);
        let decoded = end.and_then(|e| decode_one(&rest[1..e]).map(|c| (c, e)));
        match decoded {
            Some((c, e)) => {
                out.push(c);
                rest = &rest[e + 1..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

fn decode_one(name: &str) -> Option<char> {
    if let Some(num) = name.strip_prefix('#') {
        let code = match num.strip_prefix(['x', 'X']) {
            Some(hex) => u32::from_str_radix(hex, 16).ok()?,
            None => num.parse().ok()?,
        };
        return char::from_u32(code);
    }
    Some(match name {
        "amp" => '&',
        "lt" => '<',
        "gt" => '>',
        "quot" => '"',
        "apos" => '\'',
        "nbsp" => ' ',
        "ndash" => '\u{2013}',
        "mdash" => '\u{2014}',
        "lsquo" => '\u{2018}',
        "rsquo" => '\u{2019}',
        "ldquo" => '\u{201c}',
        "rdquo" => '\u{201d}',
        "hellip" => '\u{2026}',
        "copy" => '\u{a9}',
        "eacute" => '\u{e9}',
        _ => return None,
    })
}

fn meta_tags(head: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for m in META.captures_iter(head) {
        let mut key = None;
        let mut content = None;
        for a in ATTR.captures_iter(&m[1]) {
            let name = a[1].to_ascii_lowercase();
            let val = a
                .get(2)
                .or(a.get(3))
                .or(a.get(4))
                .map_or("", |v| v.as_str());
            match name.as_str() {
                "name" | "property" | "itemprop" => key = Some(val.to_ascii_lowercase()),
                "content" => content = Some(decode_entities(val)),
                _ => {}
            }
        }
        if let (Some(k), Some(c)) = (key, content) {
            if TAG_METAS.contains(&k.as_str()) {
                out.extend(
                    c.split(',')
                        .map(|t| {
                            t.split_whitespace()
                                .collect::<Vec<_>>()
                                .join(" ")
                                .to_lowercase()
                        })
                        .filter(|t| !t.is_empty()),
                );
            }
        }
    }
    out
}

/// Lowercased nouns and adjectives of the headline.
pub fn content_word_tags(h: &AnnotatedHeadline) -> BTreeSet<String> {
    h.tokens
        .iter()
        .filter(|t| t.token.is_word() && (t.tag.is_noun() || t.tag.is_adjective()))
        .map(|t| t.token.surface.to_lowercase())
        .collect()
}

/// Tags from the page head's keyword metas; when the page has none (or no
/// page was given) the headline's nouns and adjectives stand in.
pub fn extract_tags(h: &AnnotatedHeadline, html: Option<&str>) -> ExtractedTags {
    let mut warning = None;
    if let Some(doc) = html.filter(|d| !d.trim().is_empty()) {
        match HEAD.captures(doc) {
            Some(c) => {
                let tags = meta_tags(&c[1]);
                if !tags.is_empty() {
                    return ExtractedTags {
                        tags,
                        warning: None,
                    };
                }
            }
            None => warning = Some("page has no <head> element; using headline words".to_string()),
        }
    }
    ExtractedTags {
        tags: content_word_tags(h),
        warning,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn birds() -> AnnotatedHeadline {
        AnnotatedHeadline::from_gold(
            0,
            "Birds fly",
            &["NNS", "VBP"],
            &[Some(1), None],
            &["nsubj", "root"],
        )
        .unwrap()
    }

    #[test]
    fn entities() {
        assert_eq!(
            decode_entities("Tom &amp; Jerry &#8217;s &#x41; &bogus; &"),
            "Tom & Jerry \u{2019}s A &bogus; &"
        );
    }

    #[test]
    fn head_keywords() {
        let html = r#"<html><head><title>x</title>
            <meta name="keywords" content="butterbeer, Harry Potter, hermione,JK Rowling , wizarding world">
            <meta property="og:title" content="ignored"></head><body>..</body></html>"#;
        let t = extract_tags(&birds(), Some(html));
        let want: BTreeSet<String> = [
            "butterbeer",
            "harry potter",
            "hermione",
            "jk rowling",
            "wizarding world",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(t.tags, want);
    }

    #[test]
    fn fallbacks() {
        let t = extract_tags(&birds(), Some("<html><head></head></html>"));
        assert_eq!(t.tags, BTreeSet::from(["birds".to_string()]));
        let t = extract_tags(&birds(), Some("not html at all"));
        assert!(t.warning.is_some());
        assert_eq!(t.tags.len(), 1);
        let h = AnnotatedHeadline::from_gold(0, "Wow", &["UH"], &[None], &["root"]).unwrap();
        assert!(extract_tags(&h, None).tags.is_empty());
    }
}
