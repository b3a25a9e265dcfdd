//! Tokenization, part-of-speech tagging and dependency parsing.

pub mod conllu;
pub mod parser;
pub mod perceptron;
pub mod tagger;
pub mod tags;
pub mod tokenizer;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use parser::{ParserModel, ParserParams};
pub use tagger::{TaggerModel, TaggerParams};
pub use tags::PennTag;
pub use tokenizer::{tokenize, QuoteSide, Token, TokenKind};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub token: Token,
    pub tag: PennTag,
}

/// `head == None` marks the root arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencyArc {
    pub head: Option<usize>,
    pub dependent: usize,
    pub relation: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedHeadline {
    pub id: u64,
    pub tokens: Vec<TaggedToken>,
    /// One arc per token, sorted by dependent.
    pub arcs: Vec<DependencyArc>,
    pub tree_height: usize,
}

impl AnnotatedHeadline {
    /// Assemble from tokens and a head vector (`None` = root); validates the tree.
    pub fn new(
        id: u64,
        tokens: Vec<TaggedToken>,
        heads: &[Option<usize>],
        relations: Vec<String>,
    ) -> Result<Self> {
        if heads.len() != tokens.len() || relations.len() != tokens.len() {
            return Err(Error::Data("arc count does not match token count".into()));
        }
        let arcs: Vec<DependencyArc> = heads
            .iter()
            .zip(relations)
            .enumerate()
            .map(|(dependent, (&head, relation))| DependencyArc {
                head,
                dependent,
                relation,
            })
            .collect();
        let tree_height = check_tree(heads)?;
        Ok(AnnotatedHeadline {
            id,
            tokens,
            arcs,
            tree_height,
        })
    }

    /// Hand-built fixture: tokenizes `text` and attaches the given gold tags and arcs.
    pub fn from_gold(
        id: u64,
        text: &str,
        tags: &[&str],
        heads: &[Option<usize>],
        relations: &[&str],
    ) -> Result<Self> {
        let mut toks = tokenize(text);
        if toks.len() != tags.len() {
            return Err(Error::Data(format!(
                "{} tokens but {} tags in {text:?}",
                toks.len(),
                tags.len()
            )));
        }
        let tags: Vec<PennTag> = tags.iter().map(|t| t.parse()).collect::<Result<_>>()?;
        normalize_case(&mut toks, &tags);
        let tokens = toks
            .into_iter()
            .zip(tags)
            .map(|(token, tag)| TaggedToken { token, tag })
            .collect();
        Self::new(
            id,
            tokens,
            heads,
            relations.iter().map(|r| r.to_string()).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn head_of(&self, i: usize) -> Option<usize> {
        self.arcs[i].head
    }

    pub fn root(&self) -> Option<usize> {
        self.arcs
            .iter()
            .find(|a| a.head.is_none())
            .map(|a| a.dependent)
    }

    /// Dependents of `i` in surface order.
    pub fn children(&self, i: usize) -> impl Iterator<Item = &DependencyArc> + '_ {
        self.arcs.iter().filter(move |a| a.head == Some(i))
    }

    pub fn tags(&self) -> Vec<PennTag> {
        self.tokens.iter().map(|t| t.tag).collect()
    }

    /// Indices of word tokens (no punctuation, no quotes).
    pub fn word_indices(&self) -> Vec<usize> {
        self.tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| t.token.is_word())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn text(&self) -> String {
        self.tokens
            .iter()
            .map(|t| t.token.surface.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Returns the tree height (edges on the longest root-to-leaf path) or an
/// error when `heads` is not a single-rooted tree.
pub fn check_tree(heads: &[Option<usize>]) -> Result<usize> {
    if heads.is_empty() {
        return Ok(0);
    }
    let roots = heads.iter().filter(|h| h.is_none()).count();
    if roots != 1 {
        return Err(Error::Data(format!(
            "expected exactly one root, found {roots}"
        )));
    }
    let n = heads.len();
    let mut depth = vec![usize::MAX; n];
    let mut height = 0;
    for start in 0..n {
        let mut path = Vec::new();
        let mut cur = start;
        let d = loop {
            if depth[cur] != usize::MAX {
                break depth[cur];
            }
            if path.len() > n {
                return Err(Error::Data("dependency cycle".into()));
            }
            path.push(cur);
            match heads[cur] {
                None => {
                    depth[cur] = 0;
                    path.pop();
                    break 0;
                }
                Some(h) if h >= n || h == cur => {
                    return Err(Error::Data(format!("bad head {h} for token {cur}")))
                }
                Some(h) => cur = h,
            }
        };
        let mut d = d;
        while let Some(p) = path.pop() {
            d += 1;
            depth[p] = d;
        }
        height = height.max(depth[start]);
    }
    Ok(height)
}

/// Tagger plus parser with the two-pass case normalization in front.
#[derive(Debug, Clone)]
pub struct Annotator {
    pub tagger: Arc<TaggerModel>,
    pub parser: Arc<ParserModel>,
}

impl Annotator {
    pub fn new(tagger: Arc<TaggerModel>, parser: Arc<ParserModel>) -> Self {
        Annotator { tagger, parser }
    }

    pub fn train(
        treebank: &[AnnotatedHeadline],
        tagger: &TaggerParams,
        parser: &ParserParams,
    ) -> Result<Self> {
        let t = TaggerModel::train(treebank, tagger)?;
        let p = ParserModel::train(treebank, parser)?;
        Ok(Annotator::new(Arc::new(t), Arc::new(p)))
    }

    pub fn annotate(&self, id: u64, text: &str) -> AnnotatedHeadline {
        let mut tokens = tokenize(text);
        let first = self.tagger.tag_forms(&tokens, |t| t.surface.as_str());
        normalize_case(&mut tokens, &first);
        let tags = self.tagger.tag_forms(&tokens, |t| t.normalized.as_str());
        let tagged: Vec<TaggedToken> = tokens
            .into_iter()
            .zip(tags)
            .map(|(token, tag)| TaggedToken { token, tag })
            .collect();
        let (heads, rels) = self.parser.parse(&tagged);
        let tree_height = check_tree(&heads).expect("parser always emits a tree");
        let arcs = heads
            .iter()
            .zip(rels)
            .enumerate()
            .map(|(dependent, (&head, relation))| DependencyArc {
                head,
                dependent,
                relation,
            })
            .collect();
        AnnotatedHeadline {
            id,
            tokens: tagged,
            arcs,
            tree_height,
        }
    }
}

/// Undo title case: first-pass proper nouns and all-caps tokens of length >= 2
/// keep their surface casing, everything else is lowercased.
pub fn normalize_case(tokens: &mut [Token], first_pass: &[PennTag]) {
    for (t, tag) in tokens.iter_mut().zip(first_pass) {
        let keep = tag.is_proper() || is_all_caps(&t.surface);
        t.normalized = if keep {
            t.surface.replace('\u{2019}', "'")
        } else {
            t.surface.to_lowercase().replace('\u{2019}', "'")
        };
    }
}

fn is_all_caps(s: &str) -> bool {
    let letters = s.chars().filter(|c| c.is_alphabetic()).count();
    letters >= 2 && s.chars().all(|c| !c.is_lowercase())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_checks() {
        assert_eq!(check_tree(&[Some(1), None]).unwrap(), 1);
        assert_eq!(check_tree(&[None]).unwrap(), 0);
        assert!(check_tree(&[None, None]).is_err());
        assert!(check_tree(&[Some(1), Some(0)]).is_err());
        assert!(check_tree(&[Some(1), Some(2), Some(1), None]).is_err());
        assert_eq!(check_tree(&[Some(1), Some(3), Some(1), None]).unwrap(), 2);
    }

    #[test]
    fn case_rule() {
        let mut toks = tokenize("Which Disney Song Are You NASA");
        let tags = [
            PennTag::Wdt,
            PennTag::Nnp,
            PennTag::Nn,
            PennTag::Vbp,
            PennTag::Prp,
            PennTag::Nn,
        ];
        normalize_case(&mut toks, &tags);
        let n: Vec<_> = toks.iter().map(|t| t.normalized.as_str()).collect();
        assert_eq!(n, ["which", "Disney", "song", "are", "you", "NASA"]);
    }
}
