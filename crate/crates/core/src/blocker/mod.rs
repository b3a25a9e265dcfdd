//! Personalized block / allow decisions from headline patterns and topic nuggets.

pub mod graph;
pub mod nugget;
pub mod pattern;
pub mod profile;
pub mod tags;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use graph::ConceptGraph;
pub use nugget::{build_nugget, merge_nuggets, nugget_similarity, Nugget};
pub use pattern::{
    normalize_pattern, pattern_similarity, word_edit_distance, HeadlinePattern, PatternToken,
};
pub use profile::{Action, Derived, ProfileEntry, UserProfile, WINDOW};
pub use tags::{decode_entities, extract_tags, ExtractedTags};

use crate::annotation::AnnotatedHeadline;
use crate::corpus::Lexicons;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pattern,
    Topic,
    Hybrid,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Pattern, Method::Topic, Method::Hybrid];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pattern => "pattern",
            Method::Topic => "topic",
            Method::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pattern" => Ok(Method::Pattern),
            "topic" => Ok(Method::Topic),
            "hybrid" => Ok(Method::Hybrid),
            _ => Err(Error::InvalidArgument(format!(
                "unknown blocking method {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Block,
    Allow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockDecision {
    pub decision: Decision,
    pub block_score: f64,
    pub click_score: f64,
    pub method: Method,
}

impl BlockDecision {
    /// Block only on a strict win; ties and cold starts allow.
    fn from_scores(block_score: f64, click_score: f64, method: Method) -> BlockDecision {
        let decision = if block_score > click_score {
            Decision::Block
        } else {
            Decision::Allow
        };
        BlockDecision {
            decision,
            block_score,
            click_score,
            method,
        }
    }

    pub fn is_block(&self) -> bool {
        self.decision == Decision::Block
    }
}

fn max_or_zero(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

/// Nearest-neighbour pattern similarity on each side.
pub fn pattern_scores(p: &HeadlinePattern, profile: &UserProfile) -> (f64, f64) {
    let d = &profile.derived;
    (
        max_or_zero(d.block_patterns.iter().map(|q| pattern_similarity(p, q))),
        max_or_zero(d.click_patterns.iter().map(|q| pattern_similarity(p, q))),
    )
}

pub fn topic_scores(n: &Nugget, profile: &UserProfile) -> (f64, f64) {
    let d = &profile.derived;
    (
        max_or_zero(
            d.block_nuggets
                .iter()
                .map(|m| nugget_similarity(n, m) as f64),
        ),
        max_or_zero(
            d.click_nuggets
                .iter()
                .map(|m| nugget_similarity(n, m) as f64),
        ),
    )
}

pub fn pattern_decision(p: &HeadlinePattern, profile: &UserProfile) -> BlockDecision {
    let (b, c) = pattern_scores(p, profile);
    BlockDecision::from_scores(b, c, Method::Pattern)
}

pub fn topic_decision(n: &Nugget, profile: &UserProfile) -> BlockDecision {
    let (b, c) = topic_scores(n, profile);
    BlockDecision::from_scores(b, c, Method::Topic)
}

/// w * topic + (1 - w) * pattern, with topic counts scaled by the larger of
/// the two sides for this query.
pub fn hybrid_decision(
    p: &HeadlinePattern,
    n: &Nugget,
    profile: &UserProfile,
    w: f64,
) -> BlockDecision {
    let (pb, pc) = pattern_scores(p, profile);
    let (tb, tc) = topic_scores(n, profile);
    let scale = tb.max(tc);
    let (tb, tc) = if scale > 0.0 {
        (tb / scale, tc / scale)
    } else {
        (0.0, 0.0)
    };
    BlockDecision::from_scores(
        w * tb + (1.0 - w) * pb,
        w * tc + (1.0 - w) * pc,
        Method::Hybrid,
    )
}

pub const DEFAULT_HYBRID_WEIGHT: f64 = 0.5;

/// A headline reduced to what the blocker compares.
#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub pattern: HeadlinePattern,
    pub tags: BTreeSet<String>,
    pub nugget: Nugget,
}

/// Shared, immutable blocker resources.
#[derive(Debug, Clone)]
pub struct Blocker {
    pub top200: Arc<HashSet<String>>,
    pub graph: Arc<ConceptGraph>,
    pub hybrid_weight: f64,
}

impl Blocker {
    pub fn new(lexicons: &Lexicons, graph: Arc<ConceptGraph>) -> Blocker {
        Blocker {
            top200: Arc::new(lexicons.top200.entries.iter().cloned().collect()),
            graph,
            hybrid_weight: DEFAULT_HYBRID_WEIGHT,
        }
    }

    pub fn query(&self, h: &AnnotatedHeadline, html: Option<&str>) -> Query {
        let tags = extract_tags(h, html).tags;
        let tag_list: Vec<&String> = tags.iter().collect();
        Query {
            pattern: normalize_pattern(h, &self.top200),
            nugget: build_nugget(&tag_list, &self.graph),
            tags,
        }
    }

    /// Query with explicit tags instead of extracted ones.
    pub fn query_with_tags(&self, h: &AnnotatedHeadline, tags: BTreeSet<String>) -> Query {
        let tag_list: Vec<&String> = tags.iter().collect();
        Query {
            pattern: normalize_pattern(h, &self.top200),
            nugget: build_nugget(&tag_list, &self.graph),
            tags,
        }
    }

    pub fn entry(
        &self,
        link: &str,
        h: &AnnotatedHeadline,
        q: Query,
        action: Action,
        timestamp: i64,
    ) -> ProfileEntry {
        ProfileEntry {
            link: link.to_string(),
            headline: h.text(),
            action,
            tags: q.tags,
            timestamp,
            pattern: q.pattern,
            nugget: q.nugget,
        }
    }

    pub fn decide(&self, method: Method, q: &Query, profile: &UserProfile) -> BlockDecision {
        match method {
            Method::Pattern => pattern_decision(&q.pattern, profile),
            Method::Topic => topic_decision(&q.nugget, profile),
            Method::Hybrid => hybrid_decision(&q.pattern, &q.nugget, profile, self.hybrid_weight),
        }
    }
}
