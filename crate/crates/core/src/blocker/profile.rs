use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::nugget::{merge_nuggets, Nugget};
use super::pattern::HeadlinePattern;

/// Only this many of the most recent links per action feed the derived sets.
pub const WINDOW: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Clicked,
    Blocked,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub link: String,
    pub headline: String,
    pub action: Action,
    pub tags: BTreeSet<String>,
    pub timestamp: i64,
    pub pattern: HeadlinePattern,
    pub nugget: Nugget,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Derived {
    pub block_patterns: Vec<HeadlinePattern>,
    pub click_patterns: Vec<HeadlinePattern>,
    pub block_nuggets: Vec<Nugget>,
    pub click_nuggets: Vec<Nugget>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    pub user_id: String,
    /// Sorted by (timestamp, link, action) so arrival order never matters.
    pub history: Vec<ProfileEntry>,
    pub derived: Derived,
}

fn order_key(e: &ProfileEntry) -> (i64, &str, Action) {
    (e.timestamp, e.link.as_str(), e.action)
}

impl UserProfile {
    pub fn new(user_id: impl Into<String>) -> UserProfile {
        UserProfile {
            user_id: user_id.into(),
            ..Default::default()
        }
    }

    /// Record one action. A repeated (link, timestamp) is a no-op and returns false.
    pub fn update(&mut self, entry: ProfileEntry) -> bool {
        if self
            .history
            .iter()
            .any(|e| e.link == entry.link && e.timestamp == entry.timestamp)
        {
            return false;
        }
        let at = self
            .history
            .partition_point(|e| order_key(e) <= order_key(&entry));
        self.history.insert(at, entry);
        self.rebuild();
        true
    }

    /// The latest action per link wins; each side keeps its WINDOW newest links.
    pub fn rebuild(&mut self) {
        let mut latest: BTreeMap<&str, &ProfileEntry> = BTreeMap::new();
        for e in &self.history {
            latest.insert(e.link.as_str(), e);
        }
        let side = |a: Action| {
            let mut v: Vec<&ProfileEntry> =
                latest.values().copied().filter(|e| e.action == a).collect();
            v.sort_by(|x, y| order_key(y).cmp(&order_key(x)));
            v.truncate(WINDOW);
            let mut patterns: Vec<HeadlinePattern> = v.iter().map(|e| e.pattern.clone()).collect();
            patterns.sort();
            patterns.dedup();
            let nuggets: Vec<Nugget> = v.iter().map(|e| e.nugget.clone()).collect();
            (patterns, merge_nuggets(&nuggets))
        };
        let (block_patterns, block_nuggets) = side(Action::Blocked);
        let (click_patterns, click_nuggets) = side(Action::Clicked);
        self.derived = Derived {
            block_patterns,
            click_patterns,
            block_nuggets,
            click_nuggets,
        };
    }

    pub fn is_cold(&self) -> bool {
        self.derived.block_patterns.is_empty() && self.derived.click_patterns.is_empty()
    }

    /// Current action per link (latest wins).
    pub fn current_action(&self, link: &str) -> Option<Action> {
        self.history
            .iter()
            .rev()
            .find(|e| e.link == link)
            .map(|e| e.action)
    }
}
