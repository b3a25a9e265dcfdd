//! Offline replay of click/block histories: build each user's profile from
//! the head of their events, predict the held-out tail.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annotation::Annotator;
use crate::blocker::{Action, Blocker, Method, Query, UserProfile};
use crate::classifier::Confusion;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileEvent {
    pub user: String,
    pub link: String,
    pub headline: String,
    pub action: Action,
    pub timestamp: i64,
    /// Explicit topic tags; when absent they are extracted from `html` or the headline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub html: Option<String>,
}

pub fn parse_events(text: &str) -> Result<Vec<ProfileEvent>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let e: ProfileEvent = serde_json::from_str(line)
            .map_err(|err| Error::Data(format!("events line {}: {err}", i + 1)))?;
        out.push(e);
    }
    Ok(out)
}

pub fn load_events(path: &Path) -> Result<Vec<ProfileEvent>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_events(&text)
}

pub fn serialize_events(events: &[ProfileEvent]) -> String {
    events
        .iter()
        .map(|e| serde_json::to_string(e).expect("event serializes") + "\n")
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: Method,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Positive class is Block.
    pub confusion: Confusion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub users: usize,
    pub train_events: usize,
    pub test_events: usize,
    pub holdout: f64,
    pub rows: Vec<MethodResult>,
}

struct UserSplit {
    profile: UserProfile,
    test: Vec<(Query, Action)>,
}

/// Replay the first `1 - holdout` of each user's events (by timestamp) and
/// predict the rest with every requested method. Precision/recall treat
/// Block as the positive class.
pub fn simulate(
    events: &[ProfileEvent],
    methods: &[Method],
    holdout: f64,
    blocker: &Blocker,
    annotator: &Annotator,
) -> Result<SimulationReport> {
    if !(0.0..=1.0).contains(&holdout) {
        return Err(Error::InvalidArgument(format!(
            "holdout must be in [0, 1], got {holdout}"
        )));
    }
    let mut by_user: BTreeMap<&str, Vec<&ProfileEvent>> = BTreeMap::new();
    for e in events {
        by_user.entry(e.user.as_str()).or_default().push(e);
    }
    let splits: Vec<UserSplit> = by_user
        .into_par_iter()
        .map(|(user, mut evs)| {
            evs.sort_by(|a, b| (a.timestamp, &a.link).cmp(&(b.timestamp, &b.link)));
            let n_train = ((1.0 - holdout) * evs.len() as f64).round() as usize;
            let mut profile = UserProfile::new(user);
            let mut test = Vec::new();
            for (i, e) in evs.iter().enumerate() {
                let h = annotator.annotate(0, &e.headline);
                let q = match &e.tags {
                    Some(t) => blocker
                        .query_with_tags(&h, t.iter().map(|s| s.trim().to_lowercase()).collect()),
                    None => blocker.query(&h, e.html.as_deref()),
                };
                if i < n_train {
                    profile.update(blocker.entry(&e.link, &h, q, e.action, e.timestamp));
                } else {
                    test.push((q, e.action));
                }
            }
            UserSplit { profile, test }
        })
        .collect();
    let rows = methods
        .iter()
        .map(|&m| {
            let mut c = Confusion::default();
            for s in &splits {
                for (q, truth) in &s.test {
                    c.add_bool(
                        *truth == Action::Blocked,
                        blocker.decide(m, q, &s.profile).is_block(),
                    );
                }
            }
            MethodResult {
                method: m,
                accuracy: c.accuracy(),
                precision: c.precision(),
                recall: c.recall(),
                f1: c.f1(),
                confusion: c,
            }
        })
        .collect();
    let test_events: usize = splits.iter().map(|s| s.test.len()).sum();
    Ok(SimulationReport {
        users: splits.len(),
        train_events: events.len() - test_events,
        test_events,
        holdout,
        rows,
    })
}

const CELEBS: [&str; 8] = [
    "Taylor Swift",
    "Beyonce",
    "Tom Hanks",
    "Oprah",
    "Drake",
    "Rihanna",
    "Keanu Reeves",
    "Adele",
];
const PLURALS: [&str; 8] = [
    "Cats", "Pizzas", "Cities", "Movies", "Songs", "Dogs", "Shoes", "Cakes",
];
const COUNTRIES: [&str; 8] = [
    "France", "Brazil", "Japan", "Kenya", "Canada", "India", "Chile", "Norway",
];
const TOPICS: [&str; 6] = ["Energy", "Trade", "Health", "Tax", "Water", "Transport"];

fn pick<'a>(rng: &mut ChaCha8Rng, xs: &[&'a str]) -> &'a str {
    xs.choose(rng).expect("non-empty")
}

fn pattern_block_headline(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..4) {
        0 => format!("Can You Guess Which {} Said This", pick(rng, &CELEBS)),
        1 => format!("Can You Guess These {} From One Photo", pick(rng, &PLURALS)),
        2 => format!("Can You Guess How Old These {} Are", pick(rng, &PLURALS)),
        _ => format!("Can You Guess What {} Is Eating", pick(rng, &CELEBS)),
    }
}

fn pattern_click_headline(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..4) {
        0 => format!(
            "{} Parliament Approves New {} Budget",
            pick(rng, &COUNTRIES),
            pick(rng, &TOPICS)
        ),
        1 => format!(
            "{} {} That Will Make You Smile",
            rng.gen_range(5..30),
            pick(rng, &PLURALS)
        ),
        2 => format!(
            "{} And {} Sign {} Agreement",
            pick(rng, &COUNTRIES),
            pick(rng, &COUNTRIES),
            pick(rng, &TOPICS)
        ),
        _ => format!("Why {} Cancelled The Tour", pick(rng, &CELEBS)),
    }
}

/// A user who blocks every "Can You Guess ..." headline and clicks everything else.
pub fn synthetic_pattern_user(user: &str, n: usize, seed: u64) -> Vec<ProfileEvent> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let blocked = rng.gen_bool(0.5);
            let headline = if blocked {
                pattern_block_headline(&mut rng)
            } else {
                pattern_click_headline(&mut rng)
            };
            ProfileEvent {
                user: user.to_string(),
                link: format!("https://example.com/{user}/{i}"),
                headline,
                action: if blocked {
                    Action::Blocked
                } else {
                    Action::Clicked
                },
                timestamp: 1_000 * i as i64,
                tags: None,
                html: None,
            }
        })
        .collect()
}

const PET_TAGS: [&str; 6] = ["dog", "puppy", "cat", "kitten", "pet", "animal"];
const VEHICLE_TAGS: [&str; 2] = ["car", "vehicle"];
const NOISE_TAGS: [&str; 3] = ["news", "video", "trending"];

/// A user who blocks pet stories and clicks vehicle stories. Headlines share
/// templates across both sides so only the tags carry the preference; meant
/// for the toy concept graph.
pub fn synthetic_topic_user(user: &str, n: usize, seed: u64) -> Vec<ProfileEvent> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let blocked = rng.gen_bool(0.5);
            let pool: &[&str] = if blocked { &PET_TAGS } else { &VEHICLE_TAGS };
            let k = rng.gen_range(1..=2usize).min(pool.len());
            let mut tags: BTreeSet<String> = pool
                .choose_multiple(&mut rng, k)
                .map(|s| s.to_string())
                .collect();
            tags.insert(pick(&mut rng, &NOISE_TAGS).to_string());
            let subject = tags
                .iter()
                .find(|t| pool.contains(&t.as_str()))
                .cloned()
                .unwrap_or_default();
            let headline = match rng.gen_range(0..3) {
                0 => format!(
                    "{} Facts About Your {} You Never Knew",
                    rng.gen_range(5..25),
                    subject
                ),
                1 => format!("This {} Will Change The Way You Think", subject),
                _ => format!("What Your {} Says About You", subject),
            };
            ProfileEvent {
                user: user.to_string(),
                link: format!("https://example.com/{user}/{i}"),
                headline,
                action: if blocked {
                    Action::Blocked
                } else {
                    Action::Clicked
                },
                timestamp: 1_000 * i as i64,
                tags: Some(tags.into_iter().collect()),
                html: None,
            }
        })
        .collect()
}
