//! Independent reference computations. Deliberately naive: no shared code
//! with the library beyond its public types.

use std::collections::{HashMap, VecDeque};

use clickbait_core::corpus::Label;

/// Full-matrix Wagner-Fischer.
pub fn edit_distance_matrix<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    d[0] = (0..=b.len()).collect();
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = if a[i - 1] == b[j - 1] { 0 } else { 1 };
            d[i][j] = (d[i - 1][j] + 1)
                .min(d[i][j - 1] + 1)
                .min(d[i - 1][j - 1] + cost);
        }
    }
    d[a.len()][b.len()]
}

/// Every sequence over `0..alphabet` of length at most `max_len`.
pub fn all_sequences(alphabet: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    let mut level = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &level {
            for c in 0..alphabet {
                let mut t: Vec<u8> = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Shortest edit scripts by breadth-first search over the graph whose nodes
/// are all short sequences and whose edges are single insertions, deletions
/// and substitutions. Scripts that delete first, substitute, then insert
/// never exceed the longer endpoint, so capping node length loses nothing.
pub fn edit_distance_exhaustive(
    alphabet: u8,
    max_len: usize,
) -> HashMap<(Vec<u8>, Vec<u8>), usize> {
    let nodes = all_sequences(alphabet, max_len);
    let neighbours = |s: &Vec<u8>| {
        let mut out = Vec::new();
        for i in 0..s.len() {
            let mut t = s.clone();
            t.remove(i);
            out.push(t);
            for c in 0..alphabet {
                if c != s[i] {
                    let mut t = s.clone();
                    t[i] = c;
                    out.push(t);
                }
            }
        }
        if s.len() < max_len {
            for i in 0..=s.len() {
                for c in 0..alphabet {
                    let mut t = s.clone();
                    t.insert(i, c);
                    out.push(t);
                }
            }
        }
        out
    };
    let mut all = HashMap::new();
    for src in &nodes {
        let mut dist: HashMap<Vec<u8>, usize> = HashMap::from([(src.clone(), 0)]);
        let mut q = VecDeque::from([src.clone()]);
        while let Some(s) = q.pop_front() {
            let d = dist[&s];
            for t in neighbours(&s) {
                if !dist.contains_key(&t) {
                    dist.insert(t.clone(), d + 1);
                    q.push_back(t);
                }
            }
        }
        for (t, d) in dist {
            all.insert((src.clone(), t), d);
        }
    }
    all
}

/// log P(clickbait, items) - log P(news, items) from raw counts, with the
/// joint formed as a plain product. Items never seen in training are skipped.
pub fn nb_joint_log_odds(docs: &[(Vec<String>, Label)], items: &[String], alpha: f64) -> f64 {
    let mut vocab: Vec<&String> = Vec::new();
    for (d, _) in docs {
        for w in d {
            if !vocab.contains(&w) {
                vocab.push(w);
            }
        }
    }
    let v = vocab.len() as f64;
    let joint = |label: Label| {
        let n_c = docs.iter().filter(|(_, l)| *l == label).count() as f64;
        let total: usize = docs
            .iter()
            .filter(|(_, l)| *l == label)
            .map(|(d, _)| d.len())
            .sum();
        let mut p = n_c / docs.len() as f64;
        for it in items {
            if !vocab.contains(&it) {
                continue;
            }
            let count = docs
                .iter()
                .filter(|(_, l)| *l == label)
                .flat_map(|(d, _)| d)
                .filter(|w| *w == it)
                .count();
            p *= (count as f64 + alpha) / (total as f64 + alpha * v);
        }
        p
    };
    joint(Label::Clickbait).ln() - joint(Label::NonClickbait).ln()
}

/// Fraction of (clickbait, news) pairs ranked correctly, ties worth one half.
pub fn auc_pairwise(labels: &[Label], scores: &[f64]) -> f64 {
    let mut wins = 0.0;
    let (mut np, mut nn) = (0usize, 0usize);
    for (i, li) in labels.iter().enumerate() {
        if !li.is_clickbait() {
            nn += 1;
            continue;
        }
        np += 1;
        for (j, lj) in labels.iter().enumerate() {
            if lj.is_clickbait() {
                continue;
            }
            if scores[i] > scores[j] {
                wins += 1.0;
            } else if scores[i] == scores[j] {
                wins += 0.5;
            }
        }
    }
    wins / (np as f64 * nn as f64)
}

pub fn rbf(a: &[f64], b: &[f64], gamma: f64) -> f64 {
    (-gamma * a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>()).exp()
}

/// Largest violation of the soft-margin optimality conditions:
/// alpha = 0 needs y f >= 1, alpha = C needs y f <= 1, otherwise y f = 1.
pub fn kkt_violation(
    xs: &[Vec<f64>],
    ys: &[f64],
    alpha: &[f64],
    bias: f64,
    c: f64,
    gamma: f64,
) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..xs.len() {
        let f: f64 = (0..xs.len())
            .map(|j| alpha[j] * ys[j] * rbf(&xs[j], &xs[i], gamma))
            .sum::<f64>()
            + bias;
        let m = ys[i] * f;
        let v = if alpha[i] <= 0.0 {
            (1.0 - m).max(0.0)
        } else if alpha[i] >= c {
            (m - 1.0).max(0.0)
        } else {
            (m - 1.0).abs()
        };
        worst = worst.max(v);
    }
    worst
}

/// The pruning rule stated directly: a gram survives when it appears in at
/// least `min_df` headlines and, above the minimum length, both of its
/// one-shorter contiguous sub-grams survive.
pub fn prune_brute(docs: &[Vec<Vec<String>>], min_df: usize, min_len: usize) -> Vec<Vec<String>> {
    let mut candidates: Vec<Vec<String>> = Vec::new();
    for d in docs {
        for g in d {
            if !candidates.contains(g) {
                candidates.push(g.clone());
            }
        }
    }
    candidates.sort_by_key(|g| g.len());
    let mut kept: Vec<Vec<String>> = Vec::new();
    for g in candidates {
        let df = docs.iter().filter(|d| d.contains(&g)).count();
        let subs_ok = g.len() <= min_len
            || (kept.contains(&g[..g.len() - 1].to_vec()) && kept.contains(&g[1..].to_vec()));
        if df >= min_df && subs_ok {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}
