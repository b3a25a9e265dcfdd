//! Multinomial Naive Bayes scorers whose log-odds feed the main classifier.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NbFamily {
    Subject,
    WordNGram,
    PosNGram,
    SynNGram,
}

impl NbFamily {
    pub const ALL: [NbFamily; 4] = [
        NbFamily::Subject,
        NbFamily::WordNGram,
        NbFamily::PosNGram,
        NbFamily::SynNGram,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    pub family: NbFamily,
    /// log P(class), indexed by `Label::index`.
    pub class_priors: [f64; 2],
    pub token_log_probs: BTreeMap<String, [f64; 2]>,
    pub smoothing_alpha: f64,
    pub vocabulary_size: usize,
    /// Item tokens seen per class.
    pub class_totals: [u64; 2],
}

impl NaiveBayesModel {
    pub fn prior_log_odds(&self) -> f64 {
        self.class_priors[0] - self.class_priors[1]
    }

    /// log P(item | class) with smoothing; None for items outside the vocabulary.
    pub fn log_prob(&self, item: &str) -> Option<[f64; 2]> {
        self.token_log_probs.get(item).copied()
    }
}

/// Fit a multinomial model: P(w|c) = (n(w,c) + α) / (N_c + αV).
pub fn train_nb<S: AsRef<str>>(
    family: NbFamily,
    docs: &[(Vec<S>, Label)],
    alpha: f64,
) -> Result<NaiveBayesModel> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "smoothing alpha must be positive, got {alpha}"
        )));
    }
    let mut n_docs = [0u64; 2];
    let mut totals = [0u64; 2];
    let mut counts: HashMap<&str, [u64; 2]> = HashMap::new();
    for (items, label) in docs {
        let c = label.index();
        n_docs[c] += 1;
        for it in items {
            counts.entry(it.as_ref()).or_default()[c] += 1;
            totals[c] += 1;
        }
    }
    if n_docs.contains(&0) {
        return Err(Error::Training(format!(
            "{family:?} scorer needs at least one headline of each class"
        )));
    }
    let v = counts.len() as f64;
    let n = (n_docs[0] + n_docs[1]) as f64;
    let class_priors = [(n_docs[0] as f64 / n).ln(), (n_docs[1] as f64 / n).ln()];
    let denom = [totals[0] as f64 + alpha * v, totals[1] as f64 + alpha * v];
    let token_log_probs = counts
        .into_iter()
        .map(|(w, c)| {
            let lp = [
                ((c[0] as f64 + alpha) / denom[0]).ln(),
                ((c[1] as f64 + alpha) / denom[1]).ln(),
            ];
            (w.to_string(), lp)
        })
        .collect();
    Ok(NaiveBayesModel {
        family,
        class_priors,
        token_log_probs,
        smoothing_alpha: alpha,
        vocabulary_size: v as usize,
        class_totals: totals,
    })
}

/// log P(clickbait | items) - log P(non | items). Items outside the training
/// vocabulary carry no evidence and are skipped.
pub fn score_nb<S: AsRef<str>>(model: &NaiveBayesModel, items: &[S]) -> f64 {
    let mut s = model.prior_log_odds();
    for it in items {
        if let Some(lp) = model.log_prob(it.as_ref()) {
            s += lp[0] - lp[1];
        }
    }
    s
}
