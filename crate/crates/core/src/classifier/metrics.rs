use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};

/// Positive class is clickbait.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl Confusion {
    pub fn add(&mut self, truth: Label, predicted: Label) {
        self.add_bool(truth.is_clickbait(), predicted.is_clickbait());
    }

    /// Same counts for any binary task; `true` is the positive class.
    pub fn add_bool(&mut self, truth: bool, predicted: bool) {
        match (truth, predicted) {
            (true, true) => self.tp += 1,
            (false, true) => self.fp += 1,
            (false, false) => self.tn += 1,
            (true, false) => self.fn_ += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn accuracy(&self) -> f64 {
        ratio(self.tp + self.tn, self.total())
    }

    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn f1(&self) -> f64 {
        let (p, r) = (self.precision(), self.recall());
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    }

    pub fn merge(&mut self, o: &Confusion) {
        self.tp += o.tp;
        self.fp += o.fp;
        self.tn += o.tn;
        self.fn_ += o.fn_;
    }
}

/// 0/0 is reported as 0.
fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldMetrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub roc_auc: Option<f64>,
    pub confusion: Confusion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub roc_auc: f64,
    pub confusion: Confusion,
    pub folds: Vec<FoldMetrics>,
}

/// P(random positive outranks random negative), ties counted 1/2, via
/// average ranks. Every intermediate is a multiple of 1/2, so the result is
/// bit-identical to the pairwise count for any realistic set size.
pub fn roc_auc(labels: &[Label], scores: &[f64]) -> Result<f64> {
    if labels.len() != scores.len() {
        return Err(Error::InvalidArgument(
            "label and score counts differ".into(),
        ));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::InvalidArgument("NaN score".into()));
    }
    let n_pos = labels.iter().filter(|l| l.is_clickbait()).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::Undefined("ROC AUC needs both classes".into()));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    // Sum of (1-based, tie-averaged) ranks of positives, doubled to stay integral.
    let mut twice_rank_sum: u128 = 0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let twice_avg = (i + 1 + j + 1) as u128;
        let pos_in_group = order[i..=j]
            .iter()
            .filter(|&&k| labels[k].is_clickbait())
            .count() as u128;
        twice_rank_sum += twice_avg * pos_in_group;
        i = j + 1;
    }
    let np = n_pos as u128;
    let twice_u = twice_rank_sum - np * (np + 1);
    Ok((twice_u as f64 / 2.0) / (n_pos as f64 * n_neg as f64))
}

pub fn fold_metrics(labels: &[Label], scores: &[f64], threshold: f64) -> Result<FoldMetrics> {
    if labels.len() != scores.len() {
        return Err(Error::InvalidArgument(
            "label and score counts differ".into(),
        ));
    }
    let mut confusion = Confusion::default();
    for (l, s) in labels.iter().zip(scores) {
        confusion.add(
            *l,
            if *s > threshold {
                Label::Clickbait
            } else {
                Label::NonClickbait
            },
        );
    }
    Ok(FoldMetrics {
        accuracy: confusion.accuracy(),
        precision: confusion.precision(),
        recall: confusion.recall(),
        f1: confusion.f1(),
        roc_auc: roc_auc(labels, scores).ok(),
        confusion,
    })
}

/// Metrics at `threshold` (score above it means clickbait). Errors when the
/// labels hold a single class, since AUC is then undefined.
pub fn compute_metrics(labels: &[Label], scores: &[f64], threshold: f64) -> Result<EvalReport> {
    let m = fold_metrics(labels, scores, threshold)?;
    let auc = roc_auc(labels, scores)?;
    Ok(EvalReport {
        accuracy: m.accuracy,
        precision: m.precision,
        recall: m.recall,
        f1: m.f1,
        roc_auc: auc,
        confusion: m.confusion,
        folds: vec![m],
    })
}

/// Pooled report over out-of-fold predictions, with the per-fold breakdown.
pub fn pooled_report(per_fold: &[(Vec<Label>, Vec<f64>)], threshold: f64) -> Result<EvalReport> {
    let folds = per_fold
        .iter()
        .map(|(l, s)| fold_metrics(l, s, threshold))
        .collect::<Result<Vec<_>>>()?;
    let labels: Vec<Label> = per_fold
        .iter()
        .flat_map(|(l, _)| l.iter().copied())
        .collect();
    let scores: Vec<f64> = per_fold
        .iter()
        .flat_map(|(_, s)| s.iter().copied())
        .collect();
    let mut r = compute_metrics(&labels, &scores, threshold)?;
    r.folds = folds;
    Ok(r)
}
