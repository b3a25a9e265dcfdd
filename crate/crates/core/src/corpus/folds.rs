use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Label, LabeledHeadline};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldAssignment {
    pub k: usize,
    pub assignment: BTreeMap<u64, usize>,
}

impl FoldAssignment {
    /// Ids of each fold, ascending.
    pub fn folds(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new(); self.k];
        for (&id, &f) in &self.assignment {
            out[f].push(id);
        }
        out
    }

    pub fn fold_of(&self, id: u64) -> Option<usize> {
        self.assignment.get(&id).copied()
    }
}

/// Stratified k-fold split: each class is shuffled and dealt round-robin, the
/// second class continuing where the first stopped so fold sizes stay within one.
pub fn stratified_folds(corpus: &[LabeledHeadline], k: usize, seed: u64) -> Result<FoldAssignment> {
    let mut order: Vec<&LabeledHeadline> = corpus.iter().collect();
    order.sort_by_key(|h| h.id);
    if order.windows(2).any(|w| w[0].id == w[1].id) {
        return Err(Error::Data("duplicate headline id".into()));
    }
    let labels: Vec<Label> = order.iter().map(|h| h.label).collect();
    let folds = stratified_fold_indices(&labels, k, seed)?;
    Ok(FoldAssignment {
        k,
        assignment: order.iter().zip(folds).map(|(h, f)| (h.id, f)).collect(),
    })
}

/// Fold index for every position of `labels`.
pub fn stratified_fold_indices(labels: &[Label], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "k must be at least 2, got {k}"
        )));
    }
    let mut out = vec![0; labels.len()];
    let mut offset = 0usize;
    for (ci, label) in Label::BOTH.into_iter().enumerate() {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label).collect();
        if idx.len() < k {
            return Err(Error::InvalidArgument(format!(
                "{} {label} items cannot fill {k} folds",
                idx.len()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(ci as u64));
        idx.shuffle(&mut rng);
        for (j, &i) in idx.iter().enumerate() {
            out[i] = (offset + j) % k;
        }
        offset = (offset + idx.len()) % k;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(cb: usize, news: usize) -> Vec<LabeledHeadline> {
        (0..cb + news)
            .map(|i| LabeledHeadline {
                id: i as u64,
                text: format!("h{i}"),
                label: if i < cb {
                    Label::Clickbait
                } else {
                    Label::NonClickbait
                },
                source: None,
            })
            .collect()
    }

    #[test]
    fn balanced_two_folds() {
        let c = corpus(10, 10);
        let f = stratified_folds(&c, 2, 3).unwrap();
        for fold in f.folds() {
            let cb = fold.iter().filter(|&&id| id < 10).count();
            assert_eq!((cb, fold.len() - cb), (5, 5));
        }
    }

    #[test]
    fn full_scale_ten_folds() {
        let c = corpus(7500, 7500);
        let f = stratified_folds(&c, 10, 1).unwrap();
        for fold in f.folds() {
            let cb = fold.iter().filter(|&&id| id < 7500).count();
            assert_eq!((cb, fold.len() - cb), (750, 750));
        }
    }

    #[test]
    fn deterministic_and_rejects_bad_k() {
        let c = corpus(13, 9);
        assert_eq!(
            stratified_folds(&c, 3, 5).unwrap(),
            stratified_folds(&c, 3, 5).unwrap()
        );
        assert!(stratified_folds(&c, 1, 5).is_err());
        assert!(stratified_folds(&c, 10, 5).is_err());
    }
}
