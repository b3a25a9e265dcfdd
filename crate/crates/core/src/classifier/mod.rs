//! Main headline classifier: features, SVM / tree / forest, cross-validation
//! and the phrase-rule baseline.

pub mod features;
pub mod metrics;
pub mod svm;
pub mod tree;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annotation::{AnnotatedHeadline, Annotator};
use crate::bayes::DEFAULT_ALPHA;
use crate::corpus::{stratified_folds, Label, LabeledHeadline};
use crate::error::{Error, Result};
pub use features::{
    assemble, extract_features, headline_measures, FeatureGroup, FeatureVector, HeadlineItems,
    HeadlineMeasures, LexiconMatcher, NbScorers, FEATURE_NAMES, N_FEATURES,
};
pub use metrics::{compute_metrics, pooled_report, roc_auc, Confusion, EvalReport, FoldMetrics};
pub use svm::{train_svm_smo, SvmModel, SvmParams};
pub use tree::{train_forest, train_tree, ForestModel, ForestParams, TreeModel, TreeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Svm,
    Tree,
    Forest,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Svm, ModelKind::Tree, ModelKind::Forest];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Svm => "svm",
            ModelKind::Tree => "tree",
            ModelKind::Forest => "forest",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svm" => Ok(ModelKind::Svm),
            "tree" => Ok(ModelKind::Tree),
            "forest" => Ok(ModelKind::Forest),
            _ => Err(Error::InvalidArgument(format!("unknown model kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub model: ModelKind,
    pub svm: SvmParams,
    pub tree: TreeParams,
    pub forest: ForestParams,
    pub min_doc_freq: u32,
    pub alpha: f64,
    /// Inner folds used to produce out-of-fold NB scores for training rows.
    pub inner_folds: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            model: ModelKind::Svm,
            svm: SvmParams::default(),
            tree: TreeParams::default(),
            forest: ForestParams::default(),
            min_doc_freq: 5,
            alpha: DEFAULT_ALPHA,
            inner_folds: 5,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MainModel {
    Svm(SvmModel),
    Tree(TreeModel),
    Forest(ForestModel),
}

impl MainModel {
    pub fn train(
        kind: ModelKind,
        xs: &[Vec<f64>],
        labels: &[Label],
        cfg: &TrainConfig,
    ) -> Result<MainModel> {
        let classes: Vec<usize> = labels.iter().map(|l| l.index()).collect();
        Ok(match kind {
            ModelKind::Svm => {
                let ys: Vec<f64> = labels.iter().map(|l| l.sign()).collect();
                MainModel::Svm(train_svm_smo(xs, &ys, &cfg.svm)?)
            }
            ModelKind::Tree => MainModel::Tree(train_tree(xs, &classes, &cfg.tree, cfg.seed)?),
            ModelKind::Forest => {
                MainModel::Forest(train_forest(xs, &classes, &cfg.forest, cfg.seed)?)
            }
        })
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            MainModel::Svm(_) => ModelKind::Svm,
            MainModel::Tree(_) => ModelKind::Tree,
            MainModel::Forest(_) => ModelKind::Forest,
        }
    }

    /// SVM margin, or clickbait probability for the tree models.
    pub fn decision(&self, x: &[f64]) -> f64 {
        match self {
            MainModel::Svm(m) => m.decision(x),
            MainModel::Tree(m) => m.decision(x),
            MainModel::Forest(m) => m.decision(x),
        }
    }

    pub fn threshold(&self) -> f64 {
        threshold(self.kind())
    }
}

pub fn threshold(kind: ModelKind) -> f64 {
    match kind {
        ModelKind::Svm => 0.0,
        _ => 0.5,
    }
}

/// A corpus annotated once, with everything fold-independent precomputed.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub headlines: Vec<LabeledHeadline>,
    pub annotated: Vec<AnnotatedHeadline>,
    pub measures: Vec<HeadlineMeasures>,
    pub items: Vec<HeadlineItems>,
}

impl Prepared {
    pub fn new(
        headlines: Vec<LabeledHeadline>,
        annotator: &Annotator,
        lex: &LexiconMatcher,
    ) -> Prepared {
        let annotated = headlines
            .par_iter()
            .map(|h| annotator.annotate(h.id, &h.text))
            .collect();
        Prepared::from_annotated(headlines, annotated, lex)
    }

    pub fn from_annotated(
        headlines: Vec<LabeledHeadline>,
        annotated: Vec<AnnotatedHeadline>,
        lex: &LexiconMatcher,
    ) -> Prepared {
        let measures = annotated
            .par_iter()
            .map(|a| headline_measures(a, lex))
            .collect();
        let items = annotated.par_iter().map(HeadlineItems::of).collect();
        Prepared {
            headlines,
            annotated,
            measures,
            items,
        }
    }

    pub fn len(&self) -> usize {
        self.headlines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.headlines.is_empty()
    }

    pub fn labels(&self, idx: &[usize]) -> Vec<Label> {
        idx.iter().map(|&i| self.headlines[i].label).collect()
    }
}

/// NB scorers fit on `train`, full feature vectors for train (out-of-fold NB
/// scores) and for `test`.
pub struct FoldFeatures {
    pub scorers: NbScorers,
    pub train: Vec<FeatureVector>,
    pub test: Vec<FeatureVector>,
}

pub fn fold_features(
    prep: &Prepared,
    train: &[usize],
    test: &[usize],
    cfg: &TrainConfig,
) -> Result<FoldFeatures> {
    let items: Vec<&HeadlineItems> = train.iter().map(|&i| &prep.items[i]).collect();
    let labels = prep.labels(train);
    let scorers = NbScorers::fit(&items, &labels, cfg.min_doc_freq, cfg.alpha)?;
    let stacked = scorers.stacked_scores(&items, &labels, cfg.inner_folds, cfg.seed)?;
    let train_fv = train
        .iter()
        .zip(stacked)
        .map(|(&i, s)| assemble(&prep.measures[i], s))
        .collect();
    let test_fv = test
        .iter()
        .map(|&i| assemble(&prep.measures[i], scorers.scores(&prep.items[i])))
        .collect();
    Ok(FoldFeatures {
        scorers,
        train: train_fv,
        test: test_fv,
    })
}

fn masked_rows(fvs: &[FeatureVector], group: FeatureGroup) -> Vec<Vec<f64>> {
    fvs.iter().map(|f| f.masked(group).0.to_vec()).collect()
}

/// Everything needed to classify a new annotated headline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedClassifier {
    pub group: FeatureGroup,
    pub scorers: NbScorers,
    pub model: MainModel,
}

impl TrainedClassifier {
    pub fn fit(
        prep: &Prepared,
        train: &[usize],
        cfg: &TrainConfig,
        group: FeatureGroup,
    ) -> Result<TrainedClassifier> {
        let ff = fold_features(prep, train, &[], cfg)?;
        let model = MainModel::train(
            cfg.model,
            &masked_rows(&ff.train, group),
            &prep.labels(train),
            cfg,
        )?;
        Ok(TrainedClassifier {
            group,
            scorers: ff.scorers,
            model,
        })
    }

    pub fn features(&self, h: &AnnotatedHeadline, lex: &LexiconMatcher) -> FeatureVector {
        extract_features(h, lex, &self.scorers)
    }

    pub fn decision(&self, fv: &FeatureVector) -> f64 {
        self.model.decision(&fv.masked(self.group).0)
    }

    pub fn label_for(&self, score: f64) -> Label {
        if score > self.model.threshold() {
            Label::Clickbait
        } else {
            Label::NonClickbait
        }
    }
}

fn fold_indices(prep: &Prepared, k: usize, seed: u64) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let folds = stratified_folds(&prep.headlines, k, seed)?;
    Ok((0..k)
        .map(|f| {
            let (test, train): (Vec<usize>, Vec<usize>) =
                (0..prep.len()).partition(|&i| folds.fold_of(prep.headlines[i].id) == Some(f));
            (train, test)
        })
        .collect())
}

/// k-fold CV of one model kind on one feature group. Every learned artifact is
/// fit on the training folds only.
pub fn cross_validate(
    prep: &Prepared,
    lex: &LexiconMatcher,
    cfg: &TrainConfig,
    group: FeatureGroup,
    k: usize,
    seed: u64,
) -> Result<EvalReport> {
    let t = table2(prep, lex, cfg, &[cfg.model], &[group], k, seed)?;
    Ok(t.rows
        .into_iter()
        .next()
        .and_then(|r| r.reports.into_iter().next())
        .expect("one cell"))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Table2Row {
    pub group: FeatureGroup,
    /// One report per entry of `Table2::models`.
    pub reports: Vec<EvalReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Table2 {
    pub models: Vec<ModelKind>,
    pub rows: Vec<Table2Row>,
    pub downworthy: EvalReport,
    pub k: usize,
    pub n: usize,
    pub elapsed_secs: f64,
}

impl Table2 {
    pub fn get(&self, group: FeatureGroup, model: ModelKind) -> Option<&EvalReport> {
        let m = self.models.iter().position(|&x| x == model)?;
        self.rows
            .iter()
            .find(|r| r.group == group)
            .map(|r| &r.reports[m])
    }
}

/// The evaluation grid: every (group, model) cell cross-validated on the same
/// folds, plus the rule baseline on the same folds.
pub fn table2(
    prep: &Prepared,
    lex: &LexiconMatcher,
    cfg: &TrainConfig,
    models: &[ModelKind],
    groups: &[FeatureGroup],
    k: usize,
    seed: u64,
) -> Result<Table2> {
    let start = Instant::now();
    let folds = fold_indices(prep, k, seed)?;
    type Cell = (Vec<Label>, Vec<f64>);
    // per fold: [group][model] -> (labels, scores)
    let per_fold: Vec<Vec<Vec<Cell>>> = folds
        .par_iter()
        .map(|(train, test)| {
            let ff = fold_features(prep, train, test, cfg)?;
            let ytr = prep.labels(train);
            let yte = prep.labels(test);
            groups
                .iter()
                .map(|&g| {
                    let xtr = masked_rows(&ff.train, g);
                    let xte = masked_rows(&ff.test, g);
                    models
                        .iter()
                        .map(|&m| {
                            let model = MainModel::train(m, &xtr, &ytr, cfg)?;
                            Ok((yte.clone(), xte.iter().map(|x| model.decision(x)).collect()))
                        })
                        .collect::<Result<Vec<Cell>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    for (gi, &group) in groups.iter().enumerate() {
        let mut reports = Vec::new();
        for (mi, &m) in models.iter().enumerate() {
            let cells: Vec<Cell> = per_fold.iter().map(|f| f[gi][mi].clone()).collect();
            reports.push(pooled_report(&cells, threshold(m))?);
        }
        rows.push(Table2Row { group, reports });
    }

    let dw: Vec<Cell> = folds
        .iter()
        .map(|(_, test)| {
            let labels = prep.labels(test);
            let scores = test
                .iter()
                .map(|&i| {
                    f64::from(u8::from(
                        lex.downworthy(&prep.headlines[i].text).is_clickbait(),
                    ))
                })
                .collect();
            (labels, scores)
        })
        .collect();
    let downworthy = pooled_report(&dw, 0.5)?;
    Ok(Table2 {
        models: models.to_vec(),
        rows,
        downworthy,
        k,
        n: prep.len(),
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}

/// Rule baseline over raw texts.
pub fn baseline_downworthy(text: &str, lex: &LexiconMatcher) -> Label {
    lex.downworthy(text)
}
