//! The model bundle: every trained artifact plus the lexicons it was built
//! with, in one versioned JSON document.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::annotation::{
    AnnotatedHeadline, Annotator, ParserModel, ParserParams, TaggerModel, TaggerParams,
};
use crate::classifier::{FeatureGroup, LexiconMatcher, Prepared, TrainConfig, TrainedClassifier};
use crate::corpus::{corpus_hash, Label, LabeledHeadline, Lexicons};
use crate::error::{Error, Result};
use crate::util::sha256_hex;

pub const BUNDLE_FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelBundle {
    pub format: u32,
    pub version: u64,
    pub corpus_hash: String,
    pub corpus_size: usize,
    pub config: TrainConfig,
    pub tagger: TaggerModel,
    pub parser: ParserModel,
    pub lexicons: Lexicons,
    pub lexicon_hashes: BTreeMap<String, String>,
    pub classifier: TrainedClassifier,
}

impl ModelBundle {
    /// Train annotators on the treebank, then the classifier on the corpus.
    pub fn train(
        corpus: &[LabeledHeadline],
        treebank: &[AnnotatedHeadline],
        lexicons: Lexicons,
        cfg: &TrainConfig,
        version: u64,
    ) -> Result<ModelBundle> {
        let annotator =
            Annotator::train(treebank, &TaggerParams::default(), &ParserParams::default())?;
        ModelBundle::train_with_annotator(corpus, &annotator, lexicons, cfg, version)
    }

    /// Classifier training only, reusing already trained annotators.
    pub fn train_with_annotator(
        corpus: &[LabeledHeadline],
        annotator: &Annotator,
        lexicons: Lexicons,
        cfg: &TrainConfig,
        version: u64,
    ) -> Result<ModelBundle> {
        if corpus.is_empty() {
            return Err(Error::Training("empty training corpus".into()));
        }
        for l in Label::BOTH {
            if !corpus.iter().any(|h| h.label == l) {
                return Err(Error::Training(format!(
                    "no {l} headlines in the training corpus"
                )));
            }
        }
        let lex = LexiconMatcher::new(&lexicons);
        let prep = Prepared::new(corpus.to_vec(), annotator, &lex);
        let all: Vec<usize> = (0..prep.len()).collect();
        let classifier = TrainedClassifier::fit(&prep, &all, cfg, FeatureGroup::All)?;
        Ok(ModelBundle {
            format: BUNDLE_FORMAT,
            version,
            corpus_hash: corpus_hash(corpus),
            corpus_size: corpus.len(),
            config: cfg.clone(),
            tagger: (*annotator.tagger).clone(),
            parser: (*annotator.parser).clone(),
            lexicon_hashes: lexicons.hashes(),
            lexicons,
            classifier,
        })
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        Ok(serde_json::to_vec(self)?)
    }

    pub fn from_json(bytes: &[u8]) -> Result<ModelBundle> {
        let b: ModelBundle = serde_json::from_slice(bytes)?;
        if b.format != BUNDLE_FORMAT {
            return Err(Error::Data(format!(
                "unsupported bundle format {} (expected {BUNDLE_FORMAT})",
                b.format
            )));
        }
        if b.lexicons.hashes() != b.lexicon_hashes {
            return Err(Error::Data(
                "bundle lexicons do not match their recorded hashes".into(),
            ));
        }
        Ok(b)
    }

    /// Write via a temporary sibling and rename, so readers never see a partial file.
    pub fn save(&self, path: &Path) -> Result<()> {
        let bytes = self.to_json()?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, &bytes).map_err(|e| Error::io(&tmp, e))?;
        std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<ModelBundle> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        ModelBundle::from_json(&bytes)
    }

    pub fn hash(&self) -> Result<String> {
        Ok(sha256_hex(&self.to_json()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub label: Label,
    pub score: f64,
}

/// A loaded bundle ready to classify.
#[derive(Debug, Clone)]
pub struct Engine {
    pub bundle: Arc<ModelBundle>,
    pub annotator: Annotator,
    pub lex: Arc<LexiconMatcher>,
}

impl Engine {
    pub fn new(bundle: ModelBundle) -> Engine {
        let annotator = Annotator::new(
            Arc::new(bundle.tagger.clone()),
            Arc::new(bundle.parser.clone()),
        );
        let lex = Arc::new(LexiconMatcher::new(&bundle.lexicons));
        Engine {
            bundle: Arc::new(bundle),
            annotator,
            lex,
        }
    }

    pub fn version(&self) -> u64 {
        self.bundle.version
    }

    pub fn annotate(&self, text: &str) -> AnnotatedHeadline {
        self.annotator.annotate(0, text)
    }

    pub fn classify_annotated(&self, h: &AnnotatedHeadline) -> Classification {
        let c = &self.bundle.classifier;
        let score = c.decision(&c.features(h, &self.lex));
        Classification {
            label: c.label_for(score),
            score,
        }
    }

    pub fn classify(&self, text: &str) -> Result<Classification> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::InvalidArgument("empty headline".into()));
        }
        Ok(self.classify_annotated(&self.annotate(text)))
    }
}
