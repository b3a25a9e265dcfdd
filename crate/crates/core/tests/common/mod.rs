#![allow(dead_code)]

pub mod oracles;

use std::sync::{Arc, OnceLock};

use clickbait_core::annotation::conllu::bundled_treebank;
use clickbait_core::annotation::Annotator;
use clickbait_core::classifier::TrainConfig;
use clickbait_core::corpus::{sample_corpus, Lexicons};
use clickbait_core::model::{Engine, ModelBundle};

/// Version-1 bundle trained on the bundled sample; trained once per test binary.
pub fn bundle() -> &'static ModelBundle {
    static B: OnceLock<ModelBundle> = OnceLock::new();
    B.get_or_init(|| {
        ModelBundle::train(
            &sample_corpus(),
            &bundled_treebank(),
            Lexicons::bundled(),
            &TrainConfig::default(),
            1,
        )
        .expect("sample corpus trains")
    })
}

pub fn engine() -> Arc<Engine> {
    static E: OnceLock<Arc<Engine>> = OnceLock::new();
    E.get_or_init(|| Arc::new(Engine::new(bundle().clone())))
        .clone()
}

pub fn annotator() -> Annotator {
    engine().annotator.clone()
}

pub const USER: &str = "0123456789abcdef0123456789abcdef0123456789abcdef0123456789abcdef";
pub const OTHER_USER: &str = "fedcba9876543210fedcba9876543210fedcba9876543210fedcba9876543210";
