//! Clickbait headline classification and personalized blocking.

pub mod annotation;
pub mod bayes;
pub mod blocker;
pub mod classifier;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod model;
pub mod ngrams;
pub mod report;
pub mod service;
pub mod simulate;
pub mod util;

pub use error::{Error, Result};
