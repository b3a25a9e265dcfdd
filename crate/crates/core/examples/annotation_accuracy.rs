//! Held-out tagger accuracy and parser attachment scores on the bundled treebank.
//!
//! cargo run --release -p clickbait-core --example annotation_accuracy

use std::path::Path;
use std::time::Instant;

use clickbait_core::annotation::conllu::ingest_conllu;
use clickbait_core::annotation::{ParserModel, ParserParams, TaggerModel, TaggerParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/treebank/headlines.conllu");
    let tb = ingest_conllu(&path)?.headlines;
    let split = tb.len() * 9 / 10;
    let (train, test) = tb.split_at(split);

    let t0 = Instant::now();
    let tagger = TaggerModel::train(train, &TaggerParams::default())?;
    println!("tagger trained in {:.1?}", t0.elapsed());
    println!("held-out tag accuracy: {:.4}", tagger.accuracy(test));

    let t0 = Instant::now();
    let parser = ParserModel::train(train, &ParserParams::default())?;
    println!("parser trained in {:.1?}", t0.elapsed());
    let (uas, las) = parser.attachment_scores(test);
    println!("held-out UAS {uas:.4} LAS {las:.4} (gold tags)");
    Ok(())
}
