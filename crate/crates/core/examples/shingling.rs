//! Canonicalization and k-shingling of a small hand-written corpus.
//!
//!     cargo run --example shingling

use shingleblock::corpus::{Corpus, Record};
use shingleblock::shingle::{build_vocabulary, shingle_record, ShingleConfig};

fn record(id: &str, given: &str, surname: &str, city: &str) -> Record {
    Record {
        id: id.to_string(),
        fields: vec![
            ("given".into(), given.into()),
            ("surname".into(), surname.into()),
            ("city".into(), city.into()),
        ],
        entity_label: None,
    }
}

fn main() -> shingleblock::Result<()> {
    let corpus = Corpus::new(vec![
        record("r1", "Ted", "Baker", "Springfield"),
        record("r2", "Theo", "Baker", "Springfeild"), // typo'd duplicate
        record("r3", "Sammy", "Smith", "Riverton"),
    ])?;

    for k in [1usize, 2, 3] {
        let config = ShingleConfig::with_k(k);
        let vocab = build_vocabulary(&corpus, &config)?;
        println!("k = {k}: vocabulary of {} shingles", vocab.len());
        for (i, rec) in corpus.records().iter().enumerate() {
            let set = shingle_record(i as u32, rec, &config, &vocab)?;
            let grams: Vec<&str> = set.indices.iter().map(|&x| vocab.term(x)).collect();
            println!("  {}  {{{}}}", rec.id, grams.join(", "));
        }
        println!();
    }
    Ok(())
}
