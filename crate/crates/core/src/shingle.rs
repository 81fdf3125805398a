//! Text canonicalization and character k-shingling over a global vocabulary.
//!
//! Each record becomes the set (or multiset) of length-k character grams of
//! its canonicalized tokens. By default shingles never span token boundaries;
//! set `per_token: false` to shingle the whole concatenated string instead.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Record};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShingleConfig {
    /// Shingle length k >= 1.
    pub k: usize,
    /// Shingle each whitespace token separately (no cross-token grams).
    pub per_token: bool,
    /// Uppercase before shingling.
    pub uppercase: bool,
    /// Drop non-alphanumeric characters before shingling.
    pub strip_non_alnum: bool,
    /// In frozen-vocabulary mode, error on unseen shingles instead of
    /// silently dropping them.
    pub error_on_unseen: bool,
}

impl Default for ShingleConfig {
    fn default() -> Self {
        ShingleConfig {
            k: 2,
            per_token: true,
            uppercase: true,
            strip_non_alnum: true,
            error_on_unseen: false,
        }
    }
}

impl ShingleConfig {
    pub fn with_k(k: usize) -> Self {
        ShingleConfig {
            k,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("shingle length k must be >= 1".into()));
        }
        Ok(())
    }
}

/// Split on whitespace, uppercase and strip per the flags, drop empty tokens.
///
/// With `per_token: false` the result is a single token holding the whole
/// canonicalized string.
pub fn canonicalize(text: &str, config: &ShingleConfig) -> Vec<String> {
    let clean = |t: &str| -> String {
        t.chars()
            .filter(|c| !config.strip_non_alnum || c.is_alphanumeric())
            .flat_map(|c| {
                if config.uppercase {
                    c.to_uppercase().collect::<Vec<_>>()
                } else {
                    vec![c]
                }
            })
            .collect()
    };
    if config.per_token {
        text.split_whitespace()
            .map(clean)
            .filter(|t| !t.is_empty())
            .collect()
    } else {
        let joined: String = text
            .split_whitespace()
            .map(clean)
            .collect::<Vec<_>>()
            .concat();
        if joined.is_empty() {
            vec![]
        } else {
            vec![joined]
        }
    }
}

/// Bijective shingle-string <-> dense index mapping.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    index: HashMap<String, u32>,
    terms: Vec<String>,
}

impl Vocabulary {
    /// Universe size D.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, shingle: &str) -> Option<u32> {
        self.index.get(shingle).copied()
    }

    pub fn term(&self, index: u32) -> &str {
        &self.terms[index as usize]
    }

    fn intern(&mut self, shingle: &str) -> u32 {
        if let Some(&i) = self.index.get(shingle) {
            return i;
        }
        let i = self.terms.len() as u32;
        self.terms.push(shingle.to_string());
        self.index.insert(shingle.to_string(), i);
        i
    }
}

/// Shingle set of one record: sorted distinct feature indices plus
/// multiplicity counts for the weighted paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShingleSet {
    pub record: u32,
    /// Distinct feature indices, ascending.
    pub indices: Vec<u32>,
    /// Multiplicity of each index, aligned with `indices`.
    pub counts: Vec<u32>,
}

impl ShingleSet {
    pub fn from_indices(record: u32, mut raw: Vec<u32>) -> Self {
        raw.sort_unstable();
        let mut indices = Vec::new();
        let mut counts = Vec::new();
        for i in raw {
            if indices.last() == Some(&i) {
                *counts.last_mut().unwrap() += 1;
            } else {
                indices.push(i);
                counts.push(1);
            }
        }
        ShingleSet {
            record,
            indices,
            counts,
        }
    }

    /// Number of distinct shingles d.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Raw shingle strings of canonicalized text: the k-grams of each token, with
/// multiplicity. Tokens shorter than k contribute themselves whole.
pub fn shingle_strings(text: &str, config: &ShingleConfig) -> Vec<String> {
    let tokens = canonicalize(text, config);
    let mut out = Vec::new();
    for token in tokens {
        let chars: Vec<char> = token.chars().collect();
        if chars.len() <= config.k {
            out.push(token);
        } else {
            for window in chars.windows(config.k) {
                out.push(window.iter().collect());
            }
        }
    }
    out
}

/// Map a record's shingles through a frozen vocabulary.
///
/// Unseen shingles are dropped (or rejected, per `error_on_unseen`).
pub fn shingle_record(
    record_index: u32,
    record: &Record,
    config: &ShingleConfig,
    vocab: &Vocabulary,
) -> Result<ShingleSet> {
    config.validate()?;
    let mut raw = Vec::new();
    for s in shingle_strings(&record.joined_text(), config) {
        match vocab.index_of(&s) {
            Some(i) => raw.push(i),
            None if config.error_on_unseen => {
                return Err(Error::Vocabulary(format!(
                    "shingle '{s}' of record '{}' not in frozen vocabulary",
                    record.id
                )))
            }
            None => {}
        }
    }
    Ok(ShingleSet::from_indices(record_index, raw))
}

/// Build the vocabulary of all distinct shingles occurring in the corpus.
pub fn build_vocabulary(corpus: &Corpus, config: &ShingleConfig) -> Result<Vocabulary> {
    config.validate()?;
    let mut vocab = Vocabulary::default();
    for record in corpus.records() {
        for s in shingle_strings(&record.joined_text(), config) {
            vocab.intern(&s);
        }
    }
    if vocab.is_empty() {
        return Err(Error::Vocabulary(
            "corpus yields no shingles under this configuration".into(),
        ));
    }
    Ok(vocab)
}

/// Vocabulary plus the shingle set of every record, in record order.
pub fn shingle_corpus(
    corpus: &Corpus,
    config: &ShingleConfig,
) -> Result<(Vocabulary, Vec<ShingleSet>)> {
    let vocab = build_vocabulary(corpus, config)?;
    let sets = corpus
        .records()
        .iter()
        .enumerate()
        .map(|(i, r)| shingle_record(i as u32, r, config, &vocab))
        .collect::<Result<Vec<_>>>()?;
    Ok((vocab, sets))
}
