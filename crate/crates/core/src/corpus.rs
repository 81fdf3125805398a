//! Record ingestion, ground truth, and synthetic corpus generation.
//!
//! A corpus is an immutable list of records, each with an opaque id, a set of
//! named text fields, and an optional ground-truth entity label. Ground truth
//! is stored as unordered record *pairs* (not clusters); all evaluation
//! downstream is pair-based.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One row of a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// Unique opaque identifier.
    pub id: String,
    /// Ordered (field-name, text-value) pairs. Missing values ingest as "".
    pub fields: Vec<(String, String)>,
    /// Ground-truth entity identifier, when known.
    pub entity_label: Option<String>,
}

impl Record {
    /// All field values joined with single spaces, in field order.
    pub fn joined_text(&self) -> String {
        let mut out = String::new();
        for (_, v) in &self.fields {
            if !v.is_empty() {
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push_str(v);
            }
        }
        out
    }
}

/// An unordered pair of record indices, stored canonically (low, high).
pub type Pair = (u32, u32);

/// Canonicalize an unordered index pair.
#[inline]
pub fn canonical_pair(a: u32, b: u32) -> Pair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// True-match pairs, by record index within one corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundTruth {
    pub match_pairs: BTreeSet<Pair>,
}

impl GroundTruth {
    pub fn len(&self) -> usize {
        self.match_pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.match_pairs.is_empty()
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.match_pairs.contains(&canonical_pair(a, b))
    }
}

/// Immutable record collection with id -> index resolution.
#[derive(Debug, Clone)]
pub struct Corpus {
    records: Vec<Record>,
    index: HashMap<String, u32>,
    truth: Option<GroundTruth>,
}

impl Corpus {
    /// Validates id uniqueness and the at-least-one-nonempty-field invariant.
    pub fn new(records: Vec<Record>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::Ingestion("corpus has no records".into()));
        }
        let mut index = HashMap::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if r.fields.iter().all(|(_, v)| v.is_empty()) {
                return Err(Error::Ingestion(format!(
                    "record '{}' has no non-empty field",
                    r.id
                )));
            }
            if index.insert(r.id.clone(), i as u32).is_some() {
                return Err(Error::Ingestion(format!("duplicate record id '{}'", r.id)));
            }
        }
        Ok(Corpus {
            records,
            index,
            truth: None,
        })
    }

    pub fn n(&self) -> usize {
        self.records.len()
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn record(&self, i: u32) -> &Record {
        &self.records[i as usize]
    }

    pub fn index_of(&self, id: &str) -> Option<u32> {
        self.index.get(id).copied()
    }

    pub fn truth(&self) -> Option<&GroundTruth> {
        self.truth.as_ref()
    }

    pub fn set_truth(&mut self, truth: GroundTruth) {
        self.truth = Some(truth);
    }
}

/// All unordered pairs of records sharing an entity label.
///
/// Errors if any record lacks a label.
pub fn derive_truth(corpus: &Corpus) -> Result<GroundTruth> {
    let mut by_label: HashMap<&str, Vec<u32>> = HashMap::new();
    for (i, r) in corpus.records().iter().enumerate() {
        match &r.entity_label {
            Some(l) => by_label.entry(l.as_str()).or_default().push(i as u32),
            None => {
                return Err(Error::Truth(format!(
                    "record '{}' has no entity label",
                    r.id
                )))
            }
        }
    }
    let mut match_pairs = BTreeSet::new();
    for members in by_label.values() {
        for (a, &x) in members.iter().enumerate() {
            for &y in &members[a + 1..] {
                match_pairs.insert(canonical_pair(x, y));
            }
        }
    }
    Ok(GroundTruth { match_pairs })
}

/// Load a delimited-text corpus (comma-separated, UTF-8, header row).
///
/// `schema` names the field columns to ingest; an `id` column supplies record
/// ids when present, otherwise row ordinals are used. When `label_column` is
/// given the corpus also carries derived ground truth.
pub fn load_corpus(
    path: &Path,
    schema: &[String],
    label_column: Option<&str>,
) -> Result<Corpus> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);

    let mut field_cols = Vec::with_capacity(schema.len());
    for name in schema {
        match col(name) {
            Some(i) => field_cols.push((name.clone(), i)),
            None => return Err(Error::Schema(format!("column '{name}' not in header"))),
        }
    }
    let label_col = match label_column {
        Some(name) => Some(
            col(name).ok_or_else(|| Error::Schema(format!("label column '{name}' not in header")))?,
        ),
        None => None,
    };
    let id_col = col("id");

    let mut records = Vec::new();
    for (row, result) in reader.records().enumerate() {
        let rec = result?;
        let id = match id_col {
            Some(i) => rec.get(i).unwrap_or("").to_string(),
            None => row.to_string(),
        };
        let fields = field_cols
            .iter()
            .map(|(name, i)| (name.clone(), rec.get(*i).unwrap_or("").to_string()))
            .collect();
        let entity_label = label_col.map(|i| rec.get(i).unwrap_or("").to_string());
        records.push(Record {
            id,
            fields,
            entity_label,
        });
    }
    if records.is_empty() {
        return Err(Error::Ingestion(format!("{} has no data rows", path.display())));
    }
    let mut corpus = Corpus::new(records)?;
    if label_column.is_some() {
        let truth = derive_truth(&corpus)?;
        corpus.set_truth(truth);
    }
    Ok(corpus)
}

/// Load ground truth from a two-column pairs file with header `id_a,id_b`.
pub fn load_truth_pairs(path: &Path, corpus: &Corpus) -> Result<GroundTruth> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut match_pairs = BTreeSet::new();
    for result in reader.records() {
        let rec = result?;
        let (a, b) = (rec.get(0).unwrap_or(""), rec.get(1).unwrap_or(""));
        let ia = corpus
            .index_of(a)
            .ok_or_else(|| Error::Truth(format!("unknown record id '{a}' in pairs file")))?;
        let ib = corpus
            .index_of(b)
            .ok_or_else(|| Error::Truth(format!("unknown record id '{b}' in pairs file")))?;
        if ia == ib {
            return Err(Error::Truth(format!("self-pair ({a},{a}) in pairs file")));
        }
        match_pairs.insert(canonical_pair(ia, ib));
    }
    Ok(GroundTruth { match_pairs })
}

/// Configuration for the synthetic duplicate-record generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthConfig {
    /// Number of distinct entities.
    pub n_base: usize,
    /// Fraction of entities receiving duplicate records.
    pub dup_rate: f64,
    /// Each duplicated entity gets 1..=max_dups duplicates.
    pub max_dups: usize,
    /// Per-character corruption probability applied to duplicates.
    pub noise: f64,
    pub seed: u64,
}

impl SynthConfig {
    fn validate(&self) -> Result<()> {
        if self.n_base == 0 {
            return Err(Error::Config("n_base must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.dup_rate) {
            return Err(Error::Config("dup_rate must lie in [0,1]".into()));
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return Err(Error::Config("noise must lie in [0,1]".into()));
        }
        if self.max_dups == 0 {
            return Err(Error::Config("max_dups must be positive".into()));
        }
        Ok(())
    }
}

/// Field names emitted by [`generate_synthetic`], in order.
pub const SYNTH_SCHEMA: [&str; 13] = [
    "given", "surname", "father", "mother", "city", "district", "street", "occupation", "dob",
    "phone", "email", "national_id", "refs",
];

const GIVEN: [&str; 48] = [
    "AHMAD", "OMAR", "YOUSEF", "KHALED", "SAMIR", "TAREK", "NABIL", "FARES", "HASSAN", "IBRAHIM",
    "KARIM", "MAHER", "RAMI", "ZIAD", "WALID", "BASSAM", "FADI", "GHASSAN", "HANI", "IMAD",
    "JAMAL", "KAMAL", "LUTFI", "MARWAN", "NADER", "OSAMA", "QASEM", "RIAD", "SALIM", "TALAL",
    "AMIRA", "BUSHRA", "DALIA", "FARIDA", "GHADA", "HALA", "INAS", "JUMANA", "LAMIS", "MAHA",
    "NADIA", "RANIA", "SAMIRA", "THURAYA", "WIDAD", "YASMIN", "ZAINAB", "LINA",
];

const SURNAME: [&str; 40] = [
    "HADDAD", "KHOURY", "NASSAR", "SALEH", "AZIZ", "BARAKAT", "DAHER", "FARAH", "GHANEM",
    "HAMDAN", "ISSA", "JABER", "KANAAN", "MANSOUR", "NAJJAR", "QASSEM", "RAHAL", "SABBAGH",
    "TAHA", "YAZBEK", "ZAIDAN", "ABBAS", "BITAR", "CHAHINE", "DAGHER", "FAKHOURY", "GERGES",
    "HARB", "KASSIS", "MAALOUF", "NEHME", "OBEID", "RIZK", "SHAMMAS", "TANNOUS", "WAKIM",
    "YOUNES", "ZOGHBI", "ASSAF", "BADRAN",
];

const CITY: [&str; 24] = [
    "DAMAS", "ALEPPO", "HOMS", "HAMA", "LATAKIA", "TARTUS", "IDLIB", "RAQQA", "DEIR", "HASAKA",
    "QAMISHLI", "DOUMA", "DARAYYA", "MANBIJ", "AFRIN", "AZAZ", "BANIYAS", "JABLEH", "SAFITA",
    "SALAMIYAH", "TADMUR", "QUSAYR", "NAWA", "SHAHBA",
];

const DISTRICT: [&str; 20] = [
    "NORTH", "SOUTH", "EAST", "WEST", "CENTRAL", "HARBOR", "MARKET", "GARDEN", "CASTLE", "RIVER",
    "VALLEY", "HILLS", "OLDTOWN", "STATION", "ORCHARD", "SPRING", "MEADOW", "BRIDGE", "TOWER",
    "GATE",
];

const STREET: [&str; 20] = [
    "CEDAR", "OLIVE", "JASMIN", "PALM", "ROSE", "ALMOND", "FIG", "LEMON", "WALNUT", "PINE",
    "MYRTLE", "LAUREL", "POPLAR", "WILLOW", "ACACIA", "TULIP", "LILAC", "MAPLE", "ELM", "ASH",
];

const OCCUPATION: [&str; 16] = [
    "TEACHER", "FARMER", "DRIVER", "TAILOR", "BAKER", "MASON", "CLERK", "NURSE", "WELDER",
    "PAINTER", "BARBER", "COOK", "GUARD", "TRADER", "SMITH", "WEAVER",
];

const DOMAIN: [&str; 8] = [
    "MAILCO.NET", "POSTBOX.ORG", "COURIER.COM", "LETTERS.NET", "INBOXY.ORG", "TELEGRAPH.COM",
    "DOVENET.ORG", "PIGEON.COM",
];

fn pick<'a>(rng: &mut ChaCha20Rng, pool: &[&'a str]) -> &'a str {
    pool[rng.random_range(0..pool.len())]
}

fn alnum_code(rng: &mut ChaCha20Rng, len: usize) -> String {
    const ALPHABET: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    (0..len)
        .map(|_| char::from(ALPHABET[rng.random_range(0..ALPHABET.len())]))
        .collect()
}

fn base_fields(rng: &mut ChaCha20Rng) -> Vec<(String, String)> {
    let dob = format!(
        "{:04}{:02}{:02}",
        rng.random_range(1930..2012),
        rng.random_range(1..13),
        rng.random_range(1..29)
    );
    let phone = format!("{:09}", rng.random_range(0..1_000_000_000u64));
    let given = pick(rng, &GIVEN).to_string();
    let surname = pick(rng, &SURNAME).to_string();
    let email = format!(
        "{given}.{surname}{}@{}",
        rng.random_range(10..100),
        pick(rng, &DOMAIN)
    );
    let national_id = alnum_code(rng, 14);
    // filing references: many short high-entropy codes, so records carry a
    // rich shingle set while single typos stay local to one code
    let refs = (0..80)
        .map(|_| alnum_code(rng, 6))
        .collect::<Vec<_>>()
        .join(" ");
    let values = [
        given,
        surname,
        pick(rng, &GIVEN).to_string(),
        pick(rng, &GIVEN).to_string(),
        pick(rng, &CITY).to_string(),
        pick(rng, &DISTRICT).to_string(),
        format!("{} {}", pick(rng, &STREET), rng.random_range(1..200)),
        pick(rng, &OCCUPATION).to_string(),
        dob,
        phone,
        email,
        national_id,
        refs,
    ];
    SYNTH_SCHEMA
        .iter()
        .zip(values)
        .map(|(name, v)| (name.to_string(), v))
        .collect()
}

fn random_char_like(rng: &mut ChaCha20Rng, c: char) -> char {
    if c.is_ascii_digit() {
        char::from(b'0' + rng.random_range(0..10u8))
    } else {
        char::from(b'A' + rng.random_range(0..26u8))
    }
}

/// Per-character corruption: substitute, delete, or transpose-adjacent,
/// chosen uniformly wherever the noise coin fires.
fn corrupt(rng: &mut ChaCha20Rng, text: &str, noise: f64) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        if chars[i] != ' ' && rng.random::<f64>() < noise {
            match rng.random_range(0..3u8) {
                0 => {
                    out.push(random_char_like(rng, chars[i]));
                    i += 1;
                }
                1 => {
                    // delete
                    i += 1;
                }
                _ => {
                    if i + 1 < chars.len() && chars[i + 1] != ' ' {
                        out.push(chars[i + 1]);
                        out.push(chars[i]);
                        i += 2;
                    } else {
                        out.push(random_char_like(rng, chars[i]));
                        i += 1;
                    }
                }
            }
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    out
}

/// Deterministic synthetic corpus with labeled duplicates.
///
/// Exactly `round(dup_rate * n_base)` entities receive duplicates; each such
/// entity gets a uniform 1..=max_dups noisy copies. Every record carries its
/// entity label, so ground truth is derived and attached.
pub fn generate_synthetic(config: &SynthConfig) -> Result<Corpus> {
    config.validate()?;
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);

    let bases: Vec<Vec<(String, String)>> =
        (0..config.n_base).map(|_| base_fields(&mut rng)).collect();

    let n_dup_entities = (config.dup_rate * config.n_base as f64).round() as usize;
    let mut entity_ids: Vec<usize> = (0..config.n_base).collect();
    entity_ids.shuffle(&mut rng);
    let duplicated: BTreeSet<usize> = entity_ids.into_iter().take(n_dup_entities).collect();

    let mut records = Vec::new();
    let mut next_id = 0usize;
    let mut push = |records: &mut Vec<Record>, entity: usize, fields: Vec<(String, String)>| {
        records.push(Record {
            id: format!("r{next_id}"),
            fields,
            entity_label: Some(format!("e{entity}")),
        });
        next_id += 1;
    };

    for (entity, fields) in bases.iter().enumerate() {
        push(&mut records, entity, fields.clone());
        if duplicated.contains(&entity) {
            let copies = rng.random_range(1..=config.max_dups);
            for _ in 0..copies {
                let noisy = fields
                    .iter()
                    .map(|(name, v)| (name.clone(), corrupt(&mut rng, v, config.noise)))
                    .collect();
                push(&mut records, entity, noisy);
            }
        }
    }

    let mut corpus = Corpus::new(records)?;
    let truth = derive_truth(&corpus)?;
    corpus.set_truth(truth);
    Ok(corpus)
}

/// Write a corpus as delimited text (id, fields..., entity label when present).
pub fn write_corpus(corpus: &Corpus, path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    let labeled = corpus.records().iter().all(|r| r.entity_label.is_some());
    let mut header: Vec<&str> = vec!["id"];
    header.extend(corpus.records()[0].fields.iter().map(|(n, _)| n.as_str()));
    if labeled {
        header.push("entity");
    }
    writer.write_record(&header)?;
    for r in corpus.records() {
        let mut row: Vec<&str> = vec![&r.id];
        row.extend(r.fields.iter().map(|(_, v)| v.as_str()));
        if labeled {
            row.push(r.entity_label.as_deref().unwrap_or(""));
        }
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    fn schema(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn load_two_row_file() {
        let f = write_temp("id,name\n1,ALICE\n2,BOB\n");
        let corpus = load_corpus(f.path(), &schema(&["name"]), None).unwrap();
        assert_eq!(corpus.n(), 2);
        assert_eq!(corpus.record(0).fields[0].1, "ALICE");
    }

    #[test]
    fn label_column_yields_truth() {
        let f = write_temp("id,name,ent\n1,A,e1\n2,B,e1\n3,C,e2\n");
        let corpus = load_corpus(f.path(), &schema(&["name"]), Some("ent")).unwrap();
        let truth = corpus.truth().unwrap();
        assert_eq!(truth.len(), 1);
        assert!(truth.contains(0, 1));
    }

    #[test]
    fn missing_column_is_schema_error() {
        let f = write_temp("id,surname\n1,X\n");
        let err = load_corpus(f.path(), &schema(&["name"]), None).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let f = write_temp("id,name\n1,A\n1,B\n");
        let err = load_corpus(f.path(), &schema(&["name"]), None).unwrap_err();
        assert!(matches!(err, Error::Ingestion(_)));
    }

    #[test]
    fn empty_file_rejected() {
        let f = write_temp("id,name\n");
        let err = load_corpus(f.path(), &schema(&["name"]), None).unwrap_err();
        assert!(matches!(err, Error::Ingestion(_)));
    }

    #[test]
    fn ids_fall_back_to_row_ordinals() {
        let f = write_temp("name\nA\nB\n");
        let corpus = load_corpus(f.path(), &schema(&["name"]), None).unwrap();
        assert_eq!(corpus.record(1).id, "1");
    }

    fn labeled_corpus(labels: &[&str]) -> Corpus {
        let records = labels
            .iter()
            .enumerate()
            .map(|(i, l)| Record {
                id: format!("r{i}"),
                fields: vec![("name".into(), format!("N{i}"))],
                entity_label: Some(l.to_string()),
            })
            .collect();
        Corpus::new(records).unwrap()
    }

    #[test]
    fn truth_from_triple_label() {
        let truth = derive_truth(&labeled_corpus(&["a", "a", "a"])).unwrap();
        assert_eq!(truth.len(), 3);
    }

    #[test]
    fn truth_all_distinct() {
        let truth = derive_truth(&labeled_corpus(&["a", "b", "c"])).unwrap();
        assert!(truth.is_empty());
    }

    #[test]
    fn truth_mixed_multiplicities() {
        // brute-force over all 10 pairs: 1 from {a,a}, 3 from {b,b,b}
        let corpus = labeled_corpus(&["a", "a", "b", "b", "b"]);
        let truth = derive_truth(&corpus).unwrap();
        let mut expected = 0;
        for i in 0..5u32 {
            for j in (i + 1)..5 {
                if corpus.record(i).entity_label == corpus.record(j).entity_label {
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, 4);
        assert_eq!(truth.len(), expected);
    }

    #[test]
    fn truth_requires_labels() {
        let mut records = vec![Record {
            id: "a".into(),
            fields: vec![("name".into(), "X".into())],
            entity_label: None,
        }];
        records.push(Record {
            id: "b".into(),
            fields: vec![("name".into(), "Y".into())],
            entity_label: Some("e".into()),
        });
        let err = derive_truth(&Corpus::new(records).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Truth(_)));
    }

    #[test]
    fn synth_zero_noise_exact_duplicates() {
        let corpus = generate_synthetic(&SynthConfig {
            n_base: 5,
            dup_rate: 1.0,
            max_dups: 1,
            noise: 0.0,
            seed: 1,
        })
        .unwrap();
        assert_eq!(corpus.n(), 10);
        assert_eq!(corpus.truth().unwrap().len(), 5);
        for (a, b) in corpus.truth().unwrap().match_pairs.iter() {
            assert_eq!(corpus.record(*a).fields, corpus.record(*b).fields);
        }
    }

    #[test]
    fn synth_is_deterministic() {
        let cfg = SynthConfig {
            n_base: 50,
            dup_rate: 0.3,
            max_dups: 3,
            noise: 0.1,
            seed: 99,
        };
        let a = generate_synthetic(&cfg).unwrap();
        let b = generate_synthetic(&cfg).unwrap();
        assert_eq!(a.records(), b.records());
    }

    #[test]
    fn synth_duplicated_entity_count_is_exact() {
        let corpus = generate_synthetic(&SynthConfig {
            n_base: 1000,
            dup_rate: 0.1,
            max_dups: 1,
            noise: 0.2,
            seed: 7,
        })
        .unwrap();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for r in corpus.records() {
            *counts.entry(r.entity_label.as_deref().unwrap()).or_default() += 1;
        }
        let multi = counts.values().filter(|&&c| c >= 2).count();
        assert_eq!(multi, 100);
    }

    #[test]
    fn pair_count_matches_multiplicity_formula() {
        let corpus = generate_synthetic(&SynthConfig {
            n_base: 60,
            dup_rate: 0.5,
            max_dups: 4,
            noise: 0.05,
            seed: 3,
        })
        .unwrap();
        let mut counts: HashMap<&str, u64> = HashMap::new();
        for r in corpus.records() {
            *counts.entry(r.entity_label.as_deref().unwrap()).or_default() += 1;
        }
        let expected: u64 = counts.values().map(|m| m * (m - 1) / 2).sum();
        assert_eq!(corpus.truth().unwrap().len() as u64, expected);
    }

    #[test]
    fn corpus_roundtrip_through_csv() {
        let corpus = generate_synthetic(&SynthConfig {
            n_base: 20,
            dup_rate: 0.5,
            max_dups: 2,
            noise: 0.1,
            seed: 5,
        })
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("synth.csv");
        write_corpus(&corpus, &path).unwrap();
        let schema: Vec<String> = SYNTH_SCHEMA.iter().map(|s| s.to_string()).collect();
        let loaded = load_corpus(&path, &schema, Some("entity")).unwrap();
        assert_eq!(loaded.n(), corpus.n());
        assert_eq!(loaded.truth().unwrap(), corpus.truth().unwrap());
    }

    #[test]
    fn truth_pairs_file() {
        let f = write_temp("id,name\na,X\nb,Y\nc,Z\n");
        let corpus = load_corpus(f.path(), &schema(&["name"]), None).unwrap();
        let pairs = write_temp("id_a,id_b\na,c\n");
        let truth = load_truth_pairs(pairs.path(), &corpus).unwrap();
        assert_eq!(truth.len(), 1);
        assert!(truth.contains(0, 2));

        let bad = write_temp("id_a,id_b\na,zzz\n");
        assert!(matches!(
            load_truth_pairs(bad.path(), &corpus).unwrap_err(),
            Error::Truth(_)
        ));
    }
}
