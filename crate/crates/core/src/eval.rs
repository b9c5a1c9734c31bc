//! Scoring under stemmed matching: precision/recall/F1 at k, average
//! precision, and topic coverage.

use std::collections::BTreeMap;
use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::stem::stem_phrase;
use crate::topics::TopicPartition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("document has an empty gold list")]
    EmptyGold,
}

/// Per-document scores.
#[derive(Debug, Clone, Default, Serialize)]
pub struct DocScore {
    pub precision_at: BTreeMap<usize, f64>,
    pub recall_at: BTreeMap<usize, f64>,
    pub f1_at: BTreeMap<usize, f64>,
    pub average_precision: f64,
    pub topic_coverage_at: BTreeMap<usize, f64>,
}

/// Macro-averaged scores over the scored documents.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CorpusScore {
    pub precision_at: BTreeMap<usize, f64>,
    pub recall_at: BTreeMap<usize, f64>,
    pub f1_at: BTreeMap<usize, f64>,
    pub mean_average_precision: f64,
    pub topic_coverage_at: BTreeMap<usize, f64>,
    pub documents: usize,
}

fn stem_of_phrase(phrase: &str) -> String {
    let words: Vec<&str> = phrase.split_whitespace().collect();
    match stem_phrase(&words) {
        Ok(p) => p.joined().to_string(),
        Err(_) => String::new(),
    }
}

/// True iff the extracted phrase's stemmed form equals that of some gold
/// phrase. Inputs are expected lowercased.
pub fn match_stems(extracted: &str, gold: &[String]) -> bool {
    let key = stem_of_phrase(extracted);
    gold.iter().any(|g| stem_of_phrase(g) == key)
}

// Dedupe a phrase list by stemmed form, keeping first occurrences.
fn dedupe_by_stem(phrases: &[String]) -> Vec<(String, String)> {
    let mut seen = HashSet::new();
    phrases
        .iter()
        .filter_map(|p| {
            let stem = stem_of_phrase(p);
            seen.insert(stem.clone()).then(|| (p.clone(), stem))
        })
        .collect()
}

/// Precision, recall and F1 over the top k extracted phrases.
///
/// With `strict_at_k` the precision denominator is k (the shared-task
/// script convention); otherwise it is min(k, extracted count), which
/// does not penalize documents yielding fewer than k candidates.
pub fn f1_at_k(
    extracted: &[String],
    gold: &[String],
    k: usize,
    strict_at_k: bool,
) -> Result<(f64, f64, f64), EvalError> {
    if gold.is_empty() {
        return Err(EvalError::EmptyGold);
    }
    let extracted = dedupe_by_stem(extracted);
    let gold_stems: HashSet<String> = gold.iter().map(|g| stem_of_phrase(g)).collect();
    let top = extracted.iter().take(k);
    let matches = top.filter(|(_, stem)| gold_stems.contains(stem)).count();
    let denom = if strict_at_k {
        k
    } else {
        k.min(extracted.len())
    };
    if denom == 0 {
        return Ok((0.0, 0.0, 0.0));
    }
    let p = matches as f64 / denom as f64;
    let r = matches as f64 / gold_stems.len() as f64;
    let f1 = if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    };
    Ok((p, r, f1))
}

/// Average precision of the full extracted list against the gold set.
pub fn average_precision(extracted: &[String], gold: &[String]) -> Result<f64, EvalError> {
    if gold.is_empty() {
        return Err(EvalError::EmptyGold);
    }
    let extracted = dedupe_by_stem(extracted);
    let gold_stems: HashSet<String> = gold.iter().map(|g| stem_of_phrase(g)).collect();
    let mut matches = 0usize;
    let mut sum = 0.0;
    for (rank, (_, stem)) in extracted.iter().enumerate() {
        if gold_stems.contains(stem) {
            matches += 1;
            sum += matches as f64 / (rank + 1) as f64;
        }
    }
    Ok(sum / gold_stems.len() as f64)
}

/// Fraction of distinct topics among the top k extracted candidates.
pub fn topic_coverage(extracted_indices: &[usize], topics: &TopicPartition, k: usize) -> f64 {
    let top: Vec<usize> = extracted_indices.iter().take(k).copied().collect();
    if top.is_empty() {
        return 0.0;
    }
    let distinct: HashSet<usize> = top.iter().map(|&i| topics.topic_of(i)).collect();
    distinct.len() as f64 / top.len() as f64
}

/// Macro-average per-document scores. Documents with no extractions score
/// zero and are still counted.
pub fn macro_average(per_doc: &BTreeMap<String, DocScore>) -> CorpusScore {
    let n = per_doc.len();
    let mut out = CorpusScore {
        documents: n,
        ..Default::default()
    };
    if n == 0 {
        return out;
    }
    for score in per_doc.values() {
        for (&k, &v) in &score.precision_at {
            *out.precision_at.entry(k).or_insert(0.0) += v;
        }
        for (&k, &v) in &score.recall_at {
            *out.recall_at.entry(k).or_insert(0.0) += v;
        }
        for (&k, &v) in &score.f1_at {
            *out.f1_at.entry(k).or_insert(0.0) += v;
        }
        for (&k, &v) in &score.topic_coverage_at {
            *out.topic_coverage_at.entry(k).or_insert(0.0) += v;
        }
        out.mean_average_precision += score.average_precision;
    }
    let nf = n as f64;
    for v in out.precision_at.values_mut() {
        *v /= nf;
    }
    for v in out.recall_at.values_mut() {
        *v /= nf;
    }
    for v in out.f1_at.values_mut() {
        *v /= nf;
    }
    for v in out.topic_coverage_at.values_mut() {
        *v /= nf;
    }
    out.mean_average_precision /= nf;
    out
}
