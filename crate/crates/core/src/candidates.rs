//! Candidate selection by POS pattern.
//!
//! Occurrences are maximal matches within sentence boundaries; occurrences
//! sharing a stemmed form merge into a single candidate, so a candidate's
//! position set can span the whole document.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{Coarse, Document};
use crate::stem::{stem_phrase, StemmedPhrase};

/// The two extraction patterns found in the source literature: maximal
/// noun/adjective runs, or adjectives strictly preceding the noun head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternKind {
    /// `/(N|A)+/` — every maximal run of nouns and adjectives.
    NaPlus,
    /// `/Adj*Noun+/` — within each run, the suffix of adjectives followed
    /// by nouns that ends at the run's last noun. Runs without a noun
    /// yield nothing; trailing adjectives are dropped.
    AdjStarNounPlus,
}

/// A keyphrase candidate: all occurrences of one stemmed phrase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    /// Stemmed form; the candidate's identity.
    pub key: StemmedPhrase,
    /// Original surface string of each occurrence, first-seen order.
    pub surfaces: Vec<String>,
    /// 1-based offset of the first word of each occurrence, ascending.
    pub positions: Vec<usize>,
    /// Token count of each occurrence (parallel to `positions`).
    pub lengths: Vec<usize>,
}

impl Candidate {
    pub fn first_offset(&self) -> usize {
        self.positions[0]
    }

    /// Surface form of the first occurrence, lowercased.
    pub fn first_surface_lower(&self) -> String {
        self.surfaces[0].to_lowercase()
    }
}

/// Extract candidates from a document under the given pattern. Result is
/// sorted by first offset; no two candidates share a stemmed key.
pub fn extract_candidates(doc: &Document, pattern: PatternKind) -> Vec<Candidate> {
    let mut by_key: HashMap<String, usize> = HashMap::new();
    let mut out: Vec<Candidate> = Vec::new();

    let mut i = 0;
    let n = doc.tokens.len();
    while i < n {
        let t = &doc.tokens[i];
        if t.coarse == Coarse::Other {
            i += 1;
            continue;
        }
        // maximal N/A run within one sentence
        let sentence = t.sentence_index;
        let mut end = i;
        while end < n
            && doc.tokens[end].coarse != Coarse::Other
            && doc.tokens[end].sentence_index == sentence
        {
            end += 1;
        }
        let span = match pattern {
            PatternKind::NaPlus => Some((i, end)),
            PatternKind::AdjStarNounPlus => adj_star_noun_plus_span(doc, i, end),
        };
        if let Some((start, stop)) = span {
            let words: Vec<&str> = doc.tokens[start..stop]
                .iter()
                .map(|t| t.surface.as_str())
                .collect();
            let key = stem_phrase(&words).expect("span is non-empty");
            let surface = words.join(" ");
            let offset = doc.tokens[start].offset;
            let len = stop - start;
            match by_key.get(key.joined()) {
                Some(&idx) => {
                    let cand = &mut out[idx];
                    cand.surfaces.push(surface);
                    cand.positions.push(offset);
                    cand.lengths.push(len);
                }
                None => {
                    by_key.insert(key.joined().to_string(), out.len());
                    out.push(Candidate {
                        key,
                        surfaces: vec![surface],
                        positions: vec![offset],
                        lengths: vec![len],
                    });
                }
            }
        }
        i = end;
    }

    out.sort_by_key(|c| c.first_offset());
    out
}

// Within the run [start, end), anchor at the last noun and extend left
// through nouns, then adjectives.
fn adj_star_noun_plus_span(doc: &Document, start: usize, end: usize) -> Option<(usize, usize)> {
    let last_noun = (start..end)
        .rev()
        .find(|&i| doc.tokens[i].coarse == Coarse::Noun)?;
    let mut lo = last_noun;
    while lo > start && doc.tokens[lo - 1].coarse == Coarse::Noun {
        lo -= 1;
    }
    while lo > start && doc.tokens[lo - 1].coarse == Coarse::Adjective {
        lo -= 1;
    }
    Some((lo, last_noun + 1))
}
