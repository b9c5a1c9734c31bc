//! Document and gold-reference data model, plus the external file formats.
//!
//! Documents arrive pre-tokenized and POS-tagged as line-delimited JSON;
//! no tokenizer or tagger is bundled. Gold references are a single JSON
//! object mapping document id to reference keyphrases.

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: malformed record: {source}")]
    Malformed {
        line: usize,
        source: serde_json::Error,
    },
    #[error("line {line}: duplicate document id {id:?}")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: document {id:?} has an empty token list")]
    EmptyTokens { line: usize, id: String },
    #[error("line {line}: document id is empty")]
    EmptyId { line: usize },
    #[error("malformed gold file: {0}")]
    MalformedGold(serde_json::Error),
    #[error("gold references for document {0:?} are empty")]
    EmptyGold(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Coarse POS category; the extraction pattern only needs the
/// noun/adjective distinction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coarse {
    Noun,
    Adjective,
    Other,
}

/// Maps fine-grained POS tags to coarse categories by longest tag prefix.
/// The default is the Penn Treebank rule: `NN*` nouns, `JJ*` adjectives.
#[derive(Debug, Clone)]
pub struct TagMap {
    // prefix -> category, longest prefix wins
    prefixes: Vec<(String, Coarse)>,
}

impl Default for TagMap {
    fn default() -> Self {
        TagMap {
            prefixes: vec![
                ("NN".to_string(), Coarse::Noun),
                ("JJ".to_string(), Coarse::Adjective),
            ],
        }
    }
}

impl TagMap {
    /// Build from prefix rules; "N" | "A" | "O" letters as used in the
    /// tag-map file format.
    pub fn from_rules<I: IntoIterator<Item = (String, Coarse)>>(rules: I) -> Self {
        let mut prefixes: Vec<(String, Coarse)> = rules.into_iter().collect();
        // longest prefix first so the first match wins
        prefixes.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
        TagMap { prefixes }
    }

    /// Parse the JSON tag-map file: an object mapping prefix to "N"/"A"/"O".
    pub fn from_json(bytes: &[u8]) -> Result<Self, CorpusError> {
        let raw: BTreeMap<String, String> =
            serde_json::from_slice(bytes).map_err(CorpusError::MalformedGold)?;
        let rules = raw.into_iter().map(|(prefix, letter)| {
            let coarse = match letter.as_str() {
                "N" => Coarse::Noun,
                "A" => Coarse::Adjective,
                _ => Coarse::Other,
            };
            (prefix, coarse)
        });
        Ok(TagMap::from_rules(rules))
    }

    pub fn map(&self, pos_tag: &str) -> Coarse {
        for (prefix, coarse) in &self.prefixes {
            if pos_tag.starts_with(prefix.as_str()) {
                return *coarse;
            }
        }
        Coarse::Other
    }
}

/// Total lookup from a fine-grained tag to its coarse category.
pub fn map_pos(pos_tag: &str, tag_map: &TagMap) -> Coarse {
    tag_map.map(pos_tag)
}

/// A single tagged token; `offset` is the 1-based word offset within the
/// document (document-initial token has offset 1, which keeps the
/// positional factor e^(1/p) well defined).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub pos_tag: String,
    pub coarse: Coarse,
    pub sentence_index: usize,
    pub offset: usize,
}

/// An ordered, pre-tagged token sequence; the unit of extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub tokens: Vec<Token>,
}

/// Reference keyphrases per document id, whitespace-normalized and
/// lowercased at parse time.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldReferences {
    pub by_doc: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct TokenRecord {
    w: String,
    p: String,
    s: usize,
}

#[derive(Serialize, Deserialize)]
struct DocumentRecord {
    id: String,
    tokens: Vec<TokenRecord>,
}

/// Parse line-delimited JSON document records. Offsets are implicit
/// (1-based position in the token array).
pub fn parse_documents<R: BufRead>(
    input: R,
    tag_map: &TagMap,
) -> Result<Vec<Document>, CorpusError> {
    let mut docs = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: DocumentRecord =
            serde_json::from_str(&line).map_err(|e| CorpusError::Malformed {
                line: line_no,
                source: e,
            })?;
        if record.id.is_empty() {
            return Err(CorpusError::EmptyId { line: line_no });
        }
        if record.tokens.is_empty() {
            return Err(CorpusError::EmptyTokens {
                line: line_no,
                id: record.id,
            });
        }
        if !seen.insert(record.id.clone()) {
            return Err(CorpusError::DuplicateId {
                line: line_no,
                id: record.id,
            });
        }
        let tokens = record
            .tokens
            .into_iter()
            .enumerate()
            .map(|(i, t)| Token {
                coarse: tag_map.map(&t.p),
                surface: t.w,
                pos_tag: t.p,
                sentence_index: t.s,
                offset: i + 1,
            })
            .collect();
        docs.push(Document {
            id: record.id,
            tokens,
        });
    }
    Ok(docs)
}

/// Serialize documents back to the line-delimited JSON format.
pub fn serialize_documents<W: Write>(docs: &[Document], mut out: W) -> Result<(), CorpusError> {
    for doc in docs {
        let record = DocumentRecord {
            id: doc.id.clone(),
            tokens: doc
                .tokens
                .iter()
                .map(|t| TokenRecord {
                    w: t.surface.clone(),
                    p: t.pos_tag.clone(),
                    s: t.sentence_index,
                })
                .collect(),
        };
        serde_json::to_writer(&mut out, &record)
            .map_err(|e| CorpusError::Malformed { line: 0, source: e })?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Collapse internal whitespace runs, trim, lowercase.
pub fn normalize_phrase(phrase: &str) -> String {
    phrase
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Parse the gold file: one JSON object mapping id to phrase arrays.
pub fn parse_gold<R: BufRead>(input: R) -> Result<GoldReferences, CorpusError> {
    let raw: BTreeMap<String, Vec<String>> =
        serde_json::from_reader(input).map_err(CorpusError::MalformedGold)?;
    let mut by_doc = BTreeMap::new();
    for (id, phrases) in raw {
        let normalized: Vec<String> = phrases
            .iter()
            .map(|p| normalize_phrase(p))
            .filter(|p| !p.is_empty())
            .collect();
        if normalized.is_empty() {
            return Err(CorpusError::EmptyGold(id));
        }
        by_doc.insert(id, normalized);
    }
    Ok(GoldReferences { by_doc })
}
