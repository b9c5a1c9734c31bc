//! End-to-end runs: extraction over a corpus, evaluation against gold
//! references, and parameter sweeps. Documents are processed in a rayon
//! pool and emitted in input order, so output is identical across thread
//! counts.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::baselines::{singlerank_ranked, topicrank_ranked};
use crate::candidates::{extract_candidates, Candidate, PatternKind};
use crate::corpus::{Document, GoldReferences};
use crate::eval::{self, CorpusScore, DocScore};
use crate::graph::{
    adjust_weights, build_multipartite, AdjustmentConfig, AdjustmentVariant, WeightedDigraph,
};
use crate::rank::{textrank_candidates, RankError, RankedList};
use crate::topics::{cluster_topics, TopicPartition};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("ranking failed for document {id:?}: {source}")]
    Rank {
        id: String,
        #[source]
        source: RankError,
    },
    #[error("gold references missing for documents: {}", .0.join(", "))]
    MissingGold(Vec<String>),
    #[error("document {0:?} has an empty gold list")]
    EmptyGold(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Multipartite,
    SingleRank,
    SingleRankNormalized,
    TopicRank,
    TopicRankNoTopics,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub model: ModelKind,
    pub alpha: f64,
    /// Clustering threshold as given on the command line.
    pub tau: f64,
    /// Read tau as a similarity (cutoff = 1 - tau) instead of a
    /// dendrogram-cut distance (cutoff = tau, the default reading).
    pub tau_is_similarity: bool,
    pub variant: AdjustmentVariant,
    pub pattern: PatternKind,
    pub top_n: usize,
    pub lambda: f64,
    pub window: usize,
    pub strict_at_k: bool,
    pub threads: usize,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: ModelKind::Multipartite,
            alpha: 1.1,
            tau: 0.9,
            tau_is_similarity: false,
            variant: AdjustmentVariant::Published,
            pattern: PatternKind::NaPlus,
            top_n: 10,
            lambda: 0.85,
            window: 10,
            strict_at_k: false,
            threads: 1,
            tol: 1e-8,
            max_iter: 1000,
        }
    }
}

impl RunConfig {
    /// Distance cutoff handed to the clusterer.
    pub fn cutoff(&self) -> f64 {
        if self.tau_is_similarity {
            1.0 - self.tau
        } else {
            self.tau
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let fail = |msg: String| Err(PipelineError::InvalidConfig(msg));
        if self.alpha < 0.0 || !self.alpha.is_finite() {
            return fail(format!("alpha must be >= 0, got {}", self.alpha));
        }
        if !(0.0..=1.0).contains(&self.tau) {
            return fail(format!("tau must be in [0, 1], got {}", self.tau));
        }
        if self.lambda <= 0.0 || self.lambda >= 1.0 {
            return fail(format!("lambda must be in (0, 1), got {}", self.lambda));
        }
        if self.top_n == 0 {
            return fail("top-n must be positive".to_string());
        }
        if self.window < 2 {
            return fail(format!("window must be >= 2, got {}", self.window));
        }
        if self.threads == 0 {
            return fail("threads must be positive".to_string());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtractedKeyphrase {
    pub phrase: String,
    pub score: f64,
    pub topic: usize,
}

/// One output record of `extract`, serialized as a JSON line.
#[derive(Debug, Clone, Serialize)]
pub struct ExtractionOutput {
    pub id: String,
    pub keyphrases: Vec<ExtractedKeyphrase>,
    pub k_topics: usize,
    pub converged: bool,
}

/// Full per-document result; keeps the ranked list and partition around
/// for evaluation.
#[derive(Debug, Clone)]
pub struct DocResult {
    pub id: String,
    pub candidates: Vec<Candidate>,
    pub topics: Option<TopicPartition>,
    pub ranked: RankedList,
    /// Adjusted multipartite graph, kept only when requested for dumps.
    pub graph: Option<WeightedDigraph>,
}

impl DocResult {
    pub fn output(&self, top_n: usize) -> ExtractionOutput {
        let keyphrases = self
            .ranked
            .entries
            .iter()
            .take(top_n)
            .map(|&(i, score)| ExtractedKeyphrase {
                phrase: self.candidates[i].first_surface_lower(),
                score,
                topic: self.topics.as_ref().map_or(0, |t| t.topic_of(i)),
            })
            .collect();
        ExtractionOutput {
            id: self.id.clone(),
            keyphrases,
            k_topics: self.topics.as_ref().map_or(0, |t| t.k()),
            converged: self.ranked.converged,
        }
    }

    /// Ranked phrase list (lowercased first surfaces), full length.
    pub fn phrases(&self) -> Vec<String> {
        self.ranked
            .entries
            .iter()
            .map(|&(i, _)| self.candidates[i].first_surface_lower())
            .collect()
    }
}

/// Run the configured model over one document.
pub fn extract_document(
    doc: &Document,
    cfg: &RunConfig,
    keep_graph: bool,
) -> Result<DocResult, PipelineError> {
    let cands = extract_candidates(doc, cfg.pattern);
    if cands.is_empty() {
        return Ok(DocResult {
            id: doc.id.clone(),
            candidates: cands,
            topics: None,
            ranked: RankedList {
                entries: Vec::new(),
                iterations_used: 1,
                converged: true,
            },
            graph: None,
        });
    }
    let topics = cluster_topics(&cands, cfg.cutoff()).expect("candidates are non-empty");
    let rank_err = |source| PipelineError::Rank {
        id: doc.id.clone(),
        source,
    };
    let (ranked, graph) = match cfg.model {
        ModelKind::Multipartite => {
            let g = build_multipartite(&cands, &topics).expect("partition matches candidates");
            let adjusted = adjust_weights(
                &g,
                &cands,
                &topics,
                &AdjustmentConfig {
                    alpha: cfg.alpha,
                    variant: cfg.variant,
                },
            );
            let ranked = textrank_candidates(&adjusted, &cands, cfg.lambda, cfg.tol, cfg.max_iter)
                .map_err(rank_err)?;
            (ranked, keep_graph.then_some(adjusted))
        }
        ModelKind::SingleRank | ModelKind::SingleRankNormalized => {
            let normalized = cfg.model == ModelKind::SingleRankNormalized;
            let ranked = singlerank_ranked(
                doc,
                &cands,
                cfg.window,
                normalized,
                cfg.lambda,
                cfg.tol,
                cfg.max_iter,
            )
            .map_err(rank_err)?;
            (ranked, None)
        }
        ModelKind::TopicRank | ModelKind::TopicRankNoTopics => {
            let use_topics = cfg.model == ModelKind::TopicRank;
            let ranked = topicrank_ranked(
                &cands,
                &topics,
                use_topics,
                cfg.lambda,
                cfg.tol,
                cfg.max_iter,
            )
            .map_err(rank_err)?;
            (ranked, None)
        }
    };
    Ok(DocResult {
        id: doc.id.clone(),
        candidates: cands,
        topics: Some(topics),
        ranked,
        graph,
    })
}

/// Run the model over a corpus in a pool of `cfg.threads` workers;
/// results come back in input order.
pub fn extract_corpus(
    docs: &[Document],
    cfg: &RunConfig,
    keep_graph: bool,
) -> Result<Vec<DocResult>, PipelineError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| PipelineError::InvalidConfig(e.to_string()))?;
    pool.install(|| {
        docs.par_iter()
            .map(|doc| extract_document(doc, cfg, keep_graph))
            .collect()
    })
}

/// Write extraction results as line-delimited JSON.
pub fn write_extract_jsonl<W: Write>(
    results: &[DocResult],
    top_n: usize,
    mut out: W,
) -> Result<(), PipelineError> {
    for r in results {
        let line = serde_json::to_string(&r.output(top_n)).expect("output serializes");
        out.write_all(line.as_bytes())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Evaluation report: per-document and macro-averaged scores plus the
/// parameters that produced them.
#[derive(Debug, Serialize)]
pub struct Report {
    pub per_doc: BTreeMap<String, DocScore>,
    #[serde(rename = "macro")]
    pub macro_avg: CorpusScore,
    pub params: RunConfig,
}

const F1_CUTS: [usize; 2] = [5, 10];
const COVERAGE_CUT: usize = 10;

/// Score a corpus against gold references at F1@{5,10}, MAP and topic
/// coverage@10.
pub fn evaluate_corpus(
    docs: &[Document],
    gold: &GoldReferences,
    cfg: &RunConfig,
) -> Result<Report, PipelineError> {
    let missing: Vec<String> = docs
        .iter()
        .filter(|d| !gold.by_doc.contains_key(&d.id))
        .map(|d| d.id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(PipelineError::MissingGold(missing));
    }
    let results = extract_corpus(docs, cfg, false)?;
    let mut per_doc = BTreeMap::new();
    for r in &results {
        let gold_phrases = &gold.by_doc[&r.id];
        if gold_phrases.is_empty() {
            return Err(PipelineError::EmptyGold(r.id.clone()));
        }
        let phrases = r.phrases();
        let mut score = DocScore::default();
        for k in F1_CUTS {
            let (p, rec, f1) = eval::f1_at_k(&phrases, gold_phrases, k, cfg.strict_at_k)
                .expect("gold is non-empty");
            score.precision_at.insert(k, p);
            score.recall_at.insert(k, rec);
            score.f1_at.insert(k, f1);
        }
        score.average_precision =
            eval::average_precision(&phrases, gold_phrases).expect("gold is non-empty");
        let coverage = match &r.topics {
            Some(topics) => {
                let indices: Vec<usize> = r.ranked.entries.iter().map(|&(i, _)| i).collect();
                eval::topic_coverage(&indices, topics, COVERAGE_CUT)
            }
            None => 0.0,
        };
        score.topic_coverage_at.insert(COVERAGE_CUT, coverage);
        per_doc.insert(r.id.clone(), score);
    }
    let macro_avg = eval::macro_average(&per_doc);
    Ok(Report {
        per_doc,
        macro_avg,
        params: cfg.clone(),
    })
}

/// Human-readable score summary.
pub fn summary_table(report: &Report) -> String {
    let m = &report.macro_avg;
    let mut s = String::new();
    s.push_str(&format!("documents\t{}\n", m.documents));
    for k in F1_CUTS {
        s.push_str(&format!(
            "F1@{}\t{:.4}\tP@{}\t{:.4}\tR@{}\t{:.4}\n",
            k, m.f1_at[&k], k, m.precision_at[&k], k, m.recall_at[&k]
        ));
    }
    s.push_str(&format!("MAP\t{:.4}\n", m.mean_average_precision));
    s.push_str(&format!(
        "topic-coverage@{}\t{:.4}\n",
        COVERAGE_CUT, m.topic_coverage_at[&COVERAGE_CUT]
    ));
    s
}

/// One row of a sweep: the grid point and its headline scores.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub alpha: f64,
    pub cutoff: f64,
    pub f1_at_5: f64,
    pub f1_at_10: f64,
    pub map: f64,
}

/// Evaluate the Cartesian grid over alpha and cutoff values. Empty axes
/// fall back to the config's current value. Rows are sorted by F1@10
/// descending, then alpha ascending.
pub fn sweep(
    docs: &[Document],
    gold: &GoldReferences,
    cfg: &RunConfig,
    alphas: &[f64],
    cutoffs: &[f64],
) -> Result<Vec<SweepRow>, PipelineError> {
    let alphas = if alphas.is_empty() {
        vec![cfg.alpha]
    } else {
        alphas.to_vec()
    };
    let cutoffs = if cutoffs.is_empty() {
        vec![cfg.tau]
    } else {
        cutoffs.to_vec()
    };
    let mut rows = Vec::new();
    for &alpha in &alphas {
        for &cutoff in &cutoffs {
            let mut point = cfg.clone();
            point.alpha = alpha;
            point.tau = cutoff;
            let report = evaluate_corpus(docs, gold, &point)?;
            let m = &report.macro_avg;
            rows.push(SweepRow {
                alpha,
                cutoff,
                f1_at_5: m.f1_at[&5],
                f1_at_10: m.f1_at[&10],
                map: m.mean_average_precision,
            });
        }
    }
    rows.sort_by(|a, b| {
        b.f1_at_10
            .partial_cmp(&a.f1_at_10)
            .expect("scores are finite")
            .then(a.alpha.partial_cmp(&b.alpha).expect("alphas are finite"))
    });
    Ok(rows)
}

/// Tab-separated sweep table with header.
pub fn sweep_table(rows: &[SweepRow]) -> String {
    let mut s = String::from("alpha\tcutoff\tF1@5\tF1@10\tMAP\n");
    for r in rows {
        s.push_str(&format!(
            "{}\t{}\t{:.6}\t{:.6}\t{:.6}\n",
            r.alpha, r.cutoff, r.f1_at_5, r.f1_at_10, r.map
        ));
    }
    s
}
