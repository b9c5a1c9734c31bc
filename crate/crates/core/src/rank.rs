//! Weighted TextRank over the candidate graph and top-N selection.
//!
//! Jacobi-style fixed point of the damped recommendation equation: each
//! sweep recomputes every score from the previous vector, so the result
//! does not depend on node order or thread count.

use thiserror::Error;

use crate::candidates::Candidate;
use crate::graph::WeightedDigraph;

#[derive(Debug, Error)]
pub enum RankError {
    #[error("non-finite weight on edge {0} -> {1}")]
    NonFiniteWeight(usize, usize),
}

/// Tie-break key for equal scores: first offset, then stemmed form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TieKey {
    pub first_offset: usize,
    pub stem: String,
}

impl TieKey {
    pub fn of(cand: &Candidate) -> TieKey {
        TieKey {
            first_offset: cand.first_offset(),
            stem: cand.key.joined().to_string(),
        }
    }

    /// Fallback for graphs without candidate metadata: node index order.
    pub fn from_index(i: usize) -> TieKey {
        TieKey {
            first_offset: i,
            stem: String::new(),
        }
    }
}

/// Ranking result: entries sorted by score descending, ties broken by
/// smaller first offset then lexicographic stemmed key.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub entries: Vec<(usize, f64)>,
    pub iterations_used: usize,
    pub converged: bool,
}

/// Raw fixed-point outcome before ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct Scores {
    pub values: Vec<f64>,
    pub iterations_used: usize,
    pub converged: bool,
}

/// Run the damped fixed-point iteration from uniform initial scores 1.0.
/// Nodes with zero out-weight contribute nothing to their successors.
pub fn textrank_scores(
    g: &WeightedDigraph,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Scores, RankError> {
    let n = g.node_count();
    for (i, j, w) in g.edges() {
        if !w.is_finite() {
            return Err(RankError::NonFiniteWeight(i, j));
        }
    }
    let out_weight: Vec<f64> = (0..n).map(|j| g.out_weight(j)).collect();
    let mut scores = vec![1.0f64; n];
    let mut next = vec![0.0f64; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        for (i, slot) in next.iter_mut().enumerate() {
            let mut sum = 0.0;
            for j in 0..n {
                if j == i || out_weight[j] <= 0.0 {
                    continue;
                }
                let w = g.weight(j, i);
                if w > 0.0 {
                    sum += w * scores[j] / out_weight[j];
                }
            }
            *slot = (1.0 - lambda) + lambda * sum;
        }
        let delta = scores
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        std::mem::swap(&mut scores, &mut next);
        if delta < tol {
            converged = true;
            break;
        }
    }
    Ok(Scores {
        values: scores,
        iterations_used: iterations.max(1),
        converged,
    })
}

/// Order scores into a ranked list under the given tie-break keys.
pub fn ranked_list(scores: &Scores, tie_keys: &[TieKey]) -> RankedList {
    let mut entries: Vec<(usize, f64)> = scores.values.iter().copied().enumerate().collect();
    entries.sort_by(|&(i, si), &(j, sj)| {
        sj.partial_cmp(&si)
            .expect("scores are finite")
            .then_with(|| tie_keys[i].cmp(&tie_keys[j]))
    });
    RankedList {
        entries,
        iterations_used: scores.iterations_used,
        converged: scores.converged,
    }
}

/// TextRank with node-index tie-breaking (no candidate metadata).
pub fn textrank(
    g: &WeightedDigraph,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RankedList, RankError> {
    let scores = textrank_scores(g, lambda, tol, max_iter)?;
    let keys: Vec<TieKey> = (0..g.node_count()).map(TieKey::from_index).collect();
    Ok(ranked_list(&scores, &keys))
}

/// TextRank with candidate tie-breaking (first offset, then stemmed key).
pub fn textrank_candidates(
    g: &WeightedDigraph,
    cands: &[Candidate],
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RankedList, RankError> {
    let scores = textrank_scores(g, lambda, tol, max_iter)?;
    let keys: Vec<TieKey> = cands.iter().map(TieKey::of).collect();
    Ok(ranked_list(&scores, &keys))
}

/// Emit the lowercased first-occurrence surface of the top `n` entries.
pub fn select_top(ranked: &RankedList, cands: &[Candidate], n: usize) -> Vec<String> {
    ranked
        .entries
        .iter()
        .take(n)
        .map(|&(i, _)| cands[i].first_surface_lower())
        .collect()
}
