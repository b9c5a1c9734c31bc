//! The complete directed multipartite candidate graph.
//!
//! Edges connect candidates only across topics and carry the sum of
//! inverse distances between occurrence offsets. A weight-adjustment pass
//! then promotes each topic's first-occurring candidate by inflating its
//! incoming edges, which is what makes the graph asymmetric.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::candidates::Candidate;
use crate::topics::TopicPartition;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("partition covers {partition} candidates but {candidates} were given")]
    PartitionMismatch { partition: usize, candidates: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Dense directed weighted graph over candidate indices. Node i of the
/// graph is candidate i; absence of an edge is weight 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    // row-major: weights[i * n + j] is the weight of edge i -> j
    weights: Vec<f64>,
}

impl WeightedDigraph {
    pub fn new(n: usize) -> Self {
        WeightedDigraph {
            n,
            weights: vec![0.0; n * n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn set_weight(&mut self, i: usize, j: usize, w: f64) {
        assert_ne!(i, j, "self-edges are not allowed");
        self.weights[i * self.n + j] = w;
    }

    /// Sum of outgoing edge weights of node j.
    pub fn out_weight(&self, j: usize) -> f64 {
        self.weights[j * self.n..(j + 1) * self.n].iter().sum()
    }

    /// Edge list in (source, target) order, positive weights only.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            (0..self.n).filter_map(move |j| {
                let w = self.weight(i, j);
                (w > 0.0).then_some((i, j, w))
            })
        })
    }

    /// Debug dump: header `k=<topics> n=<nodes>`, then one
    /// `i<TAB>j<TAB>weight` line per edge.
    pub fn dump<W: Write>(&self, k: usize, mut out: W) -> Result<(), GraphError> {
        writeln!(out, "k={} n={}", k, self.n)?;
        for (i, j, w) in self.edges() {
            writeln!(out, "{}\t{}\t{}", i, j, w)?;
        }
        Ok(())
    }
}

/// Which form of the weight-adjustment formula to apply.
///
/// The draft form sums intra-topic edge weights, which are structurally
/// zero on a multipartite graph, so it is a provable no-op; it is kept
/// selectable to document the discrepancy. The published form (positional
/// exponential times the promoted topic's outgoing weights through the
/// source node) is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdjustmentVariant {
    Published,
    Draft,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjustmentConfig {
    pub alpha: f64,
    pub variant: AdjustmentVariant,
}

impl Default for AdjustmentConfig {
    fn default() -> Self {
        AdjustmentConfig {
            alpha: 1.1,
            variant: AdjustmentVariant::Published,
        }
    }
}

/// Sum of inverse distances between all occurrence pairs of two
/// candidates.
pub fn edge_weight(ci: &Candidate, cj: &Candidate) -> f64 {
    let mut sum = 0.0;
    for &pi in &ci.positions {
        for &pj in &cj.positions {
            let d = pi.abs_diff(pj);
            assert!(d > 0, "overlapping candidate occurrences at offset {pi}");
            sum += 1.0 / d as f64;
        }
    }
    sum
}

/// Build the complete directed k-partite graph: both directed edges for
/// every cross-topic pair, nothing within a topic.
pub fn build_multipartite(
    cands: &[Candidate],
    topics: &TopicPartition,
) -> Result<WeightedDigraph, GraphError> {
    if topics.assignment.len() != cands.len() {
        return Err(GraphError::PartitionMismatch {
            partition: topics.assignment.len(),
            candidates: cands.len(),
        });
    }
    let n = cands.len();
    let mut g = WeightedDigraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if topics.topic_of(i) != topics.topic_of(j) {
                let w = edge_weight(&cands[i], &cands[j]);
                g.set_weight(i, j, w);
                g.set_weight(j, i, w);
            }
        }
    }
    Ok(g)
}

/// Promote the first-occurring candidate of each topic by adding to each
/// of its incoming edges. All right-hand-side weights are read from a
/// frozen pre-adjustment copy, so the result is order-independent.
pub fn adjust_weights(
    g: &WeightedDigraph,
    cands: &[Candidate],
    topics: &TopicPartition,
    cfg: &AdjustmentConfig,
) -> WeightedDigraph {
    let frozen = g.clone();
    let mut adjusted = g.clone();
    for members in &topics.members {
        // members are sorted by first offset, so the promoted candidate
        // is the head of the list
        let promoted = members[0];
        if members.len() < 2 {
            continue;
        }
        for (i, cand) in cands.iter().enumerate() {
            if frozen.weight(i, promoted) <= 0.0 {
                continue;
            }
            let boost = match cfg.variant {
                AdjustmentVariant::Published => {
                    let p_i = cand.first_offset() as f64;
                    let topic_sum: f64 = members[1..].iter().map(|&k| frozen.weight(k, i)).sum();
                    cfg.alpha * (1.0 / p_i).exp() * topic_sum
                }
                AdjustmentVariant::Draft => {
                    let topic_sum: f64 = members[1..]
                        .iter()
                        .map(|&k| frozen.weight(k, promoted))
                        .sum();
                    cfg.alpha * topic_sum
                }
            };
            let w = adjusted.weight(i, promoted) + boost;
            adjusted.set_weight(i, promoted, w);
        }
    }
    adjusted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stem::stem_phrase;
    use crate::topics::TopicPartition;

    fn cand(words: &[&str], positions: &[usize]) -> Candidate {
        Candidate {
            key: stem_phrase(words).unwrap(),
            surfaces: vec![words.join(" "); positions.len()],
            positions: positions.to_vec(),
            lengths: vec![words.len(); positions.len()],
        }
    }

    fn partition(assignment: &[usize], cands: &[Candidate]) -> TopicPartition {
        TopicPartition::from_assignment(assignment.to_vec(), cands)
    }

    #[test]
    fn inverse_distance_sum() {
        let ci = cand(&["a"], &[3]);
        let cj = cand(&["b"], &[6, 12]);
        let w = edge_weight(&ci, &cj);
        assert!((w - (1.0 / 3.0 + 1.0 / 9.0)).abs() < 1e-12);
    }

    #[test]
    fn adjacent_occurrences_weigh_one() {
        let ci = cand(&["a"], &[4]);
        let cj = cand(&["b"], &[5]);
        assert_eq!(edge_weight(&ci, &cj), 1.0);
    }

    #[test]
    fn edge_weight_is_symmetric() {
        let ci = cand(&["a"], &[1, 7, 20]);
        let cj = cand(&["b"], &[4, 11]);
        assert_eq!(edge_weight(&ci, &cj), edge_weight(&cj, &ci));
    }

    #[test]
    fn bipartite_edge_count() {
        // topics of sizes 2 and 3 -> 12 directed edges
        let cands = vec![
            cand(&["a"], &[1]),
            cand(&["b"], &[3]),
            cand(&["c"], &[5]),
            cand(&["d"], &[7]),
            cand(&["e"], &[9]),
        ];
        let topics = partition(&[0, 0, 1, 1, 1], &cands);
        let g = build_multipartite(&cands, &topics).unwrap();
        assert_eq!(g.edges().count(), 12);
    }

    #[test]
    fn single_topic_has_no_edges() {
        let cands = vec![cand(&["a"], &[1]), cand(&["b"], &[3])];
        let topics = partition(&[0, 0], &cands);
        let g = build_multipartite(&cands, &topics).unwrap();
        assert_eq!(g.edges().count(), 0);
    }

    #[test]
    fn three_singleton_topics_form_complete_k3() {
        let cands = vec![cand(&["a"], &[1]), cand(&["b"], &[3]), cand(&["c"], &[6])];
        let topics = partition(&[0, 1, 2], &cands);
        let g = build_multipartite(&cands, &topics).unwrap();
        assert_eq!(g.edges().count(), 6);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(g.weight(i, j), g.weight(j, i));
                }
            }
        }
    }

    #[test]
    fn partition_mismatch_is_an_error() {
        let cands = vec![cand(&["a"], &[1]), cand(&["b"], &[3])];
        let topics = partition(&[0], &cands[..1]);
        assert!(build_multipartite(&cands, &topics).is_err());
    }

    #[test]
    fn singleton_topics_make_adjustment_a_noop() {
        let cands = vec![cand(&["a"], &[1]), cand(&["b"], &[3]), cand(&["c"], &[6])];
        let topics = partition(&[0, 1, 2], &cands);
        let g = build_multipartite(&cands, &topics).unwrap();
        let adjusted = adjust_weights(&g, &cands, &topics, &AdjustmentConfig::default());
        assert_eq!(g, adjusted);
    }

    #[test]
    fn alpha_zero_changes_nothing() {
        let cands = vec![
            cand(&["a"], &[1]),
            cand(&["a", "x"], &[3]),
            cand(&["b"], &[6]),
        ];
        let topics = partition(&[0, 0, 1], &cands);
        let g = build_multipartite(&cands, &topics).unwrap();
        for variant in [AdjustmentVariant::Published, AdjustmentVariant::Draft] {
            let cfg = AdjustmentConfig {
                alpha: 0.0,
                variant,
            };
            assert_eq!(adjust_weights(&g, &cands, &topics, &cfg), g);
        }
    }

    #[test]
    fn draft_variant_is_a_noop_on_multipartite_graphs() {
        let cands = vec![
            cand(&["a"], &[1]),
            cand(&["a", "x"], &[4]),
            cand(&["b"], &[7]),
            cand(&["b", "y"], &[10]),
        ];
        let topics = partition(&[0, 0, 1, 1], &cands);
        let g = build_multipartite(&cands, &topics).unwrap();
        let cfg = AdjustmentConfig {
            alpha: 1.1,
            variant: AdjustmentVariant::Draft,
        };
        assert_eq!(adjust_weights(&g, &cands, &topics, &cfg), g);
    }

    #[test]
    fn published_boost_hand_value() {
        // w(i,j) = 0.5, p_i = 1, topic sum over w(k,i) = 2.0, alpha = 1.1
        // -> 0.5 + 1.1 * e * 2.0
        let mut g = WeightedDigraph::new(3);
        // node 1 is promoted (topic {1, 2}), node 0 is the source
        g.set_weight(0, 1, 0.5);
        g.set_weight(1, 0, 0.5);
        g.set_weight(2, 0, 2.0);
        g.set_weight(0, 2, 2.0);
        let cands = vec![
            cand(&["a"], &[1]),
            cand(&["b"], &[5]),
            cand(&["b", "x"], &[9]),
        ];
        let topics = partition(&[0, 1, 1], &cands);
        let cfg = AdjustmentConfig {
            alpha: 1.1,
            variant: AdjustmentVariant::Published,
        };
        let adjusted = adjust_weights(&g, &cands, &topics, &cfg);
        let expected = 0.5 + 1.1 * std::f64::consts::E * 2.0;
        assert!((adjusted.weight(0, 1) - expected).abs() < 1e-12);
        assert!((expected - 6.480_220_022_6).abs() < 1e-6);
    }

    #[test]
    fn multipartite_property_survives_adjustment() {
        let cands = vec![
            cand(&["a"], &[1]),
            cand(&["a", "x"], &[4]),
            cand(&["b"], &[7]),
            cand(&["c"], &[11]),
        ];
        let topics = partition(&[0, 0, 1, 2], &cands);
        let g = build_multipartite(&cands, &topics).unwrap();
        let adjusted = adjust_weights(&g, &cands, &topics, &AdjustmentConfig::default());
        for i in 0..cands.len() {
            for j in 0..cands.len() {
                if i != j && topics.topic_of(i) == topics.topic_of(j) {
                    assert_eq!(adjusted.weight(i, j), 0.0);
                }
                assert!(adjusted.weight(i, j) >= g.weight(i, j));
            }
        }
    }

    #[test]
    fn dump_format() {
        let mut g = WeightedDigraph::new(2);
        g.set_weight(0, 1, 0.25);
        let mut buf = Vec::new();
        g.dump(2, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "k=2 n=2\n0\t1\t0.25\n");
    }
}
