//! Topic clustering: hierarchical agglomerative clustering with average
//! linkage over Jaccard distance between candidate stem sets.
//!
//! Linkage distances are recomputed exactly from the pairwise matrix at
//! every step (no Lance-Williams update), and merge ties are broken by the
//! members' first-offset order, so the partition is fully deterministic.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::candidates::Candidate;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopicsError {
    #[error("cannot cluster an empty candidate list")]
    EmptyCandidates,
}

/// Assignment of candidates to disjoint topics. Topic ids are dense
/// (0..k-1), ordered by the first offset of each topic's earliest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopicPartition {
    /// candidate index -> topic id
    pub assignment: Vec<usize>,
    /// per topic, member candidate indices sorted by first offset
    pub members: Vec<Vec<usize>>,
}

impl TopicPartition {
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn topic_of(&self, candidate: usize) -> usize {
        self.assignment[candidate]
    }

    /// Wrap an externally computed assignment (any topical decomposition
    /// with the same invariants can be injected here).
    pub fn from_assignment(assignment: Vec<usize>, cands: &[Candidate]) -> TopicPartition {
        let k = assignment.iter().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, &t) in assignment.iter().enumerate() {
            members[t].push(i);
        }
        members.retain(|m| !m.is_empty());
        for m in &mut members {
            m.sort_by_key(|&i| cands[i].first_offset());
        }
        canonicalize(members, cands)
    }
}

fn canonicalize(mut members: Vec<Vec<usize>>, cands: &[Candidate]) -> TopicPartition {
    members.sort_by_key(|m| cands[m[0]].first_offset());
    let mut assignment = vec![0usize; cands.len()];
    for (t, m) in members.iter().enumerate() {
        for &i in m {
            assignment[i] = t;
        }
    }
    TopicPartition {
        assignment,
        members,
    }
}

/// Jaccard distance between the stem SETS of two candidates.
pub fn stem_set_distance(a: &Candidate, b: &Candidate) -> f64 {
    let sa: BTreeSet<&str> = a.key.stems().iter().map(|s| s.as_str()).collect();
    let sb: BTreeSet<&str> = b.key.stems().iter().map(|s| s.as_str()).collect();
    let inter = sa.intersection(&sb).count();
    let union = sa.union(&sb).count();
    1.0 - inter as f64 / union as f64
}

/// Agglomerate candidates into topics, merging while the minimum
/// average-linkage distance stays at or below `cutoff`.
pub fn cluster_topics(cands: &[Candidate], cutoff: f64) -> Result<TopicPartition, TopicsError> {
    if cands.is_empty() {
        return Err(TopicsError::EmptyCandidates);
    }
    let n = cands.len();
    let mut dist = vec![0.0f64; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = stem_set_distance(&cands[i], &cands[j]);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }

    // clusters hold candidate indices sorted ascending; candidate order is
    // first-offset order already (extract_candidates sorts by it)
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();

    loop {
        if clusters.len() < 2 {
            break;
        }
        let mut best: Option<(f64, usize, usize, Vec<usize>)> = None;
        for a in 0..clusters.len() {
            for b in (a + 1)..clusters.len() {
                let d = average_linkage(&dist, n, &clusters[a], &clusters[b]);
                let mut merged: Vec<usize> = clusters[a]
                    .iter()
                    .chain(clusters[b].iter())
                    .copied()
                    .collect();
                merged.sort_unstable();
                let better = match &best {
                    None => true,
                    Some((bd, _, _, bm)) => d < *bd || (d == *bd && merged < *bm),
                };
                if better {
                    best = Some((d, a, b, merged));
                }
            }
        }
        let (d, a, b, merged) = best.expect("at least one pair");
        if d > cutoff {
            break;
        }
        clusters[a] = merged;
        clusters.remove(b);
    }

    let members: Vec<Vec<usize>> = clusters
        .into_iter()
        .map(|mut m| {
            m.sort_by_key(|&i| cands[i].first_offset());
            m
        })
        .collect();
    Ok(canonicalize(members, cands))
}

fn average_linkage(dist: &[f64], n: usize, a: &[usize], b: &[usize]) -> f64 {
    let mut sum = 0.0;
    for &i in a {
        for &j in b {
            sum += dist[i * n + j];
        }
    }
    sum / (a.len() * b.len()) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stem::stem_phrase;

    pub(crate) fn cand(words: &[&str], offset: usize) -> Candidate {
        Candidate {
            key: stem_phrase(words).unwrap(),
            surfaces: vec![words.join(" ")],
            positions: vec![offset],
            lengths: vec![words.len()],
        }
    }

    #[test]
    fn jaccard_distance_cases() {
        let a = cand(&["keyphrase", "extraction"], 1);
        let b = cand(&["keyphrase", "extraction", "method"], 5);
        let d = stem_set_distance(&a, &b);
        assert!((d - (1.0 - 2.0 / 3.0)).abs() < 1e-12);

        assert_eq!(stem_set_distance(&a, &a), 0.0);

        let c = cand(&["graph"], 9);
        assert_eq!(stem_set_distance(&a, &c), 1.0);
    }

    #[test]
    fn merges_below_cutoff_only() {
        // d(0,1) = 1/3, d(0,2) = d(1,2) = 1
        let cands = vec![
            cand(&["keyphrase", "extraction"], 1),
            cand(&["keyphrase", "extraction", "method"], 4),
            cand(&["graph"], 9),
        ];
        let p = cluster_topics(&cands, 0.5).unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(p.assignment[0], p.assignment[1]);
        assert_ne!(p.assignment[0], p.assignment[2]);
    }

    #[test]
    fn cutoff_zero_keeps_singletons_except_duplicates() {
        let cands = vec![
            cand(&["graph"], 1),
            cand(&["model"], 3),
            cand(&["graphs"], 7), // same stem as "graph"
        ];
        let p = cluster_topics(&cands, 0.0).unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(p.assignment[0], p.assignment[2]);
    }

    #[test]
    fn single_candidate_single_topic() {
        let cands = vec![cand(&["graph"], 1)];
        let p = cluster_topics(&cands, 0.9).unwrap();
        assert_eq!(p.k(), 1);
        assert_eq!(p.members[0], vec![0]);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(cluster_topics(&[], 0.5), Err(TopicsError::EmptyCandidates));
    }

    #[test]
    fn partition_is_disjoint_and_covering() {
        let cands = vec![
            cand(&["graph", "model"], 1),
            cand(&["graph"], 4),
            cand(&["ranking", "model"], 6),
            cand(&["extraction"], 9),
        ];
        let p = cluster_topics(&cands, 0.74).unwrap();
        let mut seen = vec![false; cands.len()];
        for (t, m) in p.members.iter().enumerate() {
            for &i in m {
                assert!(!seen[i]);
                seen[i] = true;
                assert_eq!(p.assignment[i], t);
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn topic_ids_ordered_by_first_offset() {
        let cands = vec![
            cand(&["ranking"], 1),
            cand(&["graph"], 3),
            cand(&["graphs"], 8),
        ];
        let p = cluster_topics(&cands, 0.0).unwrap();
        // topic 0 contains the earliest candidate
        assert_eq!(p.members[0], vec![0]);
        assert_eq!(p.members[1], vec![1, 2]);
    }
}
