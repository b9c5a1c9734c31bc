//! Comparison systems: SingleRank (with a length-normalized variant) and
//! TopicRank (with a no-topics variant).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::candidates::Candidate;
use crate::corpus::{Coarse, Document};
use crate::graph::{edge_weight, WeightedDigraph};
use crate::rank::{ranked_list, textrank_scores, RankError, RankedList, Scores, TieKey};
use crate::stem::stem_word;
use crate::topics::TopicPartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaselineKind {
    SingleRank,
    SingleRankNormalized,
    TopicRank,
    TopicRankNoTopics,
}

/// Word co-occurrence graph over noun/adjective tokens. Nodes are stemmed
/// lowercased words; the edge weight counts token-position pairs whose
/// offsets differ by at most `window`, measured on the full token
/// sequence (sentence boundaries are not a barrier).
pub fn word_graph(doc: &Document, window: usize) -> (WeightedDigraph, HashMap<String, usize>) {
    let mut index: HashMap<String, usize> = HashMap::new();
    let words: Vec<(usize, usize)> = doc
        .tokens
        .iter()
        .filter(|t| t.coarse != Coarse::Other)
        .map(|t| {
            let stem = stem_word(&t.surface);
            let next = index.len();
            let id = *index.entry(stem).or_insert(next);
            (t.offset, id)
        })
        .collect();
    let mut g = WeightedDigraph::new(index.len());
    for (a, &(off_a, id_a)) in words.iter().enumerate() {
        for &(off_b, id_b) in &words[a + 1..] {
            if off_b - off_a > window {
                break;
            }
            if id_a != id_b {
                g.set_weight(id_a, id_b, g.weight(id_a, id_b) + 1.0);
                g.set_weight(id_b, id_a, g.weight(id_b, id_a) + 1.0);
            }
        }
    }
    (g, index)
}

/// Per-candidate SingleRank scores: the sum of the candidate's word
/// scores, divided by word count when `normalized`.
pub fn singlerank_scores(
    doc: &Document,
    cands: &[Candidate],
    window: usize,
    normalized: bool,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Scores, RankError> {
    let (g, index) = word_graph(doc, window);
    let word_scores = textrank_scores(&g, lambda, tol, max_iter)?;
    let values = cands
        .iter()
        .map(|c| {
            let sum: f64 = c
                .key
                .stems()
                .iter()
                .filter_map(|s| index.get(s.as_str()))
                .map(|&id| word_scores.values[id])
                .sum();
            if normalized {
                sum / c.key.stems().len() as f64
            } else {
                sum
            }
        })
        .collect();
    Ok(Scores {
        values,
        iterations_used: word_scores.iterations_used,
        converged: word_scores.converged,
    })
}

/// SingleRank over pre-extracted candidates.
pub fn singlerank_ranked(
    doc: &Document,
    cands: &[Candidate],
    window: usize,
    normalized: bool,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RankedList, RankError> {
    let scores = singlerank_scores(doc, cands, window, normalized, lambda, tol, max_iter)?;
    let keys: Vec<TieKey> = cands.iter().map(TieKey::of).collect();
    Ok(ranked_list(&scores, &keys))
}

/// Top-n SingleRank keyphrases with default ranking parameters.
pub fn singlerank(
    doc: &Document,
    cands: &[Candidate],
    window: usize,
    normalized: bool,
    n: usize,
) -> Result<Vec<String>, RankError> {
    let ranked = singlerank_ranked(doc, cands, window, normalized, 0.85, 1e-8, 1000)?;
    Ok(ranked
        .entries
        .iter()
        .take(n)
        .map(|&(i, _)| cands[i].first_surface_lower())
        .collect())
}

/// TopicRank: rank topic nodes (inter-topic weight is the sum of
/// candidate-pair inverse-distance weights) and emit each top topic's
/// first-occurring candidate. With `use_topics` off the graph is the
/// complete candidate graph instead and candidates are ranked directly.
///
/// Returns ranked candidate indices: with topics on, one representative
/// per topic.
pub fn topicrank_ranked(
    cands: &[Candidate],
    topics: &TopicPartition,
    use_topics: bool,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RankedList, RankError> {
    if !use_topics {
        let n = cands.len();
        let mut g = WeightedDigraph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                let w = edge_weight(&cands[i], &cands[j]);
                g.set_weight(i, j, w);
                g.set_weight(j, i, w);
            }
        }
        let scores = textrank_scores(&g, lambda, tol, max_iter)?;
        let keys: Vec<TieKey> = cands.iter().map(TieKey::of).collect();
        return Ok(ranked_list(&scores, &keys));
    }

    let k = topics.k();
    let mut g = WeightedDigraph::new(k);
    for t1 in 0..k {
        for t2 in (t1 + 1)..k {
            let mut w = 0.0;
            for &a in &topics.members[t1] {
                for &b in &topics.members[t2] {
                    w += edge_weight(&cands[a], &cands[b]);
                }
            }
            g.set_weight(t1, t2, w);
            g.set_weight(t2, t1, w);
        }
    }
    let scores = textrank_scores(&g, lambda, tol, max_iter)?;
    // tie-break topics by their representative candidate
    let keys: Vec<TieKey> = topics
        .members
        .iter()
        .map(|m| TieKey::of(&cands[m[0]]))
        .collect();
    let by_topic = ranked_list(&scores, &keys);
    let entries = by_topic
        .entries
        .iter()
        .map(|&(t, s)| (topics.members[t][0], s))
        .collect();
    Ok(RankedList {
        entries,
        iterations_used: by_topic.iterations_used,
        converged: by_topic.converged,
    })
}

/// Top-n TopicRank keyphrases with default ranking parameters.
pub fn topicrank(
    cands: &[Candidate],
    topics: &TopicPartition,
    use_topics: bool,
    n: usize,
) -> Result<Vec<String>, RankError> {
    let ranked = topicrank_ranked(cands, topics, use_topics, 0.85, 1e-8, 1000)?;
    Ok(ranked
        .entries
        .iter()
        .take(n)
        .map(|&(i, _)| cands[i].first_surface_lower())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::{extract_candidates, PatternKind};
    use crate::corpus::{TagMap, Token};
    use crate::stem::stem_phrase;

    fn doc_from_tagged(pairs: &[(&str, &str)]) -> Document {
        let map = TagMap::default();
        let tokens = pairs
            .iter()
            .enumerate()
            .map(|(i, (w, p))| Token {
                surface: w.to_string(),
                pos_tag: p.to_string(),
                coarse: map.map(p),
                sentence_index: 0,
                offset: i + 1,
            })
            .collect();
        Document {
            id: "t".to_string(),
            tokens,
        }
    }

    fn cand(words: &[&str], positions: &[usize]) -> Candidate {
        Candidate {
            key: stem_phrase(words).unwrap(),
            surfaces: vec![words.join(" "); positions.len()],
            positions: positions.to_vec(),
            lengths: vec![words.len(); positions.len()],
        }
    }

    #[test]
    fn window_boundary_is_inclusive() {
        // offsets 1 and 11: distance 10, counted; 1 and 12: not
        let mut pairs = vec![("graph", "NN")];
        for _ in 0..9 {
            pairs.push(("and", "CC"));
        }
        pairs.push(("model", "NN"));
        let doc = doc_from_tagged(&pairs);
        let (g, index) = word_graph(&doc, 10);
        assert_eq!(g.weight(index["graph"], index["model"]), 1.0);

        let mut pairs = vec![("graph", "NN")];
        for _ in 0..10 {
            pairs.push(("and", "CC"));
        }
        pairs.push(("model", "NN"));
        let doc = doc_from_tagged(&pairs);
        let (g, index) = word_graph(&doc, 10);
        assert_eq!(g.weight(index["graph"], index["model"]), 0.0);
    }

    #[test]
    fn single_candidate_ranks_first_either_way() {
        let doc = doc_from_tagged(&[("graph", "NN"), ("is", "VBZ"), ("useful", "JJ")]);
        let cands = extract_candidates(&doc, PatternKind::AdjStarNounPlus);
        assert_eq!(cands.len(), 1);
        for normalized in [false, true] {
            let out = singlerank(&doc, &cands, 10, normalized, 5).unwrap();
            assert_eq!(out, vec!["graph"]);
        }
    }

    #[test]
    fn normalization_divides_by_length_only() {
        let doc = doc_from_tagged(&[
            ("graph", "NN"),
            ("models", "NNS"),
            ("use", "VBP"),
            ("graph", "NN"),
            ("ranking", "NN"),
        ]);
        let cands = extract_candidates(&doc, PatternKind::NaPlus);
        let raw = singlerank_scores(&doc, &cands, 10, false, 0.85, 1e-8, 1000).unwrap();
        let norm = singlerank_scores(&doc, &cands, 10, true, 0.85, 1e-8, 1000).unwrap();
        for (i, c) in cands.iter().enumerate() {
            let len = c.key.stems().len() as f64;
            assert!((norm.values[i] - raw.values[i] / len).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_partition_matches_no_topics_ranking() {
        let cands = vec![
            cand(&["graph"], &[1]),
            cand(&["model"], &[4]),
            cand(&["ranking"], &[9]),
        ];
        let topics = TopicPartition::from_assignment(vec![0, 1, 2], &cands);
        let with = topicrank_ranked(&cands, &topics, true, 0.85, 1e-8, 1000).unwrap();
        let without = topicrank_ranked(&cands, &topics, false, 0.85, 1e-8, 1000).unwrap();
        let order_a: Vec<usize> = with.entries.iter().map(|&(i, _)| i).collect();
        let order_b: Vec<usize> = without.entries.iter().map(|&(i, _)| i).collect();
        assert_eq!(order_a, order_b);
    }

    #[test]
    fn topic_edges_sum_candidate_pair_weights() {
        // topics {a, b} and {c}: edge = w(a,c) + w(b,c)
        let a = cand(&["graph"], &[1]);
        let b = cand(&["graphs", "x"], &[3]);
        let c = cand(&["model"], &[5]);
        let w_ac = edge_weight(&a, &c);
        let w_bc = edge_weight(&b, &c);
        let cands = vec![a, b, c];
        let topics = TopicPartition::from_assignment(vec![0, 0, 1], &cands);
        let k = topics.k();
        assert_eq!(k, 2);
        // rebuild the topic graph the way topicrank_ranked does
        let mut w = 0.0;
        for &i in &topics.members[0] {
            for &j in &topics.members[1] {
                w += edge_weight(&cands[i], &cands[j]);
            }
        }
        assert!((w - (w_ac + w_bc)).abs() < 1e-12);
    }

    #[test]
    fn single_topic_emits_its_first_candidate() {
        let cands = vec![cand(&["graph"], &[2]), cand(&["graphs"], &[6])];
        let topics = TopicPartition::from_assignment(vec![0, 0], &cands);
        let out = topicrank(&cands, &topics, true, 10).unwrap();
        assert_eq!(out, vec!["graph"]);
    }

    #[test]
    fn topicrank_emits_at_most_one_candidate_per_topic() {
        let cands = vec![
            cand(&["graph"], &[1]),
            cand(&["graphs"], &[4]),
            cand(&["model"], &[7]),
            cand(&["models", "x"], &[10]),
        ];
        let topics = TopicPartition::from_assignment(vec![0, 0, 1, 1], &cands);
        let ranked = topicrank_ranked(&cands, &topics, true, 0.85, 1e-8, 1000).unwrap();
        let mut seen = std::collections::HashSet::new();
        for &(i, _) in &ranked.entries {
            assert!(seen.insert(topics.topic_of(i)));
        }
    }
}
