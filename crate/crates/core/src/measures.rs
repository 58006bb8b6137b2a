//! Per-node topological measurements and the per-word intermittency of a
//! token stream.
//!
//! Accessibility is computed by exact enumeration of self-avoiding walks
//! (h <= 3 keeps that polynomial), not by Monte Carlo: a walker standing on
//! a node with no unvisited neighbor is absorbed in place, which keeps the
//! endpoint distribution a probability distribution and the entropy of
//! Eq.-style alpha well defined. Betweenness uses the standard
//! accumulation over BFS trees, endpoints excluded, each unordered pair
//! counted once. All measurements are unweighted.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::math;
use crate::network::{AdjacencyNetwork, NetworkError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureError {
    Network(NetworkError),
    /// Accessibility horizon outside {2, 3}.
    InvalidHorizon { h: usize },
    /// The word occurs fewer than `f_min` times.
    BelowMinFrequency { word: String, count: usize, f_min: usize },
    WordNotFound { word: String },
}

impl fmt::Display for MeasureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Network(e) => write!(f, "{e}"),
            Self::InvalidHorizon { h } => write!(f, "accessibility horizon must be 2 or 3, got {h}"),
            Self::BelowMinFrequency { word, count, f_min } => {
                write!(f, "word {word:?} occurs {count} times, below f_min = {f_min}")
            }
            Self::WordNotFound { word } => write!(f, "word {word:?} does not occur in the stream"),
        }
    }
}

impl core::error::Error for MeasureError {}

impl From<NetworkError> for MeasureError {
    fn from(e: NetworkError) -> Self {
        Self::Network(e)
    }
}

fn saw_spread(
    net: &AdjacencyNetwork,
    path: &mut Vec<u32>,
    prob: f64,
    steps_left: usize,
    mass: &mut [f64],
) {
    let current = *path.last().expect("path starts non-empty");
    if steps_left == 0 {
        mass[current as usize] += prob;
        return;
    }
    let nbrs = net.neighbors(current).expect("path nodes are valid");
    let unvisited = nbrs.iter().filter(|v| !path.contains(v)).count();
    if unvisited == 0 {
        // Dead end: the walker stays here for the remaining steps.
        mass[current as usize] += prob;
        return;
    }
    let step_prob = prob / unvisited as f64;
    for i in 0..nbrs.len() {
        let v = nbrs[i];
        if path.contains(&v) {
            continue;
        }
        path.push(v);
        saw_spread(net, path, step_prob, steps_left - 1, mass);
        path.pop();
    }
}

/// Endpoint distribution of an h-step self-avoiding walk from `v`: entry j
/// is the probability that the walker occupies node j after h steps, moving
/// uniformly among unvisited neighbors at each step. Sums to 1 exactly.
pub fn saw_endpoint_distribution(
    net: &AdjacencyNetwork,
    v: u32,
    h: usize,
) -> Result<Vec<f64>, MeasureError> {
    if h != 2 && h != 3 {
        return Err(MeasureError::InvalidHorizon { h });
    }
    net.neighbors(v)?;
    let mut mass = vec![0.0; net.node_count()];
    let mut path = Vec::with_capacity(h + 1);
    path.push(v);
    saw_spread(net, &mut path, 1.0, h, &mut mass);
    Ok(mass)
}

/// Accessibility: exp of the entropy of the h-step self-avoiding-walk
/// endpoint distribution, an effective count of reachable nodes.
pub fn accessibility(net: &AdjacencyNetwork, v: u32, h: usize) -> Result<f64, MeasureError> {
    let mass = saw_endpoint_distribution(net, v, h)?;
    let mut entropy = 0.0;
    for p in mass {
        if p > 0.0 {
            entropy -= p * math::ln(p);
        }
    }
    Ok(math::exp(entropy))
}

/// Mean degree over the neighbors of `v`; 0 for an isolated node.
pub fn avg_neighbor_degree(net: &AdjacencyNetwork, v: u32) -> Result<f64, MeasureError> {
    let nbrs = net.neighbors(v)?;
    if nbrs.is_empty() {
        log::warn!("avg_neighbor_degree of isolated node {v} reported as 0");
        return Ok(0.0);
    }
    let total: usize = nbrs.iter().map(|&u| net.degree(u).expect("neighbor is valid")).sum();
    Ok(total as f64 / nbrs.len() as f64)
}

/// Clustering coefficient: edges among neighbors over deg*(deg-1)/2;
/// 0 when the degree is below 2.
pub fn clustering(net: &AdjacencyNetwork, v: u32) -> Result<f64, MeasureError> {
    let nbrs = net.neighbors(v)?;
    let d = nbrs.len();
    if d < 2 {
        return Ok(0.0);
    }
    let mut links = 0usize;
    for i in 0..d {
        for j in (i + 1)..d {
            if net.has_edge(nbrs[i], nbrs[j]) {
                links += 1;
            }
        }
    }
    Ok(links as f64 / (d * (d - 1) / 2) as f64)
}

/// Betweenness of every node: over unordered pairs {s, t}, the fraction of
/// shortest s-t paths passing through the node, endpoints excluded,
/// unnormalized. Unreachable pairs contribute 0.
pub fn betweenness(net: &AdjacencyNetwork) -> Vec<f64> {
    let n = net.node_count();
    let mut centrality = vec![0.0; n];

    let mut stack: Vec<u32> = Vec::with_capacity(n);
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i32; n];
    let mut delta = vec![0.0f64; n];
    let mut queue: VecDeque<u32> = VecDeque::new();

    for s in 0..n as u32 {
        stack.clear();
        queue.clear();
        for i in 0..n {
            preds[i].clear();
            sigma[i] = 0.0;
            dist[i] = -1;
            delta[i] = 0.0;
        }
        sigma[s as usize] = 1.0;
        dist[s as usize] = 0;
        queue.push_back(s);

        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in net.neighbors(v).expect("node ids in range") {
                if dist[w as usize] < 0 {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
                if dist[w as usize] == dist[v as usize] + 1 {
                    sigma[w as usize] += sigma[v as usize];
                    preds[w as usize].push(v);
                }
            }
        }

        while let Some(w) = stack.pop() {
            for &v in &preds[w as usize] {
                delta[v as usize] +=
                    sigma[v as usize] / sigma[w as usize] * (1.0 + delta[w as usize]);
            }
            if w != s {
                centrality[w as usize] += delta[w as usize];
            }
        }
    }

    // The source loop visits each unordered pair from both endpoints.
    for b in &mut centrality {
        *b /= 2.0;
    }
    centrality
}

/// Mean BFS distance from each node to the nodes reachable from it
/// (excluding itself); `None` for nodes with no reachable others.
pub fn shortest_path_stats(net: &AdjacencyNetwork) -> Vec<Option<f64>> {
    let n = net.node_count();
    let mut result = Vec::with_capacity(n);
    let mut dist = vec![-1i64; n];
    let mut queue: VecDeque<u32> = VecDeque::new();

    for s in 0..n as u32 {
        for d in dist.iter_mut() {
            *d = -1;
        }
        queue.clear();
        dist[s as usize] = 0;
        queue.push_back(s);
        let mut total = 0i64;
        let mut reached = 0i64;
        while let Some(v) = queue.pop_front() {
            for &w in net.neighbors(v).expect("node ids in range") {
                if dist[w as usize] < 0 {
                    dist[w as usize] = dist[v as usize] + 1;
                    total += dist[w as usize];
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        result.push(if reached > 0 { Some(total as f64 / reached as f64) } else { None });
    }
    result
}

/// All per-node measurements of one network, indexed by node id.
#[derive(Debug, Clone)]
pub struct NodeMeasurements {
    pub accessibility2: Vec<f64>,
    pub accessibility3: Vec<f64>,
    pub avg_neighbor_degree: Vec<f64>,
    pub betweenness: Vec<f64>,
    pub clustering: Vec<f64>,
    pub avg_path_length: Vec<Option<f64>>,
}

impl NodeMeasurements {
    pub fn node_count(&self) -> usize {
        self.accessibility2.len()
    }
}

/// Computes every per-node measurement of `net`.
pub fn measure_network(net: &AdjacencyNetwork) -> NodeMeasurements {
    let n = net.node_count();
    let mut accessibility2 = Vec::with_capacity(n);
    let mut accessibility3 = Vec::with_capacity(n);
    let mut kn = Vec::with_capacity(n);
    let mut cc = Vec::with_capacity(n);
    for v in 0..n as u32 {
        accessibility2.push(accessibility(net, v, 2).expect("valid node and horizon"));
        accessibility3.push(accessibility(net, v, 3).expect("valid node and horizon"));
        kn.push(avg_neighbor_degree(net, v).expect("valid node"));
        cc.push(clustering(net, v).expect("valid node"));
    }
    NodeMeasurements {
        accessibility2,
        accessibility3,
        avg_neighbor_degree: kn,
        betweenness: betweenness(net),
        clustering: cc,
        avg_path_length: shortest_path_stats(net),
    }
}

/// Which recurrence-time convention a stream is measured under.
///
/// `Difference` is the position difference between successive occurrences,
/// so the recurrence sequence of a word sums exactly to L + 1 once the wrap
/// term is included. `Gap` counts the words strictly between occurrences
/// (one less per interval).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecurrenceConvention {
    #[default]
    Difference,
    Gap,
}

impl RecurrenceConvention {
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "difference" => Some(Self::Difference),
            "gap" => Some(Self::Gap),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Difference => "difference",
            Self::Gap => "gap",
        }
    }
}

/// Recurrence times of a word occurring at 1-based `positions` in a stream
/// of length `len`. The last element is the wrap term t_N = t_I + t_F
/// (time before the first occurrence plus time after the last).
pub fn recurrence_times(
    positions: &[usize],
    len: usize,
    convention: RecurrenceConvention,
) -> Vec<u64> {
    debug_assert!(!positions.is_empty());
    debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(*positions.last().unwrap() <= len);
    let mut times = Vec::with_capacity(positions.len());
    let gap_off = match convention {
        RecurrenceConvention::Difference => 0,
        RecurrenceConvention::Gap => 1,
    };
    for pair in positions.windows(2) {
        times.push((pair[1] - pair[0] - gap_off) as u64);
    }
    let (t_initial, t_final) = match convention {
        RecurrenceConvention::Difference => (positions[0], len + 1 - positions[positions.len() - 1]),
        RecurrenceConvention::Gap => (positions[0] - 1, len - positions[positions.len() - 1]),
    };
    times.push((t_initial + t_final) as u64);
    times
}

/// Intermittency of a recurrence distribution: sqrt(<t^2>/<t>^2 - 1).
/// Exactly 0 when all elements are equal.
pub fn intermittency_index(times: &[u64]) -> f64 {
    debug_assert!(!times.is_empty());
    if times.iter().all(|&t| t == times[0]) {
        return 0.0;
    }
    let n = times.len() as f64;
    let mean = times.iter().map(|&t| t as f64).sum::<f64>() / n;
    let mean_sq = times.iter().map(|&t| (t as f64) * (t as f64)).sum::<f64>() / n;
    let ratio = mean_sq / (mean * mean) - 1.0;
    math::sqrt(if ratio > 0.0 { ratio } else { 0.0 })
}

/// Occurrence statistics plus intermittency for one word.
#[derive(Debug, Clone, PartialEq)]
pub struct WordIntermittency {
    pub occurrences: usize,
    pub recurrence_times: Vec<u64>,
    pub intermittency: f64,
}

fn occurrence_positions<S: AsRef<str>>(tokens: &[S], word: &str) -> Vec<usize> {
    tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.as_ref() == word)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Intermittency of one word in a token stream. Words occurring fewer than
/// `f_min` times are rejected (callers exclude them from the distribution).
pub fn word_intermittency<S: AsRef<str>>(
    tokens: &[S],
    word: &str,
    f_min: usize,
    convention: RecurrenceConvention,
) -> Result<WordIntermittency, MeasureError> {
    let positions = occurrence_positions(tokens, word);
    if positions.is_empty() {
        return Err(MeasureError::WordNotFound { word: String::from(word) });
    }
    if positions.len() < f_min {
        return Err(MeasureError::BelowMinFrequency {
            word: String::from(word),
            count: positions.len(),
            f_min,
        });
    }
    let times = recurrence_times(&positions, tokens.len(), convention);
    let index = intermittency_index(&times);
    Ok(WordIntermittency {
        occurrences: positions.len(),
        recurrence_times: times,
        intermittency: index,
    })
}

/// Intermittency of every word meeting `f_min`, in first-occurrence order.
pub fn stream_intermittencies<S: AsRef<str>>(
    tokens: &[S],
    f_min: usize,
    convention: RecurrenceConvention,
) -> Vec<(String, WordIntermittency)> {
    let mut positions: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    let mut order: Vec<&str> = Vec::new();
    for (i, token) in tokens.iter().enumerate() {
        let t = token.as_ref();
        let entry = positions.entry(t).or_default();
        if entry.is_empty() {
            order.push(t);
        }
        entry.push(i + 1);
    }
    order
        .into_iter()
        .filter_map(|word| {
            let pos = &positions[word];
            if pos.len() < f_min.max(1) {
                return None;
            }
            let times = recurrence_times(pos, tokens.len(), convention);
            let index = intermittency_index(&times);
            Some((
                String::from(word),
                WordIntermittency {
                    occurrences: pos.len(),
                    recurrence_times: times,
                    intermittency: index,
                },
            ))
        })
        .collect()
}
