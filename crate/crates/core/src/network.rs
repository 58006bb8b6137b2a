//! Word-adjacency network of a subtext.
//!
//! Each distinct token becomes a node (ids in first-occurrence order, so
//! serialized output is reproducible); an undirected edge links two words
//! that appear consecutively at least once. Edge weights count adjacent
//! co-occurrences in either order, but every measurement downstream is
//! unweighted. Consecutive repeats of the same word create no self-loop.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetworkError {
    /// Fewer than 2 tokens: no adjacency to model.
    TooFewTokens { len: usize },
    UnknownNode { id: u32 },
    /// `from_edge_list` got a self-loop or an endpoint out of range.
    InvalidEdge { u: u32, v: u32 },
}

impl fmt::Display for NetworkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewTokens { len } => {
                write!(f, "need at least 2 tokens to build a network, got {len}")
            }
            Self::UnknownNode { id } => write!(f, "unknown node id {id}"),
            Self::InvalidEdge { u, v } => write!(f, "invalid edge ({u}, {v})"),
        }
    }
}

impl core::error::Error for NetworkError {}

#[derive(Debug, Clone)]
pub struct AdjacencyNetwork {
    words: Vec<String>,
    ids: BTreeMap<String, u32>,
    /// Sorted distinct neighbor ids per node.
    adjacency: Vec<Vec<u32>>,
    /// `(u, v, weight)` with `u < v`, sorted.
    edges: Vec<(u32, u32, u32)>,
}

impl AdjacencyNetwork {
    /// Builds the network of a token sequence.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, NetworkError> {
        if tokens.len() < 2 {
            return Err(NetworkError::TooFewTokens { len: tokens.len() });
        }

        let mut words: Vec<String> = Vec::new();
        let mut ids: BTreeMap<String, u32> = BTreeMap::new();
        let mut node_of = |word: &str, words: &mut Vec<String>| -> u32 {
            if let Some(&id) = ids.get(word) {
                return id;
            }
            let id = words.len() as u32;
            words.push(String::from(word));
            ids.insert(String::from(word), id);
            id
        };

        let mut weights: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        let mut prev = node_of(tokens[0].as_ref(), &mut words);
        for token in &tokens[1..] {
            let cur = node_of(token.as_ref(), &mut words);
            if cur != prev {
                let key = (prev.min(cur), prev.max(cur));
                *weights.entry(key).or_insert(0) += 1;
            }
            prev = cur;
        }

        Ok(Self::assemble(words, ids, weights))
    }

    /// Builds a network from an explicit edge list over `n` nodes named
    /// `w0..w{n-1}`. Duplicate edges aggregate into the weight.
    pub fn from_edge_list(n: usize, edge_pairs: &[(u32, u32)]) -> Result<Self, NetworkError> {
        let words: Vec<String> = (0..n).map(|i| alloc::format!("w{i}")).collect();
        let ids: BTreeMap<String, u32> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let mut weights: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for &(u, v) in edge_pairs {
            if u == v || u as usize >= n || v as usize >= n {
                return Err(NetworkError::InvalidEdge { u, v });
            }
            *weights.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
        Ok(Self::assemble(words, ids, weights))
    }

    fn assemble(
        words: Vec<String>,
        ids: BTreeMap<String, u32>,
        weights: BTreeMap<(u32, u32), u32>,
    ) -> Self {
        let mut adjacency = alloc::vec![Vec::new(); words.len()];
        let mut edges = Vec::with_capacity(weights.len());
        for (&(u, v), &w) in &weights {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
            edges.push((u, v, w));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Self { words, ids, adjacency, edges }
    }

    pub fn node_count(&self) -> usize {
        self.words.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn check(&self, id: u32) -> Result<(), NetworkError> {
        if (id as usize) < self.words.len() {
            Ok(())
        } else {
            Err(NetworkError::UnknownNode { id })
        }
    }

    /// Number of distinct neighbors (unweighted degree).
    pub fn degree(&self, id: u32) -> Result<usize, NetworkError> {
        self.check(id)?;
        Ok(self.adjacency[id as usize].len())
    }

    /// Sorted adjacency set; symmetric by construction.
    pub fn neighbors(&self, id: u32) -> Result<&[u32], NetworkError> {
        self.check(id)?;
        Ok(&self.adjacency[id as usize])
    }

    pub fn word(&self, id: u32) -> Result<&str, NetworkError> {
        self.check(id)?;
        Ok(&self.words[id as usize])
    }

    pub fn node_id(&self, word: &str) -> Option<u32> {
        self.ids.get(word).copied()
    }

    /// Edges as `(u, v, weight)` with `u < v`, sorted by id pair.
    pub fn edges(&self) -> &[(u32, u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        match self.adjacency.get(u as usize) {
            Some(nbrs) => nbrs.binary_search(&v).is_ok(),
            None => false,
        }
    }

    /// Words in node-id (first occurrence) order.
    pub fn node_words(&self) -> impl Iterator<Item = (u32, &str)> {
        self.words.iter().enumerate().map(|(i, w)| (i as u32, w.as_str()))
    }
}

/// Canonical token stream of the worked example, shared by tests across
/// modules.
#[cfg(test)]
pub(crate) const CANONICAL_EXTRACT: [&str; 10] = [
    "complex", "network", "model", "property", "text", "complex", "text", "display", "complex",
    "organization",
];
