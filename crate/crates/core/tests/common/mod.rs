//! Brute-force oracles and graph generators shared by the integration
//! tests. Everything here recomputes results from the raw edge list with
//! naive algorithms, independent of the implementation paths under test.

use std::collections::VecDeque;

use textnet_core::network::AdjacencyNetwork;
use textnet_core::rng::SplitMix64;

pub fn adjacency_sets(net: &AdjacencyNetwork) -> Vec<Vec<usize>> {
    let n = net.node_count();
    let mut adj = vec![Vec::new(); n];
    for &(u, v, _) in net.edges() {
        adj[u as usize].push(v as usize);
        adj[v as usize].push(u as usize);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

/// Seeded G(n, p) graph.
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> AdjacencyNetwork {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.next_f64() < edge_prob {
                edges.push((u, v));
            }
        }
    }
    AdjacencyNetwork::from_edge_list(n, &edges).expect("valid edge list")
}

/// Seeded random recursive tree on n nodes.
pub fn random_tree(n: usize, seed: u64) -> AdjacencyNetwork {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for v in 1..n as u32 {
        let parent = rng.next_below(v as u64) as u32;
        edges.push((parent, v));
    }
    AdjacencyNetwork::from_edge_list(n, &edges).expect("valid edge list")
}

fn bfs_distances(adj: &[Vec<usize>], start: usize) -> Vec<i64> {
    let mut dist = vec![-1i64; adj.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Betweenness by explicit enumeration of every shortest path per pair.
pub fn betweenness_oracle(net: &AdjacencyNetwork) -> Vec<f64> {
    let adj = adjacency_sets(net);
    let n = adj.len();
    let mut centrality = vec![0.0; n];

    for s in 0..n {
        let dist = bfs_distances(&adj, s);
        for t in (s + 1)..n {
            if dist[t] < 0 {
                continue;
            }
            let mut total = 0u64;
            let mut through = vec![0u64; n];
            let mut path = vec![s];
            enumerate_paths(&adj, &dist, t, &mut path, &mut total, &mut through);
            assert!(total > 0);
            for v in 0..n {
                if v != s && v != t && through[v] > 0 {
                    centrality[v] += through[v] as f64 / total as f64;
                }
            }
        }
    }
    centrality
}

fn enumerate_paths(
    adj: &[Vec<usize>],
    dist: &[i64],
    target: usize,
    path: &mut Vec<usize>,
    total: &mut u64,
    through: &mut [u64],
) {
    let current = *path.last().unwrap();
    if current == target {
        *total += 1;
        for &v in &path[1..path.len() - 1] {
            through[v] += 1;
        }
        return;
    }
    for &next in &adj[current] {
        if dist[next] == dist[current] + 1 && dist[next] <= dist[target] {
            path.push(next);
            enumerate_paths(adj, dist, target, path, total, through);
            path.pop();
        }
    }
}

/// Betweenness of every tree node from the component-product formula: the
/// pairs separated by v are exactly those in different components of
/// tree - v.
pub fn tree_betweenness_formula(net: &AdjacencyNetwork) -> Vec<f64> {
    let adj = adjacency_sets(net);
    let n = adj.len();
    let mut out = vec![0.0; n];
    for v in 0..n {
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut component_sizes = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut size = 0u64;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                size += 1;
                for &w in &adj[x] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            component_sizes.push(size);
        }
        let mut pairs = 0u64;
        for i in 0..component_sizes.len() {
            for j in (i + 1)..component_sizes.len() {
                pairs += component_sizes[i] * component_sizes[j];
            }
        }
        out[v] = pairs as f64;
    }
    out
}

/// Clustering by exhaustive triple enumeration.
pub fn clustering_oracle(net: &AdjacencyNetwork) -> Vec<f64> {
    let adj = adjacency_sets(net);
    let n = adj.len();
    let has = |u: usize, v: usize| adj[u].binary_search(&v).is_ok();
    (0..n)
        .map(|v| {
            let d = adj[v].len();
            if d < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for i in 0..d {
                for j in (i + 1)..d {
                    if has(adj[v][i], adj[v][j]) {
                        links += 1;
                    }
                }
            }
            links as f64 / (d * (d - 1) / 2) as f64
        })
        .collect()
}

pub fn neighbor_degree_oracle(net: &AdjacencyNetwork) -> Vec<f64> {
    let adj = adjacency_sets(net);
    adj.iter()
        .map(|nbrs| {
            if nbrs.is_empty() {
                0.0
            } else {
                nbrs.iter().map(|&u| adj[u].len() as f64).sum::<f64>() / nbrs.len() as f64
            }
        })
        .collect()
}

/// Per-node mean distance to reachable nodes, via Floyd-Warshall.
pub fn path_length_oracle(net: &AdjacencyNetwork) -> Vec<Option<f64>> {
    let adj = adjacency_sets(net);
    let n = adj.len();
    const INF: i64 = i64::MAX / 4;
    let mut dist = vec![vec![INF; n]; n];
    for v in 0..n {
        dist[v][v] = 0;
        for &w in &adj[v] {
            dist[v][w] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    (0..n)
        .map(|v| {
            let reachable: Vec<i64> =
                (0..n).filter(|&u| u != v && dist[v][u] < INF).map(|u| dist[v][u]).collect();
            if reachable.is_empty() {
                None
            } else {
                Some(reachable.iter().sum::<i64>() as f64 / reachable.len() as f64)
            }
        })
        .collect()
}

/// Self-avoiding-walk endpoint distribution by breadth-first enumeration of
/// complete walk traces (the implementation recurses depth-first instead).
pub fn saw_distribution_oracle(net: &AdjacencyNetwork, start: usize, h: usize) -> Vec<f64> {
    let adj = adjacency_sets(net);
    let mut mass = vec![0.0; adj.len()];
    let mut frontier: Vec<(Vec<usize>, f64)> = vec![(vec![start], 1.0)];
    for _ in 0..h {
        let mut next = Vec::new();
        for (walk, prob) in frontier {
            let current = *walk.last().unwrap();
            let unvisited: Vec<usize> =
                adj[current].iter().copied().filter(|x| !walk.contains(x)).collect();
            if unvisited.is_empty() {
                next.push((walk, prob));
            } else {
                let p = prob / unvisited.len() as f64;
                for u in unvisited {
                    let mut w = walk.clone();
                    w.push(u);
                    next.push((w, p));
                }
            }
        }
        frontier = next;
    }
    for (walk, prob) in frontier {
        mass[*walk.last().unwrap()] += prob;
    }
    mass
}

/// Number of nodes within BFS distance h of v (including v itself).
pub fn ball_size(net: &AdjacencyNetwork, v: usize, h: usize) -> usize {
    let adj = adjacency_sets(net);
    let dist = bfs_distances(&adj, v);
    dist.iter().filter(|&&d| d >= 0 && d <= h as i64).count()
}
