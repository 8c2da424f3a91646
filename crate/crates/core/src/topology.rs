//! Undirected random network topologies.
//!
//! Every node is its own neighbor: the adjacency diagonal is always set, so
//! a neighborhood always contains the node itself.

use rand::Rng;

use crate::error::{Error, Result};

/// Maximum number of draws attempted when a connected graph is required.
pub const MAX_TOPOLOGY_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkGraph {
    n: usize,
    /// Row-major `n x n`, symmetric, diagonal set.
    adjacency: Vec<bool>,
}

impl NetworkGraph {
    /// Graph with self-loops only.
    pub fn isolated(n: usize) -> Self {
        let mut adjacency = vec![false; n * n];
        for i in 0..n {
            adjacency[i * n + i] = true;
        }
        NetworkGraph { n, adjacency }
    }

    pub fn complete(n: usize) -> Self {
        NetworkGraph {
            n,
            adjacency: vec![true; n * n],
        }
    }

    /// Builds a graph from an undirected edge list. Self-loops are added implicitly.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::isolated(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::arg(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            g.link(a, b);
        }
        Ok(g)
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adjacency[a * self.n + b] = true;
        self.adjacency[b * self.n + a] = true;
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn is_linked(&self, a: usize, b: usize) -> bool {
        self.adjacency[a * self.n + b]
    }

    /// Sorted neighborhood of `i`, including `i` itself.
    pub fn neighbors(&self, i: usize) -> Result<Vec<usize>> {
        if i >= self.n {
            return Err(Error::arg(format!(
                "node {i} out of range for n = {}",
                self.n
            )));
        }
        let row = &self.adjacency[i * self.n..(i + 1) * self.n];
        Ok(row
            .iter()
            .enumerate()
            .filter_map(|(j, &on)| on.then_some(j))
            .collect())
    }

    /// Number of links, not counting self-loops.
    pub fn edge_count(&self) -> usize {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.is_linked(i, j))
            .count()
    }

    /// True when the graph, ignoring self-loops, has a single connected component.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.n {
                if !seen[j] && self.is_linked(i, j) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Draws an Erdős–Rényi graph: each unordered pair is linked independently
/// with probability `p`.
pub fn generate_erdos_renyi<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    rng: &mut R,
) -> Result<NetworkGraph> {
    if n == 0 {
        return Err(Error::arg("node count must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("link probability {p} outside [0, 1]")));
    }
    let mut g = NetworkGraph::isolated(n);
    for i in 0..n {
        for j in (i + 1)..n {
            // Always consume one draw per pair so the stream layout does not depend on p.
            let u: f64 = rng.random();
            if u < p {
                g.link(i, j);
            }
        }
    }
    Ok(g)
}

/// Redraws until the graph is connected. `rng_for_attempt(k)` supplies the
/// random source of the `k`-th attempt.
pub fn generate_connected_erdos_renyi<R, F>(
    n: usize,
    p: f64,
    max_attempts: usize,
    mut rng_for_attempt: F,
) -> Result<NetworkGraph>
where
    R: Rng,
    F: FnMut(usize) -> R,
{
    for attempt in 0..max_attempts {
        let mut rng = rng_for_attempt(attempt);
        let g = generate_erdos_renyi(n, p, &mut rng)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::TopologyExhausted {
        attempts: max_attempts,
        n,
        p,
    })
}
