//! Named graphs: cycles, paths and the classic vertex-transitive non-Cayley
//! examples (Petersen, dodecahedron, icosahedron, truncated icosahedron).

use super::BuildError;
use crate::rational::Q;
use crate::space::{Space, ValueKind};
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Petersen,
    Dodecahedron,
    Icosahedron,
    TruncatedIcosahedron,
    Cycle(u32),
    Path(u32),
}

impl NamedGraph {
    pub fn parse(name: &str, n: Option<u32>) -> Result<Self, BuildError> {
        match (name, n) {
            ("petersen", _) => Ok(NamedGraph::Petersen),
            ("dodecahedron", _) => Ok(NamedGraph::Dodecahedron),
            ("icosahedron", _) => Ok(NamedGraph::Icosahedron),
            ("truncated_icosahedron", _) => Ok(NamedGraph::TruncatedIcosahedron),
            ("cycle", Some(n)) if n >= 3 => Ok(NamedGraph::Cycle(n)),
            ("path", Some(n)) if n >= 1 => Ok(NamedGraph::Path(n)),
            ("cycle" | "path", _) => Err(BuildError::Precondition(format!(
                "graph `{name}` needs a point count n"
            ))),
            _ => Err(BuildError::Precondition(format!("unknown graph `{name}`"))),
        }
    }
}

/// Path-distance space of a named graph, with the uniform measure.
pub fn named_graph(which: &NamedGraph) -> Result<Space, BuildError> {
    let (n, edges) = match which {
        NamedGraph::Petersen => petersen(),
        NamedGraph::Dodecahedron => dodecahedron(),
        NamedGraph::Icosahedron => icosahedron(),
        NamedGraph::TruncatedIcosahedron => truncated_icosahedron(),
        NamedGraph::Cycle(n) => {
            let n = *n as usize;
            (n, (0..n).map(|i| (i, (i + 1) % n)).collect())
        }
        NamedGraph::Path(n) => {
            let n = *n as usize;
            (n, (1..n).map(|i| (i - 1, i)).collect())
        }
    };
    space_from_edges(n, &edges)
}

fn space_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Space, BuildError> {
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut matrix = vec![vec![0u32; n]; n];
    for start in 0..n {
        let mut dist = vec![u32::MAX; n];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist.contains(&u32::MAX) {
            return Err(BuildError::Disconnected);
        }
        matrix[start] = dist;
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let weights = vec![Q::new(1.into(), n.into()); n];
    let space = Space::from_int_matrix(labels, weights, &matrix, ValueKind::Plain)?;
    Ok(space.with_triangle_checked())
}

/// Kneser graph K(5, 2): vertices are the 2-subsets of {0..4}, edges join
/// disjoint pairs.
fn petersen() -> (usize, Vec<(usize, usize)>) {
    let mut pairs = Vec::new();
    for a in 0..5u8 {
        for b in (a + 1)..5 {
            pairs.push((a, b));
        }
    }
    let mut edges = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    (10, edges)
}

/// Generalized Petersen graph GP(10, 2).
fn dodecahedron() -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    for i in 0..10 {
        edges.push((i, (i + 1) % 10)); // outer cycle
        edges.push((i, 10 + i)); // spokes
        edges.push((10 + i, 10 + (i + 2) % 10)); // inner pentagram
    }
    (20, edges)
}

/// Pole-pentagon-pentagon-pole construction: vertex 0 on top, upper
/// pentagon 1..=5, lower pentagon 6..=10, vertex 11 at the bottom.
fn icosahedron() -> (usize, Vec<(usize, usize)>) {
    let upper = |i: usize| 1 + i % 5;
    let lower = |i: usize| 6 + i % 5;
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((0, upper(i)));
        edges.push((11, lower(i)));
        edges.push((upper(i), upper(i + 1)));
        edges.push((lower(i), lower(i + 1)));
        // antiprism band
        edges.push((upper(i), lower(i)));
        edges.push((upper(i), lower(i + 4)));
    }
    (12, edges)
}

/// Truncation of the icosahedron: one vertex per (vertex, incident edge)
/// flag. Flags at one vertex form the pentagon (joined when the two edge
/// endpoints are themselves adjacent); each icosahedron edge contributes one
/// cross edge between its two flags.
#[allow(clippy::needless_range_loop)]
fn truncated_icosahedron() -> (usize, Vec<(usize, usize)>) {
    let (n, ico_edges) = icosahedron();
    let mut adj = [[false; 12]; 12];
    for &(a, b) in &ico_edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut flags = Vec::new(); // (vertex, neighbor)
    for v in 0..n {
        for u in 0..n {
            if adj[v][u] {
                flags.push((v, u));
            }
        }
    }
    let index = |v: usize, u: usize| flags.iter().position(|&f| f == (v, u)).unwrap();
    let mut edges = Vec::new();
    for (i, &(v, u)) in flags.iter().enumerate() {
        // pentagon edges around v
        for &(w, x) in &flags {
            if w == v && x > u && adj[u][x] {
                edges.push((i, index(v, x)));
            }
        }
        // edge partner
        let j = index(u, v);
        if i < j {
            edges.push((i, j));
        }
    }
    (60, edges)
}
