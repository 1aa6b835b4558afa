use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("edge {edge} uses vertex {vertex}, but there are only {vertex_count} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("vertex {0} is not on any edge")]
    IsolatedVertex(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// A connected multigraph whose edge `i` (1-based) is `edges[i - 1]`.
/// Loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns the surviving root.
    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[rb] = ra;
        ra
    }
}

/// Tracks which contraction event last produced each current vertex.
pub(crate) struct Contraction {
    sets: UnionFind,
    producer: Vec<Option<usize>>,
}

impl Contraction {
    pub(crate) fn new(vertex_count: usize) -> Self {
        Contraction {
            sets: UnionFind::new(vertex_count),
            producer: vec![None; vertex_count],
        }
    }

    /// Contracts `(u, v)` as event `event`; returns the earlier events
    /// feeding into it (at most two, one for a loop).
    pub(crate) fn contract(&mut self, event: usize, u: usize, v: usize) -> Vec<usize> {
        let (ru, rv) = (self.sets.find(u), self.sets.find(v));
        let mut children: Vec<usize> = Vec::with_capacity(2);
        children.extend(self.producer[ru]);
        if rv != ru {
            children.extend(self.producer[rv]);
        }
        let root = if ru == rv {
            ru
        } else {
            self.sets.union(ru, rv)
        };
        self.producer[root] = Some(event);
        children
    }
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        let mut touched = vec![false; vertex_count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        edge: i + 1,
                        vertex: w,
                        vertex_count,
                    });
                }
                touched[w] = true;
            }
        }
        if let Some(v) = touched.iter().position(|t| !t) {
            return Err(GraphError::IsolatedVertex(v));
        }
        let mut sets = UnionFind::new(vertex_count);
        for &(u, v) in &edges {
            sets.union(u, v);
        }
        let components = (0..vertex_count).filter(|&v| sets.find(v) == v).count();
        if components != 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(MultiGraph {
            vertex_count,
            edges,
        })
    }

    /// One edge `u v` per line, `#` starts a comment. Vertex ids are any
    /// nonnegative integers; edge ids are the 1-based order of edge lines.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut raw = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let parse_err = |message: String| GraphError::Parse {
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(parse_err(format!("expected `u v`, found {content:?}")));
            }
            let id = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| parse_err(format!("{s:?} is not a nonnegative integer")))
            };
            raw.push((id(fields[0])?, id(fields[1])?));
        }
        let ids: BTreeMap<u64, usize> = raw
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, id)| (id, i))
            .collect();
        let edges = raw.iter().map(|(u, v)| (ids[u], ids[v])).collect();
        MultiGraph::new(ids.len(), edges)
    }

    pub fn read(path: &Path) -> Result<Self, GraphError> {
        let text = std::fs::read_to_string(path).map_err(|e| GraphError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        MultiGraph::parse(&text)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Endpoints of edge `id`, 1-based.
    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id - 1]
    }

    /// Edges `i = {i-1, i}` on vertices `0..=k`.
    pub fn path(k: usize) -> Self {
        MultiGraph::new(k + 1, (1..=k).map(|i| (i - 1, i)).collect()).expect("path is connected")
    }

    /// Center `0` joined to leaves `1..=k`.
    pub fn star(k: usize) -> Self {
        MultiGraph::new(k + 1, (1..=k).map(|i| (0, i)).collect()).expect("star is connected")
    }

    pub fn cycle(k: usize) -> Self {
        MultiGraph::new(k, (0..k).map(|i| (i, (i + 1) % k)).collect()).expect("cycle is connected")
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn theta(k: usize) -> Self {
        MultiGraph::new(2, vec![(0, 1); k]).expect("theta is connected")
    }

    /// One vertex with `k` loops.
    pub fn bouquet(k: usize) -> Self {
        MultiGraph::new(1, vec![(0, 0); k]).expect("bouquet is connected")
    }

    pub fn to_edge_list(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}
