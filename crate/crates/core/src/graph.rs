//! Finite simple undirected graphs, vertex subsets, boundary operators,
//! induced subgraphs, and shortest-path distances.
//!
//! Vertices are dense indices `0..n`. All values are immutable after
//! construction and safe to share across threads.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Sentinel distance for vertex pairs in different components.
pub const INFINITE_DISTANCE: u32 = u32::MAX;

/// A finite simple undirected graph: no loops, no multi-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Edges may be given in either endpoint
    /// order; loops, duplicates, and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut normalized: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges: normalized,
            adj,
        })
    }

    /// Parses an edge-list document.
    ///
    /// Format: the first non-comment line is `n m`, followed by `m` lines
    /// `u v` (either endpoint order). Lines starting with `#` are comments;
    /// blank lines are ignored. LF and CRLF are both accepted.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match header {
                None => {
                    let mut it = line.split_whitespace();
                    let n = it.next().and_then(|t| t.parse::<usize>().ok());
                    let m = it.next().and_then(|t| t.parse::<usize>().ok());
                    match (n, m, it.next()) {
                        (Some(n), Some(m), None) => header = Some((n, m)),
                        _ => {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("malformed header {line:?}, expected \"n m\""),
                            })
                        }
                    }
                }
                Some((n, m)) => {
                    if edges.len() == m {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("unexpected line after {m} declared edges"),
                        });
                    }
                    let mut it = line.split_whitespace();
                    let u = it.next().and_then(|t| t.parse::<u32>().ok());
                    let v = it.next().and_then(|t| t.parse::<u32>().ok());
                    let (u, v) = match (u, v, it.next()) {
                        (Some(u), Some(v), None) => (u, v),
                        _ => {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("malformed edge line {line:?}, expected \"u v\""),
                            })
                        }
                    };
                    if u == v {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "loop".into(),
                        });
                    }
                    if u as usize >= n || v as usize >= n {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("vertex index out of range (n = {n})"),
                        });
                    }
                    let e = (u.min(v), u.max(v));
                    if !seen.insert(e) {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "duplicate edge".into(),
                        });
                    }
                    edges.push(e);
                }
            }
        }

        match header {
            None => Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: "missing header \"n m\"".into(),
            }),
            Some((n, m)) => {
                if edges.len() != m {
                    return Err(Error::Parse {
                        line: text.lines().count().max(1),
                        msg: format!("expected {m} edges, found {}", edges.len()),
                    });
                }
                Self::new(n, edges)
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Maximum vertex degree; 0 when the graph has at most one vertex.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.adj[u as usize].binary_search(&v).is_ok()
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.parent_size() != self.n {
            return Err(Error::Domain(format!(
                "vertex set over {} vertices used with a graph on {} vertices",
                set.parent_size(),
                self.n
            )));
        }
        Ok(())
    }

    /// ∂A: the edges connecting `a` to its complement.
    pub fn boundary(&self, a: &VertexSet) -> Result<EdgeSet> {
        self.check_set(a)?;
        let inside = a.membership_flags();
        let mut edges = Vec::new();
        for &v in a.members() {
            for &w in self.neighbors(v) {
                if !inside[w as usize] {
                    edges.push((v.min(w), v.max(w)));
                }
            }
        }
        edges.sort_unstable();
        Ok(EdgeSet { edges })
    }

    /// ∂ᴮA: the edges joining a vertex of `a` with a vertex of `b ∖ a`.
    /// `a` need not be a subset of `b`.
    pub fn relative_boundary(&self, a: &VertexSet, b: &VertexSet) -> Result<EdgeSet> {
        self.check_set(a)?;
        self.check_set(b)?;
        let in_a = a.membership_flags();
        let in_b = b.membership_flags();
        let mut edges = Vec::new();
        for &v in a.members() {
            for &w in self.neighbors(v) {
                if in_b[w as usize] && !in_a[w as usize] {
                    edges.push((v.min(w), v.max(w)));
                }
            }
        }
        edges.sort_unstable();
        Ok(EdgeSet { edges })
    }

    /// The subgraph induced on `s`, keeping exactly the edges with both
    /// endpoints in `s`, together with the index bijection back to `self`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::Domain(
                "induced subgraph requires a nonempty vertex set".into(),
            ));
        }
        let to_parent: Vec<u32> = s.members().to_vec();
        let mut to_sub = vec![u32::MAX; self.n];
        for (i, &v) in to_parent.iter().enumerate() {
            to_sub[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let (su, sv) = (to_sub[u as usize], to_sub[v as usize]);
            if su != u32::MAX && sv != u32::MAX {
                edges.push((su.min(sv), su.max(sv)));
            }
        }
        Ok(InducedSubgraph {
            graph: Graph::new(to_parent.len(), edges)?,
            parent_size: self.n,
            to_parent,
        })
    }

    /// Shortest-path distances between all vertex pairs.
    pub fn all_pairs_distances(&self) -> DistanceTable {
        let n = self.n;
        let mut dist = vec![INFINITE_DISTANCE; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s as u32);
            while let Some(u) = queue.pop_front() {
                let du = row[u as usize];
                for &w in self.neighbors(u) {
                    if row[w as usize] == INFINITE_DISTANCE {
                        row[w as usize] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceTable { n, dist }
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0u32);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Canonical edge-list serialization: header then sorted `u v` lines.
    /// `Graph::parse` of the output reproduces the graph exactly.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }
}

/// A subset of the vertices of a graph on `parent_size` vertices.
///
/// The canonical total order on subsets of a common parent is lexicographic
/// on the sorted member lists; it is used for all deterministic tie-breaking.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    members: Vec<u32>,
}

impl VertexSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&v) = members.last() {
            if v as usize >= n {
                return Err(Error::Domain(format!("vertex {v} is outside 0..{n}")));
            }
        }
        Ok(Self { n, members })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            members: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            members: (0..n as u32).collect(),
        }
    }

    pub fn parent_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Sorted member list.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn complement(&self) -> VertexSet {
        let flags = self.membership_flags();
        VertexSet {
            n: self.n,
            members: (0..self.n as u32).filter(|&v| !flags[v as usize]).collect(),
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets have different parents");
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        VertexSet { n: self.n, members }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets have different parents");
        let flags = other.membership_flags();
        VertexSet {
            n: self.n,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&v| flags[v as usize])
                .collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets have different parents");
        let flags = other.membership_flags();
        VertexSet {
            n: self.n,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&v| !flags[v as usize])
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.n == other.n && self.members.iter().all(|&v| other.contains(v))
    }

    pub(crate) fn membership_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.n];
        for &v in &self.members {
            flags[v as usize] = true;
        }
        flags
    }

    /// Builds a set from a bitmask over vertices `0..n` (`n` ≤ 63).
    pub(crate) fn from_mask(n: usize, mask: u64) -> VertexSet {
        debug_assert!(n <= 63);
        let mut members = Vec::with_capacity(mask.count_ones() as usize);
        let mut rem = mask;
        while rem != 0 {
            members.push(rem.trailing_zeros());
            rem &= rem - 1;
        }
        VertexSet { n, members }
    }

    pub(crate) fn mask(&self) -> u64 {
        debug_assert!(self.n <= 63, "bitmask form requires at most 63 vertices");
        self.members.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    /// Canonical order: lexicographic on sorted member lists. Only meaningful
    /// between subsets of the same parent.
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

/// A set of edges of a parent graph, normalized and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    edges: Vec<(u32, u32)>,
}

impl EdgeSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: u32, v: u32) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// An induced subgraph plus the bijection between its dense indices and the
/// parent graph's vertices.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    parent_size: usize,
    to_parent: Vec<u32>,
}

impl InducedSubgraph {
    pub fn to_parent_vertex(&self, v: u32) -> u32 {
        self.to_parent[v as usize]
    }

    /// Maps a subset of the subgraph back to parent indices.
    pub fn to_parent_set(&self, s: &VertexSet) -> VertexSet {
        debug_assert_eq!(s.parent_size(), self.graph.vertex_count());
        VertexSet::new(
            self.parent_size,
            s.members().iter().map(|&v| self.to_parent[v as usize]),
        )
        .expect("induced indices map into the parent graph")
    }

    pub fn index_map(&self) -> &[u32] {
        &self.to_parent
    }
}

/// All-pairs shortest-path distances with an `INFINITE_DISTANCE` sentinel.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn get(&self, u: u32, v: u32) -> u32 {
        self.dist[u as usize * self.n + v as usize]
    }

    pub fn size(&self) -> usize {
        self.n
    }
}
