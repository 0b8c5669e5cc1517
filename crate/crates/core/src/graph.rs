//! Undirected simple graphs over dense node ids `0..n`.
//!
//! Adjacency is stored in compressed form: one offset table and one flat
//! neighbor array whose per-node slices are sorted and duplicate free.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Immutable undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Builds a graph from undirected edges. Duplicates (in either
    /// orientation) collapse to one edge; self-loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { line: 0, node: u });
            }
            lists[u].push(v as u32);
            lists[v].push(u as u32);
        }
        Ok(Self::from_lists(lists))
    }

    fn from_lists(mut lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        Graph { offsets, neighbors }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn min_degree(&self) -> usize {
        (0..self.node_count())
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.node_count();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    /// Copy of this graph with extra undirected edges. Edges already present
    /// are ignored.
    pub fn with_added_edges<I>(&self, extra: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::from_edges(self.node_count(), self.edges().chain(extra))
    }

    /// Applies the relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.node_count() {
            return Err(Error::DimensionMismatch(perm.len(), self.node_count()));
        }
        Graph::from_edges(
            self.node_count(),
            self.edges().map(|(u, v)| (perm[u], perm[v])),
        )
    }

    /// Parses the line-oriented edge-list format.
    ///
    /// Each data line holds two whitespace-separated node ids. Lines starting
    /// with `#` are comments; a `# nodes N` comment raises the node count to
    /// `N` so trailing isolated nodes survive a round trip. Otherwise the
    /// node count is one more than the largest id seen.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut edges = Vec::new();
        let mut declared = 0usize;
        let mut max_id: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                let mut words = comment.split_whitespace();
                if words.next() == Some("nodes") {
                    if let Some(count) = words.next() {
                        declared = count.parse().map_err(|_| Error::InvalidToken {
                            line,
                            token: count.to_string(),
                        })?;
                    }
                }
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::MalformedLine {
                    line,
                    found: tokens.len(),
                });
            }
            let parse = |tok: &str| -> Result<usize> {
                tok.parse::<usize>().map_err(|_| Error::InvalidToken {
                    line,
                    token: tok.to_string(),
                })
            };
            let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
            if u == v {
                return Err(Error::SelfLoop { line, node: u });
            }
            max_id = Some(max_id.unwrap_or(0).max(u).max(v));
            edges.push((u, v));
        }
        let n = max_id.map_or(0, |m| m + 1).max(declared);
        Graph::from_edges(n, edges)
    }

    /// Serializes to the edge-list format, one `u v` line per edge with
    /// `u < v`, preceded by a `# nodes N` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(12 * self.edge_count() + 16);
        let _ = writeln!(out, "# nodes {}", self.node_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_path() {
        let g = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn symmetric_duplicates_collapse() {
        let g = Graph::parse_edge_list("0 1\n1 0").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn self_loop_rejected_with_line() {
        match Graph::parse_edge_list("0 0") {
            Err(Error::SelfLoop { line, node }) => {
                assert_eq!(line, 1);
                assert_eq!(node, 0);
            }
            other => panic!("expected self-loop error, got {other:?}"),
        }
        assert!(matches!(
            Graph::parse_edge_list("# c\n0 1\n2 2\n"),
            Err(Error::SelfLoop { line: 3, .. })
        ));
    }

    #[test]
    fn non_integer_rejected() {
        assert!(matches!(
            Graph::parse_edge_list("0 x"),
            Err(Error::InvalidToken { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("0 -1"),
            Err(Error::InvalidToken { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("0 1 2"),
            Err(Error::MalformedLine { line: 1, found: 3 })
        ));
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let g = Graph::parse_edge_list("# header\n\n  0   3 \n# 5 6\n").unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn node_header_keeps_isolated_tail() {
        let g = Graph::from_edges(5, [(0, 1)]).unwrap();
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn degree_bookkeeping() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.min_degree(), 1);
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(1, 2));
        let sum: usize = (0..4).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let h = g.relabel(&[2, 0, 1]).unwrap();
        assert!(h.has_edge(2, 0));
        assert!(h.has_edge(0, 1));
        assert!(!h.has_edge(2, 1));
    }
}
