//! Host graphs and small patterns.
//!
//! `Graph` is an immutable simple undirected graph over dense 0-based vertex
//! ids with one neighbor bitset per vertex. `Pattern` is a small labeled graph
//! (2..=10 vertices) whose vertex order is meaningful: the last vertex is the
//! extension vertex used by the extraction recursion.
//!
//! File format: UTF-8 edge lists, one `u v` pair per line, whitespace
//! delimited, `#` starts a comment, blank lines ignored, optional leading
//! `n <N>` header for trailing isolated vertices. graph6 single-line inputs
//! are accepted behind the same loader.

use crate::bitset::Bitset;
use crate::error::Error;

/// Upper bound on pattern size; automorphism search is exhaustive.
pub const MAX_PATTERN_VERTICES: usize = 10;

// ============================================================================
// Graph
// ============================================================================

/// Immutable simple undirected graph with bitset adjacency.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Bitset>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// are rejected. Vertices must be `< n`.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph, Error> {
        let mut adj = vec![Bitset::zeros(n); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { line: 0, v: u });
            }
            for w in [u, v] {
                if w as usize >= n {
                    return Err(Error::VertexOutOfRange { v: w, n });
                }
            }
            adj[u as usize].insert(v as usize);
            adj[v as usize].insert(u as usize);
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    /// Builds a graph from prebuilt adjacency rows, validating symmetry and
    /// irreflexivity.
    pub fn from_adjacency(adj: Vec<Bitset>) -> Result<Graph, Error> {
        for (u, row) in adj.iter().enumerate() {
            if row.contains(u) {
                return Err(Error::SelfLoop {
                    line: 0,
                    v: u as u32,
                });
            }
            for v in row.iter() {
                if !adj[v].contains(u) {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("adjacency not symmetric at ({u},{v})"),
                    });
                }
            }
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    fn from_adjacency_unchecked(adj: Vec<Bitset>) -> Graph {
        let degree_sum: usize = adj.iter().map(|row| row.count_ones()).sum();
        Graph {
            n: adj.len(),
            edge_count: degree_sum / 2,
            adj,
        }
    }

    /// Parses the canonical edge-list format.
    pub fn parse_edge_list(text: &str) -> Result<Graph, Error> {
        let (n, edges) = parse_edge_lines(text, false)?;
        Graph::from_edges(n, &edges)
    }

    /// Parses a single graph6 line (optionally prefixed with `>>graph6<<`).
    pub fn parse_graph6(line: &str) -> Result<Graph, Error> {
        let line = line.trim().trim_start_matches(">>graph6<<");
        let bytes: Vec<u8> = line.bytes().collect();
        if bytes.is_empty() {
            return Err(Error::Parse {
                line: 1,
                msg: "empty graph6 input".into(),
            });
        }
        for &b in &bytes {
            if !(63..=126).contains(&b) {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("invalid graph6 byte {b}"),
                });
            }
        }
        let vals: Vec<u64> = bytes.iter().map(|&b| (b - 63) as u64).collect();
        let (n, header_len) = if vals[0] != 63 {
            (vals[0] as usize, 1)
        } else if vals.len() > 1 && vals[1] != 63 {
            if vals.len() < 4 {
                return Err(Error::Parse {
                    line: 1,
                    msg: "truncated graph6 header".into(),
                });
            }
            (((vals[1] << 12) + (vals[2] << 6) + vals[3]) as usize, 4)
        } else {
            return Err(Error::Parse {
                line: 1,
                msg: "graph6 inputs beyond 258047 vertices are not supported".into(),
            });
        };
        let need_bits = n * n.saturating_sub(1) / 2;
        if (vals.len() - header_len) * 6 < need_bits {
            return Err(Error::Parse {
                line: 1,
                msg: "graph6 body shorter than the vertex count requires".into(),
            });
        }
        let mut edges = Vec::new();
        let mut pos = 6 * header_len;
        for j in 1..n {
            for i in 0..j {
                if vals[pos / 6] >> (5 - pos % 6) & 1 == 1 {
                    edges.push((i as u32, j as u32));
                }
                pos += 1;
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// Loads either format: multi-token lines mean edge list, a single
    /// printable token means graph6.
    pub fn load(text: &str) -> Result<Graph, Error> {
        for raw in text.lines() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if line.starts_with(">>graph6<<")
                || (line.split_whitespace().count() == 1
                    && !line.chars().all(|c| c.is_ascii_digit()))
            {
                return Graph::parse_graph6(line);
            }
            break;
        }
        Graph::parse_edge_list(text)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(v as usize)
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].count_ones()
    }

    pub fn neighbors(&self, v: u32) -> &Bitset {
        &self.adj[v as usize]
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u as u32, v as u32));
                }
            }
        }
        out
    }

    /// Edge-complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mut adj = Vec::with_capacity(self.n);
        for u in 0..self.n {
            let mut row = Bitset::ones(self.n);
            row.subtract(&self.adj[u]);
            row.remove(u);
            adj.push(row);
        }
        Self::from_adjacency_unchecked(adj)
    }

    /// Subgraph induced by `verts`, relabeled `0..verts.len()` in list order.
    pub fn induced_subgraph(&self, verts: &[u32]) -> Result<Graph, Error> {
        let mut seen = Bitset::zeros(self.n);
        for &v in verts {
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange { v, n: self.n });
            }
            if seen.contains(v as usize) {
                return Err(Error::DuplicateVertex { v });
            }
            seen.insert(v as usize);
        }
        let k = verts.len();
        let mut adj = vec![Bitset::zeros(k); k];
        for i in 0..k {
            for j in (i + 1)..k {
                if self.has_edge(verts[i], verts[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    /// Checks the representation invariants; used by tests as an independent
    /// validator.
    pub fn validate(&self) -> Result<(), String> {
        let mut degree_sum = 0usize;
        for u in 0..self.n {
            if self.adj[u].contains(u) {
                return Err(format!("self-loop at {u}"));
            }
            degree_sum += self.adj[u].count_ones();
            for v in self.adj[u].iter() {
                if !self.adj[v].contains(u) {
                    return Err(format!("asymmetric edge ({u},{v})"));
                }
            }
        }
        if degree_sum != 2 * self.edge_count {
            return Err(format!(
                "edge_count {} does not match degree sum {}",
                self.edge_count, degree_sum
            ));
        }
        Ok(())
    }

    /// Canonical edge-list serialization, with an `n` header so isolated
    /// trailing vertices survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count)
    }
}

// ============================================================================
// Pattern
// ============================================================================

/// Small labeled pattern graph; vertex order is part of the value.
#[derive(Clone, PartialEq, Eq)]
pub struct Pattern {
    r: usize,
    rows: Vec<u16>,
}

impl Pattern {
    pub fn from_edges(r: usize, edges: &[(u32, u32)]) -> Result<Pattern, Error> {
        if !(2..=MAX_PATTERN_VERTICES).contains(&r) {
            return Err(Error::PatternSize {
                r,
                max: MAX_PATTERN_VERTICES,
            });
        }
        let mut rows = vec![0u16; r];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { line: 0, v: u });
            }
            for w in [u, v] {
                if w as usize >= r {
                    return Err(Error::VertexOutOfRange { v: w, n: r });
                }
            }
            rows[u as usize] |= 1 << v;
            rows[v as usize] |= 1 << u;
        }
        Ok(Pattern { r, rows })
    }

    /// Parses the same edge-list format as `Graph`; the vertex count must be
    /// in the pattern range.
    pub fn parse(text: &str) -> Result<Pattern, Error> {
        let g = Graph::load(text)?;
        Pattern::from_graph(&g)
    }

    pub fn from_graph(g: &Graph) -> Result<Pattern, Error> {
        Pattern::from_edges(g.n(), &g.edges())
    }

    /// Complete pattern on `r` vertices.
    pub fn clique(r: usize) -> Pattern {
        let mut edges = Vec::new();
        for i in 0..r as u32 {
            for j in (i + 1)..r as u32 {
                edges.push((i, j));
            }
        }
        Pattern::from_edges(r, &edges).expect("clique size in range")
    }

    /// Edgeless pattern on `r` vertices.
    pub fn empty(r: usize) -> Pattern {
        Pattern::from_edges(r, &[]).expect("size in range")
    }

    /// Path v1-v2-…-vr in vertex order.
    pub fn path(r: usize) -> Pattern {
        let edges: Vec<(u32, u32)> = (0..r as u32 - 1).map(|i| (i, i + 1)).collect();
        Pattern::from_edges(r, &edges).expect("size in range")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.r && j < self.r);
        self.rows[i] >> j & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    /// Degree of the extension vertex (the last one).
    pub fn last_degree(&self) -> usize {
        self.degree(self.r - 1)
    }

    /// Neighbor indices of the extension vertex, ascending.
    pub fn last_neighbors(&self) -> Vec<usize> {
        (0..self.r - 1)
            .filter(|&j| self.has_edge(self.r - 1, j))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|row| row.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 0..self.r {
            for j in (i + 1)..self.r {
                if self.has_edge(i, j) {
                    out.push((i as u32, j as u32));
                }
            }
        }
        out
    }

    /// Restriction to the first `r - 1` vertices. Callers guarantee `r >= 3`.
    pub fn drop_last(&self) -> Pattern {
        assert!(self.r >= 3, "cannot drop below 2 pattern vertices");
        let edges: Vec<(u32, u32)> = self
            .edges()
            .into_iter()
            .filter(|&(_, v)| (v as usize) < self.r - 1)
            .collect();
        Pattern::from_edges(self.r - 1, &edges).expect("size in range")
    }

    /// Relabeled copy where new vertex `i` is old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Pattern, Error> {
        if order.len() != self.r {
            return Err(Error::Parse {
                line: 0,
                msg: format!("permutation must list all {} vertices", self.r),
            });
        }
        let mut seen = vec![false; self.r];
        for &i in order {
            if i >= self.r || seen[i] {
                return Err(Error::Parse {
                    line: 0,
                    msg: "permutation is not a bijection".into(),
                });
            }
            seen[i] = true;
        }
        let mut edges = Vec::new();
        for i in 0..self.r {
            for j in (i + 1)..self.r {
                if self.has_edge(order[i], order[j]) {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Pattern::from_edges(self.r, &edges)
    }
}

impl std::fmt::Debug for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pattern(r={}, edges={:?})", self.r, self.edges())
    }
}

// ============================================================================
// Edge-list parsing
// ============================================================================

fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

/// Shared line parser. Returns `(n, edges)`; when `bipartite` is set the
/// header keyword changes and the caller interprets `n` as `m + n`.
pub(crate) fn parse_edge_lines(
    text: &str,
    bipartite: bool,
) -> Result<(usize, Vec<(u32, u32)>), Error> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut header: Option<usize> = None;
    let mut bip_header: Option<(usize, usize)> = None;
    let mut max_id: Option<u32> = None;
    let mut saw_edge = false;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "n" if !bipartite => {
                if saw_edge || header.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "header must appear once, before any edge".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected `n <N>`".into(),
                    });
                }
                header = Some(parse_num(tokens[1], lineno)? as usize);
            }
            "bipartite" if bipartite => {
                if saw_edge || bip_header.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "bipartite header must appear once, before any edge".into(),
                    });
                }
                if tokens.len() != 3 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected `bipartite <m> <n>`".into(),
                    });
                }
                let m = parse_num(tokens[1], lineno)? as usize;
                let n = parse_num(tokens[2], lineno)? as usize;
                bip_header = Some((m, n));
            }
            "bipartite" => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "bipartite header is only valid for bipartite instances".into(),
                });
            }
            "n" => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected `bipartite <m> <n>` header".into(),
                });
            }
            _ => {
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected two vertex ids, got {} tokens", tokens.len()),
                    });
                }
                let u = parse_num(tokens[0], lineno)?;
                let v = parse_num(tokens[1], lineno)?;
                if u == v {
                    return Err(Error::SelfLoop { line: lineno, v: u });
                }
                saw_edge = true;
                max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
                edges.push((u, v));
            }
        }
    }

    if bipartite {
        let (m, n) = bip_header.ok_or(Error::Parse {
            line: 1,
            msg: "missing `bipartite <m> <n>` header".into(),
        })?;
        return Ok((m + n, edges)); // caller re-validates sides
    }

    let n = match header {
        Some(n) => {
            if let Some(max) = max_id {
                if max as usize >= n {
                    return Err(Error::VertexOutOfRange { v: max, n });
                }
            }
            n
        }
        None => max_id.map_or(0, |m| m as usize + 1),
    };
    Ok((n, edges))
}

fn parse_num(tok: &str, lineno: usize) -> Result<u32, Error> {
    tok.parse::<u32>().map_err(|_| Error::Parse {
        line: lineno,
        msg: format!("`{tok}` is not a nonnegative integer"),
    })
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_basic_edge_list() {
        let g = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::parse_edge_list("0 1\n0 1").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn self_loop_rejected() {
        match Graph::parse_edge_list("0 0") {
            Err(Error::SelfLoop { line: 1, v: 0 }) => {}
            other => panic!("expected self-loop error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_line_reports_number() {
        match Graph::parse_edge_list("0 1\nbogus line here") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected parse error on line 2, got {other:?}"),
        }
        match Graph::parse_edge_list("0 1\n2 x") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected parse error on line 2, got {other:?}"),
        }
    }

    #[test]
    fn header_allows_isolated_vertices() {
        let g = Graph::parse_edge_list("n 5\n0 1\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.degree(4), 0);
        // round trip keeps n
        let g2 = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g2.n(), 5);
    }

    #[test]
    fn header_out_of_range_vertex() {
        assert!(matches!(
            Graph::parse_edge_list("n 2\n0 5"),
            Err(Error::VertexOutOfRange { v: 5, n: 2 })
        ));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let g = Graph::parse_edge_list("# a comment\n\n0 1 # trailing\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn complement_of_triangle_is_empty() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let c = k3.complement();
        assert_eq!(c.edge_count(), 0);
        assert_eq!(c.n(), 3);
    }

    #[test]
    fn complement_of_path3() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let c = p3.complement();
        assert_eq!(c.edges(), vec![(0, 2)]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let adjacent = c4.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(adjacent.edge_count(), 1);
        let antipodal = c4.induced_subgraph(&[0, 2]).unwrap();
        assert_eq!(antipodal.edge_count(), 0);

        let k5 = Pattern::clique(5);
        let k5g = Graph::from_edges(5, &k5.edges()).unwrap();
        let sub = k5g.induced_subgraph(&[4, 2, 0]).unwrap();
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edge_count(), 3);
    }

    #[test]
    fn induced_subgraph_arg_errors() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            g.induced_subgraph(&[0, 0]),
            Err(Error::DuplicateVertex { v: 0 })
        ));
        assert!(matches!(
            g.induced_subgraph(&[0, 7]),
            Err(Error::VertexOutOfRange { v: 7, .. })
        ));
    }

    #[test]
    fn graph6_small_graphs() {
        // 'Bw' is the triangle, 'Bg' the path 0-1-2.
        let k3 = Graph::parse_graph6("Bw").unwrap();
        assert_eq!(k3.n(), 3);
        assert_eq!(k3.edge_count(), 3);
        let p3 = Graph::parse_graph6("Bg").unwrap();
        assert_eq!(p3.n(), 3);
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        // loader dispatch
        let via_load = Graph::load(">>graph6<<Bw").unwrap();
        assert_eq!(via_load.edge_count(), 3);
    }

    #[test]
    fn pattern_basics() {
        let paw = Pattern::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(paw.last_degree(), 1);
        assert_eq!(paw.last_neighbors(), vec![2]);
        let tri = paw.drop_last();
        assert_eq!(tri.r(), 3);
        assert_eq!(tri.edge_count(), 3);

        assert!(matches!(
            Pattern::from_edges(1, &[]),
            Err(Error::PatternSize { r: 1, .. })
        ));
        assert!(matches!(
            Pattern::from_edges(11, &[]),
            Err(Error::PatternSize { r: 11, .. })
        ));
    }

    #[test]
    fn pattern_permutation() {
        let p3 = Pattern::path(3); // edges 01, 12
        let center_last = p3.permuted(&[0, 2, 1]).unwrap();
        assert_eq!(center_last.edges(), vec![(0, 2), (1, 2)]);
        assert!(center_last.permuted(&[0, 0, 1]).is_err());
    }

    #[test]
    fn validate_catches_nothing_on_good_graphs() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 5), (3, 4)]).unwrap();
        g.validate().unwrap();
        g.complement().validate().unwrap();
    }
}
