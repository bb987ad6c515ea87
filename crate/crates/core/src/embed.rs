//! Enumeration and indexing of pattern embeddings.
//!
//! An embedding is an injection of pattern vertices into host vertices. In
//! `Induced` mode pattern edges and non-edges must both be preserved; in
//! `Subgraph` mode only pattern edges are required to map onto host edges.
//!
//! Members are stored flat (stride = pattern order) in lexicographic order,
//! which makes the prefix groups used by pruning and extraction contiguous.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::Error;
use crate::graph::{Graph, Pattern};

/// Matching discipline for embeddings and witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Induced,
    Subgraph,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Induced => write!(f, "induced"),
            Mode::Subgraph => write!(f, "subgraph"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "induced" | "induced-type" => Ok(Mode::Induced),
            "subgraph" => Ok(Mode::Subgraph),
            other => Err(format!("unknown mode `{other}` (induced|subgraph)")),
        }
    }
}

/// A set of embeddings of one pattern into one host graph.
///
/// Members are lexicographically sorted image tuples without duplicates;
/// `prefix_ranges` partitions them by their (r-1)-prefix.
#[derive(Clone, Debug)]
pub struct EmbeddingSet {
    pattern: Pattern,
    mode: Mode,
    host_n: usize,
    data: Vec<u32>,
    prefix_ranges: Vec<(usize, usize)>, // (first member index, member count)
}

impl EmbeddingSet {
    /// Wraps sorted flat member data. Debug builds verify ordering.
    pub fn from_sorted_flat(pattern: Pattern, mode: Mode, host_n: usize, data: Vec<u32>) -> Self {
        let r = pattern.r();
        debug_assert_eq!(data.len() % r, 0);
        debug_assert!(data.chunks_exact(r).tuple_windows().all(|(a, b)| a < b));
        let mut set = EmbeddingSet {
            pattern,
            mode,
            host_n,
            data,
            prefix_ranges: Vec::new(),
        };
        set.rebuild_prefix_index();
        set
    }

    fn rebuild_prefix_index(&mut self) {
        let r = self.pattern.r();
        self.prefix_ranges.clear();
        let count = self.len();
        let mut i = 0;
        while i < count {
            let prefix = &self.member(i)[..r - 1];
            let mut j = i + 1;
            while j < count && &self.member(j)[..r - 1] == prefix {
                j += 1;
            }
            self.prefix_ranges.push((i, j - i));
            i = j;
        }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.data.len() / self.pattern.r()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn member(&self, i: usize) -> &[u32] {
        let r = self.pattern.r();
        &self.data[i * r..(i + 1) * r]
    }

    pub fn members(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks_exact(self.pattern.r())
    }

    /// Number of distinct (r-1)-prefixes.
    pub fn prefix_count(&self) -> usize {
        self.prefix_ranges.len()
    }

    /// Iterates `(prefix, extension degree)` in lexicographic prefix order.
    pub fn prefixes(&self) -> impl Iterator<Item = (&[u32], usize)> {
        let r = self.pattern.r();
        self.prefix_ranges
            .iter()
            .map(move |&(start, len)| (&self.member(start)[..r - 1], len))
    }

    /// Extension degree d(R) of a prefix, 0 when absent.
    pub fn extension_degree(&self, prefix: &[u32]) -> usize {
        self.find_prefix(prefix)
            .map_or(0, |idx| self.prefix_ranges[idx].1)
    }

    /// Host vertices v such that some member extends `prefix` with v,
    /// ascending.
    pub fn extensions_of(&self, prefix: &[u32]) -> Vec<u32> {
        let r = self.pattern.r();
        match self.find_prefix(prefix) {
            None => Vec::new(),
            Some(idx) => {
                let (start, len) = self.prefix_ranges[idx];
                (start..start + len)
                    .map(|i| self.member(i)[r - 1])
                    .collect()
            }
        }
    }

    fn find_prefix(&self, prefix: &[u32]) -> Option<usize> {
        let r = self.pattern.r();
        debug_assert_eq!(prefix.len(), r - 1);
        self.prefix_ranges
            .binary_search_by(|&(start, _)| self.member(start)[..r - 1].cmp(prefix))
            .ok()
    }

    /// Membership test by binary search.
    pub fn contains(&self, member: &[u32]) -> bool {
        let r = self.pattern.r();
        if member.len() != r {
            return false;
        }
        let count = self.len();
        let mut lo = 0;
        let mut hi = count;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.member(mid).cmp(member) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// The set of distinct (r-1)-prefixes as an embedding set of the
    /// restricted pattern. Requires `r >= 3` so the result is still a valid
    /// pattern.
    pub fn prefix_set(&self) -> EmbeddingSet {
        let r = self.pattern.r();
        assert!(r >= 3, "prefix set needs a pattern of order >= 3");
        let mut data = Vec::with_capacity(self.prefix_ranges.len() * (r - 1));
        for &(start, _) in &self.prefix_ranges {
            data.extend_from_slice(&self.member(start)[..r - 1]);
        }
        EmbeddingSet::from_sorted_flat(self.pattern.drop_last(), self.mode, self.host_n, data)
    }

    /// Keeps exactly the members whose index passes `keep`; preserves order.
    pub(crate) fn filter_members(&self, keep: impl Fn(usize) -> bool) -> EmbeddingSet {
        let mut data = Vec::new();
        for i in 0..self.len() {
            if keep(i) {
                data.extend_from_slice(self.member(i));
            }
        }
        EmbeddingSet::from_sorted_flat(self.pattern.clone(), self.mode, self.host_n, data)
    }

    pub(crate) fn prefix_ranges(&self) -> &[(usize, usize)] {
        &self.prefix_ranges
    }
}

/// Enumerates all embeddings of `h` into `g` under `mode`.
///
/// Backtracks over pattern vertices in their fixed order, narrowing host
/// candidates with bitset intersections; work is sharded over the image of
/// the first pattern vertex and merged in order, so the result is identical
/// for any thread count. `max_members` caps the output size.
pub fn enumerate_embeddings(
    g: &Graph,
    h: &Pattern,
    mode: Mode,
    max_members: Option<usize>,
) -> Result<EmbeddingSet, Error> {
    let n = g.n();
    let r = h.r();
    let budget = Budget {
        counter: AtomicUsize::new(0),
        cap: max_members.unwrap_or(usize::MAX),
        exceeded: AtomicBool::new(false),
    };

    let shards: Vec<Vec<u32>> = (0..n as u32)
        .into_par_iter()
        .map(|root| {
            let mut out = Vec::new();
            if budget.blown() {
                return out;
            }
            let mut image = Vec::with_capacity(r);
            image.push(root);
            extend_embedding(g, h, mode, &mut image, &mut out, &budget);
            out
        })
        .collect();

    if budget.blown() {
        return Err(Error::EnumerationCap { cap: budget.cap });
    }
    let mut data = Vec::with_capacity(shards.iter().map(Vec::len).sum());
    for shard in shards {
        data.extend(shard);
    }
    Ok(EmbeddingSet::from_sorted_flat(h.clone(), mode, n, data))
}

struct Budget {
    counter: AtomicUsize,
    cap: usize,
    exceeded: AtomicBool,
}

impl Budget {
    fn blown(&self) -> bool {
        self.exceeded.load(Ordering::Relaxed)
    }

    fn charge(&self) -> bool {
        if self.counter.fetch_add(1, Ordering::Relaxed) + 1 > self.cap {
            self.exceeded.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

fn extend_embedding(
    g: &Graph,
    h: &Pattern,
    mode: Mode,
    image: &mut Vec<u32>,
    out: &mut Vec<u32>,
    budget: &Budget,
) {
    let r = h.r();
    let depth = image.len();
    if depth == r {
        if budget.charge() {
            out.extend_from_slice(image);
        }
        return;
    }
    let mut cand = Bitset::ones(g.n());
    for (j, &img) in image.iter().enumerate() {
        if h.has_edge(j, depth) {
            cand.intersect_with(g.neighbors(img));
        } else if mode == Mode::Induced {
            cand.subtract(g.neighbors(img));
        }
    }
    for &img in image.iter() {
        cand.remove(img as usize);
    }
    for v in cand.iter() {
        if budget.blown() {
            return;
        }
        image.push(v as u32);
        extend_embedding(g, h, mode, image, out, budget);
        image.pop();
    }
}

/// Number of adjacency-preserving vertex permutations of `h`, by exhaustive
/// check over all r! permutations.
pub fn automorphism_count(h: &Pattern) -> u64 {
    let r = h.r();
    (0..r)
        .permutations(r)
        .filter(|perm| {
            (0..r).all(|i| (i + 1..r).all(|j| h.has_edge(i, j) == h.has_edge(perm[i], perm[j])))
        })
        .count() as u64
}

/// Converts a labeled-embedding count into a copy count.
pub fn copies_from_embeddings(embedding_count: u64, aut: u64) -> Result<u64, Error> {
    debug_assert!(aut > 0);
    if !embedding_count.is_multiple_of(aut) {
        return Err(Error::NonDivisibleEmbeddings {
            count: embedding_count,
            aut,
        });
    }
    Ok(embedding_count / aut)
}

/// The distinct (r-1)-prefixes of `m` with their extension degrees, in
/// lexicographic prefix order. Degrees sum to `m.len()`.
pub fn restrict(m: &EmbeddingSet) -> Vec<(Vec<u32>, usize)> {
    m.prefixes().map(|(p, d)| (p.to_vec(), d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_host() -> Graph {
        Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn c4_host() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn c5_host() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn k2_in_k3_has_six_embeddings() {
        let m = enumerate_embeddings(&k3_host(), &Pattern::clique(2), Mode::Induced, None).unwrap();
        assert_eq!(m.len(), 6);
    }

    #[test]
    fn no_triangles_in_c5() {
        let m = enumerate_embeddings(&c5_host(), &Pattern::clique(3), Mode::Induced, None).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn p3_in_c4_both_modes() {
        // Brute force over all 24 injections of 3 labeled vertices into C4
        // gives 8 in both modes (each middle vertex has exactly two mutually
        // non-adjacent neighbors).
        let p3 = Pattern::path(3);
        let induced = enumerate_embeddings(&c4_host(), &p3, Mode::Induced, None).unwrap();
        let subgraph = enumerate_embeddings(&c4_host(), &p3, Mode::Subgraph, None).unwrap();
        assert_eq!(induced.len(), 8);
        assert_eq!(subgraph.len(), 8);
    }

    #[test]
    fn pattern_larger_than_host_is_empty() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::clique(3), Mode::Induced, None).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn members_sorted_and_distinct() {
        let m = enumerate_embeddings(&c4_host(), &Pattern::path(3), Mode::Induced, None).unwrap();
        let members: Vec<&[u32]> = m.members().collect();
        for pair in members.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn member_cap_fails_cleanly() {
        match enumerate_embeddings(&k3_host(), &Pattern::clique(2), Mode::Induced, Some(3)) {
            Err(Error::EnumerationCap { cap: 3 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
        // cap equal to the true count succeeds
        let ok = enumerate_embeddings(&k3_host(), &Pattern::clique(2), Mode::Induced, Some(6));
        assert_eq!(ok.unwrap().len(), 6);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&Pattern::clique(3)), 6);
        assert_eq!(automorphism_count(&Pattern::path(3)), 2);
        let c5 = Pattern::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(automorphism_count(&c5), 10);
    }

    #[test]
    fn copies_examples() {
        assert_eq!(copies_from_embeddings(24, 6).unwrap(), 4);
        assert_eq!(copies_from_embeddings(8, 2).unwrap(), 4);
        assert_eq!(copies_from_embeddings(0, 7).unwrap(), 0);
        assert!(matches!(
            copies_from_embeddings(5, 2),
            Err(Error::NonDivisibleEmbeddings { count: 5, aut: 2 })
        ));
    }

    #[test]
    fn restrict_on_triangle_host() {
        let m = enumerate_embeddings(&k3_host(), &Pattern::clique(2), Mode::Induced, None).unwrap();
        let prefixes = restrict(&m);
        assert_eq!(prefixes.len(), 3);
        assert!(prefixes.iter().all(|(_, d)| *d == 2));
        assert_eq!(prefixes.iter().map(|(_, d)| d).sum::<usize>(), m.len());
    }

    #[test]
    fn restrict_on_star() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let m = enumerate_embeddings(&star, &Pattern::clique(2), Mode::Induced, None).unwrap();
        let prefixes = restrict(&m);
        assert_eq!(prefixes.len(), 4);
        assert_eq!(m.extension_degree(&[0]), 3);
        for leaf in 1..4u32 {
            assert_eq!(m.extension_degree(&[leaf]), 1);
        }
    }

    #[test]
    fn restrict_empty_set() {
        let m = enumerate_embeddings(&c5_host(), &Pattern::clique(3), Mode::Induced, None).unwrap();
        assert!(restrict(&m).is_empty());
    }

    #[test]
    fn prefix_set_of_triangles() {
        let m = enumerate_embeddings(&k3_host(), &Pattern::clique(3), Mode::Induced, None).unwrap();
        assert_eq!(m.len(), 6);
        let prefixes = m.prefix_set();
        assert_eq!(prefixes.pattern().r(), 2);
        assert_eq!(prefixes.len(), 6); // every ordered adjacent pair
        assert!(prefixes.contains(&[0, 1]));
    }

    #[test]
    fn extensions_query() {
        let m = enumerate_embeddings(&c4_host(), &Pattern::path(3), Mode::Induced, None).unwrap();
        assert_eq!(m.extensions_of(&[0, 1]), vec![2]);
        assert_eq!(m.extensions_of(&[2, 1]), vec![0]);
        assert!(m.extensions_of(&[0, 2]).is_empty());
    }
}
