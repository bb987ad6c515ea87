//! Complete bipartite subgraph (biclique) extraction.
//!
//! Three extractors with one contract: given a bipartite graph and a left
//! size `s`, find `S ⊆ A` with `|S| = s` whose common neighborhood `T ⊆ B`
//! is as large as possible.
//!
//! * `max_t_exact` scans every s-subset of A.
//! * `max_t_counting` double-counts (s-subset, common-neighbor) incidences
//!   through the neighborhoods of B and reads off the best subset; it agrees
//!   with the exact extractor wherever both are feasible.
//! * `greedy_biclique` grows S one vertex at a time and only promises a lower
//!   bound.
//!
//! `density_guarantee` evaluates the closed-form bound n·(c/2^r)^s that any
//! exact extractor beats whenever the density preconditions hold.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::bitset::Bitset;
use crate::error::Error;
use crate::graph::parse_edge_lines;

/// Bipartite host with parts A (size m) and B (size n); one bitset over B
/// per A-vertex.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    adj: Vec<Bitset>,
    edge_count: usize,
}

impl BipartiteGraph {
    /// Builds from edges given in local coordinates: `a ∈ 0..m`, `b ∈ 0..n`.
    pub fn from_edges(m: usize, n: usize, edges: &[(u32, u32)]) -> Result<BipartiteGraph, Error> {
        let mut adj = vec![Bitset::zeros(n); m];
        for &(a, b) in edges {
            if a as usize >= m {
                return Err(Error::VertexOutOfRange { v: a, n: m });
            }
            if b as usize >= n {
                return Err(Error::VertexOutOfRange { v: b, n });
            }
            adj[a as usize].insert(b as usize);
        }
        let edge_count = adj.iter().map(Bitset::count_ones).sum();
        Ok(BipartiteGraph {
            m,
            n,
            adj,
            edge_count,
        })
    }

    /// Parses the bipartite edge-list format: a `bipartite <m> <n>` header,
    /// then one edge per line with A-vertices `0..m-1` and B-vertices
    /// `m..m+n-1` (either order on the line).
    pub fn parse(text: &str) -> Result<BipartiteGraph, Error> {
        let (_total, raw_edges) = parse_edge_lines(text, true)?;
        // recover the header for validation
        let header = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        let mut it = header.split_whitespace();
        it.next();
        let m: usize = it.next().unwrap_or("0").parse().unwrap_or(0);
        let n: usize = it.next().unwrap_or("0").parse().unwrap_or(0);
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (idx, &(u, v)) in raw_edges.iter().enumerate() {
            let (a, b) = if (u as usize) < m && (v as usize) >= m {
                (u, v)
            } else if (v as usize) < m && (u as usize) >= m {
                (v, u)
            } else {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("edge {u} {v} does not join the two parts"),
                });
            };
            if b as usize >= m + n {
                return Err(Error::VertexOutOfRange { v: b, n: m + n });
            }
            edges.push((a, b - m as u32));
        }
        BipartiteGraph::from_edges(m, n, &edges)
    }

    /// Complete bipartite K_{m,n}.
    pub fn complete(m: usize, n: usize) -> BipartiteGraph {
        let adj = vec![Bitset::ones(n); m];
        BipartiteGraph {
            m,
            n,
            adj,
            edge_count: m * n,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].contains(b as usize)
    }

    pub fn degree(&self, a: u32) -> usize {
        self.adj[a as usize].count_ones()
    }

    pub fn neighbors(&self, a: u32) -> &Bitset {
        &self.adj[a as usize]
    }

    /// Serialization matching `parse`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("bipartite {} {}\n", self.m, self.n);
        for a in 0..self.m {
            for b in self.adj[a].iter() {
                out.push_str(&format!("{} {}\n", a, self.m + b));
            }
        }
        out
    }
}

/// A complete bipartite subgraph: every pair in `a_side × b_side` is an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliqueWitness {
    /// Chosen A-vertices, ascending.
    pub a_side: Vec<u32>,
    /// Their common neighborhood in B, ascending.
    pub b_side: Vec<u32>,
}

impl BicliqueWitness {
    pub fn s(&self) -> usize {
        self.a_side.len()
    }

    pub fn t(&self) -> usize {
        self.b_side.len()
    }
}

/// Independent validity check shared by tests and verifiers.
pub fn is_complete_biclique(f: &BipartiteGraph, w: &BicliqueWitness) -> bool {
    !w.a_side.is_empty()
        && !w.b_side.is_empty()
        && w.a_side.windows(2).all(|p| p[0] < p[1])
        && w.b_side.windows(2).all(|p| p[0] < p[1])
        && w.a_side
            .iter()
            .all(|&a| w.b_side.iter().all(|&b| f.has_edge(a, b)))
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn check_s(f: &BipartiteGraph, s: usize) -> Result<(), Error> {
    if s == 0 {
        return Err(Error::SIsZero);
    }
    if s > f.m {
        return Err(Error::STooLarge { s, m: f.m });
    }
    Ok(())
}

/// Exhaustive search over all s-subsets of A. The witness has maximal t; ties
/// resolve to the lexicographically smallest S. `None` when every s-subset
/// has an empty common neighborhood.
pub fn max_t_exact(
    f: &BipartiteGraph,
    s: usize,
    cap: u128,
) -> Result<Option<BicliqueWitness>, Error> {
    check_s(f, s)?;
    let required = binom(f.m as u128, s as u128);
    if required > cap {
        return Err(Error::ExactCapExceeded { required, cap });
    }

    struct Search<'a> {
        f: &'a BipartiteGraph,
        s: usize,
        best_t: usize,
        best: Option<(Vec<u32>, Bitset)>,
        chosen: Vec<u32>,
    }

    impl Search<'_> {
        // Subsets are visited in lexicographic order and only a strictly
        // larger t replaces the incumbent, so the reported S is the lex
        // smallest among maximizers; subtrees whose partial intersection
        // cannot beat the incumbent are skipped.
        fn descend(&mut self, next: usize, inter: &Bitset) {
            if self.chosen.len() == self.s {
                let t = inter.count_ones();
                if t > self.best_t {
                    self.best_t = t;
                    self.best = Some((self.chosen.clone(), inter.clone()));
                }
                return;
            }
            let remaining = self.s - self.chosen.len();
            for a in next..=(self.f.m - remaining) {
                let mut narrowed = inter.clone();
                narrowed.intersect_with(self.f.neighbors(a as u32));
                // intersections only shrink, so a subtree at or below the
                // incumbent can be skipped without losing the lex-first max
                if narrowed.count_ones() <= self.best_t {
                    continue;
                }
                self.chosen.push(a as u32);
                self.descend(a + 1, &narrowed);
                self.chosen.pop();
            }
        }
    }

    let mut search = Search {
        f,
        s,
        best_t: 0,
        best: None,
        chosen: Vec::with_capacity(s),
    };
    search.descend(0, &Bitset::ones(f.n));
    Ok(search.best.map(|(a_side, inter)| BicliqueWitness {
        a_side,
        b_side: inter.to_vec(),
    }))
}

/// Counting extractor: accumulates, for every B-vertex with degree >= s, all
/// s-subsets of its neighborhood into a counter map; the subset with maximal
/// count (lex smallest on ties) is the best S and its count is t. Exactly the
/// `max_t_exact` contract, feasible when `Σ_u binom(d(u), s)` is within cap.
pub fn max_t_counting(
    f: &BipartiteGraph,
    s: usize,
    cap: u128,
) -> Result<Option<BicliqueWitness>, Error> {
    check_s(f, s)?;
    let required: u128 = (0..f.n as u32)
        .map(|b| {
            let d = (0..f.m as u32).filter(|&a| f.has_edge(a, b)).count();
            binom(d as u128, s as u128)
        })
        .sum();
    if required > cap {
        return Err(Error::CountingCapExceeded { required, cap });
    }

    // Column view: neighborhoods of B-vertices.
    let mut b_neighborhoods: Vec<Vec<u32>> = vec![Vec::new(); f.n];
    for a in 0..f.m as u32 {
        for b in f.neighbors(a).iter() {
            b_neighborhoods[b].push(a);
        }
    }

    let mut counts: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut subset = Vec::with_capacity(s);
    for nb in &b_neighborhoods {
        if nb.len() >= s {
            accumulate_subsets(nb, s, 0, &mut subset, &mut counts);
        }
    }

    let mut best: Option<(&Vec<u32>, usize)> = None;
    for (subset, &count) in &counts {
        if best.is_none_or(|(_, t)| count > t) {
            best = Some((subset, count));
        }
    }
    Ok(best.map(|(a_side, t)| {
        let mut inter = Bitset::ones(f.n);
        for &a in a_side {
            inter.intersect_with(f.neighbors(a));
        }
        debug_assert_eq!(inter.count_ones(), t);
        BicliqueWitness {
            a_side: a_side.clone(),
            b_side: inter.to_vec(),
        }
    }))
}

fn accumulate_subsets(
    nb: &[u32],
    s: usize,
    start: usize,
    subset: &mut Vec<u32>,
    counts: &mut BTreeMap<Vec<u32>, usize>,
) {
    if subset.len() == s {
        *counts.entry(subset.clone()).or_insert(0) += 1;
        return;
    }
    let remaining = s - subset.len();
    for i in start..=(nb.len() - remaining) {
        subset.push(nb[i]);
        accumulate_subsets(nb, s, i + 1, subset, counts);
        subset.pop();
    }
}

/// Greedy lower-bound extractor: repeatedly adds the A-vertex maximizing the
/// running common neighborhood (ties to the smallest id). `None` when the
/// intersection empties before S is full or ends empty.
pub fn greedy_biclique(f: &BipartiteGraph, s: usize) -> Result<Option<BicliqueWitness>, Error> {
    check_s(f, s)?;
    let mut common = Bitset::ones(f.n);
    let mut chosen: Vec<u32> = Vec::with_capacity(s);
    let mut used = vec![false; f.m];
    for _ in 0..s {
        let mut best: Option<(usize, u32)> = None;
        for a in 0..f.m as u32 {
            if used[a as usize] {
                continue;
            }
            let count = common.intersection_count(f.neighbors(a));
            if best.is_none_or(|(bc, _)| count > bc) {
                best = Some((count, a));
            }
        }
        let (count, a) = best.expect("s <= m leaves a candidate");
        if count == 0 {
            return Ok(None);
        }
        used[a as usize] = true;
        chosen.push(a);
        common.intersect_with(f.neighbors(a));
    }
    chosen.sort_unstable();
    Ok(Some(BicliqueWitness {
        a_side: chosen,
        b_side: common.to_vec(),
    }))
}

/// The closed-form lower bound n·(c/2^r)^s together with a flag for the
/// operation's own parameter range (0 < c <= 1/2, r >= 2, s >= 1). Whenever
/// the density preconditions hold (see `bounds::check_density_preconditions`)
/// an exact extractor returns t strictly above this value.
#[derive(Clone, Debug)]
pub struct DensityGuarantee {
    pub value: BigRational,
    pub params_ok: bool,
}

pub fn density_guarantee(n: usize, c: &BigRational, r: u32, s: u32) -> DensityGuarantee {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let params_ok = c.is_positive() && *c <= half && r >= 2 && s >= 1;
    let base = c / BigRational::from_integer(BigInt::from(2).pow(r));
    let mut value = BigRational::from_integer(BigInt::from(n));
    for _ in 0..s {
        value *= &base;
    }
    DensityGuarantee { value, params_ok }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    const CAP_EXACT: u128 = 5_000_000;
    const CAP_COUNT: u128 = 50_000_000;

    /// C6 as a bipartite graph: a_i ~ b_i, b_{i+1 mod 3}.
    fn c6_bipartite() -> BipartiteGraph {
        BipartiteGraph::from_edges(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn exact_on_complete_bipartite() {
        let f = BipartiteGraph::complete(3, 4);
        let w = max_t_exact(&f, 2, CAP_EXACT).unwrap().unwrap();
        assert_eq!(w.t(), 4);
        assert_eq!(w.a_side, vec![0, 1]);
        assert!(is_complete_biclique(&f, &w));
    }

    #[test]
    fn exact_on_c6() {
        let w = max_t_exact(&c6_bipartite(), 2, CAP_EXACT).unwrap().unwrap();
        assert_eq!(w.t(), 1);
    }

    #[test]
    fn exact_none_on_empty() {
        let f = BipartiteGraph::from_edges(3, 3, &[]).unwrap();
        assert!(max_t_exact(&f, 1, CAP_EXACT).unwrap().is_none());
    }

    #[test]
    fn exact_argument_errors() {
        let f = BipartiteGraph::complete(3, 3);
        assert!(matches!(
            max_t_exact(&f, 4, CAP_EXACT),
            Err(Error::STooLarge { s: 4, m: 3 })
        ));
        assert!(matches!(max_t_exact(&f, 0, CAP_EXACT), Err(Error::SIsZero)));
        assert!(matches!(
            max_t_exact(&f, 2, 2),
            Err(Error::ExactCapExceeded {
                required: 3,
                cap: 2
            })
        ));
    }

    #[test]
    fn counting_matches_exact_on_examples() {
        let f = BipartiteGraph::complete(3, 4);
        let w = max_t_counting(&f, 2, CAP_COUNT).unwrap().unwrap();
        assert_eq!(w.t(), 4);
        assert_eq!(w.a_side, vec![0, 1]);

        let exact = max_t_exact(&c6_bipartite(), 2, CAP_EXACT).unwrap().unwrap();
        let counted = max_t_counting(&c6_bipartite(), 2, CAP_COUNT)
            .unwrap()
            .unwrap();
        assert_eq!(exact.t(), counted.t());
        assert_eq!(exact.a_side, counted.a_side);
    }

    #[test]
    fn counting_single_contributor() {
        // Only B-vertex 0 has degree >= 2; its neighborhood is {1, 2, 4}.
        let f = BipartiteGraph::from_edges(5, 3, &[(1, 0), (2, 0), (4, 0), (0, 1)]).unwrap();
        let w = max_t_counting(&f, 2, CAP_COUNT).unwrap().unwrap();
        assert_eq!(w.t(), 1);
        assert_eq!(w.a_side, vec![1, 2]); // lex smallest pair inside {1,2,4}
        assert_eq!(w.b_side, vec![0]);
    }

    #[test]
    fn counting_cap_errors() {
        let f = BipartiteGraph::complete(4, 4);
        assert!(matches!(
            max_t_counting(&f, 2, 3),
            Err(Error::CountingCapExceeded { .. })
        ));
    }

    #[test]
    fn greedy_examples() {
        let f = BipartiteGraph::complete(3, 4);
        let w = greedy_biclique(&f, 3).unwrap().unwrap();
        assert_eq!(w.t(), 4);

        let w = greedy_biclique(&c6_bipartite(), 2).unwrap().unwrap();
        assert_eq!(w.t(), 1);

        let f =
            BipartiteGraph::from_edges(1, 5, &[(0, 0), (0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let w = greedy_biclique(&f, 1).unwrap().unwrap();
        assert_eq!(w.t(), 5);
    }

    #[test]
    fn greedy_none_when_intersection_empties() {
        // Two A-vertices with disjoint neighborhoods.
        let f = BipartiteGraph::from_edges(2, 4, &[(0, 0), (0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(greedy_biclique(&f, 2).unwrap().is_none());
    }

    #[test]
    fn guarantee_values() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let g = density_guarantee(100, &half, 2, 2);
        assert!(g.params_ok);
        assert_eq!(
            g.value,
            BigRational::new(BigInt::from(25), BigInt::from(16))
        );

        let g = density_guarantee(256, &half, 2, 3);
        assert_eq!(g.value, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(g.value.to_f64().unwrap(), 0.5);

        let over = BigRational::new(BigInt::from(3), BigInt::from(4));
        assert!(!density_guarantee(10, &over, 2, 1).params_ok);
    }

    #[test]
    fn bipartite_parse_round_trip() {
        let text = "bipartite 2 3\n0 2\n0 3\n1 4\n";
        let f = BipartiteGraph::parse(text).unwrap();
        assert_eq!((f.m(), f.n(), f.edge_count()), (2, 3, 3));
        assert!(f.has_edge(0, 0) && f.has_edge(0, 1) && f.has_edge(1, 2));
        let f2 = BipartiteGraph::parse(&f.to_edge_list()).unwrap();
        assert_eq!(f2.to_edge_list(), f.to_edge_list());
    }

    #[test]
    fn bipartite_parse_rejects_same_side_edges() {
        assert!(BipartiteGraph::parse("bipartite 2 2\n0 1\n").is_err());
        assert!(BipartiteGraph::parse("0 1\n").is_err()); // missing header
    }
}
