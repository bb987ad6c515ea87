//! Blow-up witness extraction and the two independent verifiers.
//!
//! `extract` turns a set of pattern embeddings into a witness subgraph whose
//! classes realize the pattern with class sizes (s, …, s, t):
//!
//! 1. base (pattern order 2): build the bipartite membership graph on two
//!    copies of the host vertices and pull out a K(s,t);
//! 2. order r > 2: prune prefixes of low extension degree at threshold
//!    (c/2)·n, recurse on the set of surviving prefixes with c/2, keep the
//!    recursion's s disjoint transversal embeddings, bucket their extension
//!    vertices, and extract a K(s,t) from the bucket/host incidence graph;
//!    class j collects the j-th image vertex of each chosen transversal and
//!    the final class is the biclique's B side.
//!
//! `verify_type` and `verify_covers` re-check the result against the host
//! graph and the embedding set; they share nothing with the extractor beyond
//! the graph types.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::bounds::{
    check_density_preconditions, compute_s, BoundsReport, PreconditionFlags, FLOAT_MARGIN,
};
use crate::embed::{EmbeddingSet, Mode};
use crate::error::Error;
use crate::graph::{Graph, Pattern};
use crate::zarankiewicz::{
    density_guarantee, greedy_biclique, max_t_counting, BicliqueWitness, BipartiteGraph,
};

/// Default cap on Σ binom(d(u), s) for the counting extractor.
pub const DEFAULT_COUNTING_CAP: u128 = 50_000_000;
/// Default cap on binom(m, s) for the exact extractor.
pub const DEFAULT_EXACT_CAP: u128 = 5_000_000;
/// Default cap on enumerated members.
pub const DEFAULT_ENUM_CAP: usize = 10_000_000;

// ============================================================================
// Witness
// ============================================================================

/// A realized blow-up: one host-vertex class per pattern vertex, plus the
/// disjoint transversal embeddings certifying the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupWitness {
    pub pattern: Pattern,
    pub mode: Mode,
    /// classes[j] is the class of pattern vertex j, sorted ascending.
    pub classes: Vec<Vec<u32>>,
    /// Pairwise vertex-disjoint members of the covering set, one per smallest
    /// class element; entry i of a transversal is the image of pattern
    /// vertex i.
    pub transversals: Vec<Vec<u32>>,
}

impl BlowupWitness {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn min_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).min().unwrap_or(0)
    }
}

// ============================================================================
// Pruning
// ============================================================================

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovedPrefix {
    pub prefix: Vec<u32>,
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct PruneOutcome {
    pub kept: EmbeddingSet,
    /// Removed prefixes with their degrees, in removal (lexicographic) order.
    pub removed: Vec<RemovedPrefix>,
}

/// Removes, repeatedly, the lexicographically smallest prefix whose extension
/// degree is at most `threshold`, together with all members extending it.
///
/// Every member extends exactly one prefix, so removing one prefix group
/// never changes another prefix's degree: a single lexicographic pass reaches
/// the loop's fixpoint. Guarantees |kept| >= |m| − threshold·(prefix count).
pub fn prune(m: &EmbeddingSet, threshold: &BigRational) -> PruneOutcome {
    let mut removed = Vec::new();
    let mut keep = vec![true; m.len()];
    let r = m.pattern().r();
    for &(start, len) in m.prefix_ranges() {
        if BigRational::from_integer(BigInt::from(len)) <= *threshold {
            removed.push(RemovedPrefix {
                prefix: m.member(start)[..r - 1].to_vec(),
                degree: len,
            });
            for flag in keep.iter_mut().skip(start).take(len) {
                *flag = false;
            }
        }
    }
    PruneOutcome {
        kept: m.filter_members(|i| keep[i]),
        removed,
    }
}

// ============================================================================
// Extension buckets
// ============================================================================

/// The extension structure of one transversal embedding.
#[derive(Clone, Debug)]
pub struct ExtensionBucket {
    /// Which transversal this bucket extends.
    pub base_index: usize,
    /// W: all host vertices extending the transversal's prefix.
    pub extensions: Vec<u32>,
    /// X ⊆ W: the sub-bucket whose members share the adjacency trace below.
    pub bucket: Vec<u32>,
    /// Image vertices of the prefix adjacent to every member of X.
    pub trace: Vec<u32>,
    /// Y: indices of the classes containing the trace vertices, ascending.
    pub class_hits: Vec<usize>,
}

/// Builds the bucket for transversal `base_index` with prefix `prefix`.
///
/// The pattern's last vertex must map adjacent to the images of its pattern
/// neighbors, and in induced mode non-adjacent to everything else in the
/// prefix; both are already guaranteed for every extension, so X = W with the
/// trace read off the pattern. In induced mode the forced trace is asserted
/// against the host graph.
pub fn build_extension_bucket(
    g: &Graph,
    l: &EmbeddingSet,
    base_index: usize,
    prefix: &[u32],
    class_of: &HashMap<u32, usize>,
) -> ExtensionBucket {
    let h = l.pattern();
    let r = h.r();
    let extensions = l.extensions_of(prefix);
    let required: Vec<usize> = h.last_neighbors();
    let trace: Vec<u32> = required.iter().map(|&j| prefix[j]).collect();
    if l.mode() == Mode::Induced {
        for &v in &extensions {
            for (j, &img) in prefix.iter().enumerate().take(r - 1) {
                assert_eq!(
                    g.has_edge(v, img),
                    h.has_edge(j, r - 1),
                    "induced extension trace must be forced by the pattern"
                );
            }
        }
    }
    let mut class_hits: Vec<usize> = trace
        .iter()
        .map(|w| *class_of.get(w).expect("trace vertex lies in a class"))
        .collect();
    class_hits.sort_unstable();
    class_hits.dedup();
    ExtensionBucket {
        base_index,
        bucket: extensions.clone(),
        extensions,
        trace,
        class_hits,
    }
}

// ============================================================================
// Extraction parameters, report, outcome
// ============================================================================

/// Per-level class size policy.
#[derive(Clone, Debug)]
pub enum SPolicy {
    /// ⌊c_level^{r_level²} ln n⌋ at every level; may come out vacuous.
    Auto,
    /// Explicit values per level, top level first; the last value repeats
    /// for deeper levels.
    Overrides(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct ExtractParams {
    pub c: BigRational,
    pub s_policy: SPolicy,
    pub counting_cap: u128,
}

impl ExtractParams {
    pub fn new(c: BigRational) -> ExtractParams {
        ExtractParams {
            c,
            s_policy: SPolicy::Auto,
            counting_cap: DEFAULT_COUNTING_CAP,
        }
    }

    pub fn with_overrides(mut self, overrides: Vec<usize>) -> ExtractParams {
        self.s_policy = SPolicy::Overrides(overrides);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractorKind {
    Counting,
    Greedy,
}

impl std::fmt::Display for ExtractorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtractorKind::Counting => write!(f, "counting"),
            ExtractorKind::Greedy => write!(f, "greedy"),
        }
    }
}

/// One recursion level's diagnostics.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub level: usize,
    pub r: usize,
    pub c: BigRational,
    pub prune_threshold: Option<BigRational>,
    pub members_in: usize,
    pub members_kept: usize,
    pub prefixes_removed: usize,
    pub s_used: usize,
    pub s_from_override: bool,
    pub extractor: ExtractorKind,
    pub f_m: usize,
    pub f_n: usize,
    pub f_edges: usize,
    pub t_found: usize,
    pub preconditions: PreconditionFlags,
}

/// Full extraction diagnostics; `levels` is ordered top level first.
#[derive(Clone, Debug)]
pub struct ExtractReport {
    pub n: usize,
    pub r: usize,
    pub mode: Mode,
    pub c: BigRational,
    pub levels: Vec<LevelReport>,
    pub achieved_s: usize,
    pub achieved_t: usize,
    pub s_theorem: u64,
    pub t_threshold: f64,
    pub guarantee: BigRational,
    pub preconditions: Option<PreconditionFlags>,
    pub vacuous: bool,
    pub t_exceeds_guarantee: bool,
    pub t_exceeds_threshold: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    EmptyEmbeddingSet,
    BadParams,
    PrunedToEmpty,
    InsufficientTransversals,
    SExceedsParts,
    BicliqueEmpty,
}

impl std::fmt::Display for FailureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            FailureKind::EmptyEmbeddingSet => "empty-embedding-set",
            FailureKind::BadParams => "bad-params",
            FailureKind::PrunedToEmpty => "pruned-to-empty",
            FailureKind::InsufficientTransversals => "insufficient-transversals",
            FailureKind::SExceedsParts => "s-exceeds-parts",
            FailureKind::BicliqueEmpty => "biclique-empty",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug)]
pub struct ExtractFailure {
    pub level: usize,
    pub kind: FailureKind,
    pub detail: String,
    /// The bipartite instance that yielded no biclique, when applicable.
    pub bipartite: Option<BipartiteGraph>,
    pub levels: Vec<LevelReport>,
}

#[derive(Clone, Debug)]
pub enum ExtractOutcome {
    Success {
        witness: BlowupWitness,
        report: ExtractReport,
    },
    /// The resolved class size was 0 at some level: the thresholds assert
    /// nothing at this scale. Not a failure.
    Vacuous {
        report: ExtractReport,
    },
    Failed {
        failure: ExtractFailure,
    },
}

// ============================================================================
// Extraction
// ============================================================================

struct LevelResult {
    classes: Vec<Vec<u32>>,
    /// Invariant: transversals[i] ends at the i-th smallest vertex of the
    /// last class, so truncating that class to its p smallest vertices keeps
    /// transversals 0..p intact.
    transversals: Vec<Vec<u32>>,
    s_used: usize,
    t_found: usize,
}

enum LevelFault {
    Vacuous,
    Failure(Box<ExtractFailure>),
}

pub fn extract(g: &Graph, m: &EmbeddingSet, params: &ExtractParams) -> ExtractOutcome {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let fail_early = |kind: FailureKind, detail: String| ExtractOutcome::Failed {
        failure: ExtractFailure {
            level: 0,
            kind,
            detail,
            bipartite: None,
            levels: Vec::new(),
        },
    };
    if m.is_empty() {
        return fail_early(
            FailureKind::EmptyEmbeddingSet,
            "the embedding set is empty".into(),
        );
    }
    if !params.c.is_positive() || params.c > half {
        return fail_early(
            FailureKind::BadParams,
            format!(
                "c must lie in (0, 1/2], got {}",
                crate::bounds::rational_string(&params.c)
            ),
        );
    }
    if let SPolicy::Overrides(list) = &params.s_policy {
        if list.is_empty() || list.contains(&0) {
            return fail_early(
                FailureKind::BadParams,
                "class size overrides must all be at least 1".into(),
            );
        }
    }

    let mut levels: Vec<LevelReport> = Vec::new();
    let outcome = extract_level(g, m, &params.c, 0, params, &mut levels);
    levels.sort_by_key(|l| l.level);

    let n = g.n();
    let r = m.pattern().r();
    match outcome {
        Ok(result) => {
            let report = build_report(n, r, m.mode(), &params.c, levels, &result, false);
            let witness = BlowupWitness {
                pattern: m.pattern().clone(),
                mode: m.mode(),
                classes: result.classes,
                transversals: result.transversals,
            };
            ExtractOutcome::Success { witness, report }
        }
        Err(LevelFault::Vacuous) => {
            let empty = LevelResult {
                classes: Vec::new(),
                transversals: Vec::new(),
                s_used: 0,
                t_found: 0,
            };
            let report = build_report(n, r, m.mode(), &params.c, levels, &empty, true);
            ExtractOutcome::Vacuous { report }
        }
        Err(LevelFault::Failure(mut failure)) => {
            failure.levels = levels;
            ExtractOutcome::Failed { failure: *failure }
        }
    }
}

fn build_report(
    n: usize,
    r: usize,
    mode: Mode,
    c: &BigRational,
    levels: Vec<LevelReport>,
    result: &LevelResult,
    vacuous: bool,
) -> ExtractReport {
    let bounds = BoundsReport::evaluate(c, r as u32, n);
    let guarantee_s = if vacuous {
        bounds.s_theorem
    } else {
        result.s_used as u64
    };
    let guarantee = density_guarantee(n, c, r as u32, guarantee_s as u32).value;
    let preconditions = levels.first().filter(|_| !vacuous).map(|l| l.preconditions);
    let t_rat = BigRational::from_integer(BigInt::from(result.t_found));
    ExtractReport {
        n,
        r,
        mode,
        c: c.clone(),
        achieved_s: result.s_used,
        achieved_t: result.t_found,
        s_theorem: bounds.s_theorem,
        t_threshold: bounds.t_threshold,
        t_exceeds_guarantee: !vacuous && t_rat > guarantee,
        t_exceeds_threshold: !vacuous && result.t_found as f64 > bounds.t_threshold - FLOAT_MARGIN,
        guarantee,
        preconditions,
        vacuous,
        levels,
    }
}

fn resolve_s(
    policy: &SPolicy,
    level: usize,
    c: &BigRational,
    r: usize,
    n: usize,
) -> Result<(usize, bool), LevelFault> {
    match policy {
        SPolicy::Overrides(list) => Ok((list[level.min(list.len() - 1)], true)),
        SPolicy::Auto => {
            let s = compute_s(c, r as u32, n);
            if s == 0 {
                Err(LevelFault::Vacuous)
            } else {
                Ok((s as usize, false))
            }
        }
    }
}

fn run_biclique_step(
    f: &BipartiteGraph,
    s: usize,
    level: usize,
    counting_cap: u128,
) -> Result<(BicliqueWitness, ExtractorKind), LevelFault> {
    let fail = |kind, detail, bipartite| {
        LevelFault::Failure(Box::new(ExtractFailure {
            level,
            kind,
            detail,
            bipartite,
            levels: Vec::new(),
        }))
    };
    if s > f.m() {
        return Err(fail(
            FailureKind::SExceedsParts,
            format!("need s = {s} transversals but only {} are available", f.m()),
            Some(f.clone()),
        ));
    }
    let (found, kind) = match max_t_counting(f, s, counting_cap) {
        Ok(found) => (found, ExtractorKind::Counting),
        Err(Error::CountingCapExceeded { .. }) => match greedy_biclique(f, s) {
            Ok(found) => (found, ExtractorKind::Greedy),
            Err(e) => {
                return Err(fail(FailureKind::BadParams, e.to_string(), Some(f.clone())));
            }
        },
        Err(e) => {
            return Err(fail(FailureKind::BadParams, e.to_string(), Some(f.clone())));
        }
    };
    match found {
        Some(w) => Ok((w, kind)),
        None => Err(fail(
            FailureKind::BicliqueEmpty,
            format!("no K({s},t) with t >= 1 exists in the incidence graph"),
            Some(f.clone()),
        )),
    }
}

fn extract_level(
    g: &Graph,
    m: &EmbeddingSet,
    c: &BigRational,
    level: usize,
    params: &ExtractParams,
    levels: &mut Vec<LevelReport>,
) -> Result<LevelResult, LevelFault> {
    let n = g.n();
    let r = m.pattern().r();
    let (s, s_from_override) = resolve_s(&params.s_policy, level, c, r, n)?;

    if r == 2 {
        // Base: join u in A to v in B per membership of (u, v); the pattern's
        // own edges or non-edges are already encoded in which pairs belong.
        let edges: Vec<(u32, u32)> = m.members().map(|mem| (mem[0], mem[1])).collect();
        let f = BipartiteGraph::from_edges(n, n, &edges).expect("members are in range");
        let (bw, extractor) = run_biclique_step(&f, s, level, params.counting_cap)?;
        let t = bw.t();
        levels.push(LevelReport {
            level,
            r,
            c: c.clone(),
            prune_threshold: None,
            members_in: m.len(),
            members_kept: m.len(),
            prefixes_removed: 0,
            s_used: s,
            s_from_override,
            extractor,
            f_m: f.m(),
            f_n: f.n(),
            f_edges: f.edge_count(),
            t_found: t,
            preconditions: check_density_preconditions(
                f.m(),
                f.n(),
                f.edge_count(),
                c,
                2,
                s as u64,
            ),
        });
        let transversals = (0..s.min(t))
            .map(|i| vec![bw.a_side[i], bw.b_side[i]])
            .collect();
        return Ok(LevelResult {
            classes: vec![bw.a_side, bw.b_side],
            transversals,
            s_used: s,
            t_found: t,
        });
    }

    // Prune prefixes of extension degree <= (c/2)·n.
    let threshold =
        c / BigRational::from_integer(BigInt::from(2)) * BigRational::from_integer(BigInt::from(n));
    let pruned = prune(m, &threshold);
    let l = pruned.kept;
    if l.is_empty() {
        return Err(LevelFault::Failure(Box::new(ExtractFailure {
            level,
            kind: FailureKind::PrunedToEmpty,
            detail: format!(
                "all {} prefixes fell at or below the degree threshold {}",
                pruned.removed.len(),
                crate::bounds::rational_string(&threshold)
            ),
            bipartite: None,
            levels: Vec::new(),
        })));
    }

    // Recurse on the surviving prefixes with halved density.
    let child_m = l.prefix_set();
    let child_c = c / BigRational::from_integer(BigInt::from(2));
    let child = extract_level(g, &child_m, &child_c, level + 1, params, levels)?;

    let p = child.s_used;
    if child.t_found < p {
        return Err(LevelFault::Failure(Box::new(ExtractFailure {
            level,
            kind: FailureKind::InsufficientTransversals,
            detail: format!(
                "the recursion's large class has {} vertices, fewer than the {} transversals needed",
                child.t_found, p
            ),
            bipartite: None,
            levels: Vec::new(),
        })));
    }
    debug_assert_eq!(child.transversals.len(), p);

    // Buckets over the p transversal prefixes, grouped by the classes their
    // traces hit; the largest group (smallest first index on ties) survives.
    let mut class_of: HashMap<u32, usize> = HashMap::new();
    for (j, class) in child.classes.iter().enumerate() {
        for &v in class {
            class_of.insert(v, j);
        }
    }
    let buckets: Vec<ExtensionBucket> = child
        .transversals
        .iter()
        .enumerate()
        .map(|(i, prefix)| build_extension_bucket(g, &l, i, prefix, &class_of))
        .collect();
    let mut groups: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for b in &buckets {
        groups.entry(&b.class_hits).or_default().push(b.base_index);
    }
    let chosen_group: Vec<usize> = groups
        .values()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .expect("at least one bucket")
        .clone();
    if l.mode() == Mode::Induced {
        // all traces are forced, so the grouping must be trivial
        debug_assert_eq!(chosen_group.len(), p);
    }

    // Incidence graph: group positions against host vertices.
    let mut f_edges: Vec<(u32, u32)> = Vec::new();
    for (pos, &i) in chosen_group.iter().enumerate() {
        for &v in &buckets[i].bucket {
            f_edges.push((pos as u32, v));
        }
    }
    let f = BipartiteGraph::from_edges(chosen_group.len(), n, &f_edges).expect("in range");
    let (bw, extractor) = run_biclique_step(&f, s, level, params.counting_cap)?;
    let t = bw.t();
    levels.push(LevelReport {
        level,
        r,
        c: c.clone(),
        prune_threshold: Some(threshold),
        members_in: m.len(),
        members_kept: l.len(),
        prefixes_removed: pruned.removed.len(),
        s_used: s,
        s_from_override,
        extractor,
        f_m: f.m(),
        f_n: f.n(),
        f_edges: f.edge_count(),
        t_found: t,
        preconditions: check_density_preconditions(
            f.m(),
            f.n(),
            f.edge_count(),
            c,
            r as u32,
            s as u64,
        ),
    });

    // Assemble: class j collects the j-th image vertex of each chosen
    // transversal; the last class is the biclique's B side.
    let selected: Vec<&Vec<u32>> = bw
        .a_side
        .iter()
        .map(|&pos| &child.transversals[chosen_group[pos as usize]])
        .collect();
    let mut classes: Vec<Vec<u32>> = (0..r - 1)
        .map(|j| {
            let mut class: Vec<u32> = selected.iter().map(|tr| tr[j]).collect();
            class.sort_unstable();
            class
        })
        .collect();
    classes.push(bw.b_side.clone());

    let mut transversals: Vec<Vec<u32>> = Vec::with_capacity(s.min(t));
    for (prefix, &tail) in selected.iter().zip(&bw.b_side).take(s.min(t)) {
        let mut member = (*prefix).clone();
        member.push(tail);
        assert!(
            l.contains(&member),
            "transversal extension must be a surviving member"
        );
        transversals.push(member);
    }

    Ok(LevelResult {
        classes,
        transversals,
        s_used: s,
        t_found: t,
    })
}

// ============================================================================
// Verifiers
// ============================================================================

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    MissingCrossEdge,
    ForbiddenCrossEdge,
}

#[derive(Clone, Debug)]
pub struct TypeViolation {
    pub class_i: usize,
    pub class_j: usize,
    pub a: u32,
    pub b: u32,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug)]
pub struct TypeReport {
    pub ok: bool,
    pub violations: Vec<TypeViolation>,
}

/// Checks that the witness classes realize the pattern in the host graph:
/// every cross pair of a pattern edge is a host edge, and in induced mode
/// every cross pair of a pattern non-edge is a host non-edge. Within-class
/// edges are unconstrained.
pub fn verify_type(g: &Graph, w: &BlowupWitness) -> Result<TypeReport, Error> {
    let r = w.pattern.r();
    if w.classes.len() != r {
        return Err(Error::InvalidWitness(format!(
            "expected {} classes, found {}",
            r,
            w.classes.len()
        )));
    }
    let mut seen: HashSet<u32> = HashSet::new();
    for class in &w.classes {
        if class.is_empty() {
            return Err(Error::InvalidWitness("empty class".into()));
        }
        for &v in class {
            if v as usize >= g.n() {
                return Err(Error::VertexOutOfRange { v, n: g.n() });
            }
            if !seen.insert(v) {
                return Err(Error::OverlappingClasses { v });
            }
        }
    }

    let mut violations = Vec::new();
    for i in 0..r {
        for j in (i + 1)..r {
            let required = w.pattern.has_edge(i, j);
            if !required && w.mode == Mode::Subgraph {
                continue;
            }
            for &a in &w.classes[i] {
                for &b in &w.classes[j] {
                    let present = g.has_edge(a, b);
                    if required && !present {
                        violations.push(TypeViolation {
                            class_i: i,
                            class_j: j,
                            a,
                            b,
                            kind: ViolationKind::MissingCrossEdge,
                        });
                    } else if !required && present {
                        violations.push(TypeViolation {
                            class_i: i,
                            class_j: j,
                            a,
                            b,
                            kind: ViolationKind::ForbiddenCrossEdge,
                        });
                    }
                }
            }
        }
    }
    Ok(TypeReport {
        ok: violations.is_empty(),
        violations,
    })
}

#[derive(Clone, Debug)]
pub struct CoverViolation {
    pub class_i: usize,
    pub class_j: usize,
    pub a: u32,
    pub b: u32,
}

#[derive(Clone, Debug)]
pub struct CoverReport {
    pub ok: bool,
    pub uncovered_edges: Vec<CoverViolation>,
    pub transversal_problems: Vec<String>,
}

/// Checks that `m` covers the witness, assuming `verify_type` passed:
///
/// (a) every host edge across witness classes is the image of a pattern edge
///     under some member of `m` (in subgraph mode the witness subgraph is the
///     blow-up itself, so only class pairs joined by a pattern edge carry
///     its edges);
/// (b) the witness lists min-class-size pairwise-disjoint transversals, each
///     a member of `m` meeting every class.
pub fn verify_covers(g: &Graph, m: &EmbeddingSet, w: &BlowupWitness) -> CoverReport {
    let r = w.pattern.r();
    let pattern_edges = w.pattern.edges();

    let mut edge_images: HashSet<(u32, u32)> = HashSet::new();
    for member in m.members() {
        for &(pi, pj) in &pattern_edges {
            let (x, y) = (member[pi as usize], member[pj as usize]);
            edge_images.insert((x.min(y), x.max(y)));
        }
    }

    let mut uncovered = Vec::new();
    for i in 0..r {
        for j in (i + 1)..r {
            if w.mode == Mode::Subgraph && !w.pattern.has_edge(i, j) {
                continue;
            }
            for &a in &w.classes[i] {
                for &b in &w.classes[j] {
                    if g.has_edge(a, b) && !edge_images.contains(&(a.min(b), a.max(b))) {
                        uncovered.push(CoverViolation {
                            class_i: i,
                            class_j: j,
                            a,
                            b,
                        });
                    }
                }
            }
        }
    }

    let mut problems = Vec::new();
    let need = w.min_class_size();
    if w.transversals.len() < need {
        problems.push(format!(
            "need {} transversals (the smallest class size), found {}",
            need,
            w.transversals.len()
        ));
    }
    let class_sets: Vec<HashSet<u32>> = w
        .classes
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    let mut used: HashSet<u32> = HashSet::new();
    for (idx, tr) in w.transversals.iter().enumerate() {
        if tr.len() != r {
            problems.push(format!("transversal {idx} has arity {} != {}", tr.len(), r));
            continue;
        }
        if !m.contains(tr) {
            problems.push(format!(
                "transversal {idx} is not a member of the embedding set"
            ));
        }
        for &v in tr {
            if !used.insert(v) {
                problems.push(format!("transversal {idx} reuses vertex {v}"));
            }
        }
        for (j, set) in class_sets.iter().enumerate() {
            if !tr.iter().any(|v| set.contains(v)) {
                problems.push(format!("transversal {idx} misses class {j}"));
            }
        }
    }

    CoverReport {
        ok: uncovered.is_empty() && problems.is_empty(),
        uncovered_edges: uncovered,
        transversal_problems: problems,
    }
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::enumerate_embeddings;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn star4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn prune_keeps_everything_above_threshold() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let m = enumerate_embeddings(&k3, &Pattern::clique(2), Mode::Induced, None).unwrap();
        let out = prune(&m, &rat(1, 1));
        assert_eq!(out.kept.len(), 6);
        assert!(out.removed.is_empty());
    }

    #[test]
    fn prune_star_at_three_halves() {
        let m = enumerate_embeddings(&star4(), &Pattern::clique(2), Mode::Induced, None).unwrap();
        let out = prune(&m, &rat(3, 2));
        // leaf prefixes have degree 1 <= 3/2 and go; the center keeps its 3
        assert_eq!(out.kept.len(), 3);
        assert!(out.kept.members().all(|mem| mem[0] == 0));
        assert_eq!(out.removed.len(), 3);
        assert_eq!(out.removed[0].prefix, vec![1]);
        assert!(out.removed.iter().all(|r| r.degree == 1));
    }

    #[test]
    fn prune_empty_set() {
        let g = Graph::from_edges(3, &[]).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::clique(2), Mode::Induced, None).unwrap();
        let out = prune(&m, &rat(7, 1));
        assert!(out.kept.is_empty());
        assert!(out.removed.is_empty());
    }

    #[test]
    fn prune_is_idempotent_and_bounded() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (4, 5)]).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::path(3), Mode::Induced, None).unwrap();
        let threshold = rat(2, 1);
        let once = prune(&m, &threshold);
        for (_, d) in once.kept.prefixes() {
            assert!(BigRational::from_integer(BigInt::from(d)) > threshold);
        }
        let twice = prune(&once.kept, &threshold);
        assert_eq!(twice.kept.len(), once.kept.len());
        assert!(twice.removed.is_empty());
        // |kept| >= |m| - threshold * prefix count
        let bound = BigRational::from_integer(BigInt::from(m.len()))
            - &threshold * BigRational::from_integer(BigInt::from(m.prefix_count()));
        assert!(BigRational::from_integer(BigInt::from(once.kept.len())) >= bound);
    }

    #[test]
    fn extract_base_case_on_k25() {
        // complete bipartite host: classes {0,1} and {2..6}
        let mut edges = Vec::new();
        for a in 0..2u32 {
            for b in 2..7u32 {
                edges.push((a, b));
            }
        }
        let g = Graph::from_edges(7, &edges).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::clique(2), Mode::Induced, None).unwrap();
        assert_eq!(m.len(), 20);
        let params = ExtractParams::new(rat(1, 2)).with_overrides(vec![2]);
        match extract(&g, &m, &params) {
            ExtractOutcome::Success { witness, report } => {
                assert_eq!(witness.classes, vec![vec![0, 1], vec![2, 3, 4, 5, 6]]);
                assert_eq!(report.achieved_s, 2);
                assert_eq!(report.achieved_t, 5);
                assert!(verify_type(&g, &witness).unwrap().ok);
                assert!(verify_covers(&g, &m, &witness).ok);
            }
            other => panic!("expected success, got {other:?}"),
        }
    }

    #[test]
    fn extract_triangles_in_k9() {
        let g = Graph::from_edges(9, &Pattern::clique(9).edges()).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::clique(3), Mode::Induced, None).unwrap();
        assert_eq!(m.len(), 504);
        let params = ExtractParams::new(rat(1, 2)).with_overrides(vec![1]);
        match extract(&g, &m, &params) {
            ExtractOutcome::Success { witness, report } => {
                assert_eq!(witness.class_sizes()[..2], [1, 1]);
                let t = report.achieved_t;
                assert!((2..=7).contains(&t), "t = {t}");
                assert!(verify_type(&g, &witness).unwrap().ok);
                let covers = verify_covers(&g, &m, &witness);
                assert!(covers.ok, "{covers:?}");
                assert_eq!(witness.transversals.len(), 1);
            }
            other => panic!("expected success, got {other:?}"),
        }
    }

    #[test]
    fn extract_single_member_degenerate() {
        // one induced path 0-1-2 inside a path host
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::path(3), Mode::Induced, None).unwrap();
        let single = m.filter_members(|i| i == 0);
        assert_eq!(single.len(), 1);
        let member: Vec<u32> = single.member(0).to_vec();
        // auto c from a single copy: 1/n^3, comfortably under 1/2
        let c = rat(1, 64);
        let params = ExtractParams::new(c).with_overrides(vec![1]);
        match extract(&g, &single, &params) {
            ExtractOutcome::Success { witness, .. } => {
                assert_eq!(witness.class_sizes(), vec![1, 1, 1]);
                let flattened: Vec<u32> = witness.classes.iter().map(|c| c[0]).collect();
                assert_eq!(flattened, member);
                assert!(verify_covers(&g, &single, &witness).ok);
            }
            other => panic!("expected success, got {other:?}"),
        }
    }

    #[test]
    fn extract_vacuous_at_desk_scale() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::clique(2), Mode::Induced, None).unwrap();
        let params = ExtractParams::new(rat(1, 2)); // auto: ⌊(1/16) ln 3⌋ = 0
        match extract(&g, &m, &params) {
            ExtractOutcome::Vacuous { report } => {
                assert!(report.vacuous);
                assert_eq!(report.s_theorem, 0);
                assert!(report.preconditions.is_none());
            }
            other => panic!("expected vacuous, got {other:?}"),
        }
    }

    #[test]
    fn extract_empty_set_fails() {
        let g = Graph::from_edges(3, &[]).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::clique(2), Mode::Induced, None).unwrap();
        let params = ExtractParams::new(rat(1, 2)).with_overrides(vec![1]);
        match extract(&g, &m, &params) {
            ExtractOutcome::Failed { failure } => {
                assert_eq!(failure.kind, FailureKind::EmptyEmbeddingSet);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn extract_attaches_bipartite_instance_on_dead_end() {
        // two disjoint edges: K2 embeddings exist but no common neighborhood
        // for s = 2
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::clique(2), Mode::Induced, None).unwrap();
        let params = ExtractParams::new(rat(1, 2)).with_overrides(vec![2]);
        match extract(&g, &m, &params) {
            ExtractOutcome::Failed { failure } => {
                assert_eq!(failure.kind, FailureKind::BicliqueEmpty);
                let f = failure.bipartite.expect("instance attached");
                assert_eq!((f.m(), f.n()), (4, 4));
                assert_eq!(f.edge_count(), m.len());
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn verify_type_examples() {
        let k5 = Graph::from_edges(5, &Pattern::clique(5).edges()).unwrap();
        let w = BlowupWitness {
            pattern: Pattern::clique(2),
            mode: Mode::Subgraph,
            classes: vec![vec![0, 1], vec![2, 3, 4]],
            transversals: vec![],
        };
        assert!(verify_type(&k5, &w).unwrap().ok);

        let mut edges = Pattern::clique(5).edges();
        edges.retain(|&e| e != (1, 4));
        let k5_minus = Graph::from_edges(5, &edges).unwrap();
        let report = verify_type(&k5_minus, &w).unwrap();
        assert!(!report.ok);
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!((v.class_i, v.class_j, v.a, v.b), (0, 1, 1, 4));
        assert_eq!(v.kind, ViolationKind::MissingCrossEdge);
    }

    #[test]
    fn verify_type_induced_forbids_cross_edges_of_nonedges() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let w = BlowupWitness {
            pattern: Pattern::empty(2),
            mode: Mode::Induced,
            classes: vec![vec![0, 1], vec![2, 3]],
            transversals: vec![],
        };
        let report = verify_type(&c4, &w).unwrap();
        assert!(!report.ok);
        let pairs: Vec<(u32, u32)> = report.violations.iter().map(|v| (v.a, v.b)).collect();
        assert_eq!(pairs, vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn verify_type_rejects_overlapping_classes() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let w = BlowupWitness {
            pattern: Pattern::clique(2),
            mode: Mode::Subgraph,
            classes: vec![vec![0, 1], vec![1, 2]],
            transversals: vec![],
        };
        assert!(matches!(
            verify_type(&g, &w),
            Err(Error::OverlappingClasses { v: 1 })
        ));
    }

    #[test]
    fn verify_covers_detects_uncovered_edge() {
        // witness on K4 with an embedding set that misses the pair {0, 2}
        let k4 = Graph::from_edges(4, &Pattern::clique(4).edges()).unwrap();
        let full = enumerate_embeddings(&k4, &Pattern::clique(2), Mode::Induced, None).unwrap();
        let depleted = full.filter_members(|i| {
            let mem = full.member(i);
            !(mem == [0, 2] || mem == [2, 0])
        });
        let w = BlowupWitness {
            pattern: Pattern::clique(2),
            mode: Mode::Induced,
            classes: vec![vec![0, 1], vec![2, 3]],
            transversals: vec![vec![0, 2], vec![1, 3]],
        };
        let report = verify_covers(&k4, &depleted, &w);
        assert!(!report.ok);
        assert_eq!(report.uncovered_edges.len(), 1);
        assert_eq!(
            (report.uncovered_edges[0].a, report.uncovered_edges[0].b),
            (0, 2)
        );
        // transversal (0,2) is also no longer a member
        assert!(!report.transversal_problems.is_empty());
    }

    #[test]
    fn bucket_structure_on_induced_paths() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let m = enumerate_embeddings(&g, &Pattern::path(3), Mode::Induced, None).unwrap();
        let mut class_of = HashMap::new();
        class_of.insert(0u32, 0usize);
        class_of.insert(1u32, 1usize);
        let bucket = build_extension_bucket(&g, &m, 0, &[0, 1], &class_of);
        assert_eq!(bucket.extensions, vec![2, 3]);
        assert_eq!(bucket.bucket, bucket.extensions);
        assert_eq!(bucket.trace, vec![1]);
        assert_eq!(bucket.class_hits, vec![1]);
    }
}
