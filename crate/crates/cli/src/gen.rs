//! Deterministic random graphs and planted blow-ups.
//!
//! PRNG: ChaCha12, keyed with `seed_from_u64`, fixed for the repository's
//! lifetime. Pairs are visited in row-major order (0,1), (0,2), …, (n-2,n-1)
//! with exactly one 64-bit draw per pair; an edge appears when the top 53
//! bits fall below ⌊p·2^53⌋. Identical (n, p, seed) give identical graphs on
//! every platform.

use blowup_core::bitset::Bitset;
use blowup_core::{BlowupWitness, Error, Graph, Mode, Pattern};
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

/// Name of the PRNG, for documentation in emitted files.
pub const RNG_NAME: &str = "ChaCha12";

const P_SCALE: f64 = 9007199254740992.0; // 2^53

fn gnp_adjacency(n: usize, p: f64, seed: u64) -> Vec<Bitset> {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    let threshold = (p * P_SCALE) as u64;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut adj = vec![Bitset::zeros(n); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let draw = rng.next_u64() >> 11;
            if draw < threshold {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

/// Erdős–Rényi G(n, p) with one independent draw per unordered pair.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    Graph::from_adjacency(gnp_adjacency(n, p, seed)).expect("construction is symmetric")
}

/// Noise graph overlaid with an exact blow-up of `pattern` on the
/// lowest-numbered vertices: class j occupies the next `class_sizes[j]` ids.
/// Cross pairs of pattern edges are forced present; in induced mode cross
/// pairs of pattern non-edges are forced absent. Within-class pairs and pairs
/// touching the remaining vertices keep their noise value.
///
/// Returns the host graph and the planted witness (no transversals).
pub fn plant_blowup(
    pattern: &Pattern,
    class_sizes: &[usize],
    noise_p: f64,
    n: usize,
    seed: u64,
    mode: Mode,
) -> Result<(Graph, BlowupWitness), Error> {
    let r = pattern.r();
    if class_sizes.len() != r {
        return Err(Error::InvalidWitness(format!(
            "need {} class sizes, got {}",
            r,
            class_sizes.len()
        )));
    }
    if class_sizes.contains(&0) {
        return Err(Error::InvalidWitness("class sizes must be positive".into()));
    }
    let total: usize = class_sizes.iter().sum();
    if total > n {
        return Err(Error::InvalidWitness(format!(
            "class sizes sum to {total}, beyond the {n} available vertices"
        )));
    }

    let mut adj = gnp_adjacency(n, noise_p, seed);
    let mut classes: Vec<Vec<u32>> = Vec::with_capacity(r);
    let mut next = 0u32;
    for &size in class_sizes {
        classes.push((next..next + size as u32).collect());
        next += size as u32;
    }
    for i in 0..r {
        for j in (i + 1)..r {
            let wanted = pattern.has_edge(i, j);
            if !wanted && mode == Mode::Subgraph {
                continue;
            }
            for &a in &classes[i] {
                for &b in &classes[j] {
                    if wanted {
                        adj[a as usize].insert(b as usize);
                        adj[b as usize].insert(a as usize);
                    } else {
                        adj[a as usize].remove(b as usize);
                        adj[b as usize].remove(a as usize);
                    }
                }
            }
        }
    }
    let g = Graph::from_adjacency(adj).expect("overlay keeps symmetry");
    let witness = BlowupWitness {
        pattern: pattern.clone(),
        mode,
        classes,
        transversals: Vec::new(),
    };
    Ok((g, witness))
}

/// Edge-list text for a generated graph, with provenance comments.
pub fn graph_file_text(g: &Graph, description: &str, seed: u64) -> String {
    format!(
        "# {description}\n# rng={RNG_NAME} seed={seed}\n{}",
        g.to_edge_list()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use blowup_core::verify_type;

    #[test]
    fn gnp_extremes() {
        let empty = gen_gnp(5, 0.0, 1);
        assert_eq!(empty.edge_count(), 0);
        let complete = gen_gnp(5, 1.0, 1);
        assert_eq!(complete.edge_count(), 10);
    }

    #[test]
    fn gnp_is_deterministic_and_seeded() {
        let a = gen_gnp(40, 0.37, 99);
        let b = gen_gnp(40, 0.37, 99);
        assert_eq!(a.edges(), b.edges());
        let c = gen_gnp(40, 0.37, 100);
        assert_ne!(a.edges(), c.edges());
        a.validate().unwrap();
    }

    #[test]
    fn gnp_edge_count_in_binomial_range() {
        // n=100, p=1/2: mean 2475, sd ~35.2; ±5 sd
        let g = gen_gnp(100, 0.5, 42);
        let m = g.edge_count();
        assert!((2200..=2750).contains(&m), "edge count {m} outside ±5σ");
    }

    #[test]
    fn plant_exact_k25() {
        let (g, w) = plant_blowup(&Pattern::clique(2), &[2, 5], 0.0, 7, 3, Mode::Subgraph).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert!(verify_type(&g, &w).unwrap().ok);
    }

    #[test]
    fn planted_witness_passes_type_check() {
        let (g, w) =
            plant_blowup(&Pattern::clique(3), &[1, 1, 7], 0.0, 9, 5, Mode::Subgraph).unwrap();
        assert!(verify_type(&g, &w).unwrap().ok);

        let p3_center_last = Pattern::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
        let (g, w) = plant_blowup(&p3_center_last, &[2, 2, 3], 0.1, 50, 11, Mode::Induced).unwrap();
        assert!(verify_type(&g, &w).unwrap().ok);
    }

    #[test]
    fn plant_size_overflow_rejected() {
        assert!(plant_blowup(&Pattern::clique(2), &[4, 4], 0.0, 7, 0, Mode::Subgraph).is_err());
        assert!(plant_blowup(&Pattern::clique(2), &[4], 0.0, 7, 0, Mode::Subgraph).is_err());
        assert!(plant_blowup(&Pattern::clique(2), &[0, 3], 0.0, 7, 0, Mode::Subgraph).is_err());
    }
}
