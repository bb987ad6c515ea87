//! Word-packed bitsets with a fixed capacity chosen at construction.
//!
//! Adjacency rows and candidate masks are all `Bitset`s; the enumeration and
//! biclique search loops live on `intersect_with` / `intersection_count`, so
//! those stay allocation-free.

/// Fixed-capacity set of small integers, packed 64 per word.
///
/// Invariant: bits at positions `>= len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    /// Empty set with capacity for values in `0..len`.
    pub fn zeros(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Full set `{0, …, len-1}`.
    pub fn ones(len: usize) -> Self {
        let mut s = Bitset {
            len,
            words: vec![!0u64; len.div_ceil(64)],
        };
        s.mask_tail();
        s
    }

    /// Set containing exactly the given values.
    pub fn from_indices(len: usize, indices: &[u32]) -> Self {
        let mut s = Bitset::zeros(len);
        for &i in indices {
            s.insert(i as usize);
        }
        s
    }

    /// Capacity (not the number of elements).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// In-place intersection.
    pub fn intersect_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// In-place set difference (`self &= !other`).
    pub fn subtract(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_count(&self, other: &Bitset) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Ascending iterator over the elements.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &word)| {
            std::iter::successors(if word == 0 { None } else { Some(word) }, |w| {
                let w = w & (w - 1);
                if w == 0 {
                    None
                } else {
                    Some(w)
                }
            })
            .map(move |w| k * 64 + w.trailing_zeros() as usize)
        })
    }

    /// Elements as a sorted vector of `u32`.
    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().map(|i| i as u32).collect()
    }

    fn mask_tail(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        if self.len == 0 {
            self.words.clear();
        }
    }
}

impl std::fmt::Debug for Bitset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
