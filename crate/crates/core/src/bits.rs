//! Fixed-length bit vectors used for edge subsets and characteristic vectors.

use std::fmt;

use smallvec::SmallVec;

/// A set of positions `0..len` stored as packed bits.
///
/// Up to 128 positions are kept inline, which covers every graph the sweeps
/// touch without heap allocation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        let nwords = len.div_ceil(64);
        BitSet {
            len,
            words: SmallVec::from_elem(0, nwords),
        }
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(len: usize, positions: I) -> Self {
        let mut s = BitSet::new(len);
        for p in positions {
            s.insert(p);
        }
        s
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, pos: usize) -> bool {
        debug_assert!(pos < self.len);
        self.words[pos >> 6] >> (pos & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, pos: usize) {
        assert!(pos < self.len, "bit {pos} out of range {}", self.len);
        self.words[pos >> 6] |= 1 << (pos & 63);
    }

    #[inline]
    pub fn remove(&mut self, pos: usize) {
        assert!(pos < self.len, "bit {pos} out of range {}", self.len);
        self.words[pos >> 6] &= !(1 << (pos & 63));
    }

    #[inline]
    pub fn toggle(&mut self, pos: usize) {
        assert!(pos < self.len, "bit {pos} out of range {}", self.len);
        self.words[pos >> 6] ^= 1 << (pos & 63);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions set in exactly one of `self` and `other`.
    pub fn symmetric_difference(&self, other: &BitSet) -> Vec<usize> {
        assert_eq!(self.len, other.len);
        let mut out = Vec::new();
        for (i, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let mut x = a ^ b;
            while x != 0 {
                let t = x.trailing_zeros() as usize;
                out.push(i * 64 + t);
                x &= x - 1;
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut x = w;
            std::iter::from_fn(move || {
                if x == 0 {
                    None
                } else {
                    let t = x.trailing_zeros() as usize;
                    x &= x - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }

    /// Parses a `0`/`1` string, position 0 leftmost.
    pub fn parse_bits(s: &str) -> Option<BitSet> {
        let mut out = BitSet::new(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.insert(i),
                _ => return None,
            }
        }
        Some(out)
    }
}

/// Renders as a `0`/`1` string with position 0 leftmost.
impl fmt::Display for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.contains(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSet({self})")
    }
}
