use std::cmp::Ordering;
use std::fmt;

/// Fixed-capacity bitset over edge indices.
///
/// Ordering compares the sets as unsigned integers with index 0 as the
/// least significant bit, which is the canonical enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet {
    len: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new(len: usize) -> Self {
        EdgeSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut set = EdgeSet::new(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn full(len: usize) -> Self {
        EdgeSet::from_indices(len, 0..len)
    }

    /// Bits of `mask` below `len`.
    pub fn from_mask(len: usize, mask: u128) -> Self {
        let mut set = EdgeSet::new(len);
        for (w, word) in set.words.iter_mut().enumerate().take(2) {
            *word = (mask >> (64 * w)) as u64;
        }
        set.trim();
        set
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "edge index {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.words.len().max(other.words.len());
        for i in (0..n).rev() {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_order() {
        let a = EdgeSet::from_indices(70, [0, 1]);
        let b = EdgeSet::from_indices(70, [2]);
        let c = EdgeSet::from_indices(70, [65]);
        assert!(a < b && b < c);
    }

    #[test]
    fn complement_respects_len() {
        let s = EdgeSet::from_indices(5, [1, 3]);
        let c = s.complement();
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(c.count(), 3);
    }

    #[test]
    fn from_mask_truncates() {
        let s = EdgeSet::from_mask(3, 0b11111);
        assert_eq!(s.count(), 3);
    }
}
