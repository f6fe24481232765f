use alloc::vec;
use alloc::vec::Vec;

/// Fixed-width bit set over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i / 64];
        let bit = 1u64 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Size of `(self | other) & mask`.
    pub fn count_union_masked(&self, other: &Self, mask: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .zip(&mask.words)
            .map(|((a, b), m)| ((a | b) & m).count_ones() as usize)
            .sum()
    }

    /// Elements of `!(a | b | c)` below `len`, in increasing order.
    pub fn complement_of_union(a: &Self, b: &Self, c: &Self, len: usize) -> Self {
        let mut out = Self::new(len);
        for (k, w) in out.words.iter_mut().enumerate() {
            *w = !(a.words[k] | b.words[k] | c.words[k]);
        }
        if !len.is_multiple_of(64) {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
        out
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let mut s = BitSet::new(130);
        assert_eq!(s.first(), None);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(s.count(), 3);
        assert_eq!(s.first(), Some(3));
        let e = BitSet::new(130);
        let rest = BitSet::complement_of_union(&s, &e, &e, 130);
        assert_eq!(rest.count(), 127);
        assert!(!rest.contains(129) && rest.contains(128));
        assert!(s.iter().all(|i| !rest.contains(i)));
    }
}
