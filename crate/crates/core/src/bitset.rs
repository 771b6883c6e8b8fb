//! Fixed-width vertex bitsets.

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bitset {
    words: Vec<u64>,
}

pub const fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl Bitset {
    pub fn zeros(words: usize) -> Self {
        Self { words: vec![0; words] }
    }

    /// The set `0..n` stored in `words` words.
    pub fn full(n: usize, words: usize) -> Self {
        let mut s = Self::zeros(words);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn intersection_count(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn copy_from(&mut self, other: &Self) {
        self.words.copy_from_slice(&other.words);
    }

    /// `self &= !other`
    pub fn and_not_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// `self &= !(x & y)`
    pub fn and_not_intersection(&mut self, x: &Self, y: &Self) {
        for ((a, b), c) in self.words.iter_mut().zip(&x.words).zip(&y.words) {
            *a &= !(b & c);
        }
    }

    /// Smallest element `>= start`.
    pub fn first_at_or_after(&self, start: usize) -> Option<usize> {
        self.iter_from(start).next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter_from(0)
    }

    pub fn iter_from(&self, start: usize) -> impl Iterator<Item = usize> + '_ {
        let first = start / 64;
        self.words.iter().enumerate().skip(first).flat_map(move |(i, &w)| {
            let w = if i == first && !start.is_multiple_of(64) { w & !((1u64 << (start % 64)) - 1) } else { w };
            Ones(w).map(move |b| i * 64 + b)
        })
    }

    pub fn intersection_iter<'a>(&'a self, other: &'a Self) -> impl Iterator<Item = usize> + 'a {
        self.words.iter().zip(&other.words).enumerate().flat_map(|(i, (a, b))| Ones(a & b).map(move |bit| i * 64 + bit))
    }
}

struct Ones(u64);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}
