//! Fixed-universe bit sets indexed by typed node ids.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

/// A dense index usable as a set element.
pub trait Idx: Copy + Eq + Ord + fmt::Debug {
    fn from_index(index: usize) -> Self;
    fn index(self) -> usize;
}

const WORD: usize = 64;

/// A subset of a fixed universe `0..universe` of typed indices.
///
/// Iteration is always in ascending index order, which is declaration order
/// for places and transitions.
pub struct IdSet<I> {
    words: Vec<u64>,
    universe: usize,
    _marker: PhantomData<fn() -> I>,
}

impl<I: Idx> IdSet<I> {
    pub fn empty(universe: usize) -> Self {
        IdSet {
            words: vec![0; universe.div_ceil(WORD)],
            universe,
            _marker: PhantomData,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for i in 0..universe {
            set.words[i / WORD] |= 1 << (i % WORD);
        }
        set
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = I>) -> Self {
        let mut set = Self::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    /// Builds a set from the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask universe exceeds 64 elements");
        let mut set = Self::empty(universe);
        if universe > 0 {
            set.words[0] = mask & low_bits(universe);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `id`, returning `true` if it was not already present.
    pub fn insert(&mut self, id: I) -> bool {
        let i = id.index();
        assert!(
            i < self.universe,
            "{id:?} outside universe of {}",
            self.universe
        );
        let bit = 1 << (i % WORD);
        let word = &mut self.words[i / WORD];
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    pub fn remove(&mut self, id: I) -> bool {
        let i = id.index();
        if i >= self.universe {
            return false;
        }
        let bit = 1 << (i % WORD);
        let word = &mut self.words[i / WORD];
        let present = *word & bit != 0;
        *word &= !bit;
        present
    }

    pub fn contains(&self, id: I) -> bool {
        let i = id.index();
        i < self.universe && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<I> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_, I> {
        Iter {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
            _marker: PhantomData,
        }
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "set operation across different universes"
        );
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    /// Complement relative to the universe.
    pub fn complement(&self) -> Self {
        Self::full(self.universe).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self.intersects(other)
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= WORD {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl<I> Clone for IdSet<I> {
    fn clone(&self) -> Self {
        IdSet {
            words: self.words.clone(),
            universe: self.universe,
            _marker: PhantomData,
        }
    }
}

impl<I> PartialEq for IdSet<I> {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.words == other.words
    }
}

impl<I> Eq for IdSet<I> {}

impl<I> Hash for IdSet<I> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.universe.hash(state);
        self.words.hash(state);
    }
}

/// Canonical order: lexicographic on the ascending element sequence.
impl<I: Idx> Ord for IdSet<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then(self.universe.cmp(&other.universe))
    }
}

impl<I: Idx> PartialOrd for IdSet<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: Idx> fmt::Debug for IdSet<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<'a, I: Idx> IntoIterator for &'a IdSet<I> {
    type Item = I;
    type IntoIter = Iter<'a, I>;

    fn into_iter(self) -> Iter<'a, I> {
        self.iter()
    }
}

pub struct Iter<'a, I> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
    _marker: PhantomData<fn() -> I>,
}

impl<I: Idx> Iterator for Iter<'_, I> {
    type Item = I;

    fn next(&mut self) -> Option<I> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(I::from_index(self.word_index * WORD + bit));
            }
            self.word_index += 1;
            self.current = *self.words.get(self.word_index)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    struct N(usize);

    impl Idx for N {
        fn from_index(index: usize) -> Self {
            N(index)
        }
        fn index(self) -> usize {
            self.0
        }
    }

    #[test]
    fn iterates_in_order_across_words() {
        let set = IdSet::from_ids(130, [N(129), N(3), N(64), N(0)]);
        let got: Vec<_> = set.iter().collect();
        assert_eq!(got, vec![N(0), N(3), N(64), N(129)]);
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn algebra() {
        let a = IdSet::from_ids(10, [N(1), N(2), N(3)]);
        let b = IdSet::from_ids(10, [N(3), N(4)]);
        assert_eq!(a.union(&b), IdSet::from_ids(10, [N(1), N(2), N(3), N(4)]));
        assert_eq!(a.intersection(&b), IdSet::from_ids(10, [N(3)]));
        assert_eq!(a.difference(&b), IdSet::from_ids(10, [N(1), N(2)]));
        assert!(a.intersects(&b));
        assert!(IdSet::from_ids(10, [N(2)]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert_eq!(a.complement().len(), 7);
        assert!(IdSet::<N>::empty(0).is_empty());
        assert!(IdSet::<N>::full(0).is_empty());
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let a = IdSet::from_ids(4, [N(0), N(3)]);
        let b = IdSet::from_ids(4, [N(1)]);
        let c = IdSet::from_ids(4, [N(0)]);
        let mut v = vec![b.clone(), a.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn from_mask_truncates() {
        let s = IdSet::<N>::from_mask(3, 0b1111_0101);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![N(0), N(2)]);
    }
}
